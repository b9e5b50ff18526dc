"""Checker operations against independent oracles.

The six-candidate enumeration is validated by a brute-force scan over a
whole group ball; minimum reflection depths are validated by an oracle
that splits products differently from the implementation; interval and
plane counts are validated against closed forms derived by hand.
"""

import random
from fractions import Fraction

import pytest

from fundreg.action import GroupBall, identity, room_reflection
from fundreg.checker import (
    EXIT_CODES,
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    CylinderSystem,
    Free2HouseSystem,
    LineSystem,
    PlanePathologicalSystem,
    RunConfig,
    VerificationReport,
    battery_exit_code,
    boundary_containment,
    check_coverage,
    check_disjointness,
    compactness_proxy,
    fixed_point_search,
    fsa_check,
    fsa_implies_lf_audit,
    in_closed_region,
    local_finiteness_profile,
    make_system,
    normalize_representative,
    orbit_boundary_finiteness,
    orbit_representatives,
    profile_verdict,
    quotient_build,
    representative_class_count,
    run_battery,
    stabilized,
)
from fundreg.freegroup import enumerate_ball, r_power, spine_exponent, u_power, word
from fundreg.regions import plane2d_closure_membership, plane2d_translate_meets_box
from fundreg.tilespace import canonical_point, neighborhood_roomset


@pytest.fixture(scope="module")
def f2():
    return Free2HouseSystem()


@pytest.fixture(scope="module")
def small_cfg():
    return RunConfig(depth=3, radius=6)


# ------------------------------------------------------- report plumbing


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(schedule=(1, 2))
    with pytest.raises(ValueError):
        RunConfig(schedule=(1, 2, 2))
    with pytest.raises(ValueError):
        RunConfig(depth=-1)
    with pytest.raises(ValueError):
        RunConfig(n_intervals=0)


def test_profile_verdict_rules():
    assert stabilized([4, 6, 6, 6, 6])
    assert profile_verdict([4, 6, 6, 6, 6]) == VERIFIED
    assert profile_verdict([4, 6, 8, 10]) == REFUTED
    assert profile_verdict([4, 6, 6, 8, 9]) == INCONCLUSIVE
    with pytest.raises(AssertionError):
        profile_verdict([4, 3, 3])


def test_report_shape_and_exit_codes():
    rep = VerificationReport("coverage", VERIFIED, {"depth": 4, "radius": 8}, [1], [])
    data = rep.to_dict()
    assert sorted(data) == ["counts", "property", "truncation", "verdict", "witnesses"]
    assert sorted(data["truncation"]) == ["depth", "radius"]
    assert rep.exit_code == 0
    assert EXIT_CODES[REFUTED] == 1 and EXIT_CODES[INCONCLUSIVE] == 2


def test_make_system_rejects_unknown():
    with pytest.raises(KeyError):
        make_system("moebius")


# ------------------------------------- candidate completeness (brute force)


def brute_meeting_set(system, center, ball, radius):
    """Every ball element whose closure translate meets the neighbourhood."""
    nbhd = neighborhood_roomset(center, radius)
    closure = system.closure(radius)
    hits = []
    for g in ball:
        if not closure.translate(g).intersect(nbhd).is_empty():
            hits.append(g)
    return {g.sort_key() for g in hits}


@pytest.mark.parametrize("center_text", ["", "r", "uu", "rU"])
def test_six_candidates_match_brute_force(f2, center_text):
    center = word(center_text)
    ball = f2.scan_ball(3)
    expected = brute_meeting_set(f2, center, ball, radius=6)
    cands = f2.meeting_candidates(center)
    assert len(cands) == 6
    in_ball = {g.sort_key() for g in cands if g in ball}
    assert in_ball == expected


def test_candidates_identity_membership(f2):
    # the identity translate meets the neighbourhood exactly when a
    # closure room sits in the five-room patch: center, center*u, or
    # center*u^-1 must be a spine power
    for text, expected in [
        ("", True),
        ("r", True),
        ("u", True),
        ("ru", True),
        ("rU", True),
        ("uu", False),
        ("UU", False),
        ("uur", False),
    ]:
        center = word(text)
        has_id = any(g.is_identity() for g in f2.meeting_candidates(center))
        assert has_id is expected, text


# --------------------------------------------------- minimum reflection depth


def oracle_min_depth(system, g, bound=6):
    """Split products at the midpoint instead of three from the right."""
    half = system.half_ball()
    two = GroupBall(enumerate_ball(3), 2)
    direct = half.min_depth(g)
    if direct is not None:
        return direct
    for total in range(4, bound + 1):
        left = total // 2  # (2,2), (2,3), (3,3): both halves within reach
        source = two if left == 2 else half
        limit = total - left
        for a in source.iter_layer(left):
            rest = half.min_depth(a.inverse() * g)
            if rest is not None and rest <= limit:
                return total
    return None


def test_min_depth_matches_oracle_on_products(f2):
    rng = random.Random(20260817)
    roots = enumerate_ball(3)
    cases = []
    for n_factors in (2, 3, 4, 4, 4, 5, 5, 6):
        g = identity()
        for _ in range(n_factors):
            g = g * room_reflection(rng.choice(roots))
        cases.append(g)
    for g in cases:
        assert f2.candidate_min_depth(g, 6) == oracle_min_depth(f2, g)


def test_min_depth_parity_invariant(f2):
    # a product of t reflections always has parity t mod 2
    rng = random.Random(7)
    roots = enumerate_ball(3)
    for _ in range(10):
        t = rng.randint(1, 5)
        g = identity()
        for _ in range(t):
            g = g * room_reflection(rng.choice(roots))
        found = f2.candidate_min_depth(g, 6)
        assert found is not None
        assert found % 2 == g.parity


def test_min_depth_respects_bound(f2):
    g = room_reflection(word("r")) * room_reflection(word("u"))
    exact = f2.candidate_min_depth(g, 6)
    assert exact == 2
    assert f2.candidate_min_depth(g, 1) is None


# ----------------------------------------------------------- tiled-space ops


def test_disjointness_free2house(f2, small_cfg):
    rep = check_disjointness(f2, small_cfg)
    assert rep.verdict == VERIFIED
    assert rep.counts == [len(f2.scan_ball(3)) - 1, 0]


def test_coverage_free2house_certificates(f2):
    rep = check_coverage(f2, RunConfig(depth=3, radius=4))
    assert rep.verdict == VERIFIED
    assert rep.counts[0] == len(enumerate_ball(4))
    assert rep.counts[1] == 0
    assert any("certified" in w for w in rep.witnesses)


def test_boundary_containment_free2house(f2, small_cfg):
    rep = boundary_containment(f2, small_cfg)
    assert rep.verdict == VERIFIED
    # depth-3 ball holds exactly the five spine reflections that touch
    assert rep.counts[1] == 5
    assert rep.counts[2] == 0


def test_local_finiteness_profiles_free2house(f2, small_cfg):
    rep, profiles = local_finiteness_profile(f2, small_cfg)
    assert rep.verdict == VERIFIED
    assert len(profiles) == len(enumerate_ball(2))
    assert profiles["uu"] == [4, 6, 6, 6, 6]
    for counts in profiles.values():
        assert counts[-1] == 6
        assert stabilized(counts)
    assert rep.counts == [sum(p[i] for p in profiles.values()) for i in range(5)]


def test_local_finiteness_needs_room(f2):
    with pytest.raises(ValueError):
        local_finiteness_profile(
            f2, RunConfig(depth=3, radius=2), centers=[word("uu")]
        )


def test_fsa_free2house_growth(f2):
    cfg = RunConfig(depth=3, radius=6, schedule=(1, 2, 3, 4))
    rep, hits = fsa_check(f2, cfg)
    assert rep.verdict == REFUTED
    assert rep.counts == [4, 6, 8, 10]
    spines = sorted(g.spine.text() for g in hits if g.parity == 1)
    for i in (1, 2, 3, 4):
        assert r_power(i) * u_power(-i) in [g.spine for g in hits]
    assert len(hits) == len(set(g.sort_key() for g in hits))
    assert any("g[rrrr]" in w for w in rep.witnesses)
    assert spines  # parity-one overlaps exist


def test_fsa_free2house_only_spine_roots(f2, small_cfg):
    hits = f2.overlapping_generators(horizon=3, radius=6)
    roots = [root for root, _ in hits if root is not None]
    assert all(spine_exponent(root) is not None for root in roots)
    assert len(hits) == 2 * 3 + 2


def test_quotient_free2house(f2, small_cfg):
    rep, desc = quotient_build(f2, small_cfg)
    assert rep.verdict == VERIFIED
    assert desc.compact is False
    assert len(desc.pieces) == 13
    assert len(desc.identifications) == 12
    assert all(d["orientation"] == "t -> t" for d in desc.identifications)
    assert desc.identifications[6]["via"] == "g[e]"
    assert rep.counts[-1] == 0


def test_fixed_point_search_free2house(f2, small_cfg):
    rep = fixed_point_search(f2, small_cfg, identity())
    assert rep.counts[0] == rep.counts[1]

    rep = fixed_point_search(f2, small_cfg, room_reflection(word("r")))
    assert rep.counts[1] == 1
    assert "room r" in rep.witnesses[0]

    slide = f2.meeting_candidates(word("u"))[0]  # some parity-0 candidate
    moved = [g for g in f2.meeting_candidates(word("u")) if g.parity == 0 and not g.is_identity()]
    rep = fixed_point_search(f2, small_cfg, moved[0])
    assert rep.counts[1] == 0


# ----------------------------------------------------- orbit representatives


def test_orbit_representatives_unique_classes(f2):
    grid = [Fraction(a, 5) for a in range(5)]
    rooms = [word(t) for t in ["", "r", "u", "R", "U"]]
    for room in rooms:
        for x in grid:
            for y in grid:
                if (x, y) == (0, 0):
                    continue
                p = canonical_point(room, x, y)
                reps = orbit_representatives(f2, p)
                assert reps, f"no representative for {p.text()}"
                assert representative_class_count(reps) == 1


def test_orbit_representative_wall_pair(f2):
    p = canonical_point(word("u"), Fraction(1, 4), Fraction(0))
    reps = orbit_representatives(f2, p)
    texts = [q.text() for q in reps]
    assert texts == ["(r, 0, 1/4)", "(u, 1/4, 0)"]
    normalized = {normalize_representative(q).text() for q in reps}
    assert len(normalized) == 1


def test_in_closed_region_examples():
    assert in_closed_region(canonical_point(word("rr"), Fraction(1, 3), Fraction(1, 2)))
    assert in_closed_region(canonical_point(word("ru"), Fraction(1, 2), Fraction(0)))
    assert not in_closed_region(canonical_point(word("r"), Fraction(1, 2), Fraction(1, 3)))
    assert not in_closed_region(canonical_point(word("ur"), Fraction(1, 2), Fraction(0)))


# ------------------------------------------------------------------ line ops


def test_line_standard_battery_values():
    cfg = RunConfig()
    ls = make_system("line-standard")
    rep, profiles = local_finiteness_profile(ls, cfg)
    assert rep.verdict == VERIFIED and rep.counts == [2] * 5
    rep, overlap = fsa_check(ls, cfg)
    assert rep.verdict == VERIFIED and overlap == [-1, 0, 1]
    rep = fsa_implies_lf_audit(ls, cfg)
    assert rep.verdict == VERIFIED and rep.counts == [25, 3, 3]
    rep = orbit_boundary_finiteness(ls, cfg)
    assert rep.counts == [2]


def test_line_corrupted_disjointness_refuted():
    cfg = RunConfig()
    rep = check_disjointness(LineSystem("line-corrupted"), cfg)
    assert rep.verdict == REFUTED
    assert any("m = 1" in w and "(1, 3/2)" in w for w in rep.witnesses)


def test_line_corrupted_boundary_refuted():
    rep = boundary_containment(LineSystem("line-corrupted"), RunConfig())
    assert rep.verdict == REFUTED


def test_line_pathological_counts_match_closed_forms():
    cfg = RunConfig()
    lp = make_system("line-pathological")
    rep, _ = local_finiteness_profile(lp, cfg)
    # hand count: shift by 1 reaches the window, plus one shift per tile
    # index from k-1 up to 4k-1
    assert rep.counts == [3 * k + 2 for k in cfg.schedule]
    assert rep.verdict == REFUTED

    rep, overlap = fsa_check(lp, cfg)
    assert rep.counts == [2 * k + 1 for k in cfg.schedule]
    assert rep.verdict == REFUTED


def test_line_pathological_coverage_threshold():
    # window [0, 1 - 1/k] needs at least k - 1 tiles
    k = 9
    cfg_enough = RunConfig(n_intervals=k - 1, schedule=(2, 3, k))
    cfg_short = RunConfig(n_intervals=k - 2, schedule=(2, 3, k))
    lp = make_system("line-pathological")
    assert check_coverage(lp, cfg_enough).verdict == VERIFIED
    rep = check_coverage(lp, cfg_short)
    assert rep.verdict == REFUTED
    assert any("uncovered point" in w for w in rep.witnesses)


def test_line_fsa_margin_validation():
    with pytest.raises(ValueError):
        fsa_check(make_system("line-standard"), RunConfig(), margin=0)
    with pytest.raises(ValueError):
        fsa_check(make_system("line-pathological"), RunConfig(), margin=Fraction(3, 4))


def test_line_quotients():
    cfg = RunConfig(n_intervals=12)
    rep, desc = quotient_build(make_system("line-standard"), cfg)
    assert rep.verdict == VERIFIED and desc.compact is True
    rep, desc = quotient_build(make_system("line-pathological"), cfg)
    assert rep.verdict == VERIFIED and desc.compact is False
    assert rep.counts[0] == 12


# ----------------------------------------------------------------- plane ops


def test_plane_disjointness_and_boundary():
    cfg = RunConfig()
    pp = make_system("plane-pathological")
    assert check_disjointness(pp, cfg).verdict == VERIFIED
    assert boundary_containment(pp, cfg).verdict == VERIFIED


def test_plane_lf_counts_have_witness_points():
    cfg = RunConfig(schedule=(2, 3, 4))
    pp = PlanePathologicalSystem()
    rep, _ = local_finiteness_profile(pp, cfg)
    assert rep.verdict == REFUTED or rep.counts[0] < rep.counts[-1]
    # every claimed meeting pair at k=2 admits a rational witness point
    k = 2
    half = Fraction(1, k)
    cx, cy = pp.lf_center()
    for m in range(-2, 3):
        for n in range(-8 * k, 8 * k + 1):
            if not plane2d_translate_meets_box(m, n, half, center=(cx, cy)):
                continue
            # solve for a chart coordinate whose fiber crosses the window,
            # then certify the concrete point independently
            w_lo, w_hi = cy - half - n, cy + half - n
            assert w_hi > 0, f"impossible fiber for shift ({m}, {n})"
            x_lo = max(cx - half - m, Fraction(0))
            x_hi = min(cx + half - m, Fraction(1))
            a = max(x_lo, 1 / w_hi)
            b = min(x_hi, 1 / (w_lo - 1)) if w_lo > 1 else x_hi
            assert a < b, f"empty chart slice for shift ({m}, {n})"
            x_chart = (a + b) / 2
            fiber_lo = max(1 / x_chart, w_lo)
            fiber_hi = min(1 / x_chart + 1, w_hi)
            assert fiber_lo < fiber_hi, f"fiber misses window at ({m}, {n})"
            y_chart = (fiber_lo + fiber_hi) / 2
            assert plane2d_closure_membership(x_chart, y_chart)
            bx, by = x_chart + m, y_chart + n
            assert abs(bx - cx) < half and abs(by - cy) < half


def test_plane_fsa_refuted_via_local_profile():
    rep, _ = fsa_check(PlanePathologicalSystem(), RunConfig())
    assert rep.verdict == REFUTED
    assert any("grows" in w for w in rep.witnesses)


# -------------------------------------------------------------- cylinder ops


def test_cylinder_overlap_set_all_shifts():
    for c in (1, Fraction(3, 2), 7):
        rep, overlap = fsa_check(make_system("cylinder", shift=c), RunConfig())
        assert rep.verdict == VERIFIED
        assert overlap == [-2, -1, 0, 1, 2]


def test_cylinder_candidate_validation():
    with pytest.raises(ValueError):
        fsa_check(make_system("cylinder"), RunConfig(), candidate=(0, 1))


def test_cylinder_audit_and_orbit():
    cfg = RunConfig()
    cy = make_system("cylinder", shift=Fraction(3, 2))
    rep = fsa_implies_lf_audit(cy, cfg)
    assert rep.verdict == VERIFIED
    assert rep.counts[1] == 5 and rep.counts[2] <= 5
    assert orbit_boundary_finiteness(cy, cfg).counts == [2]


def test_cylinder_compactness_both_flags():
    cfg = RunConfig()
    for flag in (True, False):
        cy = make_system("cylinder", shift=Fraction(3, 2), x_compact=flag)
        assert compactness_proxy(cy, cfg).verdict == VERIFIED
        _, desc = quotient_build(cy, cfg)
        assert desc.compact is flag


def test_cylinder_shift_validation():
    with pytest.raises(ValueError):
        CylinderSystem(shift=0)


# ------------------------------------------------------------------- battery


def test_battery_line_and_cylinder_all_pass():
    cfg = RunConfig()
    for sel in ("line-standard", "line-pathological", "cylinder"):
        results = run_battery(make_system(sel), cfg)
        assert battery_exit_code(results) == 0
        for rep, want in results:
            assert rep.verdict == want


def test_battery_free2house_small():
    results = run_battery(Free2HouseSystem(), RunConfig(depth=3, radius=6))
    assert battery_exit_code(results) == 0
    verdicts = {rep.property_name: rep.verdict for rep, _ in results}
    assert verdicts["finite-self-adjacency"] == REFUTED
    assert verdicts["disjointness"] == VERIFIED


def test_battery_exit_code_flags_mismatch():
    rep = VerificationReport("coverage", REFUTED, {}, [], [])
    assert battery_exit_code([(rep, VERIFIED)]) == 1
    ok = VerificationReport("coverage", VERIFIED, {}, [], [])
    assert battery_exit_code([(ok, VERIFIED)]) == 0
    assert battery_exit_code([(ok, REFUTED)]) == 1
