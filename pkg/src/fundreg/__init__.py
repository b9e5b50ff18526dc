"""Exact verification of fundamental-region properties on tiled spaces.

The package builds finite truncations of a group acting on a glued room
space, plus several metric comparison systems, and checks disjointness,
coverage, local finiteness, self-adjacency, boundary containment, and
quotient structure mechanically.  All tiling arithmetic is exact
(reduced words and rationals); only the smooth rescaling module uses
floating point.
"""

from .action import (
    ActionElement,
    GroupBall,
    group_ball,
    identity,
    room_reflection,
    walk_to_spine,
)
from .checker import (
    EXIT_CODES,
    INCONCLUSIVE,
    REFUTED,
    SELECTORS,
    VERIFIED,
    RunConfig,
    VerificationReport,
    battery_exit_code,
    make_system,
    run_battery,
)
from .conformal import build_partition, build_rescaling, rescaling_report
from .freegroup import ReducedWord, ball_size, enumerate_ball, r_power, u_power, word
from .tilespace import (
    Cell,
    RoomPoint,
    RoomSet,
    canonical_point,
    materialize_cell,
    neighborhood_roomset,
    render_roomsets,
)

__version__ = "0.1.0"

__all__ = [
    "ActionElement",
    "Cell",
    "EXIT_CODES",
    "GroupBall",
    "INCONCLUSIVE",
    "REFUTED",
    "ReducedWord",
    "RoomPoint",
    "RoomSet",
    "RunConfig",
    "SELECTORS",
    "VERIFIED",
    "VerificationReport",
    "ball_size",
    "battery_exit_code",
    "build_partition",
    "build_rescaling",
    "canonical_point",
    "enumerate_ball",
    "group_ball",
    "identity",
    "make_system",
    "materialize_cell",
    "neighborhood_roomset",
    "r_power",
    "render_roomsets",
    "rescaling_report",
    "room_reflection",
    "run_battery",
    "u_power",
    "walk_to_spine",
    "word",
]
