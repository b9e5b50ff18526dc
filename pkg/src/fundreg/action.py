"""Group elements acting on the room tree, in (spine, parity) normal form.

Every element acts on a word v as  v |-> spine * swap^parity(v)  where swap
exchanges the two generator families.  The reflection generators carry one
root word each: the generator rooted at w has spine w * swap(w^-1) and
parity 1, and squares to the identity.  Normal forms compose by

    (a.spine * swap^a.parity(b.spine), a.parity xor b.parity)

so equality of elements is equality of the pair.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .freegroup import (
    IDENTITY_WORD,
    ReducedWord,
    concat_reduced,
    invert_letters,
    leading_r_run,
    r_power,
    run_count,
    spine_exponent,
    swap_letters,
)


class ActionElement:
    __slots__ = ("spine", "parity", "_hash")

    def __init__(self, spine: ReducedWord, parity: int):
        if parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        self.spine = spine
        self.parity = parity
        self._hash = hash((spine.letters, parity))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ActionElement)
            and self.parity == other.parity
            and self.spine == other.spine
        )

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "ActionElement") -> "ActionElement":
        tail = other.spine.swapped() if self.parity else other.spine
        return ActionElement(self.spine * tail, self.parity ^ other.parity)

    def inverse(self) -> "ActionElement":
        sp = self.spine.inverse()
        if self.parity:
            sp = sp.swapped()
        return ActionElement(sp, self.parity)

    def apply(self, v: ReducedWord) -> ReducedWord:
        """Image of a room word under this element."""
        return self.spine * (v.swapped() if self.parity else v)

    def is_identity(self) -> bool:
        return self.parity == 0 and self.spine.is_identity()

    def sort_key(self) -> tuple:
        return (*self.spine.sort_key(), self.parity)

    def text(self) -> str:
        return f"({self.spine.text()}, {self.parity})"

    def __repr__(self) -> str:
        return f"ActionElement{self.text()}"


IDENTITY = ActionElement(IDENTITY_WORD, 0)


def identity() -> ActionElement:
    return IDENTITY


def room_reflection(root: ReducedWord) -> ActionElement:
    """The order-two element fixing the diagonal of the room at `root`."""
    return ActionElement(root * root.inverse().swapped(), 1)


def generator_text(root: ReducedWord) -> str:
    return f"g[{root.text()}]"


# ----------------------------------------------------------- ball storage

# Ball keys pack (parity, spine letters) into bytes: one header byte for the
# parity, then one byte per letter via the map -2,-1,1,2 -> 0,1,2,3.  Compact
# keys keep million-element balls affordable.

_ENC = {-2: 0, -1: 1, 1: 2, 2: 3}
_DEC = {0: -2, 1: -1, 2: 1, 3: 2}


def _encode(letters: tuple[int, ...], parity: int) -> bytes:
    return bytes([parity] + [_ENC[a] for a in letters])


def _decode(key: bytes) -> ActionElement:
    letters = tuple(_DEC[b] for b in key[1:])
    return ActionElement(ReducedWord._trusted(letters), key[0])


class GroupBall:
    """Products of at most `depth` reflection generators, deduplicated.

    Layers are breadth-first: layer k holds the elements whose minimal
    generator-word length is exactly k.
    """

    def __init__(self, roots: Sequence[ReducedWord], depth: int):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.roots = tuple(roots)
        self.depth = depth
        gens = []
        seen_gens = set()
        for root in roots:
            g = room_reflection(root)
            key = _encode(g.spine.letters, g.parity)
            if key not in seen_gens:
                seen_gens.add(key)
                gens.append((g.spine.letters, swap_letters(g.spine.letters)))
        self._gen_pairs = gens

        depth_of: dict[bytes, int] = {_encode((), 0): 0}
        layers: list[list[bytes]] = [[_encode((), 0)]]
        frontier: list[tuple[tuple[int, ...], int]] = [((), 0)]
        for k in range(1, depth + 1):
            nxt_keys: list[bytes] = []
            nxt: list[tuple[tuple[int, ...], int]] = []
            for letters, parity in frontier:
                swapped = swap_letters(letters)
                for gen_plain, gen_swapped in gens:
                    # generators have parity 1: new = gen * elem
                    new_letters = concat_reduced(gen_plain, swapped)
                    new_parity = 1 ^ parity
                    key = _encode(new_letters, new_parity)
                    if key not in depth_of:
                        depth_of[key] = k
                        nxt_keys.append(key)
                        nxt.append((new_letters, new_parity))
                # gen_swapped is unused on purpose: composing on the left
                # always swaps the element spine, never the generator spine.
            layers.append(nxt_keys)
            frontier = nxt
        self._depth_of = depth_of
        self._layers = layers

    def __len__(self) -> int:
        return len(self._depth_of)

    def __contains__(self, g: ActionElement) -> bool:
        return _encode(g.spine.letters, g.parity) in self._depth_of

    def min_depth(self, g: ActionElement) -> int | None:
        return self._depth_of.get(_encode(g.spine.letters, g.parity))

    def layer_sizes(self) -> list[int]:
        return [len(layer) for layer in self._layers]

    def count_at(self, depth: int) -> int:
        return sum(len(layer) for layer in self._layers[: depth + 1])

    def iter_layer(self, k: int) -> Iterator[ActionElement]:
        return (_decode(key) for key in self._layers[k])

    def __iter__(self) -> Iterator[ActionElement]:
        for layer in self._layers:
            yield from (_decode(key) for key in layer)

    def elements(self) -> list[ActionElement]:
        """All elements in canonical (spine, parity) order."""
        out = [_decode(key) for key in self._depth_of]
        out.sort(key=ActionElement.sort_key)
        return out

    def nonidentity(self) -> Iterator[ActionElement]:
        for g in self:
            if not g.is_identity():
                yield g

    def spine_length_histogram(self) -> dict[int, int]:
        """Realized elements per spine length (no converse claim intended)."""
        hist: dict[int, int] = {}
        for key in self._depth_of:
            n = len(key) - 1
            hist[n] = hist.get(n, 0) + 1
        return dict(sorted(hist.items()))


def group_ball(roots: Sequence[ReducedWord], depth: int) -> GroupBall:
    return GroupBall(roots, depth)


# ------------------------------------------------------------- spine walk


def walk_to_spine(v: ReducedWord) -> tuple[ActionElement, int]:
    """An element g with g.apply(v) a power of r, plus that power.

    Walks left to right: each step reflects at the room named by the current
    maximal leading r-run, which merges the first two runs.  Words already on
    the spine emit nothing, so g is a product of at most run_count(v)
    generators.
    """
    g = IDENTITY
    w = v
    steps = 0
    bound = run_count(v)
    while True:
        exp = spine_exponent(w)
        if exp is not None:
            return g, exp
        steps += 1
        if steps > bound:
            raise AssertionError(f"walk exceeded run bound on {v.text()}")
        h = room_reflection(r_power(leading_r_run(w)))
        w = h.apply(w)
        g = h * g


def naive_reflection_image(root: ReducedWord, v: ReducedWord) -> ReducedWord:
    """Defining formula for a reflection, straight off the gluing picture:
    the room at root*x goes to root*swap(x)."""
    return root * (root.inverse() * v).swapped()


def compose_all(elements: Iterable[ActionElement]) -> ActionElement:
    out = IDENTITY
    for g in elements:
        out = out * g
    return out
