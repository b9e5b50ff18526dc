"""Freely reduced words in the rank-2 free group on generators r and u.

Letters are small ints: r = 1, u = 2, negatives are inverses.  Words are
kept eagerly reduced (a stack pass on construction), so equality and
hashing work on the raw letter tuple.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

R = 1
U = 2

LETTERS = (R, U, -R, -U)  # canonical generator order: r < u < r^-1 < u^-1

_SWAP = {R: U, U: R, -R: -U, -U: -R}
_CHAR = {R: "r", U: "u", -R: "R", -U: "U"}
_FROM_CHAR = {c: letter for letter, c in _CHAR.items()}
_ORDER = {letter: rank for rank, letter in enumerate(LETTERS)}


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a letter sequence with a single stack pass."""
    stack: list[int] = []
    for a in letters:
        if a not in _ORDER:
            raise ValueError(f"invalid letter {a!r}")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def concat_reduced(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Concatenate two already-reduced letter tuples.

    Only the junction can cancel, so this is O(cancellation) plus a slice.
    """
    i = len(a)
    j = 0
    nb = len(b)
    while i > 0 and j < nb and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return a[:i] + b[j:]


def swap_letters(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Exchange the two generator families letterwise (an automorphism)."""
    return tuple(_SWAP[a] for a in letters)


def invert_letters(letters: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(letters))


class ReducedWord:
    """Immutable freely reduced word; the empty word is the identity."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[int] = ()):
        self.letters = reduce_letters(letters)
        self._hash = hash(self.letters)

    @classmethod
    def _trusted(cls, letters: tuple[int, ...]) -> "ReducedWord":
        """Wrap a tuple that is already reduced (internal fast path)."""
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = hash(letters)
        return w

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ReducedWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return ReducedWord._trusted(concat_reduced(self.letters, other.letters))

    def __pow__(self, n: int) -> "ReducedWord":
        if n < 0:
            return self.inverse() ** (-n)
        out: tuple[int, ...] = ()
        for _ in range(n):
            out = concat_reduced(out, self.letters)
        return ReducedWord._trusted(out)

    def inverse(self) -> "ReducedWord":
        return ReducedWord._trusted(invert_letters(self.letters))

    def swapped(self) -> "ReducedWord":
        """Image under the generator-swap automorphism (r <-> u)."""
        return ReducedWord._trusted(swap_letters(self.letters))

    def exponent_sum(self) -> int:
        """Total exponent sum: both generators count +1, inverses -1."""
        return sum(1 if a > 0 else -1 for a in self.letters)

    def exponent_vector(self) -> tuple[int, int]:
        """Per-generator exponent sums (r-total, u-total)."""
        re = ue = 0
        for a in self.letters:
            if a == R:
                re += 1
            elif a == -R:
                re -= 1
            elif a == U:
                ue += 1
            else:
                ue -= 1
        return re, ue

    def is_identity(self) -> bool:
        return not self.letters

    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(_ORDER[a] for a in self.letters))

    def text(self) -> str:
        if not self.letters:
            return "e"
        return "".join(_CHAR[a] for a in self.letters)

    def __repr__(self) -> str:
        return f"ReducedWord({self.text()!r})"


IDENTITY_WORD = ReducedWord()


def word(text: str) -> ReducedWord:
    """Parse the text form: one char per letter from {r,u,R,U}; "e" is empty."""
    if text == "e":
        return IDENTITY_WORD
    try:
        letters = [_FROM_CHAR[c] for c in text]
    except KeyError as exc:
        raise ValueError(f"invalid word text {text!r}") from exc
    return ReducedWord(letters)


def r_power(i: int) -> ReducedWord:
    """The word r**i (negative i gives inverse powers)."""
    letter = R if i >= 0 else -R
    return ReducedWord._trusted((letter,) * abs(i))


def u_power(i: int) -> ReducedWord:
    letter = U if i >= 0 else -U
    return ReducedWord._trusted((letter,) * abs(i))


def spine_exponent(w: ReducedWord) -> int | None:
    """If w is a power of r, its exponent; otherwise None."""
    if not w.letters:
        return 0
    first = w.letters[0]
    if abs(first) != R or any(a != first for a in w.letters):
        return None
    return len(w.letters) if first > 0 else -len(w.letters)


def leading_r_run(w: ReducedWord) -> int:
    """Signed length of the maximal leading run of r or r^-1 letters."""
    if not w.letters or abs(w.letters[0]) != R:
        return 0
    first = w.letters[0]
    n = 0
    for a in w.letters:
        if a != first:
            break
        n += 1
    return n if first > 0 else -n


def run_count(w: ReducedWord) -> int:
    """Number of maximal single-letter runs (r^2u^3r has three)."""
    count = 0
    prev = 0
    for a in w.letters:
        if a != prev:
            count += 1
            prev = a
    return count


@lru_cache(maxsize=None)
def enumerate_ball(radius: int) -> tuple[ReducedWord, ...]:
    """All reduced words of length <= radius, in canonical order.

    There are 4 * 3**(k-1) words of each length k >= 1, so the ball has
    1 + 2 * (3**radius - 1) elements.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    out: list[ReducedWord] = [IDENTITY_WORD]
    layer: list[tuple[int, ...]] = [()]
    for _ in range(radius):
        nxt: list[tuple[int, ...]] = []
        for letters in layer:
            last = letters[-1] if letters else 0
            for a in LETTERS:
                if a == -last:
                    continue
                nxt.append(letters + (a,))
        out.extend(ReducedWord._trusted(t) for t in nxt)
        layer = nxt
    return tuple(out)


def ball_size(radius: int) -> int:
    """Closed form for len(enumerate_ball(radius))."""
    return 1 + 2 * (3**radius - 1)


def iter_ball(radius: int) -> Iterator[ReducedWord]:
    return iter(enumerate_ball(radius))
