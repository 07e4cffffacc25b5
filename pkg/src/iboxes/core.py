"""Colored sequences, i-boxes, navigation operators and the commuting predicate.

Positions are plain integers.  Navigation results that fall off the sequence
are the float sentinels ``NEG_INF`` / ``POS_INF`` which compare correctly
against ints; they are only ever compared, never used in arithmetic.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

NEG_INF = -math.inf
POS_INF = math.inf

ExtInt = Union[int, float]


def is_finite(v: ExtInt) -> bool:
    return not isinstance(v, float) or math.isfinite(v)


@dataclass(frozen=True, order=True)
class IBox:
    """Closed interval ``[x, y]`` of positions.  Validity is relative to a sequence."""

    x: int
    y: int

    def __post_init__(self):
        if self.x > self.y:
            raise ValueError(f"empty interval [{self.x},{self.y}]")

    def __contains__(self, other: "IBox") -> bool:
        return self.x <= other.x and other.y <= self.y

    def __iter__(self) -> Iterator[int]:
        yield self.x
        yield self.y

    def __str__(self) -> str:
        return f"[{self.x},{self.y}]"

    @property
    def is_singleton(self) -> bool:
        return self.x == self.y


@dataclass(frozen=True)
class ColorSequence:
    """A color ``i_k`` at every position ``k`` of the finite interval ``[lo, hi]``."""

    lo: int
    colors: tuple[int, ...]
    _by_color: Mapping[int, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        if not self.colors:
            raise ValueError("a color sequence needs at least one position")
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        by_color: dict[int, list[int]] = {}
        for k, c in enumerate(self.colors, start=self.lo):
            by_color.setdefault(c, []).append(k)
        object.__setattr__(
            self, "_by_color", {c: tuple(ps) for c, ps in by_color.items()}
        )

    @classmethod
    def from_word(cls, word: Sequence[int], lo: int = 1) -> "ColorSequence":
        return cls(lo, tuple(word))

    @property
    def hi(self) -> int:
        return self.lo + len(self.colors) - 1

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, k: int) -> int:
        self._check(k)
        return self.colors[k - self.lo]

    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def used_colors(self, a: int | None = None, b: int | None = None) -> list[int]:
        a = self.lo if a is None else a
        b = self.hi if b is None else b
        return sorted({self[k] for k in range(a, b + 1)})

    def occurrences(self, color: int) -> tuple[int, ...]:
        return self._by_color.get(color, ())

    def _check(self, k: int) -> None:
        if not (isinstance(k, int) and self.lo <= k <= self.hi):
            raise IndexError(f"position {k} outside [{self.lo},{self.hi}]")

    # navigation -----------------------------------------------------------

    def next_color(self, s: int, j: int) -> ExtInt:
        """Smallest ``t >= s`` with ``i_t = j`` (``s(j)^+``)."""
        self._check(s)
        occ = self._by_color.get(j, ())
        idx = bisect.bisect_left(occ, s)
        return occ[idx] if idx < len(occ) else POS_INF

    def prev_color(self, s: int, j: int) -> ExtInt:
        """Largest ``t <= s`` with ``i_t = j`` (``s(j)^-``)."""
        self._check(s)
        occ = self._by_color.get(j, ())
        idx = bisect.bisect_right(occ, s)
        return occ[idx - 1] if idx > 0 else NEG_INF

    def next_same(self, s: int) -> ExtInt:
        """``s_+``: the next position carrying the color of ``s``."""
        self._check(s)
        if s == self.hi:
            return POS_INF
        return self.next_color(s + 1, self[s])

    def prev_same(self, s: int) -> ExtInt:
        """``s_-``: the previous position carrying the color of ``s``."""
        self._check(s)
        if s == self.lo:
            return NEG_INF
        return self.prev_color(s - 1, self[s])

    # i-boxes --------------------------------------------------------------

    def is_ibox(self, x: int, y: int) -> bool:
        return self.lo <= x <= y <= self.hi and self[x] == self[y]

    def box(self, x: int, y: int) -> IBox:
        if not self.is_ibox(x, y):
            raise ValueError(f"[{x},{y}] is not an i-box of {self.colors}")
        return IBox(x, y)

    def color_of(self, box: IBox) -> int:
        return self[box.x]

    def phi_positions(self, box: IBox) -> list[int]:
        """Positions inside ``box`` carrying its color, increasing."""
        c = self.color_of(box)
        occ = self._by_color[c]
        return list(occ[bisect.bisect_left(occ, box.x) : bisect.bisect_right(occ, box.y)])

    def close_left(self, x: int, y: int) -> IBox:
        """``[x, y}``: keep ``x``, pull ``y`` back to the last position of color ``i_x``."""
        self._check(x)
        self._check(y)
        if x > y:
            raise ValueError(f"[{x},{y}] is empty")
        return IBox(x, self.prev_color(y, self[x]))

    def close_right(self, x: int, y: int) -> IBox:
        """``{x, y]``: keep ``y``, push ``x`` forward to the first position of color ``i_y``."""
        self._check(x)
        self._check(y)
        if x > y:
            raise ValueError(f"[{x},{y}] is empty")
        return IBox(self.next_color(x, self[y]), y)

    def all_boxes(self, a: int | None = None, b: int | None = None) -> Iterator[IBox]:
        a = self.lo if a is None else a
        b = self.hi if b is None else b
        for x in range(a, b + 1):
            for y in range(x, b + 1):
                if self[x] == self[y]:
                    yield IBox(x, y)

    def commutes(self, b1: IBox, b2: IBox) -> bool:
        def inside(p: IBox, q: IBox) -> bool:
            return self.prev_same(p.x) < q.x and q.y < self.next_same(p.y)

        return inside(b1, b2) or inside(b2, b1)

    def reversed(self) -> "ColorSequence":
        """Mirror image under ``k -> -k``."""
        return ColorSequence(-self.hi, tuple(reversed(self.colors)))


def mirror_box(box: IBox) -> IBox:
    return IBox(-box.y, -box.x)


def next_same(seq: ColorSequence, s: int) -> ExtInt:
    return seq.next_same(s)


def prev_same(seq: ColorSequence, s: int) -> ExtInt:
    return seq.prev_same(s)


def next_color(seq: ColorSequence, s: int, j: int) -> ExtInt:
    return seq.next_color(s, j)


def prev_color(seq: ColorSequence, s: int, j: int) -> ExtInt:
    return seq.prev_color(s, j)


def is_ibox(seq: ColorSequence, x: int, y: int) -> bool:
    return seq.is_ibox(x, y)


def phi_positions(seq: ColorSequence, box: IBox) -> list[int]:
    return seq.phi_positions(box)


def close_left(seq: ColorSequence, x: int, y: int) -> IBox:
    return seq.close_left(x, y)


def close_right(seq: ColorSequence, x: int, y: int) -> IBox:
    return seq.close_right(x, y)


def commutes(seq: ColorSequence, b1: IBox, b2: IBox) -> bool:
    return seq.commutes(b1, b2)


def extend_hat_w0(
    word: Sequence[int], star: Mapping[int, int], lo: int, hi: int
) -> ColorSequence:
    """Extend a length-``r`` word to ``[lo, hi]`` with ``i_{k+r} = (i_k)^*``.

    The word occupies positions ``1..r``; ``star`` must be an involution on
    (at least) the colors of the word.
    """
    if not word:
        raise ValueError("word must be nonempty")
    for c, s in star.items():
        if star.get(s) != c:
            raise ValueError(f"star is not an involution: {c} -> {s} -> {star.get(s)}")
    for c in word:
        if c not in star:
            raise ValueError(f"star undefined on color {c}")
    if lo > hi:
        raise ValueError(f"empty range [{lo},{hi}]")
    r = len(word)
    colors = []
    for k in range(lo, hi + 1):
        q, rem = divmod(k - 1, r)
        c = word[rem]
        # star is an involution, so only the parity of the period shift matters
        if q % 2:
            c = star[c]
        colors.append(c)
    return ColorSequence(lo, tuple(colors))


def boxes_from_pairs(pairs: Iterable[Sequence[int]]) -> list[IBox]:
    return [IBox(int(x), int(y)) for x, y in pairs]
