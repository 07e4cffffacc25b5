"""Maximal commuting families of i-boxes, effective ends and color fibers."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .chains import AdmissibleChain, canonical_chain_for_family, enumerate_chains
from .core import ColorSequence, IBox


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class ColorFiber:
    color: int
    boxes: tuple[IBox, ...]


@dataclass(frozen=True, eq=False)
class Family:
    """A maximal commuting family on ``[a, b]`` with its effective-end map.

    ``order`` lists the boxes by increasing effective end; every downstream
    matrix uses it as row/column order.
    """

    seq: ColorSequence
    a: int
    b: int
    boxes: frozenset[IBox]
    efe: dict[IBox, int] = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return (self.seq, self.a, self.b, self.boxes) == (other.seq, other.a, other.b, other.boxes)

    def __hash__(self):
        return hash((self.seq, self.a, self.b, self.boxes))

    def __contains__(self, box: IBox) -> bool:
        return box in self.boxes

    def __len__(self) -> int:
        return len(self.boxes)

    @cached_property
    def order(self) -> tuple[IBox, ...]:
        return tuple(sorted(self.boxes, key=self.efe.__getitem__))

    def has(self, x, y) -> bool:
        """Membership for possibly infinite/invalid endpoints."""
        if not (isinstance(x, int) and isinstance(y, int)) or x > y:
            return False
        return IBox(x, y) in self.boxes

    def color(self, box: IBox) -> int:
        return self.seq[box.x]

    def is_frozen(self, box: IBox) -> bool:
        return self.seq.prev_same(box.x) < self.a and self.b < self.seq.next_same(box.y)

    @cached_property
    def frozen(self) -> tuple[IBox, ...]:
        return tuple(bx for bx in self.order if self.is_frozen(bx))

    @cached_property
    def exchangeable(self) -> tuple[IBox, ...]:
        return tuple(bx for bx in self.order if not self.is_frozen(bx))

    def to_json(self) -> dict:
        return {"range": [self.a, self.b], "boxes": [[bx.x, bx.y] for bx in self.order]}


def _efe_criterion(seq: ColorSequence, boxes: frozenset[IBox], box: IBox) -> int:
    x, y = box
    if x == y:
        return x
    left = IBox(seq.next_same(x), y) in boxes
    right = IBox(x, seq.prev_same(y)) in boxes
    if left == right:
        raise FamilyError(f"{box}: neither or both ends effective; family not maximal")
    return x if left else y


def family_from_chain(chain: AdmissibleChain) -> Family:
    efe = {chain.box(k): chain.new_position(k) for k in range(1, chain.length + 1)}
    ext = chain.extent
    return Family(chain.seq, ext.x, ext.y, chain.box_set, efe)


def family_from_boxes(
    seq: ColorSequence, a: int, b: int, boxes: Iterable[IBox]
) -> Family:
    """Validate a box set as a maximal commuting family on ``[a, b]``."""
    boxes = frozenset(boxes)
    for bx in boxes:
        if not (a <= bx.x <= bx.y <= b and seq.is_ibox(bx.x, bx.y)):
            raise FamilyError(f"{bx} is not an i-box inside [{a},{b}]")
    if not is_maximal(seq, a, b, boxes):
        raise FamilyError(f"boxes do not form a maximal commuting family on [{a},{b}]")
    efe = {bx: _efe_criterion(seq, boxes, bx) for bx in boxes}
    return Family(seq, a, b, boxes, efe)


def effective_end(family: Family, box: IBox) -> int:
    """Chain-free effective end: ``x`` iff ``x = y`` or ``[x_+, y]`` is in the family."""
    if box not in family:
        raise FamilyError(f"{box} is not in the family")
    return _efe_criterion(family.seq, family.boxes, box)


def is_commuting(seq: ColorSequence, boxes: Iterable[IBox]) -> bool:
    boxes = list(boxes)
    return all(
        seq.commutes(p, q) for i, p in enumerate(boxes) for q in boxes[i + 1 :]
    )


def is_maximal(seq: ColorSequence, a: int, b: int, boxes: Iterable[IBox]) -> bool:
    """Commuting, and no other i-box of ``[a, b]`` commutes with every member."""
    boxes = set(boxes)
    if not is_commuting(seq, boxes):
        return False
    for cand in seq.all_boxes(a, b):
        if cand not in boxes and all(seq.commutes(cand, bx) for bx in boxes):
            return False
    return True


def color_fiber(family: Family, j: int) -> ColorFiber:
    """``F_j`` as an increasing chain of boxes."""
    boxes = sorted(
        (bx for bx in family.boxes if family.color(bx) == j), key=lambda bx: bx.y - bx.x
    )
    if not boxes:
        raise FamilyError(f"color {j} does not occur in [{family.a},{family.b}]")
    return ColorFiber(j, tuple(boxes))


def is_right_corner(family: Family, box: IBox) -> bool:
    seq = family.seq
    return family.has(box.x, seq.prev_same(box.y)) and family.has(seq.prev_same(box.x), box.y)


def is_left_corner(family: Family, box: IBox) -> bool:
    seq = family.seq
    return family.has(seq.next_same(box.x), box.y) and family.has(box.x, seq.next_same(box.y))


def partition(family: Family) -> tuple[tuple[IBox, ...], tuple[IBox, ...]]:
    return family.frozen, family.exchangeable


def enumerate_maximal_families(
    seq: ColorSequence, a: int | None = None, b: int | None = None
) -> list[Family]:
    """Every maximal commuting family on ``[a, b]``, one per distinct box set.

    Each family keeps the effective ends of the first chain producing it;
    ordered by the first chain in lexicographic word order.
    """
    seen: dict[frozenset[IBox], Family] = {}
    for chain in enumerate_chains(seq, a, b):
        if chain.box_set not in seen:
            seen[chain.box_set] = family_from_chain(chain)
    return list(seen.values())


def chain_for(family: Family) -> AdmissibleChain:
    return canonical_chain_for_family(family.seq, family.boxes, family.a, family.b)
