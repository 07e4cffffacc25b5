"""Admissible chains of i-boxes, box moves and chain reconstruction from a family."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .core import ColorSequence, IBox


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class ChainSpec:
    """Start position and L/R growth word of an admissible chain."""

    start: int
    word: str = ""

    def __post_init__(self):
        word = "".join(self.word).upper()
        if set(word) - {"L", "R"}:
            raise ChainError(f"chain word {self.word!r} may only contain L and R")
        object.__setattr__(self, "word", word)

    @classmethod
    def parse(cls, text: str) -> "ChainSpec":
        """``"x;RLLR"`` syntax."""
        start, sep, word = text.partition(";")
        try:
            return cls(int(start.strip()), word.strip())
        except ValueError as err:
            raise ChainError(f"bad chain {text!r}: expected 'x;RL...' ({err})") from None

    def __str__(self) -> str:
        return f"{self.start};{self.word}"

    @property
    def length(self) -> int:
        return len(self.word) + 1

    @property
    def extent(self) -> tuple[int, int]:
        return self.start - self.word.count("L"), self.start + self.word.count("R")


class MoveKind(enum.Enum):
    TRANSPOSITION = "transposition"
    MUTATION = "mutation"


@dataclass(frozen=True)
class BoxMove:
    kind: MoveKind
    chain: "AdmissibleChain"
    old: IBox | None = None
    new: IBox | None = None


@dataclass(frozen=True)
class AdmissibleChain:
    seq: ColorSequence
    spec: ChainSpec
    boxes: tuple[IBox, ...] = field(init=False)
    envelopes: tuple[IBox, ...] = field(init=False)

    def __post_init__(self):
        seq, spec = self.seq, self.spec
        lo, hi = spec.extent
        if lo < seq.lo or hi > seq.hi:
            raise ChainError(
                f"chain {spec}: envelope escapes range [{seq.lo},{seq.hi}]"
            )
        tx = ty = spec.start
        boxes = [IBox(tx, tx)]
        envs = [IBox(tx, tx)]
        for t in spec.word:
            if t == "L":
                tx -= 1
                boxes.append(seq.close_left(tx, ty))
            else:
                ty += 1
                boxes.append(seq.close_right(tx, ty))
            envs.append(IBox(tx, ty))
        object.__setattr__(self, "boxes", tuple(boxes))
        object.__setattr__(self, "envelopes", tuple(envs))

    @property
    def length(self) -> int:
        return self.spec.length

    @property
    def extent(self) -> IBox:
        return self.envelopes[-1]

    def box(self, k: int) -> IBox:
        """``c_k`` with 1-based ``k``."""
        return self.boxes[k - 1]

    def envelope(self, k: int) -> IBox:
        return self.envelopes[k - 1]

    def new_position(self, k: int) -> int:
        """The unique element of ``tc_k minus tc_{k-1}``."""
        if k == 1:
            return self.spec.start
        return self.envelope(k).x if self.spec.word[k - 2] == "L" else self.envelope(k).y

    @cached_property
    def box_set(self) -> frozenset[IBox]:
        return frozenset(self.boxes)

    def is_movable(self, k: int) -> bool:
        w = self.spec.word
        if not 1 <= k < self.length:
            return False
        return k == 1 or w[k - 2] != w[k - 1]

    def movable_indices(self) -> list[int]:
        return [k for k in range(1, self.length) if self.is_movable(k)]


def build_chain(seq: ColorSequence, spec: ChainSpec) -> AdmissibleChain:
    return AdmissibleChain(seq, spec)


def is_movable(chain: AdmissibleChain, k: int) -> bool:
    return chain.is_movable(k)


def _flip(t: str) -> str:
    return "R" if t == "L" else "L"


def box_move(chain: AdmissibleChain, k: int) -> BoxMove:
    """Shift ``tc_k`` by one inside ``tc_{k+1}``."""
    if not chain.is_movable(k):
        raise ChainError(f"c_{k} is not movable in chain {chain.spec}")
    spec = chain.spec
    word = list(spec.word)
    start = spec.start
    if k == 1:
        start += 1 if word[0] == "R" else -1
    for s in (k - 1, k):
        if 1 <= s <= len(word):
            word[s - 1] = _flip(word[s - 1])
    moved = AdmissibleChain(chain.seq, ChainSpec(start, "".join(word)))

    env = chain.envelope(k + 1)
    seq = chain.seq
    if not seq.is_ibox(env.x, env.y):
        return BoxMove(MoveKind.TRANSPOSITION, moved)
    x, y = env.x, env.y
    upper = IBox(seq.next_same(x), y)  # [x_+, y]
    lower = IBox(x, seq.prev_same(y))  # [x, y_-]
    # for k = 1 the missing T_0 behaves as the opposite of T_1
    prev_t = spec.word[k - 2] if k > 1 else _flip(spec.word[0])
    old, new = (upper, lower) if prev_t == "R" else (lower, upper)
    return BoxMove(MoveKind.MUTATION, moved, old, new)


def enumerate_chains(
    seq: ColorSequence, a: int | None = None, b: int | None = None
) -> Iterator[AdmissibleChain]:
    """Every admissible chain with extent ``[a, b]``, words in lexicographic order."""
    a = seq.lo if a is None else a
    b = seq.hi if b is None else b
    if not (seq.lo <= a <= b <= seq.hi):
        raise ChainError(f"interval [{a},{b}] not inside [{seq.lo},{seq.hi}]")
    for letters in itertools.product("LR", repeat=b - a):
        word = "".join(letters)
        yield AdmissibleChain(seq, ChainSpec(a + word.count("L"), word))


def canonical_chain_for_family(
    seq: ColorSequence, boxes: Iterable[IBox], a: int | None = None, b: int | None = None
) -> AdmissibleChain:
    """Rebuild a chain whose box set is the given maximal commuting family.

    Peels off the outermost box at each step, preferring the one anchored at
    the right end when both are removable.
    """
    remaining = set(boxes)
    original = frozenset(remaining)
    a = min(bx.x for bx in remaining) if a is None else a
    b = max(bx.y for bx in remaining) if b is None else b
    letters = []
    lo, hi = a, b
    while lo < hi:
        right = seq.close_right(lo, hi)
        left = seq.close_left(lo, hi)
        if right in remaining and sum(1 for bx in remaining if bx.y == hi) == 1:
            remaining.discard(right)
            letters.append("R")
            hi -= 1
        elif left in remaining and sum(1 for bx in remaining if bx.x == lo) == 1:
            remaining.discard(left)
            letters.append("L")
            lo += 1
        else:
            raise ChainError(f"family is not maximal commuting on [{a},{b}]")
    chain = AdmissibleChain(seq, ChainSpec(lo, "".join(reversed(letters))))
    if chain.box_set != original:
        raise ChainError(f"family is not maximal commuting on [{a},{b}]")
    return chain
