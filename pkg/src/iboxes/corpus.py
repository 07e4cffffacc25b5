"""The desk-scale verification corpus: every short word over a few small Cartan types."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cartan import CartanMatrix, preset
from .core import ColorSequence
from .families import Family, enumerate_maximal_families

CARTANS = ("A2", "A3", "B2", "G2")
# 1-based, as on the command line
DESIGNATED = (("A2", (1, 2, 1)), ("G2", (1, 2, 1, 2, 1, 2)))


@dataclass(frozen=True)
class CorpusEntry:
    cartan_name: str
    seq: ColorSequence
    cartan: CartanMatrix

    @property
    def label(self) -> str:
        return f"{self.cartan_name}:{','.join(str(c + 1) for c in self.seq.colors)}"


@lru_cache(maxsize=None)
def corpus(max_len: int = 5, cartans: tuple[str, ...] = CARTANS, designated=DESIGNATED) -> tuple[CorpusEntry, ...]:
    out = []
    for name in cartans:
        c = preset(name)
        for n in range(1, max_len + 1):
            for w in itertools.product(range(c.rank), repeat=n):
                out.append(CorpusEntry(name, ColorSequence.from_word(w), c))
    for name, word in designated:
        out.append(CorpusEntry(name, ColorSequence.from_word([k - 1 for k in word]), preset(name)))
    return tuple(out)


@lru_cache(maxsize=None)
def corpus_families(max_len: int = 5) -> tuple[tuple[CorpusEntry, Family], ...]:
    """Every maximal family on the full support of every corpus sequence."""
    return tuple((e, f) for e in corpus(max_len) for f in enumerate_maximal_families(e.seq))
