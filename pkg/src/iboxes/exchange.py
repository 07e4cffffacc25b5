"""The exchange matrix of a maximal commuting family, its quiver and matrix mutation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .cartan import CartanMatrix
from .core import IBox
from .families import Family


class ExchangeError(ValueError):
    pass


def positive_entry(
    family: Family, cartan: CartanMatrix, src: IBox, dst: IBox
) -> tuple[int, str | None]:
    """Value of ``b[src, dst]`` if it is positive, with the rule that produced it.

    Tag ``"H"`` is the horizontal rule, ``"a"``..``"d"`` the vertical
    conditions.  Returns ``(0, None)`` when no rule fires.
    """
    if src not in family or dst not in family:
        raise ExchangeError(f"{src} or {dst} is not in the family")
    seq = family.seq
    x, y = src
    x2, y2 = dst
    xm, yp, ym = seq.prev_same(x), seq.next_same(y), seq.prev_same(y)
    if (x == x2 and y2 == ym) or (y == y2 and x2 == xm):
        return 1, "H"
    c = cartan(seq[x], seq[x2])
    if c >= 0:
        return 0, None
    x2m, y2p = seq.prev_same(x2), seq.next_same(y2)
    efe_src_x = family.efe[src] == x
    efe_dst_y = family.efe[dst] == y2
    up = family.has(x, yp)  # [x, y_+]
    down = family.has(x2m, y2)  # [x'_-, y']
    if up and efe_src_x and x2m < x < x2 and y2 < yp < y2p:
        return -c, "a"
    if up and efe_dst_y and x2m < x and y < y2 < yp < y2p:
        return -c, "b"
    if down and efe_dst_y and xm < x2m < x and y < y2 < yp:
        return -c, "c"
    if down and efe_src_x and xm < x2m < x < x2 and y2 < yp:
        return -c, "d"
    return 0, None


def _check_skew(full: np.ndarray, d: Sequence[int], rows, cols=None) -> None:
    dv = np.asarray(d)
    idx = range(len(rows)) if cols is None else cols
    for s in idx:
        for t in idx:
            if dv[s] * full[s, t] != -dv[t] * full[t, s]:
                raise ExchangeError(
                    f"skew-symmetrizability fails at ({rows[s]}, {rows[t]})"
                )


@dataclass(frozen=True, eq=False)
class ExchangeMatrix:
    """``B~`` with rows ``rows`` and columns the exchangeable sublist.

    ``full`` is the square extension over all rows when known.  ``d`` is the
    skew-symmetrizer aligned with ``rows``.
    """

    rows: tuple[Hashable, ...]
    exchangeable: tuple[Hashable, ...]
    entries: np.ndarray
    d: tuple[int, ...]
    full: np.ndarray | None = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64).reshape(
            len(self.rows), len(self.exchangeable)
        )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if self.full is not None:
            full = np.array(self.full, dtype=np.int64)
            full.setflags(write=False)
            object.__setattr__(self, "full", full)

    @property
    def col_index(self) -> list[int]:
        pos = {r: i for i, r in enumerate(self.rows)}
        return [pos[k] for k in self.exchangeable]

    def __getitem__(self, key) -> int:
        s, t = key
        return int(self.entries[self.rows.index(s), self.exchangeable.index(t)])

    def column(self, t) -> dict:
        j = self.exchangeable.index(t)
        return {r: int(self.entries[i, j]) for i, r in enumerate(self.rows)}

    def __eq__(self, other):
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.exchangeable == other.exchangeable
            and np.array_equal(self.entries, other.entries)
        )

    def check_skew(self) -> None:
        if self.full is not None:
            _check_skew(self.full, self.d, self.rows)
            return
        cols = self.col_index
        for a, s in enumerate(cols):
            for b, t in enumerate(cols):
                if self.d[s] * self.entries[s, b] != -self.d[t] * self.entries[t, a]:
                    raise ExchangeError(
                        f"skew-symmetrizability fails at ({self.rows[s]}, {self.rows[t]})"
                    )

    def to_json(self) -> dict:
        def label(r):
            return [r.x, r.y] if isinstance(r, IBox) else r

        return {
            "boxes": [label(r) for r in self.rows],
            "exchangeable": [label(r) for r in self.exchangeable],
            "entries": self.entries.tolist(),
        }


def exchange_matrix(family: Family, cartan: CartanMatrix) -> ExchangeMatrix:
    """``B^(F)`` over ``F x F`` (efe order) restricted to exchangeable columns."""
    rows = family.order
    n = len(rows)
    d = tuple(cartan.d[family.color(bx)] for bx in rows)
    full = np.zeros((n, n), dtype=np.int64)
    pos = np.zeros((n, n), dtype=np.int64)
    for s, src in enumerate(rows):
        for t, dst in enumerate(rows):
            if s != t:
                pos[s, t] = positive_entry(family, cartan, src, dst)[0]
    for s in range(n):
        for t in range(n):
            if pos[s, t] and pos[t, s]:
                raise ExchangeError(f"both b[{rows[s]},{rows[t]}] and its reverse are positive")
            if pos[s, t]:
                full[s, t] = pos[s, t]
            elif pos[t, s]:
                num = -d[t] * pos[t, s]
                if num % d[s]:
                    raise ExchangeError(f"non-integral entry at ({rows[s]}, {rows[t]})")
                full[s, t] = num // d[s]
    ex = family.exchangeable
    cols = [rows.index(k) for k in ex]
    m = ExchangeMatrix(rows, ex, full[:, cols], d, full)
    m.check_skew()
    return m


def _mutate_array(b: np.ndarray, k_row: int, k_col: int) -> np.ndarray:
    """FZ rule on a rectangular block whose column ``k_col`` is row ``k_row``'s index."""
    bk = b[:, k_col]  # b_{s,k}
    kb = b[k_row, :]  # b_{k,t}
    prod = np.outer(bk, kb)
    sign = np.where(bk < 0, -1, 1)[:, None]
    out = b + sign * np.maximum(prod, 0)
    out[k_row, :] = -b[k_row, :]
    out[:, k_col] = -b[:, k_col]
    return out


def mutate(m: ExchangeMatrix, k) -> ExchangeMatrix:
    """Matrix mutation in an exchangeable direction ``k``."""
    if k not in m.exchangeable:
        raise ExchangeError(f"cannot mutate at {k}: not exchangeable")
    k_row = m.rows.index(k)
    entries = _mutate_array(m.entries, k_row, m.exchangeable.index(k))
    full = None if m.full is None else _mutate_array(m.full, k_row, k_row)
    out = ExchangeMatrix(m.rows, m.exchangeable, entries, m.d, full)
    out.check_skew()
    return out


@dataclass(frozen=True)
class Arrow:
    source: IBox
    target: IBox
    weight: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[IBox, ...]
    colors: tuple[str, ...]
    frozen: frozenset[IBox]
    arrows: tuple[Arrow, ...]


def quiver(m: ExchangeMatrix, family: Family, cartan: CartanMatrix) -> Quiver:
    """Arrow ``s -> t`` of weight ``d_s b[s,t]`` for each positive entry of the full matrix."""
    full = m.full if m.full is not None else m.entries
    cols = range(len(m.rows)) if m.full is not None else m.col_index
    arrows = []
    for s, src in enumerate(m.rows):
        for ci, t in enumerate(cols):
            v = int(full[s, ci])
            if v > 0:
                arrows.append(Arrow(src, m.rows[t], m.d[s] * v))
    labels = tuple(cartan.labels[family.color(bx)] for bx in m.rows)
    return Quiver(m.rows, labels, frozenset(family.frozen), tuple(arrows))


def to_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    for v, c in zip(q.vertices, q.colors):
        shape = "box" if v in q.frozen else "ellipse"
        lines.append(f'  "{v}" [label="{v} ({c})", shape={shape}];')
    for a in q.arrows:
        lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.weight}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
