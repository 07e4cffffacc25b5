"""Symmetrizable Cartan matrices: presets, symmetrizer solving and validation."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence


class CartanError(ValueError):
    pass


@dataclass(frozen=True)
class CartanMatrix:
    """Cartan entries ``c[i][j]`` over 0-based indices with a symmetrizer ``d``.

    ``labels`` are the user-facing names of the indices (``"1".."n"`` for presets).
    """

    c: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = "custom"

    @property
    def rank(self) -> int:
        return len(self.c)

    def __call__(self, i: int, j: int) -> int:
        return self.c[i][j]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise CartanError(
                f"unknown color {label!r}; index set is {list(self.labels)}"
            ) from None

    def to_json(self) -> dict:
        return {
            "index": list(self.labels),
            "c": [list(row) for row in self.c],
            "d": list(self.d),
        }


def validate(m: CartanMatrix) -> list[str]:
    """Return a list of violations; empty means the matrix is a valid symmetrizable Cartan matrix."""
    report = []
    n = m.rank
    if any(len(row) != n for row in m.c):
        return ["shape: matrix is not square"]
    if len(m.d) != n:
        report.append(f"shape: symmetrizer has length {len(m.d)}, expected {n}")
    for i in range(n):
        if m.c[i][i] != 2:
            report.append(f"diagonal: c[{i}][{i}] = {m.c[i][i]}")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if m.c[i][j] > 0:
                report.append(f"off-diagonal: c[{i}][{j}] = {m.c[i][j]} > 0")
            if (m.c[i][j] == 0) != (m.c[j][i] == 0):
                report.append(f"zero-pattern: c[{i}][{j}] = {m.c[i][j]}, c[{j}][{i}] = {m.c[j][i]}")
    if len(m.d) == n:
        for i in range(n):
            if m.d[i] <= 0:
                report.append(f"symmetrizer: d[{i}] = {m.d[i]} is not positive")
        for i in range(n):
            for j in range(i + 1, n):
                if m.d[i] * m.c[i][j] != m.d[j] * m.c[j][i]:
                    report.append(
                        f"symmetrizer: d[{i}]*c[{i}][{j}] != d[{j}]*c[{j}][{i}]"
                    )
    return report


def solve_symmetrizer(c: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Least positive integer ``d`` with ``d_i c_ij = d_j c_ji``; one free scale per component."""
    n = len(c)
    ratio: list[Fraction | None] = [None] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        component = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or c[i][j] == 0:
                    continue
                if c[j][i] == 0:
                    raise CartanError(f"zero-pattern: c[{i}][{j}] != 0 but c[{j}][{i}] = 0")
                want = ratio[i] * Fraction(c[i][j], c[j][i])
                if ratio[j] is None:
                    ratio[j] = want
                    component.append(j)
                    stack.append(j)
                elif ratio[j] != want:
                    raise CartanError("matrix is not symmetrizable")
        scale = math.lcm(*(r.denominator for r in (ratio[k] for k in component)))
        ints = [int(ratio[k] * scale) for k in component]
        g = math.gcd(*ints)
        for k, v in zip(component, ints):
            ratio[k] = Fraction(v // g)
    return tuple(int(r) for r in ratio)


def from_entries(
    c: Sequence[Sequence[int]],
    d: Sequence[int] | None = None,
    labels: Sequence[str] | None = None,
    name: str = "custom",
) -> CartanMatrix:
    c = tuple(tuple(int(v) for v in row) for row in c)
    n = len(c)
    labels = tuple(str(s) for s in (labels or range(1, n + 1)))
    if len(labels) != n or len(set(labels)) != n:
        raise CartanError("index labels must be distinct and match the matrix size")
    d = tuple(int(v) for v in d) if d is not None else solve_symmetrizer(c)
    m = CartanMatrix(c, d, labels, name)
    report = validate(m)
    if report:
        raise CartanError("; ".join(report))
    return m


def _chain_matrix(n: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


_PRESET = re.compile(r"^([A-G])_?(\d+)$")


def preset(name: str) -> CartanMatrix:
    """Finite type Cartan matrix by label, e.g. ``A3``, ``B2``, ``G2``, ``E6``.

    Conventions (1-based, as in the labels): ``B_n`` has ``c[n-1][n] = -2``,
    ``C_n`` is its transpose, ``G2`` has ``c[2][1] = -3``, ``F4`` has ``c[2][3] = -2``.
    """
    m = _PRESET.match(name.strip().upper())
    if not m:
        raise CartanError(f"unknown Cartan type {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A" and n >= 1:
        c = _chain_matrix(n)
    elif kind in "BC" and n >= 2:
        c = _chain_matrix(n)
        c[n - 2][n - 1] = -2
        if kind == "C":
            c = [list(col) for col in zip(*c)]
    elif kind == "D" and n >= 4:
        c = _chain_matrix(n)
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    elif kind == "E" and n in (6, 7, 8):
        # Bourbaki numbering: 1-3-4-5-..., with 2 attached to 4
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, n)]
        for a, b in edges:
            c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    elif kind == "F" and n == 4:
        c = _chain_matrix(4)
        c[1][2] = -2
    elif kind == "G" and n == 2:
        c = [[2, -1], [-3, 2]]
    else:
        raise CartanError(f"invalid rank for type {kind}: {n}")
    return from_entries(c, name=f"{kind}{n}")


def load(path: str | Path) -> CartanMatrix:
    """Read ``{"index": [...], "c": [[...]], "d": [...]}``; ``d`` is optional."""
    data = json.loads(Path(path).read_text())
    try:
        c = data["c"]
    except (KeyError, TypeError):
        raise CartanError(f"{path}: missing 'c'") from None
    return from_entries(c, data.get("d"), data.get("index"), name=Path(path).stem)


def resolve(source: str) -> CartanMatrix:
    """A preset label, or a path to a JSON file."""
    if Path(source).suffix == ".json" or Path(source).exists():
        return load(source)
    return preset(source)
