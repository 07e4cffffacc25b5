"""Exchange-relation monomials and the box-move / matrix-mutation consistency check."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .cartan import CartanMatrix
from .chains import AdmissibleChain, MoveKind, box_move, enumerate_chains
from .core import ColorSequence, IBox
from .exchange import ExchangeMatrix, exchange_matrix, mutate
from .families import Family, family_from_chain


@dataclass(frozen=True)
class Monomial:
    """A product of boxes with positive exponents; the empty product is the unit."""

    factors: tuple[tuple[IBox, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[IBox, int]] | Iterable[IBox] = ()) -> "Monomial":
        counts: Counter = Counter()
        for item in items:
            if isinstance(item, IBox):
                counts[item] += 1
            else:
                box, e = item
                counts[box] += e
        if any(e <= 0 for e in counts.values()):
            raise ValueError("monomial exponents must be positive")
        return cls(tuple(sorted(counts.items())))

    def __bool__(self) -> bool:
        return bool(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(b) if e == 1 else f"{b}^{e}" for b, e in self.factors)

    def to_json(self) -> list:
        return [[[b.x, b.y], e] for b, e in self.factors]


def mutation_monomials(m: ExchangeMatrix, box: IBox) -> tuple[Monomial, Monomial]:
    """``(in, out)``: positive and negative parts of the column of ``box``."""
    col = m.column(box)
    return (
        Monomial.of((r, v) for r, v in col.items() if v > 0),
        Monomial.of((r, -v) for r, v in col.items() if v < 0),
    )


@dataclass(frozen=True)
class TSystem:
    left: Monomial
    middle: Monomial
    right: Monomial


def t_system(seq: ColorSequence, cartan: CartanMatrix, box: IBox) -> TSystem:
    """Monomials of the T-system relation ``[x_+,y][x,y_-] = left + right``."""
    x, y = box
    if not seq.is_ibox(x, y):
        raise ValueError(f"{box} is not an i-box")
    if x == y:
        raise ValueError(f"no T-system for the singleton {box}")
    i = seq[x]
    xp, ym = seq.next_same(x), seq.prev_same(y)
    left = []
    for j in range(cartan.rank):
        if j == i or cartan(j, i) == 0:
            continue
        lo, hi = seq.next_color(x, j), seq.prev_color(y, j)
        if lo <= hi:
            left.append((IBox(lo, hi), -cartan(j, i)))
    right = [IBox(x, y)]
    if xp <= ym:
        right.append(IBox(xp, ym))
    return TSystem(Monomial.of(left), Monomial.of([IBox(xp, y), IBox(x, ym)]), Monomial.of(right))


@dataclass
class ConsistencyReport:
    chain: str
    k0: int
    kind: MoveKind
    before: ExchangeMatrix
    after: ExchangeMatrix
    identification: dict[IBox, IBox]
    passed: bool
    mismatch: tuple | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "chain": self.chain,
            "k0": self.k0,
            "kind": self.kind.value,
            "identification": [[[s.x, s.y], [t.x, t.y]] for s, t in self.identification.items() if s != t],
            "verdict": "pass" if self.passed else "fail",
            "mismatch": None
            if self.mismatch is None
            else [[self.mismatch[0].x, self.mismatch[0].y], [self.mismatch[1].x, self.mismatch[1].y], *self.mismatch[2:]],
            "note": self.note,
        }


def _compare(mu: ExchangeMatrix, target: ExchangeMatrix, phi: dict) -> tuple | None:
    if {phi[k] for k in mu.exchangeable} != set(target.exchangeable):
        k = next(k for k in mu.exchangeable if phi[k] not in target.exchangeable)
        return (k, k, "exchangeable set differs", None)
    for s in mu.rows:
        for t in mu.exchangeable:
            got, want = mu[s, t], target[phi[s], phi[t]]
            if got != want:
                return (s, t, got, want)
    return None


def verify_boxmove_mutation(
    chain: AdmissibleChain, k0: int, cartan: CartanMatrix
) -> ConsistencyReport:
    """Check ``mu_{c_k0}(B~(F)) = B~(B_k0(F))`` for one box move."""
    move = box_move(chain, k0)
    fam = family_from_chain(chain)
    fam2 = family_from_chain(move.chain)
    before = exchange_matrix(fam, cartan)
    after = exchange_matrix(fam2, cartan)
    if move.kind is MoveKind.TRANSPOSITION:
        phi = {b: b for b in fam.boxes}
        same = fam.boxes == fam2.boxes and before == after
        return ConsistencyReport(
            str(chain.spec), k0, move.kind, before, after, phi, same,
            None if same else (chain.box(k0), chain.box(k0), "family changed", None),
            "family-invariant",
        )
    old, new = move.old, move.new
    phi = {b: b for b in fam.boxes}
    phi[old] = new
    if old != chain.box(k0) or new != move.chain.box(k0):
        return ConsistencyReport(str(chain.spec), k0, move.kind, before, after, phi, False,
                                 (old, new, "box-move case split disagrees with chain", None))
    if old not in fam.exchangeable:
        return ConsistencyReport(str(chain.spec), k0, move.kind, before, after, phi, False,
                                 (old, old, "mutated box is frozen", None))
    mu = mutate(before, old)
    mismatch = _compare(mu, after, phi)
    return ConsistencyReport(str(chain.spec), k0, move.kind, mu, after, phi, mismatch is None, mismatch)


def t_system_check(chain: AdmissibleChain, k0: int, cartan: CartanMatrix) -> tuple[bool, str]:
    """For a mutation move, compare the column of ``c_k0`` with the T-system of ``tc_{k0+1}``.

    When ``c_k0 = [x_+, y]`` the column must be ``(in, out) = (left, right)``;
    when ``c_k0 = [x, y_-]`` the roles of the two sides are exchanged.
    """
    move = box_move(chain, k0)
    if move.kind is not MoveKind.MUTATION:
        return True, "transposition"
    env = chain.envelope(k0 + 1)
    fam = family_from_chain(chain)
    m = exchange_matrix(fam, cartan)
    got = mutation_monomials(m, move.old)
    ts = t_system(chain.seq, cartan, env)
    upper = move.old.y == env.y
    want = (ts.left, ts.right) if upper else (ts.right, ts.left)
    side = "[x_+,y]" if upper else "[x,y_-]"
    return got == want, f"{side}: in={got[0]} out={got[1]} | T: left={ts.left} right={ts.right}"


@dataclass
class SweepSummary:
    chains: int = 0
    moves: int = 0
    transpositions: int = 0
    mutations: int = 0
    failures: list = field(default_factory=list)
    t_system_checked: int = 0
    t_system_failures: list = field(default_factory=list)
    branch_counts: Counter = field(default_factory=Counter)
    vertical_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.failures or self.t_system_failures or self.vertical_failures)

    def merge(self, other: "SweepSummary") -> None:
        self.chains += other.chains
        self.moves += other.moves
        self.transpositions += other.transpositions
        self.mutations += other.mutations
        self.failures += other.failures
        self.t_system_checked += other.t_system_checked
        self.t_system_failures += other.t_system_failures
        self.branch_counts.update(other.branch_counts)
        self.vertical_failures += other.vertical_failures

    def line(self) -> str:
        return f"{self.chains} chains, {len(self.failures)} failures"

    def to_json(self) -> dict:
        return {
            "chains": self.chains,
            "moves": self.moves,
            "transpositions": self.transpositions,
            "mutations": self.mutations,
            "failures": self.failures,
            "t_system_checked": self.t_system_checked,
            "t_system_failures": self.t_system_failures,
            "branch_counts": dict(sorted(self.branch_counts.items())),
            "vertical_failures": self.vertical_failures,
        }


def _sweep_chain(chain: AdmissibleChain, cartan: CartanMatrix) -> SweepSummary:
    out = SweepSummary(chains=1)
    for k0 in chain.movable_indices():
        rep = verify_boxmove_mutation(chain, k0, cartan)
        out.moves += 1
        if rep.kind is MoveKind.TRANSPOSITION:
            out.transpositions += 1
        else:
            out.mutations += 1
            ok, detail = t_system_check(chain, k0, cartan)
            out.t_system_checked += 1
            if not ok:
                out.t_system_failures.append(f"{chain.seq.colors} {chain.spec} k0={k0}: {detail}")
        if not rep.passed:
            out.failures.append(f"{chain.seq.colors} {chain.spec} k0={k0}: {rep.mismatch}")
    return out


def _sweep_job(args) -> SweepSummary:
    seq, cartan, a, b, with_arrows = args
    out = SweepSummary()
    for chain in enumerate_chains(seq, a, b):
        out.merge(_sweep_chain(chain, cartan))
    if with_arrows:
        from .arrows import vertical_sweep  # arrows imports this module

        counts, fails = vertical_sweep(seq, cartan, a, b)
        out.branch_counts.update(counts)
        out.vertical_failures += fails
    return out


def sweep_verify(
    seq: ColorSequence,
    cartan: CartanMatrix,
    a: int | None = None,
    b: int | None = None,
    with_arrows: bool = True,
) -> SweepSummary:
    """Verify every movable index of every chain with extent ``[a, b]``."""
    a = seq.lo if a is None else a
    b = seq.hi if b is None else b
    return _sweep_job((seq, cartan, a, b, with_arrows))


def sweep_many(jobs: list[tuple[ColorSequence, CartanMatrix]], workers: int | None = None,
               with_arrows: bool = True) -> SweepSummary:
    """Sweep several sequences (each over its full support); result is independent of ``workers``."""
    workers = workers or int(os.environ.get("IBOXES_WORKERS", "1"))
    args = [(s, c, s.lo, s.hi, with_arrows) for s, c in jobs]
    total = SweepSummary()
    if workers <= 1:
        parts = map(_sweep_job, args)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        parts = pool.map(_sweep_job, args, chunksize=8)
    for part in parts:
        total.merge(part)
    if workers > 1:
        pool.shutdown()
    return total
