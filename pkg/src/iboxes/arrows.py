"""Vertical arrows at an exchangeable box, predicted from the family's shape alone.

For an exchangeable box ``[x, y]`` of color ``i`` and a color ``j`` with
``c[i][j] < 0``, ``Vin_j`` / ``Vout_j`` are the boxes of color ``j`` with an
arrow into / out of ``[x, y]``.  ``classify_vertical`` rebuilds both sets from
corners, effective ends and a few witness boxes, without looking at the
matrix, and records every structural claim it relies on.  A failed claim is a
``failures`` entry on the report; ``vertical_sets`` reads the same sets off
the matrix so the two can be compared.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .cartan import CartanMatrix
from .core import IBox, is_finite
from .exchange import ExchangeMatrix, exchange_matrix
from .families import Family, enumerate_maximal_families, is_left_corner, is_right_corner


class ArrowError(ValueError):
    pass


class HorizontalContext(enum.Enum):
    BOTH_LEFT = ">>"  # [x_+,y] -> [x,y] -> [x_-,y]
    BOTH_RIGHT = "<<"  # [x,y_-] <- [x,y] <- [x,y_+]
    SPLIT_LR = "<>"  # [x,y_-] <- [x,y] -> [x_-,y]
    SPLIT_RL = "><"  # [x_+,y] -> [x,y] <- [x,y_+]
    SINGLETON_LEFT = ">"  # [x,x] -> [x_-,x]
    SINGLETON_RIGHT = "<"  # [x,x] <- [x,x_+]


BRANCHES = {
    HorizontalContext.BOTH_LEFT: ("empty", "generic_flat", "generic_chain"),
    HorizontalContext.BOTH_RIGHT: ("empty", "generic_flat", "generic_chain"),
    HorizontalContext.SPLIT_LR: ("empty", "between", "in_F", "generic_point", "generic_chain"),
    HorizontalContext.SPLIT_RL: ("empty", "between", "in_F", "generic_point", "generic_chain"),
    HorizontalContext.SINGLETON_LEFT: ("empty", "in_F", "generic_d", "generic_e"),
    HorizontalContext.SINGLETON_RIGHT: ("empty", "in_F", "generic_d", "generic_e"),
}


def all_branch_keys() -> list[str]:
    return [f"{ctx.name}:{b}" for ctx, bs in BRANCHES.items() for b in bs]


def coarse_branch(branch: str) -> str:
    """Merge the generic sub-cases (``generic_flat``, ``generic_chain``, ...) into ``generic``."""
    return "generic" if branch.startswith("generic") else branch


def coarse_branch_keys() -> list[str]:
    return sorted({f"{ctx.name}:{coarse_branch(b)}" for ctx, bs in BRANCHES.items() for b in bs})


def horizontal_context(family: Family, box: IBox) -> HorizontalContext:
    if box not in family:
        raise ArrowError(f"{box} is not in the family")
    if family.is_frozen(box):
        raise ArrowError(f"{box} is frozen; vertical analysis needs an exchangeable box")
    seq = family.seq
    x, y = box
    xm, xp = seq.prev_same(x), seq.next_same(x)
    ym, yp = seq.prev_same(y), seq.next_same(y)
    left_in = family.has(xm, y)  # [x_-, y]
    right_out = family.has(x, yp)  # [x, y_+]
    if left_in == right_out:
        raise ArrowError(f"{box}: exactly one of [x_-,y], [x,y_+] must be in the family")
    if x == y:
        return HorizontalContext.SINGLETON_LEFT if left_in else HorizontalContext.SINGLETON_RIGHT
    strip_left = family.has(xp, y)  # [x_+, y]
    strip_right = family.has(x, ym)  # [x, y_-]
    if strip_left == strip_right:
        raise ArrowError(f"{box}: exactly one of [x_+,y], [x,y_-] must be in the family")
    if strip_left:
        return HorizontalContext.BOTH_LEFT if left_in else HorizontalContext.SPLIT_RL
    return HorizontalContext.SPLIT_LR if left_in else HorizontalContext.BOTH_RIGHT


@dataclass
class ColorReport:
    """Predicted ``Vin_j`` / ``Vout_j`` with part labels, witnesses and claim failures."""

    color: int
    branch: str
    vin: dict[IBox, str] = field(default_factory=dict)
    vout: dict[IBox, str] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)
    corners: list[IBox] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def to_json(self, labels) -> dict:
        def boxes(d):
            return [{"box": [b.x, b.y], "part": p} for b, p in sorted(d.items())]

        def wit(v):
            return [v.x, v.y] if isinstance(v, IBox) else v

        return {
            "color": labels[self.color],
            "branch": self.branch,
            "in": boxes(self.vin),
            "out": boxes(self.vout),
            "witnesses": {k: wit(v) for k, v in self.witnesses.items()},
            "corners": [[b.x, b.y] for b in self.corners],
            "failures": self.failures,
        }


@dataclass
class VerticalReport:
    box: IBox
    context: HorizontalContext
    colors: dict[int, ColorReport]

    @property
    def failures(self) -> list[str]:
        return [f"j={j}: {f}" for j, r in self.colors.items() for f in r.failures]

    def to_json(self, labels) -> dict:
        return {
            "box": [self.box.x, self.box.y],
            "context": self.context.value,
            "colors": [r.to_json(labels) for _, r in sorted(self.colors.items())],
        }


class _Probe:
    """Navigation and membership helpers around one ``(family, box, j)``."""

    def __init__(self, family: Family, box: IBox, j: int, report: ColorReport):
        self.F = family
        self.seq = family.seq
        self.x, self.y = box
        self.j = j
        self.report = report
        self.fiber = [b for b in family.order if family.color(b) == j]
        self.by_efe = {e: b for b, e in family.efe.items()}

    def plus(self, s):
        return self.seq.next_same(s) if is_finite(s) else s

    def minus(self, s):
        return self.seq.prev_same(s) if is_finite(s) else s

    def jp(self, s):
        """``s(j)^+``, extended to out-of-range ``s``."""
        if s > self.seq.hi:
            return s
        return self.seq.next_color(max(s, self.seq.lo), self.j)

    def jm(self, s):
        """``s(j)^-``, extended to out-of-range ``s``."""
        if s < self.seq.lo:
            return s
        return self.seq.prev_color(min(s, self.seq.hi), self.j)

    def has(self, x, y) -> bool:
        return self.F.has(x, y)

    def efe(self, b: IBox) -> int:
        return self.F.efe[b]

    def rc(self, b: IBox) -> bool:
        return is_right_corner(self.F, b)

    def lc(self, b: IBox) -> bool:
        return is_left_corner(self.F, b)

    def with_efe(self, p) -> IBox | None:
        return self.by_efe.get(p) if is_finite(p) else None

    def claim(self, cond: bool, msg: str) -> bool:
        if not cond:
            self.report.failures.append(msg)
        return cond

    def same(self, got, want, what: str) -> None:
        got, want = set(got), set(want)
        self.claim(got == want, f"{what}: structural {sorted(map(str, got))} vs {sorted(map(str, want))}")

    def fib(self, pred) -> set[IBox]:
        return {b for b in self.fiber if pred(b)}

    def smallest_containing(self, p: int) -> IBox | None:
        inside = [b for b in self.fiber if b.x <= p <= b.y]
        return min(inside, key=lambda b: b.y - b.x) if inside else None


def _decreasing(boxes) -> list[IBox]:
    return sorted(boxes, key=lambda b: (b.x - b.y, b.x))


def _strictly_between(inner: IBox, outer: IBox):
    return lambda b: inner in b and b in outer and b != inner and b != outer


def _assign(report: ColorReport, side: str, parts: dict[str, set[IBox]]) -> None:
    target = report.vin if side == "in" else report.vout
    for label, boxes in parts.items():
        for b in boxes:
            if b in target:
                report.failures.append(f"{b} lies in both parts {target[b]} and {label} of V{side}")
            target[b] = label


# BOTH_LEFT / BOTH_RIGHT ------------------------------------------------------


def _both_left(P: _Probe, r: ColorReport) -> None:
    x = P.x
    xm = P.minus(x)
    X1 = P.jp(xm)  # x_-(j)^+
    xjm, xjp = P.jm(x), P.jp(x)
    r.witnesses["x_-(j)^+"] = X1
    band = lambda b: X1 < b.x <= xjm
    char_vo_e = P.fib(lambda b: P.rc(b) and band(b))
    char_vi_e = P.fib(lambda b: P.lc(b) and band(b)) | P.fib(
        lambda b: b.x == b.y and P.has(b.x, P.plus(b.x)) and band(b)
    )
    char_vo_o = P.fib(lambda b: b.x == xjp and P.has(xjm, b.y) and X1 < x)
    char_vi_o = P.fib(lambda b: b.x == X1 and P.efe(b) == X1 and X1 < x)
    P.claim(len(char_vo_o) <= 1 and len(char_vi_o) <= 1, "|Vout^o|, |Vin^o| <= 1")

    if X1 > x:
        r.branch = "empty"
        P.same(char_vo_e | char_vo_o | char_vi_e | char_vi_o, (), "x_-(j)^+ > x forces empty sets")
        return
    zb, wb = P.with_efe(X1), P.with_efe(xjm)
    if not (P.claim(zb is not None and zb.x == X1, "witness [x_-(j)^+, z] with efe x_-(j)^+")
            and P.claim(wb is not None and wb.x == xjm, "witness [x(j)^-, w] with efe x(j)^-")):
        r.branch = "inapplicable"
        return
    z, w = zb.y, wb.y
    r.witnesses.update(z=z, w=w)
    P.claim(xjm <= w <= z <= P.F.b, "x(j)^- <= w <= z <= b")
    vi_o = {zb}
    vo_o = {IBox(xjp, w)} if xjp <= w else set()
    if w == z:
        r.branch = "generic_flat"
        vo_e, vi_e = set(), set()
    else:
        r.branch = "generic_chain"
        chain = _decreasing(P.fib(lambda b: P.rc(b) and wb in b and b in zb and b != zb))
        r.corners = chain
        if P.claim(bool(chain), "w < z gives a nonempty Vout^e"):
            P.claim(chain[0].y == z, "y^(1) = z")
        vo_e = set(chain)
        vi_e = {IBox(chain[k].x, chain[k + 1].y) for k in range(len(chain) - 1)}
        if chain:
            vi_e.add(IBox(chain[-1].x, w))
        shifted = {IBox(b.x, min(c.y for c in P.fiber if c.x == b.x)) for b in chain}
        P.same(shifted, vi_e, "end-shift bijection Vout^e -> Vin^e")
    P.same(vo_e, char_vo_e, "Vout^e")
    P.same(vi_e, char_vi_e, "Vin^e")
    P.same(vo_o, char_vo_o, "Vout^o")
    P.same(vi_o, char_vi_o, "Vin^o")
    _assign(r, "out", {"e": vo_e, "o": vo_o})
    _assign(r, "in", {"e": vi_e, "o": vi_o})


def _both_right(P: _Probe, r: ColorReport) -> None:
    y = P.y
    yp = P.plus(y)
    Y1 = P.jm(yp)  # y_+(j)^-
    yjm, yjp = P.jm(y), P.jp(y)
    r.witnesses["y_+(j)^-"] = Y1
    band = lambda v: yjp <= v < Y1
    char_vi_e = P.fib(lambda b: P.lc(b) and band(b.y))
    char_vi_o = P.fib(lambda b: b.y == yjm and P.has(b.x, yjp) and y < Y1)
    char_vo_e = P.fib(lambda b: P.rc(b) and band(b.y)) | P.fib(
        lambda b: b.x == b.y and P.has(P.minus(b.x), b.x) and band(b.x)
    )
    char_vo_o = P.fib(lambda b: b.y == Y1 and P.efe(b) == Y1 and y < Y1)
    P.claim(len(char_vo_o) <= 1 and len(char_vi_o) <= 1, "|Vout^o|, |Vin^o| <= 1")

    if y > Y1:
        r.branch = "empty"
        P.same(char_vo_e | char_vo_o | char_vi_e | char_vi_o, (), "y > y_+(j)^- forces empty sets")
        return
    zb, wb = P.with_efe(Y1), P.with_efe(yjp)
    if not (P.claim(zb is not None and zb.y == Y1, "witness [z, y_+(j)^-] with efe y_+(j)^-")
            and P.claim(wb is not None and wb.y == yjp, "witness [w, y(j)^+] with efe y(j)^+")):
        r.branch = "inapplicable"
        return
    z, w = zb.x, wb.x
    r.witnesses.update(z=z, w=w)
    P.claim(P.F.a <= z <= w <= yjp, "a <= z <= w")
    vo_o = {zb}
    vi_o = {IBox(w, yjm)} if w < yjp else set()
    if z == w:
        r.branch = "generic_flat"
        vo_e, vi_e = set(), set()
    else:
        r.branch = "generic_chain"
        chain = _decreasing(P.fib(lambda b: P.lc(b) and wb in b and b in zb and b != zb))
        r.corners = chain
        if P.claim(bool(chain), "z < w gives a nonempty Vin^e"):
            P.claim(chain[0].x == z, "x^(1) = z")
        vi_e = set(chain)
        vo_e = {IBox(chain[k + 1].x, chain[k].y) for k in range(len(chain) - 1)}
        if chain:
            vo_e.add(IBox(w, chain[-1].y))
        shifted = {IBox(max(c.x for c in P.fiber if c.y == b.y), b.y) for b in chain}
        P.same(shifted, vo_e, "end-shift bijection Vin^e -> Vout^e")
    P.same(vo_e, char_vo_e, "Vout^e")
    P.same(vi_e, char_vi_e, "Vin^e")
    P.same(vo_o, char_vo_o, "Vout^o")
    P.same(vi_o, char_vi_o, "Vin^o")
    _assign(r, "out", {"e": vo_e, "o": vo_o})
    _assign(r, "in", {"e": vi_e, "o": vi_o})


# SPLIT_LR / SPLIT_RL ---------------------------------------------------------


def _split_lr(P: _Probe, r: ColorReport) -> None:
    x, y = P.x, P.y
    xm, yp = P.minus(x), P.plus(y)
    X1 = P.jp(xm)
    xjm, xjp, yjm, yjp = P.jm(x), P.jp(x), P.jm(y), P.jp(y)
    r.witnesses["x_-(j)^+"] = X1
    mi, pl = P.minus, P.plus

    char_vo_e = P.fib(lambda b: P.rc(b) and X1 < b.x <= xjm and yjp <= b.y)
    char_vo_o = P.fib(lambda b: b.x == xjp and P.has(xjm, b.y) and X1 < x and yjp <= b.y)
    raw = {
        "a": P.fib(lambda b: P.has(b.x, pl(b.y)) and P.efe(b) == b.x
                   and xm < mi(b.x) < b.x < x and y < b.y < pl(b.y) < yp),
        "b": P.fib(lambda b: P.has(b.x, pl(b.y)) and xm < mi(b.x) and b.y < y < pl(b.y) < yp),
        "c": P.fib(lambda b: mi(b.x) < xm < b.x and b.y < y < pl(b.y)),
        "d": P.fib(lambda b: P.efe(b) == b.x and mi(b.x) < xm < b.x < x and y < b.y),
    }
    P.same(raw["b"], P.fib(lambda b: b.y == yjm and P.has(b.x, yjp) and X1 < b.x and yjp < yp),
           "Vin(b) equivalent form")
    P.same(raw["c"], {IBox(X1, yjm)} if P.has(X1, yjm) else (), "Vin(c) equivalent form")
    P.same(raw["d"], P.fib(lambda b: b.x == X1 and P.efe(b) == X1 and X1 < x and y < b.y),
           "Vin(d) equivalent form")
    char_vout = {"e": char_vo_e, "o": char_vo_o}

    def finish(vout: dict, vin: dict) -> None:
        for k in ("e", "o"):
            P.same(vout.get(k, ()), char_vout[k], f"Vout^{k}")
        for k in "abcd":
            P.same(vin.get(k, ()), raw[k], f"Vin({k})")
        _assign(r, "out", vout)
        _assign(r, "in", vin)

    if X1 > y:
        r.branch = "empty"
        P.claim(X1 > yjm, "x_-(j)^+ > y(j)^-")
        return finish({}, {})
    if x < X1:
        r.branch = "between"
        P.claim(P.has(X1, yjm), "[x_-(j)^+, y(j)^-] in F when x < x_-(j)^+ < y")
        return finish({}, {"c": {IBox(X1, yjm)}})
    if P.has(X1, yjm):
        r.branch = "in_F"
        return finish({}, {"c": {IBox(X1, yjm)}})

    zb, ub = P.with_efe(X1), P.with_efe(yjp)
    if not (P.claim(zb is not None and zb.x == X1, "witness [x_-(j)^+, z] with efe x_-(j)^+")
            and P.claim(ub is not None and ub.y == yjp, "witness [u, y(j)^+] with efe y(j)^+")):
        r.branch = "inapplicable"
        return
    z, u = zb.y, ub.x
    r.witnesses.update(z=z, u=u)
    P.claim(y < z < yp, "y < z < y_+")
    P.claim(mi(u) < x and X1 < u, "u_- < x and x_-(j)^+ < u")
    vin = {"d": {zb}, "b": {IBox(u, yjm)} if u < yjp else set()}
    x1 = max(b.x for b in P.fiber if b.y == z)
    r.witnesses["x^(1)"] = x1
    P.claim(x1 == z or P.rc(IBox(x1, z)), "x^(1) = z or [x^(1), z] in the right corner")
    P.claim(ub in IBox(x1, z) and IBox(x1, z) != zb, "[u, y(j)^+] in [x^(1), z] strictly inside [x_-(j)^+, z]")
    if x1 == z:
        r.branch = "generic_point"
        P.claim(xjp == yjp == u == z, "x(j)^+ = y(j)^+ = u = z")
        return finish({"o": {IBox(xjp, xjp)}}, vin)
    r.branch = "generic_chain"
    chain = _decreasing(P.fib(lambda b: P.rc(b) and ub in b and b in zb))
    r.corners = chain
    if not P.claim(bool(chain), "right-corner chain is nonempty"):
        return finish({}, vin)
    P.claim(chain[0].y == z and chain[-1].x == u and yjp <= chain[-1].y,
            "y^(1) = z, x^(t) = u, y(j)^+ <= y^(t)")
    P.claim(all(b.x <= yjm for b in chain[:-1]), "x^(k) <= y(j)^- for k < t")
    vout = {"e": {b for b in chain if b.x <= xjm}, "o": {b for b in chain if b.x > xjm}}
    vin["a"] = {IBox(chain[k].x, chain[k + 1].y) for k in range(len(chain) - 1)}
    finish(vout, vin)


def _split_rl(P: _Probe, r: ColorReport) -> None:
    x, y = P.x, P.y
    xm, yp = P.minus(x), P.plus(y)
    Y1 = P.jm(yp)
    xjm, xjp, yjm, yjp = P.jm(x), P.jp(x), P.jm(y), P.jp(y)
    r.witnesses["y_+(j)^-"] = Y1
    mi, pl = P.minus, P.plus

    char_vi_e = P.fib(lambda b: P.lc(b) and yjp <= b.y < Y1 and b.x <= xjm)
    char_vi_o = P.fib(lambda b: b.y == yjm and P.has(b.x, yjp) and y < Y1 and b.x <= xjm)
    raw = {
        "a": P.fib(lambda b: P.has(mi(b.x), b.y) and P.efe(b) == b.y
                   and y < b.y < pl(b.y) < yp and xm < mi(b.x) < b.x < x),
        "b": P.fib(lambda b: P.has(mi(b.x), b.y) and pl(b.y) < yp and xm < mi(b.x) < x < b.x),
        "c": P.fib(lambda b: b.y < yp < pl(b.y) and mi(b.x) < x < b.x),
        "d": P.fib(lambda b: P.efe(b) == b.y and y < b.y < yp < pl(b.y) and b.x < x),
    }
    P.same(raw["b"], P.fib(lambda b: b.x == xjp and P.has(xjm, b.y) and b.y < Y1 and xm < xjm),
           "Vout(b) equivalent form")
    P.same(raw["c"], {IBox(xjp, Y1)} if P.has(xjp, Y1) else (), "Vout(c) equivalent form")
    P.same(raw["d"], P.fib(lambda b: b.y == Y1 and P.efe(b) == Y1 and y < Y1 and b.x < x),
           "Vout(d) equivalent form")
    char_vin = {"e": char_vi_e, "o": char_vi_o}

    def finish(vout: dict, vin: dict) -> None:
        for k in ("e", "o"):
            P.same(vin.get(k, ()), char_vin[k], f"Vin^{k}")
        for k in "abcd":
            P.same(vout.get(k, ()), raw[k], f"Vout({k})")
        _assign(r, "out", vout)
        _assign(r, "in", vin)

    if Y1 < x:
        r.branch = "empty"
        P.claim(Y1 < xjp, "y_+(j)^- < x(j)^+")
        return finish({}, {})
    if Y1 < y:
        r.branch = "between"
        P.claim(P.has(xjp, Y1), "[x(j)^+, y_+(j)^-] in F when x < y_+(j)^- < y")
        return finish({"c": {IBox(xjp, Y1)}}, {})
    if P.has(xjp, Y1):
        r.branch = "in_F"
        return finish({"c": {IBox(xjp, Y1)}}, {})

    zb, ub = P.with_efe(Y1), P.with_efe(xjm)
    if not (P.claim(zb is not None and zb.y == Y1, "witness [z, y_+(j)^-] with efe y_+(j)^-")
            and P.claim(ub is not None and ub.x == xjm, "witness [x(j)^-, u] with efe x(j)^-")):
        r.branch = "inapplicable"
        return
    z, u = zb.x, ub.y
    r.witnesses.update(z=z, u=u)
    P.claim(xm < z < x, "x_- < z < x")
    P.claim(y < pl(u) and u < Y1, "y < u_+ and u < y_+(j)^-")
    vout = {"d": {zb}, "b": {IBox(xjp, u)} if xjm < u else set()}
    y1 = min(b.y for b in P.fiber if b.x == z)
    r.witnesses["y^(1)"] = y1
    P.claim(y1 == z or P.lc(IBox(z, y1)), "y^(1) = z or [z, y^(1)] in the left corner")
    P.claim(ub in IBox(z, y1) and IBox(z, y1) != zb, "[x(j)^-, u] in [z, y^(1)] strictly inside [z, y_+(j)^-]")
    if y1 == z:
        r.branch = "generic_point"
        P.claim(xjm == yjm == u == z, "x(j)^- = y(j)^- = u = z")
        return finish(vout, {"o": {IBox(yjm, yjm)}})
    r.branch = "generic_chain"
    chain = _decreasing(P.fib(lambda b: P.lc(b) and ub in b and b in zb))
    r.corners = chain
    if not P.claim(bool(chain), "left-corner chain is nonempty"):
        return finish(vout, {})
    P.claim(chain[0].x == z and chain[-1].y == u and chain[-1].x <= xjm,
            "x^(1) = z, y^(t) = u, x^(t) <= x(j)^-")
    P.claim(all(xjp <= b.y for b in chain[:-1]), "x(j)^+ <= y^(k) for k < t")
    vin = {"e": {b for b in chain if b.y >= yjp}, "o": {b for b in chain if b.y < yjp}}
    vout["a"] = {IBox(chain[k + 1].x, chain[k].y) for k in range(len(chain) - 1)}
    finish(vout, vin)


# SINGLETON_LEFT / SINGLETON_RIGHT --------------------------------------------


def _singleton_left(P: _Probe, r: ColorReport) -> None:
    x = P.x
    xm, xp = P.minus(x), P.plus(x)
    X1 = P.jp(xm)
    xjm, xjp = P.jm(x), P.jp(x)
    r.witnesses["x_-(j)^+"] = X1
    mi, pl = P.minus, P.plus

    char_vout = {
        "e": P.fib(lambda b: P.rc(b) and X1 < b.x <= xjm and x < b.y),
        "o": P.fib(lambda b: b.x == xjp and P.has(xjm, b.y) and X1 < x),
    }
    raw = {
        "a": P.fib(lambda b: P.has(b.x, pl(b.y)) and P.efe(b) == b.x
                   and xm < mi(b.x) < b.x < x and x < b.y < pl(b.y) < xp),
        "b": P.fib(lambda b: P.has(b.x, pl(b.y)) and xm < mi(b.x) and b.y < x < pl(b.y) < xp),
        "c": P.fib(lambda b: mi(b.x) < xm < b.x and b.y < x < pl(b.y)),
        "d": P.fib(lambda b: P.efe(b) == b.x and mi(b.x) < xm < b.x < x and x < b.y),
    }
    P.same(raw["b"], P.fib(lambda b: b.y == xjm and P.has(b.x, xjp) and X1 < b.x and xjp < xp),
           "Vin(b) equivalent form")
    P.same(raw["c"], {IBox(X1, xjm)} if P.has(X1, xjm) else (), "Vin(c) equivalent form")
    P.same(raw["d"], P.fib(lambda b: b.x == X1 and P.efe(b) == X1 and X1 < x and x < b.y),
           "Vin(d) equivalent form")

    def finish(vout: dict, vin: dict) -> None:
        for k in ("e", "o"):
            P.same(vout.get(k, ()), char_vout[k], f"Vout^{k}")
        for k in "abcd":
            P.same(vin.get(k, ()), raw[k], f"Vin({k})")
        _assign(r, "out", vout)
        _assign(r, "in", vin)

    if X1 > x:
        r.branch = "empty"
        P.claim(xjm < X1, "x(j)^- < x_-(j)^+")
        return finish({}, {})
    if P.has(X1, xjm):
        r.branch = "in_F"
        return finish({}, {"c": {IBox(X1, xjm)}})

    zb = P.with_efe(X1)
    if not P.claim(zb is not None and zb.x == X1, "witness [x_-(j)^+, z] with efe x_-(j)^+"):
        r.branch = "inapplicable"
        return
    z = zb.y
    r.witnesses["z"] = z
    P.claim(x < z < xp, "x < z < x_+")
    pt = IBox(x, x)
    vo_e = P.fib(lambda b: P.rc(b) and _strictly_between(pt, zb)(b))
    vi_a = P.fib(lambda b: P.lc(b) and _strictly_between(pt, zb)(b))
    chain = _decreasing(vo_e)
    r.corners = chain
    vout = {"e": vo_e}
    vin = {"a": vi_a, "d": {zb}}
    s = P.smallest_containing(x)
    if s is not None and s.x == xjm and P.efe(s) == xjm and s.y > xjm:
        r.branch = "generic_d"
        w = s.y
        r.witnesses["w"] = w
        vout["o"] = {IBox(xjp, w)}
        if chain:
            P.claim(chain[0].y == z, "y^(1) = z")
            paired = {IBox(chain[k].x, chain[k + 1].y) for k in range(len(chain) - 1)}
            P.same(vi_a, paired | {IBox(chain[-1].x, w)}, "Vin(a) pairing with Vout^e")
    elif s is not None and s.y == xjp and P.efe(s) == xjp and s.x < xjp:
        r.branch = "generic_e"
        u = s.x
        r.witnesses["u"] = u
        vin["b"] = {IBox(u, xjm)}
        if chain:
            P.claim(chain[0].y == z and chain[-1].x == u, "y^(1) = z, x^(t) = u")
            paired = {IBox(chain[k].x, chain[k + 1].y) for k in range(len(chain) - 1)}
            P.same(vi_a, paired, "Vin(a) pairing with Vout^e")
    else:
        r.branch = "inapplicable"
        P.claim(False, f"smallest box of color j containing x is {s}; neither generic case applies")
    finish(vout, vin)


def _singleton_right(P: _Probe, r: ColorReport) -> None:
    x = P.x
    xm, xp = P.minus(x), P.plus(x)
    Y1 = P.jm(xp)  # x_+(j)^-
    xjm, xjp = P.jm(x), P.jp(x)
    r.witnesses["x_+(j)^-"] = Y1
    mi, pl = P.minus, P.plus

    char_vin = {
        "e": P.fib(lambda b: P.lc(b) and xjp <= b.y < Y1 and b.x < x),
        "o": P.fib(lambda b: b.y == xjm and P.has(b.x, xjp) and x < Y1),
    }
    raw = {
        "a": P.fib(lambda b: P.has(mi(b.x), b.y) and P.efe(b) == b.y
                   and x < b.y < pl(b.y) < xp and xm < mi(b.x) < b.x < x),
        "b": P.fib(lambda b: P.has(mi(b.x), b.y) and pl(b.y) < xp and xm < mi(b.x) < x < b.x),
        "c": P.fib(lambda b: b.y < xp < pl(b.y) and mi(b.x) < x < b.x),
        "d": P.fib(lambda b: P.efe(b) == b.y and x < b.y < xp < pl(b.y) and b.x < x),
    }
    P.same(raw["b"], P.fib(lambda b: b.x == xjp and P.has(xjm, b.y) and b.y < Y1 and xm < xjm),
           "Vout(b) equivalent form")
    P.same(raw["c"], {IBox(xjp, Y1)} if P.has(xjp, Y1) else (), "Vout(c) equivalent form")
    P.same(raw["d"], P.fib(lambda b: b.y == Y1 and P.efe(b) == Y1 and x < Y1 and b.x < x),
           "Vout(d) equivalent form")

    def finish(vout: dict, vin: dict) -> None:
        for k in ("e", "o"):
            P.same(vin.get(k, ()), char_vin[k], f"Vin^{k}")
        for k in "abcd":
            P.same(vout.get(k, ()), raw[k], f"Vout({k})")
        _assign(r, "out", vout)
        _assign(r, "in", vin)

    if Y1 < x:
        r.branch = "empty"
        return finish({}, {})
    if P.has(xjp, Y1):
        r.branch = "in_F"
        return finish({"c": {IBox(xjp, Y1)}}, {})

    zb = P.with_efe(Y1)
    if not P.claim(zb is not None and zb.y == Y1, "witness [z, x_+(j)^-] with efe x_+(j)^-"):
        r.branch = "inapplicable"
        return
    z = zb.x
    r.witnesses["z"] = z
    P.claim(xm < z < x, "x_- < z < x")
    pt = IBox(x, x)
    vi_e = P.fib(lambda b: P.lc(b) and _strictly_between(pt, zb)(b))
    vo_a = P.fib(lambda b: P.rc(b) and _strictly_between(pt, zb)(b))
    chain = _decreasing(vi_e)
    r.corners = chain
    vin = {"e": vi_e}
    vout = {"a": vo_a, "d": {zb}}
    s = P.smallest_containing(x)
    if s is not None and s.y == xjp and P.efe(s) == xjp and s.x < xjp:
        r.branch = "generic_d"
        w = s.x
        r.witnesses["w"] = w
        vin["o"] = {IBox(w, xjm)}
        if chain:
            P.claim(chain[0].x == z, "x^(1) = z")
            paired = {IBox(chain[k + 1].x, chain[k].y) for k in range(len(chain) - 1)}
            P.same(vo_a, paired | {IBox(w, chain[-1].y)}, "Vout(a) pairing with Vin^e")
    elif s is not None and s.x == xjm and P.efe(s) == xjm and s.y > xjm:
        r.branch = "generic_e"
        u = s.y
        r.witnesses["u"] = u
        vout["b"] = {IBox(xjp, u)}
        if chain:
            P.claim(chain[0].x == z and chain[-1].y == u, "x^(1) = z, y^(t) = u")
            paired = {IBox(chain[k + 1].x, chain[k].y) for k in range(len(chain) - 1)}
            P.same(vo_a, paired, "Vout(a) pairing with Vin^e")
    else:
        r.branch = "inapplicable"
        P.claim(False, f"smallest box of color j containing x is {s}; neither generic case applies")
    finish(vout, vin)


_HANDLERS = {
    HorizontalContext.BOTH_LEFT: _both_left,
    HorizontalContext.BOTH_RIGHT: _both_right,
    HorizontalContext.SPLIT_LR: _split_lr,
    HorizontalContext.SPLIT_RL: _split_rl,
    HorizontalContext.SINGLETON_LEFT: _singleton_left,
    HorizontalContext.SINGLETON_RIGHT: _singleton_right,
}


def _neighbour_colors(family: Family, cartan: CartanMatrix, i: int) -> list[int]:
    return [j for j in range(cartan.rank) if j != i and cartan(i, j) < 0]


def classify_vertical(family: Family, cartan: CartanMatrix, box: IBox) -> VerticalReport:
    """Predict ``Vin_j``/``Vout_j`` for every ``j`` adjacent to the box's color."""
    ctx = horizontal_context(family, box)
    i = family.color(box)
    colors = {}
    for j in _neighbour_colors(family, cartan, i):
        r = ColorReport(j, branch="?")
        _HANDLERS[ctx](_Probe(family, box, j, r), r)
        colors[j] = r
    return VerticalReport(box, ctx, colors)


def vertical_sets(
    m: ExchangeMatrix, family: Family, cartan: CartanMatrix, box: IBox
) -> dict[int, tuple[set[IBox], set[IBox]]]:
    """``{j: (Vin_j, Vout_j)}`` read off the matrix column of ``box``."""
    col = m.column(box)
    i = family.color(box)
    out = {}
    for j in _neighbour_colors(family, cartan, i):
        vin = {b for b, v in col.items() if v > 0 and family.color(b) == j}
        vout = {b for b, v in col.items() if v < 0 and family.color(b) == j}
        out[j] = (vin, vout)
    return out


def compare(report: VerticalReport, actual: dict[int, tuple[set[IBox], set[IBox]]]) -> list[str]:
    """Disagreements between the structural prediction and the matrix."""
    diffs = []
    for j, (vin, vout) in actual.items():
        r = report.colors[j]
        if set(r.vin) != vin:
            diffs.append(f"j={j} Vin: predicted {sorted(map(str, r.vin))}, matrix {sorted(map(str, vin))}")
        if set(r.vout) != vout:
            diffs.append(f"j={j} Vout: predicted {sorted(map(str, r.vout))}, matrix {sorted(map(str, vout))}")
    return diffs


def vertical_sweep(
    seq, cartan: CartanMatrix, a: int | None = None, b: int | None = None
) -> tuple[Counter, list[str]]:
    """Classify every exchangeable box of every maximal family; count branches, collect failures."""
    counts: Counter = Counter()
    fails: list[str] = []
    for fam in enumerate_maximal_families(seq, a, b):
        m = exchange_matrix(fam, cartan)
        for box in fam.exchangeable:
            rep = classify_vertical(fam, cartan, box)
            counts[f"context:{rep.context.name}"] += 1
            for j, r in rep.colors.items():
                counts[f"{rep.context.name}:{r.branch}"] += 1
            problems = rep.failures + compare(rep, vertical_sets(m, fam, cartan, box))
            for p in problems:
                fails.append(f"{seq.colors} F={[str(x) for x in fam.order]} box={box} {rep.context.value}: {p}")
    return counts, fails
