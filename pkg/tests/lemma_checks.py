"""Combinatorial laws of maximal commuting families, each returning a list of violations."""

from __future__ import annotations

from iboxes.chains import AdmissibleChain
from iboxes.core import IBox
from iboxes.families import Family, is_left_corner, is_right_corner


def _nav(f: Family):
    s = f.seq
    return s.prev_same, s.next_same


def same_color_nested(f: Family) -> list[str]:
    out = []
    boxes = f.order
    for i, p in enumerate(boxes):
        for q in boxes[i + 1:]:
            if f.color(p) == f.color(q) and not (p in q or q in p):
                out.append(f"same color, not nested: {p} {q}")
    return out


def four_boxes(f: Family) -> list[str]:
    out = []
    for s in range(f.a, f.b + 1):
        for t in range(s, f.b + 1):
            starts = sum(1 for b in f.boxes if b.x == s and b.y <= t)
            ends = sum(1 for b in f.boxes if b.y == t and s <= b.x)
            if starts >= 2 and ends >= 2:
                out.append(f"four boxes at s={s}, t={t}")
    return out


def interpolation(f: Family) -> list[str]:
    out = []
    seq = f.seq
    for p in f.boxes:
        for q in f.boxes:
            if p.y == q.y and q.x < p.x:
                for xx in seq.occurrences(seq[p.x]):
                    if q.x <= xx <= p.x and IBox(xx, p.y) not in f:
                        out.append(f"[{xx},{p.y}] missing between {p} and {q}")
            if p.x == q.x and p.y < q.y:
                for yy in seq.occurrences(seq[p.x]):
                    if p.y <= yy <= q.y and IBox(p.x, yy) not in f:
                        out.append(f"[{p.x},{yy}] missing between {p} and {q}")
    return out


def neighbor_existence(f: Family) -> list[str]:
    minus, plus = _nav(f)
    out = []
    for b in f.exchangeable:
        if f.has(minus(b.x), b.y) == f.has(b.x, plus(b.y)):
            out.append(f"{b}: [x_-,y] and [x,y_+] not exactly one")
    return out


def _sides(chain: AdmissibleChain) -> tuple[dict, dict]:
    """Boxes added on the left / right; ``c_1`` counts as both.

    A singleton's efe value does not say which side it was added from, so the
    two efe lemmas below are quantified over chains rather than families.
    """
    left, right = {}, {}
    for k in range(1, chain.length + 1):
        b = chain.box(k)
        left[b] = k == 1 or chain.spec.word[k - 2] == "L"
        right[b] = k == 1 or chain.spec.word[k - 2] == "R"
    return left, right


def opposite_efe(chain: AdmissibleChain) -> list[str]:
    left, right = _sides(chain)
    out = []
    for p in chain.boxes:
        for q in chain.boxes:
            if left[p] and right[q]:
                if q.x < p.x and not p.y < q.y:
                    out.append(f"x' < x but not y < y' for {p}, {q}")
                if q.y < p.y and not p.x < q.x:
                    out.append(f"y' < y but not x < x' for {p}, {q}")
    return out


def bound_lemma(chain: AdmissibleChain) -> list[str]:
    seq = chain.seq
    left, right = _sides(chain)
    out = []
    for p in chain.boxes:
        for q in chain.boxes:
            if left[p] and left[q] and p.x <= q.x and not q.y < seq.next_same(p.y):
                out.append(f"left efes {p}, {q}: y' >= y_+")
            if right[p] and right[q] and q.y <= p.y and not seq.prev_same(p.x) < q.x:
                out.append(f"right efes {p}, {q}: x' <= x_-")
    return out


def fiber(f: Family, j: int) -> list[IBox]:
    return sorted((b for b in f.boxes if f.color(b) == j), key=lambda b: b.y - b.x)


def fiber_structure(f: Family) -> list[str]:
    seq = f.seq
    minus, plus = _nav(f)
    out = []
    for j in seq.used_colors(f.a, f.b):
        fj = fiber(f, j)
        m = sum(1 for k in range(f.a, f.b + 1) if seq[k] == j)
        if len(fj) != m:
            out.append(f"|F_{j}| = {len(fj)} != {m}")
        for k, b in enumerate(fj, 1):
            if len(seq.phi_positions(b)) != k:
                out.append(f"{b} has {len(seq.phi_positions(b))} same-colored positions, expected {k}")
        for small, big in zip(fj, fj[1:]):
            if small not in (IBox(plus(big.x), big.y), IBox(big.x, minus(big.y))):
                out.append(f"{small} is not {big} with one end stripped")
        top = IBox(seq.next_color(f.a, j), seq.prev_color(f.b, j))
        frozen_j = [b for b in f.frozen if f.color(b) == j]
        if frozen_j != [top] or fj[-1] != top:
            out.append(f"frozen box of color {j} is {frozen_j}, expected {top}")
    return out


def corner_segments(f: Family) -> list[str]:
    """Between consecutive corners the fiber strips only one end."""
    out = []
    for j in f.seq.used_colors(f.a, f.b):
        fj = fiber(f, j)
        m = len(fj)
        lc = [is_left_corner(f, b) for b in fj]
        rc = [is_right_corner(f, b) for b in fj]
        fr = [f.is_frozen(b) for b in fj]
        for p in range(m):
            for q in range(p + 1, m):
                if any(lc[k] or rc[k] for k in range(p + 1, q)):
                    continue
                seg = range(p + 1, q + 1)
                right_efe = all(f.efe[fj[k]] == fj[k].y and fj[k].x == fj[p].x for k in seg)
                left_efe = all(f.efe[fj[k]] == fj[k].x and fj[k].y == fj[p].y for k in seg)
                start_l = p == 0 or lc[p]
                start_r = p == 0 or rc[p]
                if start_l and rc[q] and not right_efe:
                    out.append(f"case (i) fails on {fj[p]}..{fj[q]}")
                if start_r and lc[q] and not left_efe:
                    out.append(f"case (ii) fails on {fj[p]}..{fj[q]}")
                if (fr[q] or lc[q]) and rc[p] and not left_efe:
                    out.append(f"case (iii) fails on {fj[p]}..{fj[q]}")
                if (fr[q] or rc[q]) and lc[p] and not right_efe:
                    out.append(f"case (iv) fails on {fj[p]}..{fj[q]}")
    return out


def corner_uniqueness(f: Family) -> list[str]:
    out = []
    for b in f.boxes:
        if f.efe[b] == b.y:
            hits = [c for c in f.boxes if c.x == b.x and c.y <= b.y and (c.x == c.y or is_left_corner(f, c))]
            if len(hits) != 1:
                out.append(f"{b} (efe y): {len(hits)} left-corner stops")
        if f.efe[b] == b.x:
            hits = [c for c in f.boxes if c.y == b.y and c.x >= b.x and (c.x == c.y or is_right_corner(f, c))]
            if len(hits) != 1:
                out.append(f"{b} (efe x): {len(hits)} right-corner stops")
    return out


LAWS = {
    "same_color_nested": same_color_nested,
    "interpolation": interpolation,
    "four_boxes": four_boxes,
    "neighbor_existence": neighbor_existence,
    "fiber_structure": fiber_structure,
    "corner_segments": corner_segments,
    "corner_uniqueness": corner_uniqueness,
}

CHAIN_LAWS = {
    "opposite_efe": opposite_efe,
    "bound_lemma": bound_lemma,
}
