"""Command-line front end: ``iboxes <command> --cartan A2 --word 1,2,1 ...``.

Colors are 1-based labels on the command line (the Cartan labels when a
Cartan matrix is given) and 0-based indices internally.  All JSON output is
key-sorted and efe-ordered, so identical arguments give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .arrows import classify_vertical
from .cartan import CartanError, CartanMatrix, resolve
from .chains import AdmissibleChain, ChainError, ChainSpec, MoveKind, box_move
from .core import ColorSequence, IBox, extend_hat_w0
from .exchange import ExchangeError, exchange_matrix, mutate, quiver, to_dot
from .families import Family, FamilyError, enumerate_maximal_families, family_from_boxes, family_from_chain
from .relations import mutation_monomials, sweep_verify, t_system

COMMANDS = ("analyze", "chain", "move", "matrix", "quiver", "mutate", "relations", "verify", "enumerate")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    cartan: CartanMatrix | None
    seq: ColorSequence
    a: int
    b: int
    chain: ChainSpec | None = None
    family_file: Path | None = None
    fmt: str = "json"
    k: int | None = None
    box: IBox | None = None


def _colors(tokens: str, cartan: CartanMatrix | None) -> list[int]:
    out = []
    for tok in tokens.split(","):
        tok = tok.strip()
        if cartan is not None:
            out.append(cartan.index_of(tok))
            continue
        try:
            v = int(tok)
        except ValueError:
            raise UsageError(f"bad color {tok!r}: expected a 1-based integer") from None
        if v < 1:
            raise UsageError(f"bad color {tok!r}: colors are 1-based")
        out.append(v - 1)
    return out


def _pair(text: str, sep: str, what: str) -> tuple[int, int]:
    try:
        p, q = (int(t) for t in text.split(sep))
    except ValueError:
        raise UsageError(f"bad {what} {text!r}: expected 'p{sep}q'") from None
    return p, q


def _star(text: str | None, cartan: CartanMatrix | None, word: list[int]) -> dict[int, int]:
    if not text:
        return {c: c for c in set(word)}
    star = {}
    for item in text.split(","):
        src, _, dst = item.partition(":")
        s, t = _colors(src, cartan)[0], _colors(dst, cartan)[0]
        star[s] = t
    return star


def make_config(ns: argparse.Namespace) -> RunConfig:
    cartan = resolve(ns.cartan) if ns.cartan else None
    if (ns.word is None) == (ns.hat_word is None):
        raise UsageError("give exactly one of --word and --hat-word")
    if ns.word is not None:
        seq = ColorSequence.from_word(_colors(ns.word, cartan))
    else:
        if not ns.range:
            raise UsageError("--hat-word needs --range lo:hi")
        word = _colors(ns.hat_word, cartan)
        lo, hi = _pair(ns.range, ":", "range")
        seq = extend_hat_w0(word, _star(ns.star, cartan, word), lo, hi)
    if cartan is not None and any(c >= cartan.rank for c in seq.colors):
        raise UsageError(f"sequence uses colors outside the index set of {cartan.name}")
    a, b = (seq.lo, seq.hi) if not ns.interval else _pair(ns.interval, ":", "interval")
    if not seq.lo <= a <= b <= seq.hi:
        raise UsageError(f"interval {a}:{b} not inside the support {seq.lo}:{seq.hi}")
    chain = ChainSpec.parse(ns.chain) if ns.chain else None
    if chain is not None and ns.family:
        raise UsageError("give at most one of --chain and --family")
    box = IBox(*_pair(ns.box, ",", "box")) if ns.box else None
    return RunConfig(ns.command, cartan, seq, a, b, chain, Path(ns.family) if ns.family else None,
                     ns.format, ns.k, box)


# helpers ---------------------------------------------------------------------


def _need_cartan(cfg: RunConfig) -> CartanMatrix:
    if cfg.cartan is None:
        raise UsageError(f"'{cfg.command}' needs --cartan")
    return cfg.cartan


def _chain(cfg: RunConfig) -> AdmissibleChain:
    spec = cfg.chain or ChainSpec(cfg.a, "R" * (cfg.b - cfg.a))
    return AdmissibleChain(cfg.seq, spec)


def _family(cfg: RunConfig) -> Family:
    if cfg.family_file is None:
        return family_from_chain(_chain(cfg))
    data = json.loads(cfg.family_file.read_text())
    data = data.get("family", data)
    try:
        a, b = data["range"]
        boxes = [IBox(int(x), int(y)) for x, y in data["boxes"]]
    except (KeyError, TypeError, ValueError):
        raise UsageError(f"{cfg.family_file}: expected {{'range': [a,b], 'boxes': [[x,y],...]}}") from None
    return family_from_boxes(cfg.seq, a, b, boxes)


def _bx(b: IBox) -> list[int]:
    return [b.x, b.y]


def _labels(cfg: RunConfig) -> list[str]:
    if cfg.cartan is not None:
        return list(cfg.cartan.labels)
    return [str(c + 1) for c in range(max(cfg.seq.colors) + 1)]


def _family_json(fam: Family, labels) -> dict:
    return {
        "family": fam.to_json(),
        "efe": [[_bx(b), fam.efe[b]] for b in fam.order],
        "colors": [labels[fam.color(b)] for b in fam.order],
        "frozen": [_bx(b) for b in fam.frozen],
        "exchangeable": [_bx(b) for b in fam.exchangeable],
    }


def _header(cfg: RunConfig) -> dict:
    labels = _labels(cfg)
    return {
        "cartan": None if cfg.cartan is None else cfg.cartan.name,
        "sequence": {"lo": cfg.seq.lo, "colors": [labels[c] for c in cfg.seq.colors]},
    }


def _box_arg(cfg: RunConfig) -> IBox:
    if cfg.box is None:
        raise UsageError(f"'{cfg.command}' needs --box x,y")
    return cfg.box


# commands --------------------------------------------------------------------


def cmd_analyze(cfg: RunConfig):
    cartan = _need_cartan(cfg)
    fam = _family(cfg)
    m = exchange_matrix(fam, cartan)
    if cfg.fmt == "dot":
        return to_dot(quiver(m, fam, cartan))
    labels = _labels(cfg)
    out = _header(cfg) | _family_json(fam, labels)
    out["matrix"] = m.to_json()
    out["vertical"] = [classify_vertical(fam, cartan, b).to_json(labels) for b in fam.exchangeable]
    if cfg.fmt == "text":
        lines = [f"family on [{fam.a},{fam.b}] (efe order):"]
        for b in fam.order:
            tag = "frozen" if fam.is_frozen(b) else "exchangeable"
            lines.append(f"  {b}  color {labels[fam.color(b)]}  efe {fam.efe[b]}  {tag}")
        lines.append("matrix columns:")
        for k in fam.exchangeable:
            col = m.column(k)
            lines.append(f"  {k}: " + " ".join(f"{col[r]:+d}" for r in m.rows))
        return "\n".join(lines) + "\n"
    return out


def cmd_chain(cfg: RunConfig):
    ch = _chain(cfg)
    fam = family_from_chain(ch)
    return {
        "chain": str(ch.spec),
        "boxes": [_bx(b) for b in ch.boxes],
        "envelopes": [_bx(e) for e in ch.envelopes],
        "efe": [fam.efe[b] for b in ch.boxes],
        "movable": ch.movable_indices(),
    }


def cmd_move(cfg: RunConfig):
    if cfg.k is None:
        raise UsageError("'move' needs --k")
    ch = _chain(cfg)
    mv = box_move(ch, cfg.k)
    out = {"chain": str(ch.spec), "k": cfg.k, "kind": mv.kind.value, "result": str(mv.chain.spec),
           "boxes": [_bx(b) for b in mv.chain.boxes]}
    if mv.kind is MoveKind.MUTATION:
        out["old"], out["new"] = _bx(mv.old), _bx(mv.new)
    if cfg.fmt == "text":
        if mv.kind is MoveKind.MUTATION:
            return f"Mutation {mv.old}->{mv.new}: {ch.spec} -> {mv.chain.spec}\n"
        return f"Transposition: {ch.spec} -> {mv.chain.spec}\n"
    return out


def cmd_matrix(cfg: RunConfig):
    fam = _family(cfg)
    return exchange_matrix(fam, _need_cartan(cfg)).to_json()


def cmd_quiver(cfg: RunConfig):
    cartan = _need_cartan(cfg)
    fam = _family(cfg)
    q = quiver(exchange_matrix(fam, cartan), fam, cartan)
    if cfg.fmt == "json":
        return {
            "vertices": [_bx(v) for v in q.vertices],
            "colors": list(q.colors),
            "frozen": [_bx(v) for v in q.vertices if v in q.frozen],
            "arrows": [[_bx(a.source), _bx(a.target), a.weight] for a in q.arrows],
        }
    return to_dot(q)


def cmd_mutate(cfg: RunConfig):
    fam = _family(cfg)
    return mutate(exchange_matrix(fam, _need_cartan(cfg)), _box_arg(cfg)).to_json()


def cmd_relations(cfg: RunConfig):
    cartan = _need_cartan(cfg)
    box = _box_arg(cfg)
    out = {"box": _bx(box)}
    if box.x < box.y:
        ts = t_system(cfg.seq, cartan, box)
        out["t_system"] = {"left": ts.left.to_json(), "middle": ts.middle.to_json(), "right": ts.right.to_json()}
    fam = _family(cfg)
    if box in fam.exchangeable:
        mi, mo = mutation_monomials(exchange_matrix(fam, cartan), box)
        out["mutation"] = {"in": mi.to_json(), "out": mo.to_json()}
    if cfg.fmt == "text":
        lines = []
        if "t_system" in out:
            lines.append(f"T-system {box}: {ts.middle} = {ts.left} + {ts.right}")
        if "mutation" in out:
            lines.append(f"mutation at {box}: in = {mi}, out = {mo}")
        return "\n".join(lines) + "\n"
    return out


def cmd_verify(cfg: RunConfig):
    summary = sweep_verify(cfg.seq, _need_cartan(cfg), cfg.a, cfg.b)
    if cfg.fmt == "json":
        return summary.to_json(), summary.ok
    text = summary.line() + "\n"
    extra = summary.t_system_failures + summary.vertical_failures
    text += "".join(f"  {f}\n" for f in summary.failures + extra)
    return text, summary.ok


def cmd_enumerate(cfg: RunConfig):
    fams = enumerate_maximal_families(cfg.seq, cfg.a, cfg.b)
    labels = _labels(cfg)
    return {"count": len(fams), "families": [_family_json(f, labels) for f in fams]}


HANDLERS = {
    "analyze": cmd_analyze,
    "chain": cmd_chain,
    "move": cmd_move,
    "matrix": cmd_matrix,
    "quiver": cmd_quiver,
    "mutate": cmd_mutate,
    "relations": cmd_relations,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iboxes", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--cartan", help="preset (A3, B2, G2, ...) or a JSON file")
    p.add_argument("--word", help="comma-separated colors, e.g. 1,2,1")
    p.add_argument("--hat-word", help="reduced word to extend periodically with --star")
    p.add_argument("--star", help="color involution as 1:3,2:2,3:1 (default: identity)")
    p.add_argument("--range", help="lo:hi support for --hat-word (negative lo: --range=-2:6)")
    p.add_argument("--interval", help="a:b (default: whole support)")
    p.add_argument("--chain", help="'x;RL...' start position and growth word")
    p.add_argument("--family", help="family JSON file")
    p.add_argument("--format", choices=("json", "dot", "text"), default=None)
    p.add_argument("--k", type=int, help="box index for 'move'")
    p.add_argument("--box", help="x,y for 'mutate' and 'relations'")
    return p


_DEFAULT_FORMAT = {"quiver": "dot", "verify": "text"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    ns.format = ns.format or _DEFAULT_FORMAT.get(ns.command, "json")
    ok = True
    try:
        cfg = make_config(ns)
        result = HANDLERS[cfg.command](cfg)
    except (UsageError, CartanError, ChainError, FamilyError, ExchangeError, ValueError) as err:
        print(f"iboxes {ns.command}: error: {err}", file=sys.stderr)
        return 2
    if isinstance(result, tuple):
        result, ok = result
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        sys.stdout.write(json.dumps(result, sort_keys=True, indent=2) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
