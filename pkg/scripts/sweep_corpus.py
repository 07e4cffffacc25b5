"""Sweep every word up to a given length: box-move/mutation consistency, T-system and vertical-arrow census.

    python3 scripts/sweep_corpus.py --max-len 6 --cartans A2 B2 G2 --workers 4
    python3 scripts/sweep_corpus.py --max-len 5 --json sweep.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field

from iboxes.arrows import all_branch_keys
from iboxes.corpus import corpus
from iboxes.relations import sweep_many


@dataclass
class SweepConfig:
    max_len: int = 5
    cartans: list[str] = field(default_factory=lambda: ["A2", "A3", "B2", "G2"])
    workers: int = 1
    arrows: bool = True
    json_out: str | None = None


def parse(argv=None) -> SweepConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--cartans", nargs="+", default=["A2", "A3", "B2", "G2"])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-arrows", action="store_true", help="skip the vertical-arrow census")
    p.add_argument("--json", dest="json_out")
    a = p.parse_args(argv)
    return SweepConfig(a.max_len, a.cartans, a.workers, not a.no_arrows, a.json_out)


def main(argv=None) -> int:
    cfg = parse(argv)
    entries = corpus(cfg.max_len, tuple(cfg.cartans))
    t0 = time.perf_counter()
    s = sweep_many([(e.seq, e.cartan) for e in entries], workers=cfg.workers, with_arrows=cfg.arrows)
    dt = time.perf_counter() - t0
    print(f"{len(entries)} sequences, {s.line()} in {dt:.1f}s")
    print(f"moves {s.moves}: {s.mutations} mutations, {s.transpositions} transpositions")
    print(f"T-system checks {s.t_system_checked}, failures {len(s.t_system_failures)}")
    if cfg.arrows:
        print(f"vertical-arrow failures {len(s.vertical_failures)}")
        for k in all_branch_keys():
            print(f"  {k:32s} {s.branch_counts[k]}")
    for f in (s.failures + s.t_system_failures + s.vertical_failures)[:20]:
        print("  !", f)
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump({"config": vars(cfg), "seconds": round(dt, 2), **s.to_json()}, fh, indent=1, sort_keys=True)
    return 0 if s.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
