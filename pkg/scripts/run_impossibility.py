#!/usr/bin/env python3
"""Run the headline searches on the bundled twelve-curve configuration.

Three experiments, all exact:
  1. minimal genus of the full twelve-curve pattern (pattern-only);
  2. feasibility of the twelve curves within a genus budget;
  3. the pinned variants: with the bundled tight placement of the first ten
     curves frozen, extending by the obstructing curves is impossible
     within budget 5 (this is the combinatorial content of the cut-surface
     figure argument).
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from twistlat.builtin import load_pattern, load_structure  # noqa: E402
from twistlat.ribbon import structure_to_json_dict, surface_of  # noqa: E402
from twistlat.search import SearchConfig, is_realizable, min_genus  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--cache", help="checkpoint file (resume with --resume)")
    ap.add_argument("--resume", action="store_true")
    ap.add_argument("--witness-out", help="write the minimal witness here")
    ap.add_argument(
        "--skip-exact",
        action="store_true",
        help="only run the budget-feasibility and pinned checks",
    )
    args = ap.parse_args()

    cfg = SearchConfig(threads=args.threads, cache_path=args.cache, resume=args.resume)
    p12 = load_pattern("curves12")
    p11 = load_pattern("curves11")
    pinned = load_structure("u-placement")

    res = is_realizable(p12, args.budget, cfg)
    print(
        f"twelve curves within genus {args.budget}: {res.realizable} "
        f"(nodes {res.nodes_explored}, {res.wall_time_s:.1f}s)"
    )
    if res.witness is not None:
        print(f"  witness neighborhood: {surface_of(p12, res.witness).components}")

    if not args.skip_exact:
        exact = min_genus(p12, config=cfg)
        print(
            f"exact pattern-only minimal genus: {exact.genus} "
            f"(nodes {exact.nodes_explored}, {exact.wall_time_s:.1f}s)"
        )
        if args.witness_out and exact.witness is not None:
            with open(args.witness_out, "w", encoding="utf-8") as fh:
                json.dump(
                    structure_to_json_dict(exact.witness), fh, sort_keys=True, indent=1
                )
            print(f"  witness written to {args.witness_out}")

    for name, pat in (("w+ extension", p11), ("w+/w- extension", p12)):
        r = min_genus(pat, args.budget, SearchConfig(fixed=pinned, threads=args.threads))
        print(
            f"pinned tight placement, {name} at budget {args.budget}: {r.kind} "
            f"(exhausted={r.exhausted}, nodes {r.nodes_explored}, {r.wall_time_s:.1f}s)"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
