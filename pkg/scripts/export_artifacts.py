#!/usr/bin/env python3
"""Dump the graph, lattice and representation data as JSON/DOT files."""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from twistlat import DegenerateFormError, build_gamma, gram_matrix, quotient_lattice  # noqa: E402
from twistlat.lattice import lattice_to_json_dict, symplectic_basis  # noqa: E402
from twistlat.transvect import rep_to_json_dict  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--outdir", default="artifacts")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    g = build_gamma(args.k)
    (out / f"gamma{args.k}.json").write_text(
        json.dumps(g.to_json_dict(), sort_keys=True, indent=1)
    )
    (out / f"gamma{args.k}.dot").write_text(g.to_dot())

    lat = gram_matrix(args.k)
    q = quotient_lattice(lat)
    payload = lattice_to_json_dict(lat, q)
    payload["determinant"] = q.determinant()
    try:
        payload["symplectic_basis"] = [list(r) for r in symplectic_basis(q)]
    except DegenerateFormError as exc:
        payload["symplectic_basis"] = None
        payload["symplectic_basis_note"] = str(exc)
    (out / f"lattice{args.k}.json").write_text(
        json.dumps(payload, sort_keys=True, indent=1)
    )

    (out / f"rep{args.k}.json").write_text(
        json.dumps(rep_to_json_dict(q, g, sign=1), sort_keys=True, indent=1)
    )
    print(f"wrote gamma/lattice/rep files to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
