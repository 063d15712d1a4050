#!/usr/bin/env python3
"""Sweep source velocities over a (b0, |b_spatial|) grid and map the regimes.

For each metric the plane splits into a smooth (zeta=-1) and a delta-surface
(zeta=+1) region separated by the lightlike boundary b.b = 0.  The script
prints per-label counts and optionally writes the full atlas as CSV.

    python3 scripts/regime_atlas.py --n 41 --bmax 3 --out atlas.csv
"""

import argparse
import csv
import sys

import numpy as np

from premaxwell import FiveVector, Signature, classify


def build_atlas(n, bmax):
    rows = []
    axis = np.linspace(0.0, bmax, n)
    for sigma5 in (1, -1):
        sig = Signature(sigma5)
        for b0 in axis:
            for bs in axis:
                reg = classify(FiveVector.of(b0, bs, 0.0, 0.0, 1.0), sig)
                rows.append((sigma5, b0, bs, reg.bb, reg.zeta,
                             reg.label.value, reg.mass_ratio_sq))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=41, help="grid points per axis")
    ap.add_argument("--bmax", type=float, default=3.0, help="axis maximum")
    ap.add_argument("--out", default=None, help="write full atlas CSV here")
    args = ap.parse_args(argv)

    rows = build_atlas(args.n, args.bmax)

    for sigma5 in (1, -1):
        counts = {}
        for r in rows:
            if r[0] == sigma5:
                counts[r[5]] = counts.get(r[5], 0) + 1
        total = sum(counts.values())
        print(f"sigma5 = {sigma5:+d}  ({total} samples)")
        for label in sorted(counts):
            print(f"  {label:<20s} {counts[label]:6d}"
                  f"  ({100.0 * counts[label] / total:.1f}%)")

    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sigma5", "b0", "b_spatial", "bb", "zeta",
                        "label", "mass_ratio_sq"])
            w.writerows(rows)
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
