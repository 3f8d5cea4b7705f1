#!/usr/bin/env python3
"""Generate a synthetic dataset CSV for pipeline experiments.

Two flavors: well-separated Gaussian blobs with purely numeric columns,
or a handwriting-features-style table (per-task kinematic columns, one
categorical column, P/H class labels).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT / "src") not in sys.path:
    sys.path.insert(0, str(ROOT / "src"))

from vqclass.synth import (  # noqa: E402
    make_blobs,
    make_handwriting_table,
    write_labeled_csv,
    write_table_csv,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    sub = parser.add_subparsers(dest="kind", required=True)

    blobs = sub.add_parser("blobs", help="two Gaussian blobs, numeric features")
    blobs.add_argument("--out", required=True)
    blobs.add_argument("--samples", type=int, default=40)
    blobs.add_argument("--features", type=int, default=5)
    blobs.add_argument("--separation", type=float, default=3.0)
    blobs.add_argument("--seed", type=int, default=1)

    hand = sub.add_parser("handwriting", help="handwriting-features-style table")
    hand.add_argument("--out", required=True)
    hand.add_argument("--samples", type=int, default=174)
    hand.add_argument("--tasks", type=int, default=4)
    hand.add_argument("--signal", type=float, default=1.1)
    hand.add_argument("--seed", type=int, default=1)

    args = parser.parse_args()
    if args.kind == "blobs":
        features, labels = make_blobs(args.samples, args.features, args.separation, args.seed)
        write_labeled_csv(args.out, features, labels)
    else:
        columns, rows = make_handwriting_table(
            args.samples, n_tasks=args.tasks, signal=args.signal, seed=args.seed
        )
        write_table_csv(args.out, columns, rows)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
