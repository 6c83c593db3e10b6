#!/usr/bin/env python3
"""Run a randomized verification campaign and write the JSON document.

Example:
    python scripts/run_campaign.py --trials 500 --seed 42 --n-max 7 \
        --workers 4 --out campaign.json
"""

import argparse
import sys
import time

from forest_atoms.campaign import EnsembleSpec, run_campaign
from forest_atoms.io import dump_document


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--wmin", type=int, default=1)
    ap.add_argument("--wmax", type=int, default=5)
    ap.add_argument("--unit", action="store_true",
                    help="unit weights (unweighted specialization)")
    ap.add_argument("--symmetric", action="store_true",
                    help="undirected specialization")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None, help="output JSON path")
    args = ap.parse_args()

    spec = EnsembleSpec(trials=args.trials, seed=args.seed, n_max=args.n_max,
                        wmin=args.wmin, wmax=args.wmax, unit=args.unit,
                        symmetric=args.symmetric)
    t0 = time.time()
    doc = run_campaign(spec, workers=args.workers)
    elapsed = time.time() - t0
    text = dump_document(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    bad = [e["trial"] for e in doc["results"] if not e["ok"]]
    print(f"{spec.trials} trials in {elapsed:.1f}s; "
          f"{'ok' if doc['ok'] else 'FAILING trials: %s' % bad}")
    return 0 if doc["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
