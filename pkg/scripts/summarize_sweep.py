"""Collapse a sweep CSV to mean +- std over realizations for every parameter point.

    python scripts/summarize_sweep.py runs/degdist_static/sweep.csv
"""
import argparse
import csv
import sys
from collections import defaultdict

import numpy as np

KEYS = ["mu", "tau_j", "tau_l", "kc", "m", "algo", "ttl"]
VALUES = ["gamma_hat", "giant_fraction", "mean_covered", "success_rate"]


def summarize(path: str) -> list[dict]:
    with open(path) as fh:
        rows = list(csv.DictReader(ln for ln in fh if not ln.startswith("#")))
    groups = defaultdict(list)
    for r in rows:
        groups[tuple(r[k] for k in KEYS)].append(r)
    out = []
    for key, members in groups.items():
        rec = dict(zip(KEYS, key), realizations=len(members))
        for col in VALUES:
            vals = np.array([float(r[col]) for r in members if r[col] not in ("", "nan")])
            rec[col] = f"{vals.mean():.4g}+-{vals.std(ddof=1) if len(vals) > 1 else 0.0:.2g}" if len(vals) else ""
        out.append(rec)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("sweep_csv")
    args = ap.parse_args()
    rows = summarize(args.sweep_csv)
    writer = csv.DictWriter(sys.stdout, fieldnames=[*KEYS, "realizations", *VALUES])
    writer.writeheader()
    writer.writerows(rows)


if __name__ == "__main__":
    main()
