"""Run every sweep config under configs/ (or the ones given) and print a per-point summary.

    python scripts/run_configs.py                 # all configs
    python scripts/run_configs.py configs/smoke.json --workers 4
"""
import argparse
import csv
import sys
from pathlib import Path

from adhocsf.harness import ExperimentSpec, run_sweep

sys.path.insert(0, str(Path(__file__).parent))
from summarize_sweep import KEYS, VALUES, summarize  # noqa: E402


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("configs", nargs="*")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    paths = args.configs or sorted(str(p) for p in Path(__file__).parent.parent.joinpath("configs").glob("*.json"))
    for path in paths:
        out, failed = run_sweep(ExperimentSpec.load(path), workers=args.workers)
        print(f"# {path} -> {out} ({len(failed)} failed runs)")
        writer = csv.DictWriter(sys.stdout, fieldnames=[*KEYS, "realizations", *VALUES])
        writer.writeheader()
        writer.writerows(summarize(str(out)))


if __name__ == "__main__":
    main()
