#!/usr/bin/env python3
"""Two-run perturbation growth: distance series and fitted exponential rate."""

import argparse
import json
from pathlib import Path

from dirac1d.field import Bump, GridSpec
from dirac1d.harness import perturbation_growth
from dirac1d.models import gross_neveu


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--eps", type=float, default=1e-4)
    ap.add_argument("--t-final", type=float, default=5.0)
    ap.add_argument("--resolutions", type=int, nargs="+", default=[256, 512])
    ap.add_argument("--out", type=Path, default=Path("stability_out"))
    args = ap.parse_args()

    base = (Bump(0.1, -1.0, 1.0), Bump(0.1, 1.0, 1.0))
    pert = (Bump(1.0, -1.0, 1.0), Bump(1.0, 1.0, 1.0))
    args.out.mkdir(parents=True, exist_ok=True)
    rates = {}
    for n in args.resolutions:
        grid = GridSpec(-12.0, 12.0, n)
        res = perturbation_growth(
            gross_neveu(args.gamma), base, pert, args.eps, args.t_final, grid
        )
        rows = ["t,l2_distance"]
        rows += [f"{t:.17g},{d:.17g}" for t, d in zip(res.times, res.distances)]
        (args.out / f"distance_n{n}.csv").write_text("\n".join(rows) + "\n")
        rates[n] = res.growth_rate
        print(f"N={n}: fitted growth rate {res.growth_rate:.5e}")
    vals = list(rates.values())
    rel = abs(vals[0] - vals[-1]) / max(abs(vals[0]), abs(vals[-1]), 1e-300)
    summary = {
        "rates": {str(k): v for k, v in rates.items()},
        "relative_spread": rel,
        "pass": rel <= 0.2,
    }
    (args.out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")


if __name__ == "__main__":
    main()
