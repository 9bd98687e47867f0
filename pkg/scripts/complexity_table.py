"""Mean attempts and letters drawn per sampler, across sizes and step systems.

Writes the same CSV columns as ``culminating bench``.  The interesting
trends: anticipated rejection costs ~2n at a = b and grows exponentially for
a < b, hybrid rejection keeps O(1) attempts for a >= b, rejection from
positive walks needs ~sqrt(n) attempts at a = b.
"""
import argparse
import csv
import sys
import warnings
from dataclasses import dataclass, field

from culminating.analysis import expected_anticipated_cost, measure_cost
from culminating.core import StepSystem
from culminating.rng import Rng, child_seed


@dataclass
class TableConfig:
    systems: list = field(default_factory=lambda: [(1, 1), (2, 1), (3, 2), (1, 2)])
    methods: list = field(default_factory=lambda: ["anticipated", "reject-positive", "hybrid", "recursive"])
    ns: list = field(default_factory=lambda: [50, 100, 200, 400])
    trials: int = 200
    seed: int = 2024
    # anticipated rejection for a < b is exponential; keep those sizes small
    negative_drift_nmax: int = 60


def run(cfg: TableConfig, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["method", "a", "b", "n", "trials", "mean_attempts", "mean_steps", "stddev", "exact_attempts"])
    job = 0
    for a, b in cfg.systems:
        s = StepSystem(a, b)
        for method in cfg.methods:
            for n in cfg.ns:
                job += 1
                if a < b and method in ("anticipated", "reject-positive", "hybrid") and n > cfg.negative_drift_nmax:
                    continue
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    st = measure_cost(method, s, n, cfg.trials, Rng(child_seed(cfg.seed, job)))
                exact = f"{expected_anticipated_cost(s, n)[0]:.6g}" if method == "anticipated" else ""
                row = st.csv_row()
                w.writerow([*row.values(), exact])
                out.flush()


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--ns", default="50,100,200,400")
    args = p.parse_args()
    cfg = TableConfig(trials=args.trials, seed=args.seed, ns=[int(x) for x in args.ns.split(",")])
    run(cfg, sys.stdout)


if __name__ == "__main__":
    main()
