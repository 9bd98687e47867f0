"""Asymptotic behaviour of c_n in the three drift regimes, from the float DP.

  a = b : 4n c_n / 2^n -> 1
  a > b : c_n / (p_floor(n/2) p_ceil(n/2)) -> 1 (exact big integers)
  a < b : c_{n+1} / c_n -> alpha(a, b)
"""
import argparse
from dataclasses import dataclass

from culminating.analysis import alpha, check_positive_drift
from culminating.core import StepSystem
from culminating.counting import culminating_profile, culminating_counts, positive_counts


@dataclass
class DriftConfig:
    null_ns: tuple = (100, 250, 500, 1000, 2000)
    positive_ns: tuple = (10, 20, 40, 60, 80)
    negative_ns: tuple = (100, 200, 400, 600, 800)


def null_drift(cfg):
    print("a=b=1: r_n = 4n c_n / 2^n")
    prof = culminating_profile(StepSystem(1, 1), max(cfg.null_ns))
    for n in cfg.null_ns:
        print(f"  n={n:5d}  r_n={prof[n] * 4 * n:.6f}")


def positive_drift(cfg):
    for s in (StepSystem(2, 1), StepSystem(3, 2), StepSystem(3, 1)):
        nmax = max(cfg.positive_ns)
        rep = check_positive_drift(s, nmax, cfg.positive_ns)
        ratios = "  ".join(f"{n}:{r:.4f}" for n, r in rep.ratios.items())
        print(f"{s}: inequality holds to n={nmax}: {rep.inequality_holds}; ratios {ratios}")


def negative_drift(cfg):
    for s in (StepSystem(1, 2), StepSystem(2, 3), StepSystem(1, 3)):
        nmax = max(cfg.negative_ns) + 1
        prof = culminating_profile(s, nmax)
        al = alpha(s)
        parts = []
        for n in cfg.negative_ns:
            r = 2 * prof[n + 1] / prof[n]
            parts.append(f"{n}:{r:.5f}({(r / al - 1) * 100:+.2f}%)")
        print(f"{s}: alpha={al:.5f}  c_(n+1)/c_n  " + "  ".join(parts))
    # exact cross-check at small n
    c = culminating_counts(StepSystem(1, 2), 60)
    print(f"(1,2) exact c_60={c[60]}, c_60/c_59={c[60] / c[59]:.5f}")


def main():
    argparse.ArgumentParser(description=__doc__.splitlines()[0]).parse_args()
    cfg = DriftConfig()
    null_drift(cfg)
    positive_drift(cfg)
    negative_drift(cfg)
    p = positive_counts(StepSystem(1, 1), 40)
    print(f"(1,1) p_40/2^40={p[40] / 2**40:.6f}")


if __name__ == "__main__":
    main()
