"""Print D_k and t^2 N_k for a range of heights, plus the first coefficients
of C_k(t), for one step system."""
import argparse

from culminating.core import StepSystem
from culminating.genfunc import ck_coeffs, dk_nk, format_poly


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--n", type=int, default=24)
    args = p.parse_args()
    s = StepSystem(args.a, args.b)
    for k in range(s.a, args.kmax + 1):
        d, num = dk_nk(s, k)
        coeffs = ",".join(map(str, ck_coeffs(s, k, args.n)))
        print(f"k={k:3d}  D={format_poly(d)}  t^2N={format_poly(num)}")
        print(f"       C_k: {coeffs}")


if __name__ == "__main__":
    main()
