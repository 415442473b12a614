"""Exact z(m, n, C_2k) for small parts next to the even-cycle upper bound.

With m <= n the bound is

    (2k - 3) * ((m n)^((k+1)/(2k)) + m + n)      for odd k
    (2k - 3) * (m^((k+2)/(2k)) n^(1/2) + m + n)  for even k

and is checked for every table entry; a row marked '!' would be a
counterexample.
"""
import argparse

from subturan import cycle
from subturan.extremal import check_naor_verstraete_bound, exact_z


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=2, help="half the cycle length")
    ap.add_argument("--max", type=int, default=6, help="largest part size (m <= n <= max)")
    args = ap.parse_args()

    h = cycle(2 * args.k)
    print(f"z(m, n, C_{2 * args.k})")
    print(f"{'m':>3} {'n':>3} {'z':>4} {'bound':>9}  ok")
    for n in range(1, args.max + 1):
        for m in range(1, n + 1):
            rec = exact_z(m, n, h)
            chk = check_naor_verstraete_bound(m, n, args.k, rec.value)
            print(f"{m:>3} {n:>3} {rec.value:>4} {chk.bound:>9.2f}  {'yes' if chk.holds else '!'}")


if __name__ == "__main__":
    main()
