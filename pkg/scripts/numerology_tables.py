"""Print dimension, top degree and Poincare data for the finite quotients.

    python3 scripts/numerology_tables.py [--max-k 3] [--max-m 3]
"""

import argparse
import time

from dualsteenrod.quotient import (
    build_quotient,
    closed_form_poincare,
    conjecture_report,
    delta,
    frobenius_check,
    gaussian_binomial_q2,
    poincare_series,
    regularity_check,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--max-m", type=int, default=3)
    args = ap.parse_args()

    print("k m  dim  gauss  top  delta  poincare  frobenius  regular  seconds")
    for k in range(1, args.max_k + 1):
        for m in range(1, args.max_m + 1):
            start = time.perf_counter()
            qr = build_quotient(k, m)
            row = (k, m, qr.dimension, gaussian_binomial_q2(m + k, k), qr.top_degree, delta(k, m),
                   poincare_series(qr) == closed_form_poincare(k, m), frobenius_check(qr).ok,
                   regularity_check(k, m), time.perf_counter() - start)
            print("{} {} {:>5} {:>5} {:>4} {:>5}  {!s:>8}  {!s:>9}  {!s:>7}  {:>6.2f}".format(*row))

    print()
    for k in range(2, args.max_k + 1):
        for line in conjecture_report(k).lines():
            print(line)


if __name__ == "__main__":
    main()
