"""Tabulate the fibonomial inverse against the fibonomial triangle.

Prints the quotient B(n,k)/(n,k)_F per offset d = n-k, whether it is constant
along each diagonal, and the first terms of each diagonal.
"""

import argparse

from fibinv.discovery import diagonal_sequences, normalize_by
from fibinv.inversion import invert_triangle
from fibinv.kernel import format_rational
from fibinv.triangles import fibonomial_triangle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=20)
    ap.add_argument("--offsets", type=int, default=10)
    args = ap.parse_args()

    T = fibonomial_triangle(args.rows)
    B = invert_triangle(T)
    norm = normalize_by(B, T)
    for seq in diagonal_sequences(B, args.offsets):
        d = seq.offset
        qs = {norm.quotient(k + d, k) for k in range(args.rows - d + 1)}
        label = format_rational(next(iter(qs))) if len(qs) == 1 else "varies"
        head = ", ".join(format_rational(x) for x in seq.entries[:8])
        print(f"d={d:2d}  quotient={label:>10}  entries: {head}")


if __name__ == "__main__":
    main()
