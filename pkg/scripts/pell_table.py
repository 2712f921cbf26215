"""Tabulate fundamental Pell solutions and the Pell automorphism for alpha = sqrt(D).

With --oracle the table is computed by brute force instead of continued
fractions; --freeze writes it as JSON for the test suite.
"""
import argparse
import json
import math
import sys

from reinhardt.exact_arith import is_square
from reinhardt.pell import alpha_to_pnq, matrix_from_pell, pell_fundamental


def brute_force(D: int, y_max: int = 10**6) -> tuple[int, int]:
    for y in range(1, y_max + 1):
        x = math.isqrt(1 + D * y * y)
        if x * x == 1 + D * y * y:
            return x, y
    raise LookupError(D)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-d", type=int, default=50)
    ap.add_argument("--oracle", action="store_true")
    ap.add_argument("--freeze", metavar="PATH")
    args = ap.parse_args()
    table = {}
    for D in range(2, args.max_d + 1):
        if is_square(D):
            continue
        if args.oracle:
            x, y = brute_force(D)
        else:
            sol = pell_fundamental(D)
            x, y = sol.x, sol.y
        table[D] = (x, y)
    if args.freeze:
        with open(args.freeze, "w") as fh:
            json.dump({str(k): v for k, v in table.items()}, fh, indent=1)
            fh.write("\n")
        return
    print(f"{'D':>4} {'x':>12} {'y':>10}  matrix for alpha = sqrt(D)")
    for D, (x, y) in table.items():
        m = matrix_from_pell(alpha_to_pnq(0, D), pell_fundamental(D))
        print(f"{D:>4} {x:>12} {y:>10}  {m.rows()}  trace {m.trace}")


if __name__ == "__main__":
    sys.exit(main())
