"""Decide the garbled U1*U7^2 coefficient of eq 19 by the Hilbert function.

Each candidate (-1-t)/n is substituted (orbit images re-derived) and h(d) is
checked for d <= max degree.  Degree 3 cannot separate them; degree 4 can.
"""

import argparse

from fppcheck.arith import ModularEmbedding
from fppcheck.corpus import load_embedded
from fppcheck.poly import Monomial
from fppcheck.verify import calibrate_ambiguous
from fppcheck.verify.calibrate import KNOWN_CANDIDATES

TERM = Monomial([0, 1, 0, 0, 0, 0, 0, 2, 0, 0])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=263)
    args = ap.parse_args()
    c = load_embedded()
    e = ModularEmbedding.for_prime(args.prime)
    for d in (3, 4, 5):
        r = calibrate_ambiguous(c, 19, TERM, KNOWN_CANDIDATES[(19, TERM)], e, max_degree=d)
        print(f"max degree {d}: {r.status}, passing {[str(x) for x in r.passing]}")
        for cand in r.candidates:
            hs = ", ".join(f"h({h.degree})={h.quotient}" for h in r.hilbert[cand])
            print(f"    {cand!s:>14}  {hs}")


if __name__ == "__main__":
    main()
