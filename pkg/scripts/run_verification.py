"""Run the full verification and optionally save the structured report.

    python3 scripts/run_verification.py --prime 263 --out report.json
    python3 scripts/run_verification.py --deep
"""

import argparse
import sys
import time

from fppcheck.arith import ModularEmbedding
from fppcheck.corpus import load_corpus
from fppcheck.verify import VerifyConfig, run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--prime", type=int, default=263)
    ap.add_argument("--root", type=int, default=None)
    ap.add_argument("--corpus", default=None, help="corpus file (default: embedded)")
    ap.add_argument("--deep", action="store_true", help="add degree 6 and Betti step 4")
    ap.add_argument("--calibrate", action="store_true", help="also calibrate flagged coefficients")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None, help="write the JSON report here")
    args = ap.parse_args()

    c = load_corpus(args.corpus)
    e = ModularEmbedding.for_prime(args.prime, args.root)
    cfg = VerifyConfig(deep=args.deep, workers=args.workers, calibrate=args.calibrate)
    t0 = time.perf_counter()
    rep = run_all(c, e, cfg)
    print(rep.to_text())
    print(f"elapsed {time.perf_counter() - t0:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.to_json())
    return {"pass": 0, "fail": 1}.get(rep.verdict, 2)


if __name__ == "__main__":
    sys.exit(main())
