"""Localize a corrupted equation by leave-one-out syzygy participation.

For the correct ideal the 84 x 10 degree-4 products have rank 462, leaving
378 linear syzygies.  Dropping eq k removes the syzygies it takes part in:

    participation(k) = syz(all) - syz(all but k)

On the shipped corpus every equation takes part in 9 or 10 syzygies.  A
corrupted coefficient breaks the relations through its equation, so its orbit
drops far below the rest (to 0 when eq 19 is given -1-t).  Orbits under half
the median, and stored images disagreeing with their orbit mates, are suspects.  With ``--search`` the
suspects' coefficients are then varied one at a time (zero, sign flip,
conjugate, times 2, halved) and any single change restoring h(3), h(4) is
reported as a minimal correction.

    python3 scripts/leave_one_out.py --corpus broken.fpp --search
"""

import argparse
from collections import defaultdict

from fppcheck.arith import ModularEmbedding
from fppcheck.corpus import load_corpus
from fppcheck.linalg import rank
from fppcheck.verify import Resolution, hilbert_function, multiplication_matrix


def orbit_key(c, k: int) -> int:
    src = c[k].provenance.source
    return k if src is None else src


def syzygies(c, e) -> int:
    return 10 * len(c) - rank(multiplication_matrix(c, 4, e))


def participation(c, e) -> dict[int, int]:
    total = syzygies(c, e)
    return {k: total - syzygies(c.without(k), e) for k in c.indices()}


def passes(c, e) -> bool:
    res = Resolution(c, e)
    return all(hilbert_function(c, d, e, res).passed for d in (3, 4))


def variations(value):
    seen = {value}
    for v in (value * 0, -value, value.conjugate(), value * 2, value / 2):
        if v not in seen:
            seen.add(v)
            yield v


def search(c, e, suspects) -> list[tuple[int, object, object, object]]:
    found = []
    for k in suspects:
        seed = orbit_key(c, k)
        if not c[seed].provenance.explicit:
            continue
        for term, value in sorted(c[seed].poly.terms.items(), reverse=True):
            for v in variations(value):
                if passes(c.with_coefficient(seed, term, v), e):
                    found.append((seed, term, value, v))
    return found


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--corpus", default=None)
    ap.add_argument("--prime", type=int, default=263)
    ap.add_argument("--search", action="store_true", help="try single-coefficient corrections on suspects")
    args = ap.parse_args()

    c = load_corpus(args.corpus)
    e = ModularEmbedding.for_prime(args.prime)
    part = participation(c, e)
    groups = defaultdict(list)
    for k, s in part.items():
        groups[orbit_key(c, k)].append((k, s))

    median = sorted(part.values())[len(part) // 2]
    suspects = []
    for seed, members in sorted(groups.items()):
        counts = [s for _, s in members]
        mark = ""
        if len(set(counts)) > 1:
            mark = "   <- mismatch"
            common = max(set(counts), key=counts.count)
            suspects += [k for k, s in members if s != common]
        elif 2 * counts[0] < median:
            mark = "   <- low"
            suspects.append(seed)
        line = "  ".join(f"eq {k}: {s}" for k, s in members)
        print(f"orbit {seed:>2}  {line}{mark}")

    print(f"h(3), h(4) as given: {'pass' if passes(c, e) else 'FAIL'}")
    print(f"suspects: {suspects or 'none'}")
    if args.search and suspects:
        fixes = search(c, e, suspects)
        for seed, term, old, new in fixes:
            print(f"eq {seed}: {term} {old} -> {new} restores h(3), h(4)")
        if not fixes:
            print("no single-coefficient correction found")


if __name__ == "__main__":
    main()
