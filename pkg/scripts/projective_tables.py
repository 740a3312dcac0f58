"""Print Hilbert series and the first few hom counts of principal projectives.

    python3 scripts/projective_tables.py --max-n 3 --terms 8
"""

import argparse

from lingcat.categories import hom_count, parse_category, principal_projective_series
from lingcat.egf import egf_convert
from lingcat.series import expand

DEFAULT_CATS = ["oi:1", "oi:2", "os", "fi:1", "fs", "fa"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cats", nargs="*", default=DEFAULT_CATS)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--terms", type=int, default=8)
    ap.add_argument("--egf", action="store_true", help="also print the exponential form")
    args = ap.parse_args(argv)

    for text in args.cats:
        cat = parse_category(text)
        print(f"== {cat}")
        for n in range(args.max_n + 1):
            s = principal_projective_series(cat, n)
            coeffs = [int(c) for c in expand(s, args.terms).as_list()]
            # the series and the direct count must agree term by term
            assert coeffs == [hom_count(cat, n, m) for m in range(args.terms + 1)]
            print(f"  n={n}  {s.format()}")
            print(f"       {coeffs}")
            if args.egf:
                print(f"       egf: {egf_convert(s).format()}")


if __name__ == "__main__":
    main()
