"""Truncated Groebner data for a few OI_d submodules.

For each module: dimensions up to the truncation, minimal initial words,
the quotient series and, for OI_1, a polynomiality certificate of the
quotient dimensions.

    python3 scripts/groebner_report.py --trunc 8
"""

import argparse

from lingcat.categories import fa_polynomiality_certificate, oi
from lingcat.grobner import initial_module, parse_element, quotient_series, span_generators
from lingcat.series import expand

MODULES = [
    (oi(1), 1, ["[01] - [10]"]),
    (oi(1), 1, ["[101]"]),
    (oi(1), 2, ["[001] - [010]", "[100]"]),
    (oi(1), 2, ["[0101] - [1010]"]),
    (oi(2), 1, ["[01] - [02]"]),
    (oi(2), 1, ["[102] - 2*[201]"]),
]


def report(cat, n, texts, trunc, window):
    gens = [parse_element(t, cat, n) for t in texts]
    M = span_generators(cat, n, gens, trunc)
    init = initial_module(M)
    q = quotient_series(cat, n, init)
    print(f"== {cat}, P_[{n}], generators {texts}")
    print(f"  dims      {M.dims()}")
    print(f"  initial   {list(init.words)}")
    print(f"  quotient  {q.format()}")
    if cat.d == 1:
        coeffs = expand(q, window[1]).as_list()
        cert = fa_polynomiality_certificate(coeffs, *window)
        if cert is None:
            print("  no polynomial certificate on the window")
        else:
            print(f"  quotient dims = {cert.format('m')} for m in [{window[0]}, {window[1]}]")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trunc", type=int, default=8)
    ap.add_argument("--window", type=int, nargs=2, default=(4, 12))
    args = ap.parse_args(argv)
    for cat, n, texts in MODULES:
        report(cat, n, texts, args.trunc, args.window)


if __name__ == "__main__":
    main()
