"""Command-line front end.

    lingcat homcount os 2 4
    lingcat series projective --cat os --n 2
    lingcat series ideal --cat oi:1 --n 1 --gens 10 --expand 6
    lingcat groebner --cat oi:1 --n 1 --gens "1*[01]-1*[10]" --trunc 6

Exit codes: 0 success, 2 parse error, 3 bounds exceeded, 4 domain error.
A JSON config file (``--config``) may name ideals and modules:

    {"ideals": {"I": {"cat": "oi:1", "n": 1, "gens": ["10"]}},
     "modules": {"M": {"cat": "oi:1", "n": 1, "gens": ["1*[01]-1*[10]"], "trunc": 6}}}
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automata import Dfa, NormedAlphabet
from .categories import hom_count, parse_category, principal_projective_series
from .config import Limits
from .counting import cfg_count
from .egf import egf_convert
from .errors import DomainError, LingcatError, ParseError
from .expr import compile_expr, parse_expr
from .grammar import parse_cfg
from .grobner import (
    initial_module,
    is_groebner_up_to,
    module_series,
    parse_element,
    quotient_series,
    span_generators,
)
from .series import _frac_str, dfa_series, expand


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _size(text: str):
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise ParseError(f"size {text!r} is not an integer or a comma-separated tuple") from None
    if any(p < 0 for p in parts):
        raise ParseError(f"size {text!r} is negative")
    return parts[0] if len(parts) == 1 else tuple(parts)


def _split_words(values) -> list[str]:
    out = []
    for v in values or []:
        out.extend(w.strip() for w in v.replace(",", " ").split())
    return [w for w in out if w]


def _split_elements(values) -> list[str]:
    out = []
    for v in values or []:
        out.extend(p.strip() for p in v.split(";"))
    return [p for p in out if p]


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError(f"config {path} must hold a JSON object")
    return data


def _named(config: dict, section: str, name: str) -> dict:
    entry = config.get(section, {}).get(name)
    if entry is None:
        raise ParseError(f"no entry {name!r} under {section!r} in the config")
    return entry


def _coeff_text(values) -> str:
    return ",".join(_frac_str(v) for v in values)


def _coeff_json(values) -> list[str]:
    return [_frac_str(v) for v in values]


def _emit(args, record: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_homcount(args, limits, config):
    cat = parse_category(args.cat)
    n, m = _size(args.n), _size(args.m)
    count = hom_count(cat, n, m)
    _emit(args, {"category": str(cat), "n": n, "m": m, "count": count}, [str(count)])


def _ideal_args(args, config):
    if args.name:
        entry = _named(config, "ideals", args.name)
        return parse_category(entry["cat"]), entry["n"], list(entry["gens"])
    if args.cat is None or args.n is None:
        raise ParseError("--cat and --n are required (or --name with --config)")
    return parse_category(args.cat), _size(args.n), _split_words(args.gens)


def _series_record(args, s, limits):
    record = {"series": s.to_dict(), "text": s.format()}
    lines = [s.format()]
    if args.expand is not None:
        table = expand(s, args.expand, limits)
        if s.nvars == 1:
            values = table.as_list()
            record["coefficients"] = _coeff_json(values)
            lines.append(_coeff_text(values))
        else:
            record["coefficients"] = table.to_dict()["coefficients"]
            lines.append(json.dumps(record["coefficients"]))
    if args.egf:
        egf = egf_convert(s)
        record["egf"] = {"text": egf.format(), **egf.to_dict()}
        lines.append(egf.format())
    return record, lines


def cmd_series(args, limits, config):
    subject = args.subject
    if subject == "cfg":
        if not args.grammar:
            raise ParseError("series cfg needs --grammar")
        order = args.expand if args.expand is not None else 10
        table = cfg_count(parse_cfg(args.grammar), order=order, limits=limits)
        values = table.as_list()
        _emit(args, {"coefficients": _coeff_json(values)}, [_coeff_text(values)])
        return
    if subject == "projective":
        if args.cat is None or args.n is None:
            raise ParseError("series projective needs --cat and --n")
        s = principal_projective_series(parse_category(args.cat), _size(args.n))
    elif subject in ("ideal", "quotient"):
        cat, n, gens = _ideal_args(args, config)
        s = (module_series if subject == "ideal" else quotient_series)(cat, n, gens)
    elif subject == "dfa":
        if not args.dfa:
            raise ParseError("series dfa needs --dfa (JSON text or @file)")
        text = Path(args.dfa[1:]).read_text() if args.dfa.startswith("@") else args.dfa
        dfa = Dfa.loads(text)
        s = dfa_series(dfa, NormedAlphabet.by_length(dfa.alphabet))
    elif subject == "expr":
        if not args.expr:
            raise ParseError("series expr needs --expr")
        e = parse_expr(args.expr)
        dfa = compile_expr(e, args.alphabet)
        s = dfa_series(dfa, NormedAlphabet.by_length(dfa.alphabet)).reduced()
    else:
        raise ParseError(f"unknown series subject {subject!r}")
    record, lines = _series_record(args, s, limits)
    _emit(args, record, lines)


def cmd_groebner(args, limits, config):
    if args.name:
        entry = _named(config, "modules", args.name)
        cat, n = parse_category(entry["cat"]), entry["n"]
        gen_texts = list(entry.get("gens", []))
        trunc = entry.get("trunc", args.trunc)
        cand_texts = list(entry.get("candidate", [])) + _split_elements(args.candidate)
    else:
        if args.cat is None or args.n is None:
            raise ParseError("groebner needs --cat and --n (or --name with --config)")
        cat, n = parse_category(args.cat), _size(args.n)
        gen_texts = _split_elements(args.gens)
        trunc = args.trunc
        cand_texts = _split_elements(args.candidate)
    if trunc is None:
        raise ParseError("groebner needs --trunc")
    gens = [parse_element(t, cat, n) for t in gen_texts]
    M = span_generators(cat, n, gens, trunc, limits)
    init = initial_module(M)
    dims = M.dims()
    s = module_series(cat, n, init)
    words = [list(ws) for ws in init.generators]
    record = {
        "category": str(cat),
        "sources": list(M.sources),
        "truncation": trunc,
        "dims": dims,
        "initial_generators": words,
        "series": s.to_dict(),
        "series_text": s.format(),
    }
    shown = "; ".join(" ".join(f"[{w}]" for w in ws) or "-" for ws in init.generators)
    lines = [
        f"category: {cat}",
        f"source: {','.join(str(k) for k in M.sources)}",
        f"truncation: {trunc}",
        f"dims: {','.join(str(d) for d in dims)}",
        f"initial generators: {shown}",
        f"series: {s.format()}",
    ]
    if cand_texts:
        candidate = [parse_element(t, cat, n) for t in cand_texts]
        verdict = is_groebner_up_to(M, candidate, trunc)
        record["groebner"] = verdict
        lines.append(f"groebner up to {trunc}: {'yes' if verdict else 'no'}")
    _emit(args, record, lines)


def _global_options(p, default):
    p.add_argument("--format", choices=("text", "json"), default=default)
    p.add_argument("--max-work", type=int, default=default, help="work bound for enumerations")
    p.add_argument("--config", default=default, help="JSON file with named ideals and modules")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lingcat", description="Hilbert series of representations of combinatorial categories")
    _global_options(p, argparse.SUPPRESS)
    p.set_defaults(format="text", max_work=None, config=None)
    # the same options are accepted after the subcommand
    common = _Parser(add_help=False)
    _global_options(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    h = add("homcount", help="size of Hom([n],[m])")
    h.add_argument("cat")
    h.add_argument("n")
    h.add_argument("m")
    h.set_defaults(func=cmd_homcount)

    s = add("series", help="Hilbert series")
    s.add_argument("subject", choices=("projective", "ideal", "quotient", "dfa", "expr", "cfg"))
    s.add_argument("--cat")
    s.add_argument("--n")
    s.add_argument("--gens", nargs="*", default=[])
    s.add_argument("--name")
    s.add_argument("--dfa")
    s.add_argument("--expr")
    s.add_argument("--alphabet")
    s.add_argument("--grammar")
    s.add_argument("--expand", type=int)
    s.add_argument("--egf", action="store_true")
    s.set_defaults(func=cmd_series)

    g = add("groebner", help="truncated span, initial ideal and Groebner check")
    g.add_argument("--cat")
    g.add_argument("--n")
    g.add_argument("--gens", nargs="*", default=[], help="module elements, ';' separated")
    g.add_argument("--trunc", type=int)
    g.add_argument("--candidate", nargs="*", default=[])
    g.add_argument("--name")
    g.set_defaults(func=cmd_groebner)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        limits = Limits() if args.max_work is None else Limits(max_work=args.max_work)
        if limits.max_work < 1:
            raise ParseError("--max-work must be positive")
        config = _load_config(args.config)
        args.func(args, limits, config)
    except LingcatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (KeyError, TypeError) as exc:
        print(f"error: malformed config entry: {exc}", file=sys.stderr)
        return ParseError.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DomainError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
