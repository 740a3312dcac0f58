"""Coefficient-level series that are not rational: derivation counts and multinomials."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .automata import NormedAlphabet
from .config import limits_or_default
from .errors import BoundsError, DomainError
from .grammar import Cfg
from .poly import Poly
from .series import CoeffTable


def cfg_count(g: Cfg, alphabet: NormedAlphabet | None = None, order: int = 10, limits=None) -> CoeffTable:
    """Sum over words of length <= order of (number of derivations) * t^norm(w).

    Counts are computed length by length. Within one length a rule can feed a
    non-terminal from another one of the same length when the rest of its
    body derives the empty word; the least fixpoint of that system is reached
    in at most |N| + 1 rounds unless some word has infinitely many
    derivations, which is reported as an error. For an unambiguous grammar
    the result is the Hilbert series of the language.
    """
    lim = limits_or_default(limits)
    if order > lim.max_order:
        raise BoundsError(f"order {order} exceeds the limit {lim.max_order}")
    for head, body in g.rules:
        if body == (head,):
            raise DomainError(f"rule {head} -> {head} gives infinitely many derivations")
    if alphabet is None:
        alphabet = NormedAlphabet.by_length(g.terminals)
    missing = set(g.terminals) - set(alphabet.letters)
    if missing:
        raise DomainError(f"no norm for terminals {sorted(missing)}")
    nv = alphabet.dim
    zero = Poly.zero(nv)
    # counts[X][l]: polynomial in the norm variables for words of length l
    counts = {n: [] for n in g.nonterminals}
    term = {c: Poly.monomial(alphabet.norms[c]) for c in g.terminals}

    def sym_at(sym, length, current):
        if sym in term:
            return term[sym] if length == 1 else zero
        if length < len(counts[sym]):
            return counts[sym][length]
        return current[sym]

    rounds = len(g.nonterminals) + 1
    for length in range(order + 1):
        current = {n: zero for n in g.nonterminals}
        for it in range(rounds + 1):
            nxt = {}
            for n in g.nonterminals:
                total = zero
                for body in g.rules_for(n):
                    total = total + _body_count(body, length, sym_at, current, nv)
                nxt[n] = total
            if nxt == current:
                break
            if it == rounds:
                raise DomainError(
                    f"grammar has infinitely many derivations for some word of length {length}"
                )
            current = nxt
        for n in g.nonterminals:
            counts[n].append(current[n])
    table: dict[tuple, Fraction] = {}
    for length in range(order + 1):
        for e, c in counts[g.start][length].terms.items():
            table[e] = table.get(e, Fraction(0)) + c
    return CoeffTable(alphabet.names, order, table)


def _body_count(body, length, sym_at, current, nv):
    """Convolution over the ways of splitting ``length`` among the body symbols."""
    # dist[l] = count for prefixes of total length l
    dist = {0: Poly.const(nv, 1)}
    for sym in body:
        new = {}
        for done, p in dist.items():
            for part in range(length - done + 1):
                q = sym_at(sym, part, current)
                if q.is_zero():
                    continue
                new[done + part] = new.get(done + part, Poly.zero(nv)) + p * q
        dist = new
        if not dist:
            return Poly.zero(nv)
    return dist.get(length, Poly.zero(nv))


def multinomial_series(d: int, order: int) -> CoeffTable:
    """(dn)!/n!^d at degree dn: words using each of d letters equally often."""
    if d < 1:
        raise DomainError("d must be at least 1")
    coeffs = {}
    for k in range(order + 1):
        if k % d == 0:
            n = k // d
            coeffs[(k,)] = Fraction(factorial(d * n), factorial(n) ** d)
    return CoeffTable(("t",), order, coeffs)
