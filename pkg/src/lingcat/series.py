"""Exact rational generating functions with factored denominators.

A :class:`RationalSeries` is ``numerator / prod (1 - form)^exponent`` where each
form is a polynomial without constant term, so every factor is invertible as
a power series. Ordered automata produce forms that are sums of letter
monomials; a general automaton yields a single expanded factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .automata import (
    Dfa,
    NormedAlphabet,
    coreachable_states,
    reachable_states,
    topological_order,
)
from .config import limits_or_default
from .errors import BoundsError, DomainError, FitError, ParseError
from .poly import Poly


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_frac(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


@dataclass(frozen=True)
class CoeffTable:
    """Coefficients of a series up to a total-degree truncation order."""

    names: tuple[str, ...]
    order: int
    coeffs: dict

    def __getitem__(self, exps) -> Fraction:
        if isinstance(exps, int):
            exps = (exps,)
        return self.coeffs.get(tuple(exps), Fraction(0))

    def as_list(self) -> list[Fraction]:
        if len(self.names) != 1:
            raise ValueError("as_list needs a univariate table")
        return [self[(k,)] for k in range(self.order + 1)]

    def by_total_degree(self) -> list[Fraction]:
        out = [Fraction(0)] * (self.order + 1)
        for e, c in self.coeffs.items():
            out[sum(e)] += c
        return out

    def to_dict(self) -> dict:
        return {
            "vars": list(self.names),
            "order": self.order,
            "coefficients": [[list(e), _frac_str(c)] for e, c in sorted(self.coeffs.items()) if c],
        }


def coeff_table_from_list(values: Sequence, name: str = "t") -> CoeffTable:
    return CoeffTable((name,), len(values) - 1, {(k,): Fraction(v) for k, v in enumerate(values)})


def _default_names(n: int) -> tuple[str, ...]:
    return ("t",) if n == 1 else tuple(f"t{i + 1}" for i in range(n))


class RationalSeries:
    __slots__ = ("names", "numerator", "factors")

    def __init__(self, names: Iterable[str], numerator: Poly, factors: Iterable = ()):
        self.names = tuple(names)
        n = len(self.names)
        if numerator.nvars != n:
            raise DomainError("numerator ring does not match the variables")
        merged: dict[tuple, list] = {}
        for form, e in factors:
            if form.nvars != n:
                raise DomainError("factor ring does not match the variables")
            if form.constant_term() != 0:
                raise DomainError("denominator forms must have zero constant term")
            if e < 0:
                raise DomainError("denominator exponents must be nonnegative")
            if form.is_zero() or e == 0:
                continue
            key = form.key()
            if key in merged:
                merged[key][1] += e
            else:
                merged[key] = [form, e]
        self.numerator = numerator
        self.factors = tuple(
            (f, e) for _, (f, e) in sorted(merged.items(), key=lambda kv: _factor_sort_key(kv[1][0]))
        )

    @classmethod
    def polynomial(cls, names, p: Poly) -> RationalSeries:
        return cls(names, p, ())

    @property
    def nvars(self) -> int:
        return len(self.names)

    def denominator(self) -> Poly:
        d = Poly.const(self.nvars, 1)
        for f, e in self.factors:
            d = d * (Poly.const(self.nvars, 1) - f) ** e
        return d

    def is_factored(self) -> bool:
        """True when every form has nonnegative integer coefficients."""
        return all(
            c > 0 and c.denominator == 1 for f, _ in self.factors for c in f.terms.values()
        )

    def reduced(self) -> RationalSeries:
        """Cancel denominator factors that divide the numerator."""
        num = self.numerator
        out = []
        one = Poly.const(self.nvars, 1)
        for f, e in self.factors:
            base = one - f
            while e and not num.is_zero():
                q = num.divide_exact(base)
                if q is None:
                    break
                num, e = q, e - 1
            if num.is_zero():
                e = 0
            out.append((f, e))
        return RationalSeries(self.names, num, out)

    # arithmetic
    def _check(self, other: RationalSeries):
        if self.names != other.names:
            raise DomainError(f"series over different variables {self.names} and {other.names}")

    def _common(self, other: RationalSeries):
        self._check(other)
        exps: dict[tuple, list] = {}
        for f, e in self.factors:
            exps[f.key()] = [f, e, 0]
        for f, e in other.factors:
            exps.setdefault(f.key(), [f, 0, 0])[2] = e
        one = Poly.const(self.nvars, 1)
        a, b = self.numerator, other.numerator
        factors = []
        for f, ea, eb in exps.values():
            e = max(ea, eb)
            a = a * (one - f) ** (e - ea)
            b = b * (one - f) ** (e - eb)
            factors.append((f, e))
        return a, b, factors

    def __add__(self, other: RationalSeries) -> RationalSeries:
        a, b, factors = self._common(other)
        return RationalSeries(self.names, a + b, factors)

    def __neg__(self):
        return RationalSeries(self.names, -self.numerator, self.factors)

    def __sub__(self, other: RationalSeries) -> RationalSeries:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            self._check(other)
            return RationalSeries(
                self.names, self.numerator * other.numerator, self.factors + other.factors
            )
        return RationalSeries(self.names, self.numerator * other, self.factors)

    __rmul__ = __mul__

    def embed(self, mapping: list[int], names: Sequence[str]) -> RationalSeries:
        """Move variable i to position mapping[i] of a larger variable set."""
        n = len(names)
        return RationalSeries(
            names,
            self.numerator.substitute_vars(mapping, n),
            [(f.substitute_vars(mapping, n), e) for f, e in self.factors],
        )

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return series_equal(self, other)

    __hash__ = None

    # output
    def format(self) -> str:
        names = list(self.names)
        one = Poly.const(self.nvars, 1)
        num = self.numerator.format(names)
        if not self.factors or self.numerator.is_zero():
            return num
        dens = []
        for f, e in self.factors:
            body = f"({(one - f).format(names)})"
            dens.append(body if e == 1 else f"{body}^{e}")
        if len(self.numerator.terms) > 1:
            num = f"({num})"
        if len(dens) == 1:
            return f"{num}/{dens[0]}"
        return f"{num}/({''.join(dens)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalSeries({self.format()!r})"

    def to_dict(self) -> dict:
        return {
            "vars": list(self.names),
            "numerator": [[list(e), _frac_str(c)] for e, c in sorted(self.numerator.terms.items())],
            "denominator": [
                [[[list(fe), _frac_str(fc)] for fe, fc in sorted(f.terms.items())], e]
                for f, e in self.factors
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> RationalSeries:
        try:
            names = tuple(data["vars"])
            n = len(names)
            num = Poly(n, {tuple(e): _parse_frac(c) for e, c in data["numerator"]})
            factors = [
                (Poly(n, {tuple(fe): _parse_frac(fc) for fe, fc in terms}), int(e))
                for terms, e in data["denominator"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad series record: {exc}") from exc
        return cls(names, num, factors)

    @classmethod
    def loads(cls, text: str) -> RationalSeries:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"series record is not valid JSON: {exc}") from exc


def _factor_sort_key(form: Poly):
    return (len(form.terms), sorted((sum(e), tuple(-x for x in e), c) for e, c in form.terms.items()))


def geometric(form: Poly, order: int) -> Poly:
    """Truncation of 1/(1 - form) at total degree ``order``."""
    out = Poly.const(form.nvars, 1)
    power = Poly.const(form.nvars, 1)
    for _ in range(order):
        power = power.mul_truncated(form, order)
        if power.is_zero():
            break
        out = out + power
    return out


def expand(s: RationalSeries, order: int, limits=None) -> CoeffTable:
    lim = limits_or_default(limits)
    if order > lim.max_order:
        raise BoundsError(f"expansion order {order} exceeds the limit {lim.max_order}")
    acc = s.numerator.truncate(order)
    for f, e in s.factors:
        g = geometric(f, order)
        for _ in range(e):
            acc = acc.mul_truncated(g, order)
    return CoeffTable(s.names, order, dict(acc.terms))


def series_equal(a: RationalSeries, b: RationalSeries) -> bool:
    a._check(b)
    return a.numerator * b.denominator() == b.numerator * a.denominator()


# transfer matrix ---------------------------------------------------------------

def _letter_monomial(norm: NormedAlphabet, c: str) -> Poly:
    return Poly.monomial(norm.norms[c])


def _bareiss_det(m: list[list[Poly]], nvars: int) -> Poly:
    """Fraction-free determinant over Q[t]."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return Poly.const(nvars, 1)
    sign = 1
    prev = Poly.const(nvars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q = num.divide_exact(prev)
                if q is None:
                    raise ArithmeticError("Bareiss division was not exact")
                a[i][j] = q
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def dfa_series(dfa: Dfa, alphabet: NormedAlphabet | None = None) -> RationalSeries:
    """Hilbert series sum over accepted words of t^norm(w).

    Only reachable states that can still accept take part. For ordered
    automata they are sorted topologically, 1 - A is upper triangular and
    the denominator is the product of (1 - loop form) over those states;
    the numerator comes from fraction-free back substitution. Otherwise
    Cramer's rule is applied with Bareiss determinants and the denominator
    is kept as one expanded factor.
    """
    if alphabet is None:
        alphabet = NormedAlphabet.by_length(dfa.alphabet)
    if set(dfa.alphabet) - set(alphabet.letters):
        raise DomainError("norm does not cover the DFA alphabet")
    names = alphabet.names
    nv = alphabet.dim
    for c in dfa.alphabet:
        if not any(alphabet.norms[c]):
            raise DomainError(f"letter {c!r} has zero norm; the series is not defined")
    useful = reachable_states(dfa) & coreachable_states(dfa)
    if not useful:
        return RationalSeries(names, Poly.zero(nv))
    order = topological_order(dfa, useful)
    one = Poly.const(nv, 1)
    if order is not None:
        s = len(order)
        pos = {q: i for i, q in enumerate(order)}
        # strictly upper part of A and diagonal loop forms
        upper = [dict() for _ in range(s)]
        loops = []
        for i, q in enumerate(order):
            loop = Poly.zero(nv)
            for c, r in zip(dfa.alphabet, dfa.delta[q]):
                mono = _letter_monomial(alphabet, c)
                if r == q:
                    loop = loop + mono
                elif r in pos:
                    j = pos[r]
                    upper[i][j] = upper[i].get(j, Poly.zero(nv)) + mono
            loops.append(loop)
        diag = [one - lam for lam in loops]
        # v_i = N_i / prod_{k>=i} diag_k solves (1 - A) v = finals
        num = [None] * s
        for i in range(s - 1, -1, -1):
            acc = one if order[i] in dfa.finals else Poly.zero(nv)
            acc = acc * _prod(diag[i + 1:], nv)
            for j, a_ij in upper[i].items():
                acc = acc + a_ij * num[j] * _prod(diag[i + 1:j], nv)
            num[i] = acc
        return RationalSeries(names, num[0], [(lam, 1) for lam in loops])
    states = sorted(useful)
    pos = {q: i for i, q in enumerate(states)}
    s = len(states)
    mat = [[Poly.zero(nv) for _ in range(s)] for _ in range(s)]
    for i, q in enumerate(states):
        mat[i][i] = mat[i][i] + one
        for c, r in zip(dfa.alphabet, dfa.delta[q]):
            if r in pos:
                mat[i][pos[r]] = mat[i][pos[r]] - _letter_monomial(alphabet, c)
    det = _bareiss_det(mat, nv)
    col = pos[dfa.initial]
    cram = [row[:] for row in mat]
    for i, q in enumerate(states):
        cram[i][col] = one if q in dfa.finals else Poly.zero(nv)
    numer = _bareiss_det(cram, nv)
    return RationalSeries(names, numer, [(one - det, 1)])


def _prod(polys, nv) -> Poly:
    out = Poly.const(nv, 1)
    for p in polys:
        out = out * p
    return out


# fitting -----------------------------------------------------------------------

def univariate_factors(pairs: Iterable[tuple[int, int]], name: str = "t") -> list:
    """[(j, e), ...] -> factors of prod (1 - j t)^e."""
    return [(Poly(1, {(1,): j}), e) for j, e in pairs]


def fit_rational(
    coeffs: CoeffTable | Sequence,
    factors: Iterable,
    num_degree: int | None = None,
    margin: int = 3,
) -> RationalSeries:
    """Numerator = (coefficient series) * denominator, checked to vanish past num_degree.

    ``factors`` are (form, exponent) pairs in one variable. The default
    numerator degree bound is the denominator degree.
    """
    if isinstance(coeffs, CoeffTable):
        name = coeffs.names[0]
        values = coeffs.as_list()
    else:
        name = "t"
        values = [Fraction(v) for v in coeffs]
    probe = RationalSeries((name,), Poly.const(1, 1), list(factors))
    denom = probe.denominator()
    deg_d = denom.total_degree()
    if num_degree is None:
        num_degree = deg_d
    if len(values) < num_degree + 1 + margin:
        raise FitError(
            f"need at least {num_degree + 1 + margin} coefficients, got {len(values)}"
        )
    window = len(values) - 1
    prod = Poly.from_univariate(values).mul_truncated(denom, window)
    bad = [k for k in prod.terms if k[0] > num_degree]
    if bad:
        k = min(bad)[0]
        raise FitError(f"sequence does not fit the denominator: residual at degree {k}")
    return RationalSeries((name,), prod, probe.factors)
