"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial in ``nvars`` variables is a mapping from exponent tuples to
nonzero :class:`fractions.Fraction` coefficients. Only what the series code
needs is implemented: ring operations, truncation by total degree, exact
division, and printing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent {exps} has wrong arity for {nvars} variables")
                c = _as_fraction(c)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Iterable[int], c=1) -> Poly:
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def from_univariate(cls, coeffs: Iterable) -> Poly:
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> Poly:
        p = Poly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_linear_form(self) -> bool:
        return all(sum(e) == 1 for e in self.terms)

    def leading(self):
        """Lex-leading (exponents, coefficient)."""
        exps = max(self.terms)
        return exps, self.terms[exps]

    def univariate_coeffs(self) -> list[Fraction]:
        if self.nvars != 1:
            raise ValueError("not a univariate polynomial")
        out = [Fraction(0)] * (self.total_degree() + 1)
        for (k,), c in self.terms.items():
            out[k] = c
        return out

    def key(self) -> tuple:
        """Hashable canonical form."""
        return tuple(sorted(self.terms.items()))

    def __hash__(self):
        return hash((self.nvars, self.key()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    # arithmetic
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _as_fraction(other)
            p = Poly(self.nvars)
            if c:
                p.terms = {e: v * c for e, v in self.terms.items()}
            return p
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def mul_truncated(self, other: Poly, order: int | None) -> Poly:
        """Product keeping only terms of total degree <= order (None keeps all)."""
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        b_items = list(other.terms.items())
        if order is not None:
            b_items = [(e, c, sum(e)) for e, c in b_items]
        for ea, ca in self.terms.items():
            if order is None:
                for eb, cb in b_items:
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
            else:
                da = sum(ea)
                if da > order:
                    continue
                for eb, cb, db in b_items:
                    if da + db > order:
                        continue
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
        p = Poly(self.nvars)
        p.terms = {e: c for e, c in out.items() if c}
        return p

    def __pow__(self, k: int):
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, order: int) -> Poly:
        p = Poly(self.nvars)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) <= order}
        return p

    def divide_exact(self, divisor: Poly) -> Poly | None:
        """Return q with self == q * divisor, or None when divisor does not divide."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self.copy()
        quot = Poly(self.nvars)
        lt_e, lt_c = divisor.leading()
        while not rem.is_zero():
            e, c = rem.leading()
            shift = tuple(a - b for a, b in zip(e, lt_e))
            if min(shift) < 0:
                return None
            step = Poly(self.nvars, {shift: c / lt_c})
            quot = quot + step
            rem = rem - step * divisor
        return quot

    def substitute_vars(self, mapping: list[int], nvars: int) -> Poly:
        """Rename variable i to variable mapping[i] in a ring with nvars variables."""
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for i, k in enumerate(e):
                new[mapping[i]] += k
            new = tuple(new)
            out[new] = out.get(new, 0) + c
        return Poly(nvars, out)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            total += v
        return total

    # printing
    def format(self, names: list[str]) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda it: (sum(it[0]), tuple(-x for x in it[0])))
        parts = []
        for e, c in items:
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}{mono}"
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f"{sign}{body}"
        return text

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms!r})"
