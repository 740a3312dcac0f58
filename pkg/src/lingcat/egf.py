"""Exponential generating functions of sequences with denominators prod (1 - j t)^e.

If sum a_n t^n = N(t)/prod_j (1 - j t)^{e_j}, then sum a_n t^n / n! is a finite
sum of q_j(t) e^{j t} with polynomials q_j. The conversion goes through
partial fractions: 1/(1 - j t)^k has coefficients C(n+k-1, k-1) j^n, and a
polynomial in n written in the falling-factorial basis n(n-1)...(n-r+1)
turns into (j t)^r e^{j t}. The polynomial part of N/D lands in q_0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DomainError
from .poly import Poly
from .series import RationalSeries


@dataclass(frozen=True)
class EgfForm:
    """sum_j q_j(t) e^{j t}; ``terms`` is a tuple of (coefficients of q_j, j), j ascending."""

    terms: tuple

    def __post_init__(self):
        clean = []
        for coeffs, j in sorted(self.terms, key=lambda t: t[1]):
            coeffs = [Fraction(c) for c in coeffs]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if coeffs:
                clean.append((tuple(coeffs), j))
        js = [j for _, j in clean]
        if len(set(js)) != len(js):
            raise DomainError("exponential rates must be distinct")
        object.__setattr__(self, "terms", tuple(clean))

    def coefficient(self, n: int) -> Fraction:
        """n! times the coefficient of t^n, i.e. the ordinary sequence value a_n."""
        total = Fraction(0)
        for coeffs, j in self.terms:
            for r, q in enumerate(coeffs):
                if r <= n:
                    # t^r e^{jt} contributes j^{n-r} / (n-r)! at t^n
                    total += q * Fraction(j) ** (n - r) * factorial(n) / factorial(n - r)
        return total

    def sequence(self, order: int) -> list[Fraction]:
        return [self.coefficient(n) for n in range(order + 1)]

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for coeffs, j in self.terms:
            q = Poly.from_univariate(coeffs)
            exp = "" if j == 0 else ("e^t" if j == 1 else f"e^({j}t)")
            if not exp:
                parts.append(q.format(["t"]))
            elif len(q.terms) == 1:
                (((r,), c),) = q.terms.items()
                if r == 0 and c == 1:
                    parts.append(exp)
                elif r == 0 and c == -1:
                    parts.append(f"-{exp}")
                else:
                    parts.append(f"{q.format(['t'])}*{exp}")
            else:
                parts.append(f"({q.format(['t'])})*{exp}")
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __str__(self):
        return self.format()

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"rate": j, "poly": [f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator) for c in coeffs]}
                for coeffs, j in self.terms
            ]
        }


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular partial-fraction system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = num[:]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return q, num


def _binomial_in_falling_basis(k: int) -> list[Fraction]:
    """Coefficients b_r with C(n+k-1, k-1) = sum_r b_r n(n-1)...(n-r+1)."""
    # Newton forward differences of n -> C(n+k-1, k-1) at n = 0
    values = [Fraction(comb(n + k - 1, k - 1)) for n in range(k)]
    out = []
    for r in range(k):
        out.append(values[0] / factorial(r))
        values = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    return out


def egf_convert(s: RationalSeries) -> EgfForm:
    if s.nvars != 1:
        raise DomainError("egf_convert needs a univariate series")
    rates: list[tuple[int, int]] = []
    for form, e in s.factors:
        if set(form.terms) != {(1,)}:
            raise DomainError(f"denominator factor {s.format()} is not of the form 1 - j t")
        j = form.terms[(1,)]
        if j.denominator != 1 or j < 1:
            raise DomainError(f"denominator rate {j} is not a positive integer")
        rates.append((int(j), e))
    num = s.numerator.univariate_coeffs() if not s.numerator.is_zero() else []
    den = s.denominator().univariate_coeffs()
    quot, rem = _poly_divmod(num, den)
    # unknowns c_{j,k} for 1 <= k <= e_j: rem = sum c_{j,k} D / (1 - j t)^k
    unknowns = [(j, k) for j, e in rates for k in range(1, e + 1)]
    deg = len(den) - 1
    columns = []
    for j, k in unknowns:
        cofactor = Poly.const(1, 1)
        for jj, e in rates:
            power = e - k if jj == j else e
            cofactor = cofactor * Poly(1, {(0,): 1, (1,): -jj}) ** power
        col = cofactor.univariate_coeffs()
        columns.append(col + [Fraction(0)] * (deg - len(col)))
    rem = rem + [Fraction(0)] * (deg - len(rem))
    coeffs = _solve([[columns[c][r] for c in range(len(unknowns))] for r in range(deg)], rem) if deg else []
    by_rate: dict[int, list[Fraction]] = {}
    for (j, k), c in zip(unknowns, coeffs):
        if c == 0:
            continue
        poly = by_rate.setdefault(j, [])
        for r, b in enumerate(_binomial_in_falling_basis(k)):
            while len(poly) <= r:
                poly.append(Fraction(0))
            poly[r] += c * b * Fraction(j) ** r
    # the polynomial part gives a_n = quot[n], i.e. quot[n] t^n / n! in the EGF
    q0 = [c / factorial(n) for n, c in enumerate(quot)]
    terms = [(tuple(v), j) for j, v in by_rate.items()]
    if any(q0):
        terms.append((tuple(q0), 0))
    return EgfForm(tuple(terms))
