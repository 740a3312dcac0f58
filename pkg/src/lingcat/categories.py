"""Concrete combinatorial categories: OI_d, FI_d, OS, FS, FA, OIeq_d and finite products.

Objects are the sets [n] = {1..n}. Morphisms are stored as function tables
(1-based images) plus, for the coloured injection categories, a colour per
target position (0 on the image). For OS and FS the table is the underlying
surjection [m] -> [n], i.e. the morphism [n] -> [m] of the opposite category,
which is the side on which modules are studied here; hom counts and series
for ``os``/``fs`` are therefore those of OS^op / FS^op.

OI_d and OS carry canonical word encodings:

* OI_d: a length-m word over 0..d, '0' at the image, the colour elsewhere.
* OS: the length-m word f(1) f(2) ... f(m) over 1..n, whose first
  occurrences come in increasing order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .automata import NormedAlphabet
from .config import limits_or_default
from .errors import BoundsError, DomainError, FitError, ParseError
from .expr import compile_expr, ideal_to_expr
from .poly import Poly
from .posets import PosetIdeal, WordOrder, oi_leq, os_leq
from .series import CoeffTable, RationalSeries, dfa_series, fit_rational, univariate_factors

KINDS = ("oi", "fi", "os", "fs", "fa", "oieq", "product")
WORD_KINDS = ("oi", "os")


@dataclass(frozen=True)
class CategoryId:
    kind: str
    d: int | None = None
    factors: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown category kind {self.kind!r}")
        if self.kind in ("oi", "fi", "oieq"):
            if self.d is None or self.d < 1:
                raise DomainError(f"{self.kind} needs d >= 1")
        elif self.d is not None:
            raise DomainError(f"{self.kind} takes no parameter")
        if self.kind == "product":
            if not self.factors:
                raise DomainError("a product needs at least one factor")
            flat = []
            for f in self.factors:
                flat.extend(f.factors if f.kind == "product" else [f])
            object.__setattr__(self, "factors", tuple(flat))
        elif self.factors:
            raise DomainError("only products have factors")

    @property
    def rank(self) -> int:
        """Number of size parameters of an object."""
        return len(self.factors) if self.kind == "product" else 1

    def __str__(self):
        if self.kind == "product":
            parts = [str(f) for f in self.factors]
            if len(set(parts)) == 1:
                return f"{parts[0]}^{len(parts)}"
            return "*".join(parts)
        return self.kind if self.d is None else f"{self.kind}:{self.d}"


def parse_category(text: str) -> CategoryId:
    """``oi:2``, ``fi:1``, ``os``, ``fs``, ``fa``, ``oieq:2``, ``os^2``, ``oi:1*os``."""
    text = text.strip().lower()
    if not text:
        raise ParseError("empty category id")
    if "*" in text:
        return CategoryId("product", factors=tuple(parse_category(p) for p in text.split("*")))
    if "^" in text:
        base, _, power = text.rpartition("^")
        if not power.isdigit() or int(power) < 1:
            raise ParseError(f"bad power in category id {text!r}")
        f = parse_category(base)
        return f if int(power) == 1 else CategoryId("product", factors=(f,) * int(power))
    kind, _, param = text.partition(":")
    if kind not in KINDS or kind == "product":
        raise ParseError(f"unknown category {text!r}")
    if kind in ("oi", "fi", "oieq"):
        if not param.isdigit():
            raise ParseError(f"category {kind} needs a parameter, as in {kind}:2")
        return CategoryId(kind, int(param))
    if param:
        raise ParseError(f"category {kind} takes no parameter")
    return CategoryId(kind)


def oi(d: int) -> CategoryId:
    return CategoryId("oi", d)


OS = CategoryId("os")


@dataclass(frozen=True)
class Morphism:
    """A morphism [source] -> [target]; see the module docstring for ``table``."""

    cat: CategoryId
    source: int
    target: int
    table: tuple
    colors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        object.__setattr__(self, "colors", tuple(self.colors))


# counting ----------------------------------------------------------------------

def stirling2(m: int, n: int) -> int:
    """S(m, n) by the recurrence S(m,n) = n S(m-1,n) + S(m-1,n-1)."""
    if m < 0 or n < 0:
        return 0
    row = [1] + [0] * n  # S(0, k)
    for i in range(1, m + 1):
        new = [0] * (n + 1)
        for k in range(1, min(i, n) + 1):
            new[k] = k * row[k] + row[k - 1]
        row = new
    return row[n]


def _sizes(cat: CategoryId, n, m):
    if cat.kind == "product":
        if not isinstance(n, Sequence) or not isinstance(m, Sequence):
            raise DomainError(f"{cat} objects are tuples of {cat.rank} sizes")
        n, m = tuple(n), tuple(m)
        if len(n) != cat.rank or len(m) != cat.rank:
            raise DomainError(f"{cat} objects have {cat.rank} size parameters")
        return n, m
    if isinstance(n, Sequence) or isinstance(m, Sequence):
        raise DomainError(f"{cat} objects are single sizes")
    return n, m


def hom_count(cat: CategoryId, n, m) -> int:
    """|Hom([n], [m])| from closed forms."""
    n, m = _sizes(cat, n, m)
    if cat.kind == "product":
        out = 1
        for f, a, b in zip(cat.factors, n, m):
            out *= hom_count(f, a, b)
        return out
    if n < 0 or m < 0:
        raise DomainError("sizes must be nonnegative")
    k = cat.kind
    if k == "oi":
        return comb(m, n) * cat.d ** (m - n) if m >= n else 0
    if k == "fi":
        return factorial(m) // factorial(m - n) * cat.d ** (m - n) if m >= n else 0
    if k == "os":
        return stirling2(m, n)
    if k == "fs":
        return factorial(n) * stirling2(m, n)
    if k == "fa":
        return m ** n
    if k == "oieq":
        gap = m - n
        if gap < 0 or gap % cat.d:
            return 0
        q = gap // cat.d
        return comb(m, n) * factorial(gap) // factorial(q) ** cat.d
    raise DomainError(f"no hom count for {cat}")


def _guard(cat, n, m, limits):
    lim = limits_or_default(limits)
    count = hom_count(cat, n, m)
    if count > lim.max_work:
        raise BoundsError(f"|Hom({n},{m})| = {count} in {cat} exceeds the work limit {lim.max_work}")


def hom_words(cat: CategoryId, n: int, m: int, limits=None) -> list[str]:
    """Word encodings of Hom([n],[m]) in the admissible (lex) order."""
    if cat.kind not in WORD_KINDS:
        raise DomainError(f"{cat} has no word encoding")
    _guard(cat, n, m, limits)
    if cat.kind == "oi":
        out = []
        for zeros in itertools.combinations(range(m), n):
            rest = [i for i in range(m) if i not in zeros]
            for cols in itertools.product(range(1, cat.d + 1), repeat=len(rest)):
                w = ["0"] * m
                for i, c in zip(rest, cols):
                    w[i] = str(c)
                out.append("".join(w))
        return sorted(out)
    if n > 9:
        raise DomainError("OS words use the digits 1..9, so n <= 9")
    out = []

    def grow(prefix, top):
        if len(prefix) == m:
            if top == n:
                out.append("".join(prefix))
            return
        if n - top > m - len(prefix):
            return
        for c in range(1, min(top + 1, n) + 1):
            prefix.append(str(c))
            grow(prefix, max(top, c))
            prefix.pop()

    grow([], 0)
    return sorted(out)


def enumerate_homs(cat: CategoryId, n, m, limits=None) -> list:
    """All morphisms [n] -> [m]; for products, tuples of factor morphisms."""
    n, m = _sizes(cat, n, m)
    if cat.kind == "product":
        per = [enumerate_homs(f, a, b, limits) for f, a, b in zip(cat.factors, n, m)]
        _guard(cat, n, m, limits)
        return list(itertools.product(*per))
    _guard(cat, n, m, limits)
    k = cat.kind
    if k in WORD_KINDS:
        return [decode(cat, w, n) for w in hom_words(cat, n, m, limits)]
    out = []
    if k in ("fi", "oieq"):
        injections = itertools.permutations(range(1, m + 1), n)
        if k == "oieq":
            injections = itertools.combinations(range(1, m + 1), n)
        for table in injections:
            rest = [p for p in range(1, m + 1) if p not in table]
            for cols in itertools.product(range(1, cat.d + 1), repeat=len(rest)):
                if k == "oieq" and any(cols.count(c) * cat.d != len(cols) for c in range(1, cat.d + 1)):
                    continue
                colors = [0] * m
                for p, c in zip(rest, cols):
                    colors[p - 1] = c
                out.append(Morphism(cat, n, m, table, colors))
    elif k == "fs":
        for table in itertools.product(range(1, n + 1), repeat=m):
            if len(set(table)) == n:
                out.append(Morphism(cat, n, m, table))
    elif k == "fa":
        for table in itertools.product(range(1, m + 1), repeat=n):
            out.append(Morphism(cat, n, m, table))
    return out


# encodings ---------------------------------------------------------------------

def check_morphism_word(cat: CategoryId, word: str, n: int | None = None, ordered: bool = True) -> int:
    """Validate a morphism word and return its source size.

    With ``ordered=False`` an OS word may be any surjection (an FS word).
    """
    if cat.kind == "oi":
        letters = {str(i) for i in range(cat.d + 1)}
        bad = set(word) - letters
        if bad:
            raise DomainError(f"word {word!r} has letters {sorted(bad)} outside 0..{cat.d}")
        zeros = word.count("0")
        if n is not None and zeros != n:
            raise DomainError(f"word {word!r} has {zeros} zeros, expected {n}")
        return zeros
    if cat.kind == "os":
        top = 0
        for c in word:
            if not c.isdigit() or c == "0":
                raise DomainError(f"word {word!r} has letters outside 1..9")
            v = int(c)
            if ordered and v > top + 1:
                raise DomainError(f"word {word!r} violates first-occurrence order at {c!r}")
            top = max(top, v)
        if len(set(word)) != top or (n is not None and top != n):
            raise DomainError(f"word {word!r} is not a surjection onto [{n if n is not None else top}]")
        return top
    raise DomainError(f"{cat} has no word encoding")


def encode(cat: CategoryId, f: Morphism) -> str:
    if cat.kind == "oi":
        if list(f.table) != sorted(set(f.table)):
            raise DomainError("not an order-preserving injection")
        w = [str(c) for c in f.colors]
        for p in f.table:
            w[p - 1] = "0"
        word = "".join(w)
    elif cat.kind == "os":
        word = "".join(str(v) for v in f.table)
    else:
        raise DomainError(f"{cat} has no word encoding")
    check_morphism_word(cat, word, f.source)
    return word


def decode(cat: CategoryId, word: str, n: int | None = None) -> Morphism:
    n = check_morphism_word(cat, word, n)
    m = len(word)
    if cat.kind == "oi":
        table = [i + 1 for i, c in enumerate(word) if c == "0"]
        return Morphism(cat, n, m, table, [int(c) for c in word])
    return Morphism(cat, n, m, [int(c) for c in word])


# composition -------------------------------------------------------------------

def compose(f, g):
    """f o g (g first) at the level of function tables."""
    if isinstance(f, tuple):
        return tuple(compose(a, b) for a, b in zip(f, g))
    if f.cat != g.cat:
        raise DomainError("morphisms from different categories")
    if g.target != f.source:
        raise DomainError(f"cannot compose: target {g.target} != source {f.source}")
    cat = f.cat
    if cat.kind in ("os", "fs"):
        # the surjections compose the other way round
        table = [g.table[v - 1] for v in f.table]
        return Morphism(cat, g.source, f.target, table)
    table = [f.table[v - 1] for v in g.table]
    colors = ()
    if cat.kind in ("oi", "fi", "oieq"):
        colors = list(f.colors)
        for q, p in enumerate(f.table):
            colors[p - 1] = g.colors[q]
    return Morphism(cat, g.source, f.target, table, colors)


def compose_words(cat: CategoryId, outer: str, inner: str) -> str:
    """Word of outer o inner, computed on the words themselves."""
    n_outer = check_morphism_word(cat, outer)
    check_morphism_word(cat, inner)
    if len(inner) != n_outer:
        raise DomainError(
            f"cannot compose {outer!r} after {inner!r}: sizes {n_outer} and {len(inner)} differ"
        )
    return _compose_raw(cat, outer, inner)


def _compose_raw(cat, outer, inner):
    if cat.kind == "oi":
        it = iter(inner)
        return "".join(next(it) if c == "0" else c for c in outer)
    return "".join(inner[int(c) - 1] for c in outer)


def word_order(cat: CategoryId, n: int) -> WordOrder:
    """Divisibility order on morphism words out of [n]."""
    if cat.kind == "oi":
        return WordOrder.oi(cat.d)
    if cat.kind == "os":
        return WordOrder.os_pattern(n)
    raise DomainError(f"{cat} has no lingual word order")


def divides(cat: CategoryId, f: str, g: str) -> bool:
    """f <= g, i.e. g = h o f for some morphism h.

    OS arguments may be arbitrary surjection words; h still ranges over OS.
    """
    n = check_morphism_word(cat, f, ordered=False)
    if check_morphism_word(cat, g, ordered=False) != n:
        raise DomainError(f"{f!r} and {g!r} have different sources")
    if cat.kind == "oi":
        return oi_leq(f, g, cat.d)
    return os_leq(f, g)


def divides_bruteforce(cat: CategoryId, f: str, g: str, limits=None) -> bool:
    n = check_morphism_word(cat, f, ordered=False)
    if check_morphism_word(cat, g, ordered=False) != n:
        raise DomainError(f"{f!r} and {g!r} have different sources")
    if len(g) < len(f):
        return False
    return any(_compose_raw(cat, h, f) == g for h in hom_words(cat, len(f), len(g), limits))


def admissible_key(word: str) -> tuple:
    """Sort key of the admissible order: target size, then lex with 0 < 1 < ... ."""
    return (len(word), word)


def oi_monomial_bijection(word: str, d: int = 1) -> tuple[int, ...]:
    """Exponents of the monomial of an OI_1 morphism: gaps between image points."""
    if d != 1 or set(word) - {"0", "1"}:
        raise DomainError("the monomial bijection is defined for OI_1 words only")
    out = [0]
    for c in word:
        if c == "0":
            out.append(0)
        else:
            out[-1] += 1
    return tuple(out)


# series ------------------------------------------------------------------------

def ideal_series(cat: CategoryId, n: int, generators: Iterable[str]) -> RationalSeries:
    """Hilbert series of the monomial submodule of P_[n] spanned by an ideal of words."""
    order = word_order(cat, n)
    gens = list(generators)
    for g in gens:
        check_morphism_word(cat, g, n)
    ideal = PosetIdeal(order, tuple(gens))
    alphabet = order.alphabet
    dfa = compile_expr(ideal_to_expr(ideal), alphabet)
    return dfa_series(dfa, NormedAlphabet.by_length(alphabet))


def identity_word(cat: CategoryId, n: int) -> str:
    if cat.kind == "oi":
        return "0" * n
    if cat.kind == "os":
        return "".join(str(i) for i in range(1, n + 1))
    raise DomainError(f"{cat} has no word encoding")


def principal_projective_series(cat: CategoryId, n) -> RationalSeries:
    """Hilbert series of P_[n]: sum over m of |Hom([n],[m])| t^m."""
    k = cat.kind
    if k in WORD_KINDS:
        return ideal_series(cat, n, [identity_word(cat, n)]).reduced()
    if k in ("fi", "fs"):
        base = principal_projective_series(CategoryId("oi", cat.d) if k == "fi" else OS, n)
        return base * factorial(n)
    if k == "fa":
        s = n
        values = [m ** s for m in range(s + 6)]
        return fit_rational(values, univariate_factors([(1, s + 1)])).reduced()
    if k == "product":
        if not isinstance(n, Sequence) or len(n) != cat.rank:
            raise DomainError(f"{cat} objects have {cat.rank} size parameters")
        names = tuple(f"t{i + 1}" for i in range(cat.rank))
        total = RationalSeries(names, Poly.const(cat.rank, 1))
        for i, (f, a) in enumerate(zip(cat.factors, n)):
            total = total * principal_projective_series(f, a).embed([i], names)
        return total
    raise DomainError(f"no rational projective series for {cat}")


def projective_closed_form(cat: CategoryId, n: int) -> RationalSeries:
    """The expected closed forms, built directly from factors."""
    t = Poly.monomial((n,))
    if cat.kind in ("oi", "fi"):
        s = RationalSeries(("t",), t, univariate_factors([(cat.d, n + 1)]))
    elif cat.kind in ("os", "fs"):
        s = RationalSeries(("t",), t, univariate_factors([(j, 1) for j in range(1, n + 1)]))
    else:
        raise DomainError(f"no closed form for {cat}")
    return s * factorial(n) if cat.kind in ("fi", "fs") else s


# polynomiality -----------------------------------------------------------------

@dataclass(frozen=True)
class PolynomialCertificate:
    """h(n) = sum_i coeffs[i] n^i for all n in [start, end] (degree -1 means h = 0)."""

    degree: int
    coeffs: tuple
    start: int
    end: int

    def __call__(self, n: int) -> Fraction:
        return sum((c * n ** i for i, c in enumerate(self.coeffs)), Fraction(0))

    def format(self, name: str = "n") -> str:
        return Poly.from_univariate(self.coeffs).format([name])


def fa_polynomiality_certificate(
    coeffs: CoeffTable | Sequence, start: int = 0, end: int | None = None, margin: int = 3
) -> PolynomialCertificate | None:
    """Smallest k with the k-th difference of h vanishing on [start, end].

    At least ``margin`` values of the k-th difference must be seen to vanish,
    so a certificate of degree k-1 needs k + margin data points. Returns None
    when no difference order vanishes with that much support.
    """
    values = coeffs.as_list() if isinstance(coeffs, CoeffTable) else [Fraction(v) for v in coeffs]
    if end is None:
        end = len(values) - 1
    if start < 0 or end >= len(values):
        raise FitError(f"window [{start}, {end}] exceeds the {len(values)} available coefficients")
    window = values[start:end + 1]
    if len(window) < margin:
        raise FitError(f"window [{start}, {end}] has fewer than {margin} points")
    diffs = [window]
    k = 0
    while len(diffs[-1]) >= margin:
        if all(v == 0 for v in diffs[-1]):
            break
        prev = diffs[-1]
        diffs.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
        k += 1
    else:
        return None
    # Newton form around start: h(n) = sum_r D^r h(start) C(n - start, r)
    poly = Poly.zero(1)
    x = Poly.var(1, 0) - start
    for r in range(k):
        basis = Poly.const(1, 1)
        for i in range(r):
            basis = basis * (x - i)
        poly = poly + basis * (diffs[r][0] / factorial(r))
    return PolynomialCertificate(k - 1, tuple(poly.univariate_coeffs()), start, end)
