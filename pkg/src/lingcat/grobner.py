"""Degree-truncated submodules of principal projectives over Q.

A module element lives in a direct sum of principal projectives P_[n_k] and
is a finite combination of basis vectors e_(k, w), where w is a morphism
word out of [n_k]. Columns are compared position over term: summand index
first, then the admissible order on words. Everything is certified only up
to the truncation degree D.

Element syntax: ``1*[01] - 1*[10]``, coefficients optional (``[01] - 2/3*[10]``),
``[w]@k`` for a word in summand k.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .categories import (
    CategoryId,
    check_morphism_word,
    compose_words,
    hom_words,
    ideal_series,
    principal_projective_series,
    word_order,
    WORD_KINDS,
)
from .config import limits_or_default
from .errors import BoundsError, DomainError, ParseError
from .posets import PosetIdeal, minimal_generators
from .series import RationalSeries, _frac_str


def _col_key(col: tuple) -> tuple:
    k, w = col
    return (k, len(w), w)


@dataclass(frozen=True)
class ModuleElement:
    cat: CategoryId
    sources: tuple
    target: int
    coeffs: dict = field(hash=False)

    def __post_init__(self):
        if self.cat.kind not in WORD_KINDS:
            raise DomainError(f"modules are supported over OI_d and OS only, not {self.cat}")
        sources = (self.sources,) if isinstance(self.sources, int) else tuple(self.sources)
        object.__setattr__(self, "sources", sources)
        clean = {}
        for (k, w), c in self.coeffs.items():
            if not 0 <= k < len(sources):
                raise DomainError(f"summand index {k} out of range")
            check_morphism_word(self.cat, w, sources[k])
            if len(w) != self.target:
                raise DomainError(f"word {w!r} does not have target size {self.target}")
            c = Fraction(c)
            if c:
                clean[(k, w)] = c
        object.__setattr__(self, "coeffs", clean)

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> tuple:
        return max(self.coeffs, key=_col_key)

    def act(self, h: str) -> ModuleElement:
        """h_*(self) for a morphism word h out of [target]."""
        coeffs: dict = {}
        for (k, w), c in self.coeffs.items():
            col = (k, compose_words(self.cat, h, w))
            coeffs[col] = coeffs.get(col, 0) + c
        return ModuleElement(self.cat, self.sources, len(h), coeffs)

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for col in sorted(self.coeffs, key=_col_key, reverse=True):
            k, w = col
            c = self.coeffs[col]
            tag = f"[{w}]" + (f"@{k}" if len(self.sources) > 1 else "")
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {_frac_str(abs(c))}*{tag}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self):
        return self.format()


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?\[(\d*)\](?:@(\d+))?\s*")


def parse_element(text: str, cat: CategoryId, sources) -> ModuleElement:
    pos = 0
    coeffs: dict = {}
    target = None
    text = text.strip()
    if not text:
        raise ParseError("empty module element")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"element {text!r}: cannot parse at position {pos}")
        if pos and not m.group(1):
            raise ParseError(f"element {text!r}: missing sign before term at position {pos}")
        c = Fraction(m.group(2) or 1)
        if m.group(1) == "-":
            c = -c
        word = m.group(3)
        k = int(m.group(4) or 0)
        if target is None:
            target = len(word)
        elif len(word) != target:
            raise ParseError(f"element {text!r}: words of different lengths")
        coeffs[(k, word)] = coeffs.get((k, word), 0) + c
        pos = m.end()
    try:
        return ModuleElement(cat, sources, target, coeffs)
    except DomainError as exc:
        raise DomainError(f"element {text!r}: {exc}") from None


class _Echelon:
    """Rows keyed by leading column; each row is normalized to leading coefficient 1."""

    def __init__(self):
        self.rows: dict[tuple, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        while row:
            lead = max(row, key=_col_key)
            piv = self.rows.get(lead)
            if piv is None:
                return row
            c = row[lead]
            for col, v in piv.items():
                s = row.get(col, 0) - c * v
                if s:
                    row[col] = s
                else:
                    row.pop(col, None)
        return row

    def add(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        lead = max(row, key=_col_key)
        inv = 1 / row[lead]
        self.rows[lead] = {col: v * inv for col, v in row.items()}
        return True

    def tail_reduce(self) -> None:
        """Clear every pivot column from the other rows (reduced echelon form)."""
        for lead in sorted(self.rows, key=_col_key):
            row = self.rows[lead]
            for col in sorted(row, key=_col_key, reverse=True):
                if col != lead and col in self.rows and col in row:
                    c = row[col]
                    for pc, v in self.rows[col].items():
                        s = row.get(pc, 0) - c * v
                        if s:
                            row[pc] = s
                        else:
                            row.pop(pc, None)


@dataclass
class TruncatedModule:
    cat: CategoryId
    sources: tuple
    trunc: int
    bases: dict  # m -> {leading column: row}
    generators: tuple = ()

    def dims(self) -> list[int]:
        return [len(self.bases[m]) for m in range(self.trunc + 1)]

    def leading_words(self, m: int) -> list[tuple]:
        return sorted(self.bases[m], key=_col_key)

    def basis(self, m: int) -> list[ModuleElement]:
        return [
            ModuleElement(self.cat, self.sources, m, self.bases[m][lead])
            for lead in sorted(self.bases[m], key=_col_key)
        ]

    def contains(self, x: ModuleElement) -> bool:
        if x.is_zero():
            return True
        if x.target > self.trunc:
            raise BoundsError(f"degree {x.target} exceeds the truncation {self.trunc}")
        ech = _Echelon()
        ech.rows = self.bases[x.target]
        return not ech.reduce(x.coeffs)

    def is_submodule_of(self, other: TruncatedModule) -> bool:
        return all(
            other.contains(b) for m in range(min(self.trunc, other.trunc) + 1) for b in self.basis(m)
        )


def span_generators(
    cat: CategoryId, n, gens: Iterable[ModuleElement], D: int, limits=None
) -> TruncatedModule:
    """M([m]) = span of h_*(g) over generators g and all h into [m], for m <= D."""
    lim = limits_or_default(limits)
    if D > lim.max_trunc:
        raise BoundsError(f"truncation {D} exceeds the limit {lim.max_trunc}")
    sources = (n,) if isinstance(n, int) else tuple(n)
    gens = tuple(gens)
    for g in gens:
        if g.cat != cat or g.sources != sources:
            raise DomainError(f"generator {g} is not in the projective over {sources}")
    bases = {}
    work = 0
    for m in range(D + 1):
        ech = _Echelon()
        for g in gens:
            if g.is_zero() or g.target > m:
                continue
            for h in hom_words(cat, g.target, m, lim):
                work += len(g.coeffs)
                if work > lim.max_work:
                    raise BoundsError("span computation exceeds the work limit")
                ech.add(g.act(h).coeffs)
        ech.tail_reduce()
        bases[m] = ech.rows
    return TruncatedModule(cat, sources, D, bases, gens)


@dataclass(frozen=True)
class MonomialIdealGens:
    """Minimal generators per summand of a monomial submodule, complete up to ``complete_to``."""

    cat: CategoryId
    sources: tuple
    generators: tuple  # one tuple of minimal words per summand
    complete_to: int | None = None

    def __post_init__(self):
        sources = (self.sources,) if isinstance(self.sources, int) else tuple(self.sources)
        object.__setattr__(self, "sources", sources)
        gens = self.generators
        if len(sources) == 1 and all(isinstance(g, str) for g in gens):
            gens = (tuple(gens),)
        if len(gens) != len(sources):
            raise DomainError("need one generator list per summand")
        out = []
        for n, ws in zip(sources, gens):
            for w in ws:
                check_morphism_word(self.cat, w, n)
            out.append(tuple(sorted(minimal_generators(ws, word_order(self.cat, n)), key=lambda w: (len(w), w))))
        object.__setattr__(self, "generators", tuple(out))

    @property
    def words(self) -> tuple:
        if len(self.sources) != 1:
            raise DomainError("several summands; use generators")
        return self.generators[0]

    def ideals(self) -> list[PosetIdeal]:
        return [PosetIdeal(word_order(self.cat, n), ws) for n, ws in zip(self.sources, self.generators)]

    def contains(self, col: tuple) -> bool:
        k, w = col
        return w in self.ideals()[k]

    def count(self, m: int, limits=None) -> int:
        """Monomials of degree m in the ideal, by exhaustive membership."""
        return sum(
            1
            for n, ideal in zip(self.sources, self.ideals())
            for w in hom_words(self.cat, n, m, limits)
            if w in ideal
        )

    def to_dict(self) -> dict:
        return {
            "category": str(self.cat),
            "sources": list(self.sources),
            "generators": [list(ws) for ws in self.generators],
            "complete_to": self.complete_to,
        }


def initial_module(M: TruncatedModule) -> MonomialIdealGens:
    per = [[] for _ in M.sources]
    for m in range(M.trunc + 1):
        for k, w in M.bases[m]:
            per[k].append(w)
    return MonomialIdealGens(M.cat, M.sources, tuple(tuple(ws) for ws in per), M.trunc)


def is_groebner_up_to(M: TruncatedModule, candidate: Sequence[ModuleElement], D: int | None = None) -> bool:
    """Do the initial terms of ``candidate`` generate init(M) in degrees <= D?"""
    D = M.trunc if D is None else D
    if D > M.trunc:
        raise BoundsError(f"degree {D} exceeds the truncation {M.trunc}")
    for x in candidate:
        if x.target <= M.trunc and not M.contains(x):
            raise DomainError(f"candidate {x.format()} is not in the module")
    leads = [x.leading() for x in candidate if not x.is_zero()]
    per = [[] for _ in M.sources]
    for k, w in leads:
        per[k].append(w)
    ideal = MonomialIdealGens(M.cat, M.sources, tuple(tuple(ws) for ws in per))
    return all(ideal.contains(col) for m in range(D + 1) for col in M.bases[m])


def _as_ideal(cat, n, I) -> MonomialIdealGens:
    if isinstance(I, MonomialIdealGens):
        return I
    return MonomialIdealGens(cat, n, tuple(I))


def module_series(cat: CategoryId, n, I) -> RationalSeries:
    """Hilbert series of the monomial submodule spanned by the ideal I."""
    I = _as_ideal(cat, n, I)
    total = None
    for n_k, ws in zip(I.sources, I.generators):
        s = ideal_series(cat, n_k, ws)
        total = s if total is None else total + s
    return total.reduced()


def quotient_series(cat: CategoryId, n, I) -> RationalSeries:
    I = _as_ideal(cat, n, I)
    total = None
    for n_k in I.sources:
        p = principal_projective_series(cat, n_k)
        total = p if total is None else total + p
    return (total - module_series(cat, n, I)).reduced()
