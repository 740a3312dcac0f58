"""Ordered expressions: unions of concatenations of letters and starred letter sets.

Text syntax::

    'a'        a single letter
    [ab]*      the star of a letter set ([]* is the empty word)
    ()         the empty word
    {}         the empty language
    x y        concatenation (juxtaposition)
    x | y      union
    ( ... )    grouping
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automata import (
    Dfa,
    enumerate_dfa,
    concat_singleton,
    concat_star,
    is_ordered,
    minimize,
    ordered_union,
    prune,
    reachable_states,
    coreachable_states,
    topological_order,
    shortlex,
)
from .config import limits_or_default
from .errors import BoundsError, DomainError, ParseError, UnorderedDfaError
from .grammar import Cfg, enumerate_cfg
from .posets import OrderKind, PosetIdeal


class OrderedExpr:
    __slots__ = ()

    def letters(self) -> set[str]:
        raise NotImplementedError

    def __str__(self):
        return format_expr(self)


@dataclass(frozen=True)
class Epsilon(OrderedExpr):
    def letters(self):
        return set()


@dataclass(frozen=True)
class Singleton(OrderedExpr):
    letter: str

    def letters(self):
        return {self.letter}


@dataclass(frozen=True)
class Star(OrderedExpr):
    letters_: frozenset

    def __init__(self, letters: Iterable[str]):
        object.__setattr__(self, "letters_", frozenset(letters))

    def letters(self):
        return set(self.letters_)


@dataclass(frozen=True)
class Concat(OrderedExpr):
    parts: tuple

    def __init__(self, parts: Iterable[OrderedExpr]):
        parts = tuple(parts)
        if not parts:
            raise DomainError("Concat needs at least one part")
        object.__setattr__(self, "parts", parts)

    def letters(self):
        return set().union(*(p.letters() for p in self.parts))


@dataclass(frozen=True)
class Union(OrderedExpr):
    """Union of branches; with no branches it denotes the empty language."""

    branches: tuple

    def __init__(self, branches: Iterable[OrderedExpr]):
        object.__setattr__(self, "branches", tuple(branches))

    def letters(self):
        return set().union(*(b.letters() for b in self.branches))


EMPTY = Union(())
EPSILON = Epsilon()


def is_empty(e: OrderedExpr) -> bool:
    return isinstance(e, Union) and not e.branches


def concat(*parts: OrderedExpr) -> OrderedExpr:
    """Concatenation with the empty language and the empty word simplified away."""
    flat = []
    for p in parts:
        if is_empty(p):
            return EMPTY
        if isinstance(p, Epsilon) or (isinstance(p, Star) and not p.letters_):
            continue
        if isinstance(p, Concat):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        return EPSILON
    return flat[0] if len(flat) == 1 else Concat(flat)


def union(*branches: OrderedExpr) -> OrderedExpr:
    flat = []
    for b in branches:
        if isinstance(b, Union):
            flat.extend(b.branches)
        else:
            flat.append(b)
    return flat[0] if len(flat) == 1 else Union(flat)


# text syntax -------------------------------------------------------------------

def format_expr(e: OrderedExpr) -> str:
    if isinstance(e, Epsilon):
        return "()"
    if isinstance(e, Singleton):
        return f"'{e.letter}'"
    if isinstance(e, Star):
        return "[" + "".join(sorted(e.letters_)) + "]*"
    if isinstance(e, Concat):
        return " ".join(
            f"({format_expr(p)})" if isinstance(p, Union) and p.branches else format_expr(p)
            for p in e.parts
        )
    if isinstance(e, Union):
        if not e.branches:
            return "{}"
        return " | ".join(format_expr(b) for b in e.branches)
    raise TypeError(f"not an ordered expression: {e!r}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(f"expression {self.text!r}, position {self.pos}: {msg}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        e = self.union()
        if self.peek():
            self.error("unexpected trailing input")
        return e

    def union(self):
        branches = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.concat())
        return branches[0] if len(branches) == 1 else Union(branches)

    def concat(self):
        parts = []
        while self.peek() and self.peek() not in "|)":
            parts.append(self.atom())
        if not parts:
            self.error("empty alternative (write () for the empty word)")
        return parts[0] if len(parts) == 1 else Concat(parts)

    def atom(self):
        ch = self.peek()
        if ch == "'":
            self.pos += 1
            if self.pos >= len(self.text):
                self.error("unterminated letter")
            letter = self.text[self.pos]
            self.pos += 1
            self.expect("'")
            return Singleton(letter)
        if ch == "[":
            self.pos += 1
            end = self.text.find("]", self.pos)
            if end < 0:
                self.error("unterminated letter set")
            letters = self.text[self.pos:end].replace(" ", "")
            self.pos = end + 1
            self.expect("*")
            return Star(letters)
        if ch == "{":
            self.pos += 1
            self.expect("}")
            return EMPTY
        if ch == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return EPSILON
            e = self.union()
            self.expect(")")
            return e
        self.error(f"unexpected character {ch!r}")


def parse_expr(text: str) -> OrderedExpr:
    return _Parser(text).parse()


# compilation -------------------------------------------------------------------

class _Unorderable(Exception):
    pass


def _append(dfa: Dfa, e: OrderedExpr) -> Dfa:
    """DFA for L(dfa)·L(e), using only the letter and star constructions and unions."""
    if isinstance(e, Epsilon):
        return dfa
    if isinstance(e, Singleton):
        out = prune(concat_singleton(dfa, e.letter))
        if not is_ordered(out):
            raise _Unorderable
        return out
    if isinstance(e, Star):
        return prune(concat_star(dfa, e.letters_))
    if isinstance(e, Concat):
        for p in e.parts:
            dfa = _append(dfa, p)
        return dfa
    if isinstance(e, Union):
        if not e.branches:
            return Dfa.empty(dfa.alphabet)
        out = _append(dfa, e.branches[0])
        for b in e.branches[1:]:
            out = prune(ordered_union(out, _append(dfa, b)))
        return out
    raise TypeError(f"not an ordered expression: {e!r}")


def _nfa(e: OrderedExpr, alphabet) -> tuple[list[dict], int, int]:
    """Epsilon-NFA (edges keyed by letter or None) with one start and one accept state."""
    edges: list[dict] = []

    def state():
        edges.append({})
        return len(edges) - 1

    def add(p, c, q):
        edges[p].setdefault(c, set()).add(q)

    def build(x):
        s, f = state(), state()
        if isinstance(x, Epsilon):
            add(s, None, f)
        elif isinstance(x, Singleton):
            add(s, x.letter, f)
        elif isinstance(x, Star):
            add(s, None, f)
            for c in x.letters_:
                add(f, c, f)
        elif isinstance(x, Concat):
            cur = s
            for part in x.parts:
                ps, pf = build(part)
                add(cur, None, ps)
                cur = pf
            add(cur, None, f)
        elif isinstance(x, Union):
            for b in x.branches:
                bs, bf = build(b)
                add(s, None, bs)
                add(bf, None, f)
        else:
            raise TypeError(f"not an ordered expression: {x!r}")
        return s, f

    start, accept = build(e)
    return edges, start, accept


def compile_general(e: OrderedExpr, alphabet: Iterable[str]) -> Dfa:
    """Minimal DFA for L(e) by subset construction; correct for every expression.

    A quotient of an ordered DFA is ordered, so the result is ordered
    exactly when some ordered DFA recognizes L(e).
    """
    alphabet = tuple(alphabet)
    edges, start, accept = _nfa(e, alphabet)

    def closure(states):
        seen = set(states)
        todo = list(states)
        while todo:
            q = todo.pop()
            for r in edges[q].get(None, ()):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return frozenset(seen)

    first = closure({start})
    index = {first: 0}
    order = [first]
    rows = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for c in alphabet:
            nxt = closure({r for q in cur for r in edges[q].get(c, ())})
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
        i += 1
    finals = frozenset(k for k, s in enumerate(order) if accept in s)
    return minimize(Dfa(alphabet, tuple(rows), 0, finals))


def compile_expr(e: OrderedExpr, alphabet: Iterable[str] | None = None) -> Dfa:
    """DFA recognizing L(e), folded left to right from the empty-word DFA.

    Intermediate automata are pruned (unreachable states dropped, dead
    states merged), which keeps them ordered, and the result is minimized,
    which also keeps it ordered. Appending a letter c after a
    state that loops on c and on some other letter has no ordered answer
    (e.g. [ab]* 'a'); when the fold meets such a step it falls back to
    :func:`compile_general`, whose output is ordered whenever any ordered
    DFA for the language exists.
    """
    letters = e.letters()
    if alphabet is None:
        alphabet = sorted(letters)
    alphabet = tuple(alphabet)
    missing = letters - set(alphabet)
    if missing:
        raise DomainError(f"expression uses letters {sorted(missing)} outside the alphabet")
    try:
        out = _append(Dfa.epsilon(alphabet), e)
    except _Unorderable:
        return compile_general(e, alphabet)
    return minimize(out)


def dfa_to_expr(dfa: Dfa) -> OrderedExpr:
    """Ordered expression for L(dfa) by the Kleene state-elimination recursion.

    States are sorted topologically, so the loop language at state k through
    lower states is just its self-loop letter set, and L^k_ij only changes
    when i <= k <= j.
    """
    if not is_ordered(dfa):
        raise UnorderedDfaError("dfa_to_expr needs an ordered DFA")
    useful = reachable_states(dfa) & coreachable_states(dfa)
    if not useful:
        return EMPTY
    order = topological_order(dfa, useful)
    s = len(order)
    pos = {q: i for i, q in enumerate(order)}
    # level 0: single letters between distinct states
    L = [[EMPTY] * s for _ in range(s)]
    for i, q in enumerate(order):
        for c, r in zip(dfa.alphabet, dfa.delta[q]):
            j = pos.get(r)
            if j is not None and j != i:
                L[i][j] = union(L[i][j], Singleton(c)) if not is_empty(L[i][j]) else Singleton(c)
    loops = [Star(dfa.loop_letters(q)) for q in order]
    # L[i][i] stands for {eps} plus the loop letters; handled through the loops list
    for k in range(s):
        new = [row[:] for row in L]
        for i in range(k + 1):
            for j in range(k, s):
                if i == k and j == k:
                    continue
                if i == k:
                    new[i][j] = concat(loops[k], L[k][j])
                elif j == k:
                    new[i][j] = concat(L[i][k], loops[k])
                else:
                    through = concat(L[i][k], loops[k], L[k][j])
                    if is_empty(through):
                        continue
                    new[i][j] = through if is_empty(L[i][j]) else union(through, L[i][j])
        L = new
    start = pos[dfa.initial]
    pieces = []
    for f in sorted(dfa.finals & useful, key=pos.get):
        j = pos[f]
        pieces.append(loops[j] if j == start else L[start][j])
    return union(*pieces) if pieces else EMPTY


def ideal_to_expr(ideal: PosetIdeal) -> OrderedExpr:
    """Union over generators of the pattern language of the principal ideal."""
    order = ideal.order
    branches = []
    for g in ideal.generators:
        if order.kind is OrderKind.OI_ZERO_ALIGNED:
            filler = Star(c for c in order.alphabet if c != "0")
            parts = [filler]
            for c in g:
                parts += [Singleton(c), filler]
        elif order.kind is OrderKind.OS_PATTERN:
            parts = []
            seen = set()
            for c in g:
                seen.add(c)
                parts += [Singleton(c), Star(seen)]
        elif order.kind is OrderKind.HIGMAN:
            filler = Star(order.alphabet)
            parts = [filler]
            for c in g:
                parts += [Singleton(c), filler]
        else:
            raise DomainError(f"unsupported order {order.kind}")
        branches.append(concat(*parts))
    if not branches:
        return EMPTY
    return union(*branches)


# enumeration -------------------------------------------------------------------

def enumerate_expr(e: OrderedExpr, max_len: int, limits=None) -> list[str]:
    lim = limits_or_default(limits)
    if max_len > lim.max_len:
        raise BoundsError(f"max_len {max_len} exceeds the enumeration limit {lim.max_len}")
    memo: dict[int, frozenset] = {}

    def words(x: OrderedExpr) -> frozenset:
        key = id(x)
        if key in memo:
            return memo[key]
        if isinstance(x, Epsilon):
            out = frozenset({""})
        elif isinstance(x, Singleton):
            out = frozenset({x.letter}) if max_len >= 1 else frozenset()
        elif isinstance(x, Star):
            layer = {""}
            acc = set(layer)
            for _ in range(max_len):
                layer = {w + c for w in layer for c in x.letters_}
                acc |= layer
            out = frozenset(acc)
        elif isinstance(x, Concat):
            acc = {""}
            for p in x.parts:
                pw = words(p)
                acc = {u + v for u in acc for v in pw if len(u) + len(v) <= max_len}
                if not acc:
                    break
            out = frozenset(acc)
        elif isinstance(x, Union):
            out = frozenset().union(*(words(b) for b in x.branches))
        else:
            raise TypeError(f"not an ordered expression: {x!r}")
        if len(out) > lim.max_work:
            raise BoundsError("enumeration exceeds the work limit")
        memo[key] = out
        return out

    return shortlex(words(e))


def expr_size(e: OrderedExpr) -> int:
    """Number of nodes of the expression tree (shared nodes counted once per use)."""
    if isinstance(e, Concat):
        return 1 + sum(expr_size(p) for p in e.parts)
    if isinstance(e, Union):
        return 1 + sum(expr_size(b) for b in e.branches)
    return 1


def enumerate_language(src, max_len: int, limits=None) -> list[str]:
    """Words of length <= max_len of a DFA, an ordered expression or a grammar, in shortlex order."""
    if isinstance(src, Dfa):
        return enumerate_dfa(src, max_len, limits)
    if isinstance(src, OrderedExpr):
        return enumerate_expr(src, max_len, limits)
    if isinstance(src, Cfg):
        return enumerate_cfg(src, max_len, limits)
    raise TypeError(f"cannot enumerate {type(src).__name__}")
