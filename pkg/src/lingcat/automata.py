"""Deterministic finite automata and the ordered-DFA closure constructions.

A :class:`Dfa` has integer states ``0..k-1`` and a total transition table
``delta[state][letter_index]``. An ordered DFA is one whose transition graph
has no directed cycle through two distinct states; self-loops are allowed.
The constructions below (union, split by final state, concatenation with a
letter or with a starred letter set) keep that property, with one exception
documented at :func:`concat_singleton`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .config import limits_or_default
from .errors import AlphabetError, BoundsError, DomainError, ParseError, UnorderedDfaError


@dataclass(frozen=True)
class NormedAlphabet:
    """Letters with norm vectors in N^I; ``names`` label the I coordinates."""

    letters: tuple[str, ...]
    norms: Mapping[str, tuple[int, ...]]
    names: tuple[str, ...] = ("t",)

    def __post_init__(self):
        dim = len(self.names)
        for c in self.letters:
            if c not in self.norms:
                raise DomainError(f"letter {c!r} has no norm")
            v = tuple(self.norms[c])
            if len(v) != dim or any(x < 0 for x in v):
                raise DomainError(f"norm of {c!r} must be a vector in N^{dim}")

    @classmethod
    def by_length(cls, letters: Iterable[str], name: str = "t") -> NormedAlphabet:
        letters = tuple(letters)
        return cls(letters, {c: (1,) for c in letters}, (name,))

    @property
    def dim(self) -> int:
        return len(self.names)

    def norm(self, word: str) -> tuple[int, ...]:
        out = [0] * self.dim
        for c in word:
            for i, x in enumerate(self.norms[c]):
                out[i] += x
        return tuple(out)


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int = 0
    finals: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "finals", frozenset(self.finals))
        k = len(self.delta)
        if k == 0:
            raise DomainError("a DFA needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise DomainError("alphabet has repeated letters")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise DomainError(f"transition table is not total at state {q}")
            if any(not 0 <= r < k for r in row):
                raise DomainError(f"transition from state {q} leaves the state set")
        if not 0 <= self.initial < k:
            raise DomainError("initial state is not a state")
        if any(not 0 <= f < k for f in self.finals):
            raise DomainError("final states must be states")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def letter_index(self, c: str) -> int:
        try:
            return self.alphabet.index(c)
        except ValueError:
            raise AlphabetError(f"letter {c!r} not in DFA alphabet {self.alphabet}") from None

    def step(self, q: int, c: str) -> int:
        return self.delta[q][self.letter_index(c)]

    def run(self, word: str, start: int | None = None) -> int:
        q = self.initial if start is None else start
        for c in word:
            q = self.step(q, c)
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.finals

    def loop_letters(self, q: int) -> frozenset:
        return frozenset(c for c, r in zip(self.alphabet, self.delta[q]) if r == q)

    def successors(self, q: int) -> set[int]:
        return set(self.delta[q])

    # construction helpers
    @classmethod
    def from_transitions(cls, alphabet, states, transitions, initial, finals) -> Dfa:
        """Build from named states and (letter, from, to) triples."""
        states = list(states)
        index = {s: i for i, s in enumerate(states)}
        alphabet = tuple(alphabet)
        table = [[None] * len(alphabet) for _ in states]
        try:
            for c, a, b in transitions:
                table[index[a]][alphabet.index(c)] = index[b]
            init = index[initial]
            fin = frozenset(index[f] for f in finals)
        except (KeyError, ValueError) as exc:
            raise DomainError(f"transition refers to an unknown state or letter: {exc}") from exc
        for i, row in enumerate(table):
            if None in row:
                c = alphabet[row.index(None)]
                raise DomainError(f"transition table is not total: ({c!r}, {states[i]!r}) missing")
        return cls(alphabet, tuple(tuple(r) for r in table), init, fin)

    @classmethod
    def epsilon(cls, alphabet) -> Dfa:
        """Accepts only the empty word: state 0 accepting, state 1 dead."""
        k = len(tuple(alphabet))
        return cls(tuple(alphabet), ((1,) * k, (1,) * k), 0, frozenset({0}))

    @classmethod
    def empty(cls, alphabet) -> Dfa:
        k = len(tuple(alphabet))
        return cls(tuple(alphabet), ((0,) * k,), 0, frozenset())

    @classmethod
    def universal(cls, alphabet) -> Dfa:
        k = len(tuple(alphabet))
        return cls(tuple(alphabet), ((0,) * k,), 0, frozenset({0}))

    # serialization
    def to_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "states": list(range(self.n_states)),
            "transitions": [
                [c, q, r] for q, row in enumerate(self.delta) for c, r in zip(self.alphabet, row)
            ],
            "initial": self.initial,
            "finals": sorted(self.finals),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> Dfa:
        try:
            return cls.from_transitions(
                data["alphabet"], data["states"], data["transitions"], data["initial"], data["finals"]
            )
        except KeyError as exc:
            raise ParseError(f"DFA record is missing field {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> Dfa:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"DFA record is not valid JSON: {exc}") from exc


def dfa_accepts(dfa: Dfa, word: str) -> bool:
    return dfa.accepts(word)


# graph structure ---------------------------------------------------------------

def reachable_states(dfa: Dfa) -> set[int]:
    seen = {dfa.initial}
    todo = [dfa.initial]
    while todo:
        q = todo.pop()
        for r in dfa.delta[q]:
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def coreachable_states(dfa: Dfa) -> set[int]:
    """States from which some final state can be reached."""
    preds: list[set[int]] = [set() for _ in range(dfa.n_states)]
    for q, row in enumerate(dfa.delta):
        for r in row:
            preds[r].add(q)
    seen = set(dfa.finals)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def topological_order(dfa: Dfa, states: Iterable[int] | None = None) -> list[int] | None:
    """Kahn order of the transition graph minus self-loops; None if it has a cycle.

    Among available states the smallest index goes first, and the initial
    state is preferred, so it leads whenever every state is reachable.
    """
    states = set(range(dfa.n_states)) if states is None else set(states)
    indeg = {q: 0 for q in states}
    succ = {q: {r for r in dfa.delta[q] if r != q and r in states} for q in states}
    for q in states:
        for r in succ[q]:
            indeg[r] += 1
    ready = sorted(q for q in states if indeg[q] == 0)
    if dfa.initial in ready:
        ready.remove(dfa.initial)
        ready.insert(0, dfa.initial)
    ready = deque(ready)
    order = []
    while ready:
        q = ready.popleft()
        order.append(q)
        for r in sorted(succ[q]):
            indeg[r] -= 1
            if indeg[r] == 0:
                ready.append(r)
    return order if len(order) == len(states) else None


def is_ordered(dfa: Dfa) -> bool:
    return topological_order(dfa) is not None


def _require_ordered(*dfas: Dfa) -> None:
    for d in dfas:
        if not is_ordered(d):
            raise UnorderedDfaError("the construction needs an ordered DFA")


def restrict(dfa: Dfa, keep: Iterable[int]) -> Dfa:
    """Keep the given states (must contain the initial one); the rest merge into a sink.

    The sink is added only when some kept state leaves the kept set.
    """
    keep = sorted(set(keep) | {dfa.initial})
    index = {q: i for i, q in enumerate(keep)}
    sink = len(keep)
    rows = []
    need_sink = False
    for q in keep:
        row = []
        for r in dfa.delta[q]:
            if r in index:
                row.append(index[r])
            else:
                row.append(sink)
                need_sink = True
        rows.append(tuple(row))
    if need_sink:
        rows.append((sink,) * len(dfa.alphabet))
    finals = {index[f] for f in dfa.finals if f in index}
    return Dfa(dfa.alphabet, tuple(rows), index[dfa.initial], frozenset(finals))


def prune(dfa: Dfa) -> Dfa:
    """Drop unreachable states and collapse the states that cannot accept into one sink.

    This keeps the language and does not create cycles, so ordered input
    stays ordered. It is not minimization.
    """
    useful = reachable_states(dfa) & coreachable_states(dfa)
    return restrict(dfa, useful)


# ordered closure constructions -----------------------------------------------

def ordered_union(d1: Dfa, d2: Dfa) -> Dfa:
    """Product automaton accepting when either coordinate accepts.

    Only pairs reachable from the initial pair are built, so the result has
    at most |Q1|*|Q2| states and usually far fewer.
    """
    _require_ordered(d1, d2)
    return product_union(d1, d2)


def product_union(d1: Dfa, d2: Dfa) -> Dfa:
    """The same product without the orderedness precondition."""
    if d1.alphabet != d2.alphabet:
        raise AlphabetError("union of DFAs over different alphabets")
    start = (d1.initial, d2.initial)
    index = {start: 0}
    queue = [start]
    rows = []
    finals = set()
    for a, b in queue:
        row = []
        for r in zip(d1.delta[a], d2.delta[b]):
            if r not in index:
                index[r] = len(queue)
                queue.append(r)
            row.append(index[r])
        if a in d1.finals or b in d2.finals:
            finals.add(index[(a, b)])
        rows.append(tuple(row))
    return Dfa(d1.alphabet, tuple(rows), 0, frozenset(finals))


def split_by_final(dfa: Dfa) -> list[Dfa]:
    _require_ordered(dfa)
    return [Dfa(dfa.alphabet, dfa.delta, dfa.initial, frozenset({f})) for f in sorted(dfa.finals)]


def _union_all(pieces: list[Dfa], alphabet) -> Dfa:
    if not pieces:
        return Dfa.empty(alphabet)
    out = pieces[0]
    for p in pieces[1:]:
        out = prune(product_union(out, p))
    return out


def _concat_singleton_one_final(dfa: Dfa, c: str) -> Dfa:
    if not dfa.finals:
        return dfa
    (tau,) = dfa.finals
    ci = dfa.letter_index(c)
    rho = dfa.delta[tau][ci]
    new = dfa.n_states
    rows = [list(row) for row in dfa.delta]
    rows[tau][ci] = new
    if rho != tau:
        # after the c nothing more can be accepted; rho is dead in this piece
        rows.append([rho] * len(dfa.alphabet))
        return Dfa(dfa.alphabet, tuple(map(tuple, rows)), dfa.initial, frozenset({new}))
    # tau loops on c, so L.c != L in general. The new state remembers that
    # the last letter was a c read at tau; another loop letter b != c goes
    # back to tau, which is a genuine cycle when tau has such letters.
    sink = new + 1
    loops = dfa.loop_letters(tau)
    rows.append([new if b == c else (tau if b in loops else sink) for b in dfa.alphabet])
    rows.append([sink] * len(dfa.alphabet))
    return Dfa(dfa.alphabet, tuple(map(tuple, rows)), dfa.initial, frozenset({new}))


def concat_singleton(dfa: Dfa, c: str) -> Dfa:
    """DFA for L(dfa)·{c}, by splitting at the finals and taking the union.

    The result is ordered unless some final state tau reached by L has a
    self-loop on c together with a self-loop on another letter. In that case
    no ordered DFA recognizes L·{c} at all (e.g. {a,b}*·a), and the returned
    automaton is correct but not ordered.
    """
    _require_ordered(dfa)
    dfa.letter_index(c)
    pieces = [_concat_singleton_one_final(prune(p), c) for p in split_by_final(dfa)]
    return _union_all(pieces, dfa.alphabet)


def _concat_star_one_final(dfa: Dfa, pi: frozenset) -> Dfa:
    (tau,) = dfa.finals
    k = dfa.n_states
    tau2, rho = k, k + 1
    delta_set = dfa.loop_letters(tau)
    rows = [list(row) for row in dfa.delta]
    for i, c in enumerate(dfa.alphabet):
        if c in delta_set:
            rows[tau][i] = tau
        elif c in pi:
            rows[tau][i] = tau2
        else:
            rows[tau][i] = rho
    rows.append([tau2 if c in pi else rho for c in dfa.alphabet])
    rows.append([rho] * len(dfa.alphabet))
    return Dfa(dfa.alphabet, tuple(map(tuple, rows)), dfa.initial, frozenset({tau, tau2}))


def concat_star(dfa: Dfa, pi: Iterable[str]) -> Dfa:
    """Ordered DFA for L(dfa)·Pi*."""
    _require_ordered(dfa)
    pi = frozenset(pi)
    for c in pi:
        dfa.letter_index(c)
    pieces = [_concat_star_one_final(p, pi) for p in split_by_final(dfa)]
    return _union_all(pieces, dfa.alphabet)


def repeatable_subsets(dfa: Dfa) -> list[frozenset]:
    """Self-loop letter sets of the reachable prefinal states, deduplicated, in topological order."""
    _require_ordered(dfa)
    useful = reachable_states(dfa) & coreachable_states(dfa)
    out: list[frozenset] = []
    for q in topological_order(dfa, useful):
        s = dfa.loop_letters(q)
        if s not in out:
            out.append(s)
    return out


# enumeration oracle ------------------------------------------------------------

def shortlex(words: Iterable[str]) -> list[str]:
    return sorted(set(words), key=lambda w: (len(w), w))


def enumerate_dfa(dfa: Dfa, max_len: int, limits=None) -> list[str]:
    lim = limits_or_default(limits)
    if max_len > lim.max_len:
        raise BoundsError(f"max_len {max_len} exceeds the enumeration limit {lim.max_len}")
    alive = coreachable_states(dfa)
    out = []
    layer = [("", dfa.initial)] if dfa.initial in alive else []
    for length in range(max_len + 1):
        out.extend(w for w, q in layer if q in dfa.finals)
        if length == max_len:
            break
        nxt = []
        for w, q in layer:
            for c, r in zip(dfa.alphabet, dfa.delta[q]):
                if r in alive:
                    nxt.append((w + c, r))
        if len(nxt) > lim.max_work:
            raise BoundsError("enumeration exceeds the work limit")
        layer = nxt
    return shortlex(out)


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part.

    Merging states cannot create a cycle between distinct classes unless the
    input already had one, so the minimal DFA of an ordered DFA is ordered.
    """
    reach = sorted(reachable_states(dfa))
    part = {q: int(q in dfa.finals) for q in reach}
    while True:
        sig = {q: (part[q],) + tuple(part[r] for r in dfa.delta[q]) for q in reach}
        ids: dict = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in reach}
        if len(ids) == len(set(part.values())):
            part = new
            break
        part = new
    k = len(set(part.values()))
    rows = [None] * k
    for q in reach:
        rows[part[q]] = tuple(part[r] for r in dfa.delta[q])
    finals = {part[q] for q in reach if q in dfa.finals}
    return Dfa(dfa.alphabet, tuple(rows), part[dfa.initial], frozenset(finals))
