"""Hypothesis strategies and random generators shared by the test modules."""

import random
import re

from hypothesis import strategies as st

from lingcat.automata import Dfa
from lingcat.expr import Concat, Epsilon, Singleton, Star, Union


def expr_to_regex(e) -> str:
    if isinstance(e, Epsilon):
        return ""
    if isinstance(e, Singleton):
        return re.escape(e.letter)
    if isinstance(e, Star):
        if not e.letters_:
            return ""
        return "[" + "".join(re.escape(c) for c in sorted(e.letters_)) + "]*"
    if isinstance(e, Concat):
        return "".join("(?:" + expr_to_regex(p) + ")" for p in e.parts)
    if isinstance(e, Union):
        if not e.branches:
            return "(?!)"
        return "(?:" + "|".join(expr_to_regex(b) for b in e.branches) + ")"
    raise TypeError(e)


def regex_language(e, alphabet, max_len):
    from oracles import all_words

    pat = re.compile(expr_to_regex(e))
    return [w for w in all_words(alphabet, max_len) if pat.fullmatch(w)]


@st.composite
def ordered_exprs(draw, alphabet="abc", max_atoms=4):
    """Random expressions with at most ``max_atoms`` letter or star atoms."""
    budget = [draw(st.integers(1, max_atoms))]

    def atom():
        budget[0] -= 1
        if draw(st.booleans()):
            return Singleton(draw(st.sampled_from(alphabet)))
        return Star(draw(st.sets(st.sampled_from(alphabet), max_size=len(alphabet))))

    def node(depth):
        if budget[0] <= 1 or depth > 2:
            return atom()
        kind = draw(st.sampled_from(["atom", "concat", "union"]))
        if kind == "atom":
            return atom()
        parts = [node(depth + 1)]
        while budget[0] > 0 and len(parts) < 3 and draw(st.booleans()):
            parts.append(node(depth + 1))
        if len(parts) == 1:
            return parts[0]
        return Concat(parts) if kind == "concat" else Union(parts)

    return node(0)


def random_expr(rng: random.Random, alphabet: str, max_atoms: int = 4):
    budget = [rng.randint(1, max_atoms)]

    def atom():
        budget[0] -= 1
        if rng.random() < 0.5:
            return Singleton(rng.choice(alphabet))
        return Star(c for c in alphabet if rng.random() < 0.5)

    def node(depth):
        if budget[0] <= 1 or depth > 2:
            return atom()
        kind = rng.choice(["atom", "concat", "union"])
        if kind == "atom":
            return atom()
        parts = [node(depth + 1)]
        while budget[0] > 0 and len(parts) < 3 and rng.random() < 0.7:
            parts.append(node(depth + 1))
        if len(parts) == 1:
            return parts[0]
        return Concat(parts) if kind == "concat" else Union(parts)

    return node(0)


@st.composite
def ordered_dfas(draw, alphabet="ab", max_states=6):
    """Random DFAs whose transitions never go to a smaller state, hence ordered."""
    k = draw(st.integers(1, max_states))
    rows = []
    for q in range(k):
        rows.append(tuple(draw(st.integers(q, k - 1)) for _ in alphabet))
    finals = draw(st.sets(st.integers(0, k - 1)))
    return Dfa(tuple(alphabet), tuple(rows), 0, frozenset(finals))


@st.composite
def any_dfas(draw, alphabet="ab", max_states=4):
    k = draw(st.integers(1, max_states))
    rows = tuple(tuple(draw(st.integers(0, k - 1)) for _ in alphabet) for _ in range(k))
    finals = draw(st.sets(st.integers(0, k - 1)))
    return Dfa(tuple(alphabet), rows, 0, frozenset(finals))
