import itertools

import pytest
from hypothesis import given, strategies as st

from lingcat.automata import (
    Dfa,
    concat_singleton,
    concat_star,
    dfa_accepts,
    enumerate_dfa,
    is_ordered,
    minimize,
    ordered_union,
    prune,
    reachable_states,
    repeatable_subsets,
    split_by_final,
    topological_order,
)
from lingcat.config import Limits
from lingcat.errors import AlphabetError, BoundsError, DomainError, ParseError, UnorderedDfaError

from oracles import all_words
from strategies import any_dfas, ordered_dfas

AB = ("a", "b")


def lang(dfa, n=6):
    return set(enumerate_dfa(dfa, n))


def a_star_b_star():
    # 0 -a-> 0, 0 -b-> 1, 1 -b-> 1, 1 -a-> 2 (dead)
    return Dfa(AB, ((0, 1), (2, 1), (2, 2)), 0, frozenset({0, 1}))


def single(word, alphabet=AB):
    d = Dfa.epsilon(alphabet)
    for c in word:
        d = concat_singleton(d, c)
    return d


def test_accepts_examples():
    d = a_star_b_star()
    assert dfa_accepts(d, "aab")
    assert not dfa_accepts(d, "ba")
    assert dfa_accepts(d, "") == (d.initial in d.finals)
    with pytest.raises(AlphabetError):
        dfa_accepts(d, "c")


def test_is_ordered_examples():
    assert is_ordered(a_star_b_star())
    cycle = Dfa(AB, ((1, 2), (2, 0), (2, 2)), 0, frozenset({0}))  # (ab)*
    assert not is_ordered(cycle)
    assert is_ordered(Dfa.universal(AB))


def test_non_total_table_rejected():
    with pytest.raises(DomainError):
        Dfa.from_transitions("ab", [0, 1], [("a", 0, 1)], 0, [1])


def test_union_examples():
    u = ordered_union(single("a"), single("b"))
    assert enumerate_dfa(u, 3) == ["a", "b"]
    d = a_star_b_star()
    assert lang(ordered_union(d, d)) == lang(d)
    a_star = Dfa(AB, ((0, 1), (1, 1)), 0, frozenset({0}))
    b_star = Dfa(AB, ((1, 0), (1, 1)), 0, frozenset({0}))
    assert enumerate_dfa(ordered_union(a_star, b_star), 2) == ["", "a", "b", "aa", "bb"]


def test_union_rejects_unordered():
    cycle = Dfa(AB, ((1, 1), (0, 0)), 0, frozenset({0}))
    with pytest.raises(UnorderedDfaError):
        ordered_union(cycle, cycle)


def test_split_by_final_examples():
    d = single("a")
    assert split_by_final(d)[0].delta == d.delta
    u = prune(ordered_union(single("a"), single("bb")))
    pieces = split_by_final(u)
    assert sorted(tuple(enumerate_dfa(p, 4)) for p in pieces) == [("a",), ("bb",)]
    assert split_by_final(Dfa.empty(AB)) == []


def test_concat_singleton_examples():
    assert enumerate_dfa(concat_singleton(Dfa.epsilon(AB), "a"), 4) == ["a"]
    a_star = Dfa(AB, ((0, 1), (1, 1)), 0, frozenset({0}))
    assert enumerate_dfa(concat_singleton(a_star, "b"), 5) == ["b", "ab", "aab", "aaab", "aaaab"]
    assert enumerate_dfa(concat_singleton(single("a"), "a"), 4) == ["aa"]


def small_ordered_dfas(k, alphabet=AB):
    """Every DFA on states 0..k-1 whose transitions never decrease the state."""
    choices = [list(itertools.product(range(q, k), repeat=len(alphabet))) for q in range(k)]
    for rows in itertools.product(*choices):
        for r in range(k + 1):
            for fin in itertools.combinations(range(k), r):
                yield Dfa(alphabet, rows, 0, frozenset(fin))


def test_words_ending_in_a_have_no_ordered_dfa():
    # {a,b}*a: searched over all ordered DFAs with up to 4 states, and the
    # construction's own answer carries a cycle
    target = {w for w in all_words("ab", 6) if w.endswith("a")}
    for k in range(1, 5):
        assert not any(brute(d) == target for d in small_ordered_dfas(k))
    out = concat_singleton(Dfa.universal(AB), "a")
    assert brute(out) == target
    assert not is_ordered(out)
    assert not is_ordered(minimize(out))


def test_concat_singleton_loop_on_c_only_stays_ordered():
    a_star = Dfa(AB, ((0, 1), (1, 1)), 0, frozenset({0}))
    out = concat_singleton(a_star, "a")
    assert is_ordered(out)
    assert enumerate_dfa(out, 3) == ["a", "aa", "aaa"]


def test_concat_star_examples():
    assert lang(concat_star(Dfa.epsilon(AB), "ab")) == set(all_words("ab", 6))
    assert enumerate_dfa(concat_star(single("a"), "b"), 3) == ["a", "ab", "abb"]
    a_star = Dfa(AB, ((0, 1), (1, 1)), 0, frozenset({0}))
    assert lang(concat_star(a_star, "a")) == lang(a_star)


def test_concat_star_from_accepting_initial_state():
    # the final state is the initial state and carries a loop
    d = Dfa(AB, ((0, 1), (1, 1)), 0, frozenset({0}))
    out = concat_star(d, "b")
    expected = {w for w in all_words("ab", 6) if "ba" not in w}
    assert lang(out) == expected


def test_repeatable_subsets_examples():
    assert repeatable_subsets(Dfa.universal(AB)) == [frozenset("ab")]
    a_star_b = concat_singleton(Dfa(AB, ((0, 1), (1, 1)), 0, frozenset({0})), "b")
    assert repeatable_subsets(prune(a_star_b)) == [frozenset("a"), frozenset()]
    assert repeatable_subsets(prune(single("a"))) == [frozenset()]


def test_enumeration_examples_and_limits():
    a_star = Dfa(("a",), ((0,),), 0, frozenset({0}))
    assert enumerate_dfa(a_star, 2) == ["", "a", "aa"]
    assert enumerate_dfa(Dfa.empty(AB), 5) == []
    with pytest.raises(BoundsError):
        enumerate_dfa(a_star, 99)
    with pytest.raises(BoundsError):
        enumerate_dfa(Dfa.universal("ab"), 12, Limits(max_work=100))


def test_serialization_round_trip():
    d = a_star_b_star()
    back = Dfa.loads(d.dumps())
    assert back == d
    with pytest.raises(ParseError):
        Dfa.loads("{")
    with pytest.raises(ParseError):
        Dfa.loads('{"alphabet": ["a"]}')


def test_topological_order_puts_initial_first():
    d = a_star_b_star()
    order = topological_order(d)
    assert order[0] == d.initial
    assert topological_order(Dfa(AB, ((1, 1), (0, 0)), 0, frozenset())) is None


# properties ---------------------------------------------------------------------

def brute(dfa, n=6):
    return {w for w in all_words(dfa.alphabet, n) if dfa.accepts(w)}


@given(any_dfas())
def test_enumeration_matches_simulation(d):
    assert set(enumerate_dfa(d, 6)) == brute(d)


@given(any_dfas())
def test_is_ordered_matches_mutual_reachability(d):
    from lingcat.automata import reachable_states

    def reach_from(q):
        return reachable_states(Dfa(d.alphabet, d.delta, q, d.finals))

    mutual = any(
        p != q and q in reach_from(p) and p in reach_from(q)
        for p in range(d.n_states)
        for q in range(d.n_states)
    )
    assert is_ordered(d) == (not mutual)


@given(ordered_dfas(), ordered_dfas())
def test_union_language(d1, d2):
    u = ordered_union(d1, d2)
    assert is_ordered(u)
    assert brute(u) == brute(d1) | brute(d2)


@given(ordered_dfas(), st.sampled_from(AB))
def test_concat_singleton_language(d, c):
    out = concat_singleton(d, c)
    assert brute(out, 7) == {w + c for w in brute(d, 6)}


@given(ordered_dfas(), st.sampled_from(AB))
def test_concat_singleton_is_ordered_whenever_possible(d, c):
    # the minimal DFA is ordered iff some ordered DFA has the language
    out = concat_singleton(d, c)
    assert is_ordered(out) == is_ordered(minimize(out))


@given(ordered_dfas(), st.sampled_from(AB))
def test_concat_singleton_ordered_unless_final_loops_on_c_and_more(d, c):
    p = prune(d)
    reach = reachable_states(p)
    bad = any(q in reach and c in p.loop_letters(q) and len(p.loop_letters(q)) > 1 for q in p.finals)
    if not bad:
        assert is_ordered(concat_singleton(d, c))


@given(ordered_dfas(), st.sets(st.sampled_from(AB)))
def test_concat_star_language(d, pi):
    out = concat_star(d, pi)
    assert is_ordered(out)
    base = brute(d, 6)
    expected = {w for w in all_words(AB, 6) if any(w[:i] in base and set(w[i:]) <= pi for i in range(len(w) + 1))}
    assert brute(out, 6) == expected


@given(ordered_dfas())
def test_split_by_final_partitions_the_language(d):
    pieces = split_by_final(d)
    langs = [brute(p) for p in pieces]
    assert set().union(*langs) == brute(d)
    assert sum(len(x) for x in langs) == len(brute(d))


@given(ordered_dfas())
def test_prune_keeps_language_and_order(d):
    p = prune(d)
    assert is_ordered(p)
    assert brute(p) == brute(d)


@given(any_dfas())
def test_minimize_keeps_language(d):
    assert brute(minimize(d)) == brute(d)
