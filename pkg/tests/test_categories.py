import random

import pytest
from hypothesis import given, strategies as st

from lingcat.categories import (
    OS,
    CategoryId,
    Morphism,
    admissible_key,
    compose,
    compose_words,
    decode,
    divides,
    divides_bruteforce,
    encode,
    enumerate_homs,
    fa_polynomiality_certificate,
    hom_count,
    hom_words,
    identity_word,
    oi,
    oi_monomial_bijection,
    parse_category,
    principal_projective_series,
    projective_closed_form,
    stirling2,
)
from lingcat.config import Limits
from lingcat.errors import BoundsError, DomainError, FitError, ParseError
from lingcat.series import expand, series_equal

from oracles import (
    brute_hom_count,
    oi_compose_tables,
    oi_words_bruteforce,
    os_compose_tables,
    os_words_bruteforce,
    stirling_ie,
)


# counting ----------------------------------------------------------------------

def test_hom_count_examples():
    assert hom_count(oi(1), 1, 3) == 3
    assert hom_count(OS, 2, 3) == 3
    assert all(hom_count(CategoryId("fa"), 0, m) == 1 for m in range(5))
    assert hom_count(OS, 2, 4) == 7
    assert hom_count(CategoryId("fa"), 2, 3) == 9


@pytest.mark.parametrize("kind, d", [("oi", 1), ("oi", 2), ("fi", 1), ("fi", 2), ("os", None), ("fs", None), ("fa", None), ("oieq", 2)])
def test_hom_count_matches_brute_force(kind, d):
    cat = CategoryId(kind, d)
    for n in range(4):
        for m in range(6):
            expected = brute_hom_count(kind, d, n, m)
            assert hom_count(cat, n, m) == expected, (kind, n, m)
            assert len(enumerate_homs(cat, n, m)) == expected


def test_stirling_numbers():
    for m in range(10):
        for n in range(10):
            assert stirling2(m, n) == stirling_ie(m, n)


def test_products():
    cat = parse_category("os^2")
    assert cat.rank == 2 and str(cat) == "os^2"
    assert hom_count(cat, (1, 2), (3, 3)) == stirling2(3, 1) * stirling2(3, 2)
    assert len(enumerate_homs(cat, (1, 1), (2, 2))) == 1
    with pytest.raises(DomainError):
        hom_count(cat, 1, 2)
    mixed = parse_category("oi:1*os")
    assert str(mixed) == "oi:1*os"
    assert hom_count(mixed, (1, 2), (2, 3)) == 2 * 3


def test_parse_category():
    assert parse_category("OI:2") == oi(2)
    assert parse_category("os") == OS
    assert parse_category("os^1") == OS
    for bad in ["", "oi", "xx", "os:2", "os^0", "oi:x"]:
        with pytest.raises(ParseError):
            parse_category(bad)
    with pytest.raises(DomainError):
        CategoryId("oi", 0)


def test_enumeration_guard():
    with pytest.raises(BoundsError):
        hom_words(oi(2), 2, 12, Limits(max_work=100))


# words -------------------------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2])
def test_oi_words_match_brute_force(d):
    for n in range(4):
        for m in range(6):
            assert hom_words(oi(d), n, m) == oi_words_bruteforce(d, n, m)


def test_os_words_match_brute_force():
    for n in range(5):
        for m in range(7):
            assert hom_words(OS, n, m) == os_words_bruteforce(n, m)


def test_encode_decode_examples():
    f = Morphism(oi(2), 1, 3, (2,), (1, 0, 2))
    assert encode(oi(2), f) == "102"
    assert identity_word(OS, 4) == "1234"
    g = decode(OS, "121")
    assert (g.source, g.target, g.table) == (2, 3, (1, 2, 1))
    assert encode(OS, g) == "121"


@pytest.mark.parametrize("word", ["21", "13", "1303", "12a"])
def test_bad_os_words(word):
    with pytest.raises(DomainError):
        decode(OS, word)


def test_bad_oi_words():
    with pytest.raises(DomainError):
        decode(oi(1), "020")
    with pytest.raises(DomainError):
        decode(oi(1), "010", 1)


@pytest.mark.parametrize("cat", [oi(1), oi(2), OS])
def test_encode_decode_round_trip(cat):
    for n in range(5):
        for m in range(n, 9 if cat != oi(2) else 8):
            words = hom_words(cat, n, m)
            for w in words:
                assert encode(cat, decode(cat, w, n)) == w


# composition -------------------------------------------------------------------

def test_compose_words_examples():
    assert compose_words(oi(2), "100", "20") == "120"
    for w in ["121", "1123", "12"]:
        n = max(int(c) for c in w)
        assert compose_words(OS, w, identity_word(OS, n)) == w
    # "121" read as [2] -> [3], then "1232" as [3] -> [4]
    assert compose_words(OS, "1232", "121") == "1212"
    with pytest.raises(DomainError):
        compose_words(oi(2), "00", "0")


def test_compose_words_identity_laws():
    for w in hom_words(OS, 2, 4):
        assert compose_words(OS, w, "12") == w
        assert compose_words(OS, "1234", w) == w
    for w in hom_words(oi(2), 2, 4):
        assert compose_words(oi(2), w, "00") == w
        assert compose_words(oi(2), "0000", w) == w


@pytest.mark.parametrize("cat", [oi(1), oi(2), OS])
def test_compose_words_matches_function_composition(cat):
    oracle = oi_compose_tables if cat.kind == "oi" else os_compose_tables
    for n, a, b in [(0, 1, 2), (1, 2, 3), (1, 3, 4), (2, 3, 5), (2, 4, 5)]:
        for inner in hom_words(cat, n, a):
            for outer in hom_words(cat, a, b):
                w = compose_words(cat, outer, inner)
                assert w == oracle(outer, inner)
                f = compose(decode(cat, outer, a), decode(cat, inner, n))
                assert encode(cat, f) == w


def test_composition_is_associative_for_tables():
    rng = random.Random(4)
    for kind, d in [("fi", 2), ("fs", None), ("fa", None)]:
        cat = CategoryId(kind, d)
        for _ in range(20):
            sizes = sorted(rng.randint(0 if kind != "fs" else 1, 4) for _ in range(4))
            a, b, c, e = sizes
            f = rng.choice(enumerate_homs(cat, a, b))
            g = rng.choice(enumerate_homs(cat, b, c))
            h = rng.choice(enumerate_homs(cat, c, e))
            assert compose(h, compose(g, f)) == compose(compose(h, g), f)


# divisibility ------------------------------------------------------------------

def test_divides_examples():
    assert divides(oi(1), "0", "10")
    assert not divides(OS, "12", "212")
    assert not divides_bruteforce(OS, "12", "212")
    for w in ["0110", "102"]:
        assert divides(oi(2), w, w)
    with pytest.raises(DomainError):
        divides(oi(1), "0", "00")


@pytest.mark.parametrize("cat", [oi(1), oi(2), OS])
def test_divides_matches_factorization(cat):
    n = 2
    top = 5 if cat == oi(2) else 6
    words = [w for m in range(n, top + 1) for w in hom_words(cat, n, m)]
    for f in words:
        multiples = set()
        for m in range(len(f), top + 1):
            multiples.update(compose_words(cat, h, f) for h in hom_words(cat, len(f), m))
        for g in words:
            assert divides(cat, f, g) == (g in multiples), (f, g)


def test_monomial_bijection():
    assert oi_monomial_bijection("101") == (1, 1)
    assert oi_monomial_bijection("0") == (0, 0)
    assert oi_monomial_bijection("11") == (2,)
    with pytest.raises(DomainError):
        oi_monomial_bijection("102")
    # words out of [n] correspond to all monomials in n+1 variables
    for n in range(3):
        for m in range(n, 7):
            monos = {oi_monomial_bijection(w) for w in hom_words(oi(1), n, m)}
            assert len(monos) == len(hom_words(oi(1), n, m))
            assert all(len(e) == n + 1 and sum(e) == m - n for e in monos)


def test_monomial_divisibility_equivalence():
    for n in range(4):
        words = [w for m in range(n, 8) for w in hom_words(oi(1), n, m)]
        monos = {w: oi_monomial_bijection(w) for w in words}
        for f in words:
            for g in words:
                mono_div = all(a <= b for a, b in zip(monos[f], monos[g]))
                assert divides(oi(1), f, g) == mono_div


@pytest.mark.parametrize("cat", [oi(1), oi(2), OS])
def test_admissible_order_is_compatible(cat):
    rng = random.Random(11)
    for n, m, m2 in [(1, 3, 4), (2, 3, 5), (2, 4, 5), (1, 2, 4)]:
        fs = sorted(hom_words(cat, n, m), key=admissible_key)
        hs = hom_words(cat, m, m2)
        for _ in range(30):
            i, j = sorted(rng.sample(range(len(fs)), 2)) if len(fs) > 1 else (0, 0)
            if i == j:
                continue
            h = rng.choice(hs)
            assert admissible_key(compose_words(cat, h, fs[i])) < admissible_key(compose_words(cat, h, fs[j]))


# projective series -------------------------------------------------------------

@pytest.mark.parametrize("cat", [oi(1), oi(2), OS, CategoryId("fi", 1), CategoryId("fi", 2), CategoryId("fs"), CategoryId("fa")])
def test_projective_expansion_matches_hom_count(cat):
    for n in range(4):
        coeffs = expand(principal_projective_series(cat, n), 10).as_list()
        assert coeffs == [hom_count(cat, n, m) for m in range(11)], (cat, n)


@pytest.mark.parametrize("cat", [oi(1), oi(2), OS, CategoryId("fi", 2), CategoryId("fs")])
def test_projective_closed_forms(cat):
    for n in range(4):
        assert series_equal(principal_projective_series(cat, n), projective_closed_form(cat, n))


def test_projective_examples():
    assert principal_projective_series(oi(1), 1).format() == "t/(1-t)^2"
    assert principal_projective_series(OS, 2).format() == "t^2/((1-t)(1-2t))"
    assert principal_projective_series(oi(2), 0).format() == "1/(1-2t)"
    assert principal_projective_series(CategoryId("fa"), 2).format() == "(t+t^2)/(1-t)^3"


def test_product_projective():
    cat = parse_category("os^2")
    s = principal_projective_series(cat, (1, 2))
    assert s.format() == "t1*t2^2/((1-t1)(1-t2)(1-2t2))"
    table = expand(s, 8)
    for a in range(1, 6):
        for b in range(2, 7 - a + 2):
            if a + b <= 8:
                assert table[(a, b)] == hom_count(cat, (1, 2), (a, b))
    with pytest.raises(DomainError):
        principal_projective_series(cat, 2)


def test_oieq_has_no_rational_projective():
    with pytest.raises(DomainError):
        principal_projective_series(CategoryId("oieq", 2), 1)


# polynomiality certificates ----------------------------------------------------

def test_certificate_examples():
    c = fa_polynomiality_certificate([m * m for m in range(12)])
    assert c.degree == 2 and c.format() == "n^2"
    assert fa_polynomiality_certificate([2 ** m for m in range(12)]) is None
    assert fa_polynomiality_certificate([5] * 8).degree == 0
    assert fa_polynomiality_certificate([0] * 8).degree == -1
    with pytest.raises(FitError):
        fa_polynomiality_certificate([1, 2])
    with pytest.raises(FitError):
        fa_polynomiality_certificate([1] * 5, 0, 9)


def test_certificate_respects_window():
    # polynomial only from 3 on
    values = [7, 0, 1] + [m * m for m in range(3, 14)]
    assert fa_polynomiality_certificate(values, 0) is None
    c = fa_polynomiality_certificate(values, 3)
    assert c.degree == 2 and all(c(m) == m * m for m in range(3, 14))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_certificate_recovers_polynomials(coeffs):
    values = [sum(c * n ** i for i, c in enumerate(coeffs)) for n in range(12)]
    cert = fa_polynomiality_certificate(values)
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    assert cert.degree == len(coeffs) - 1
    assert all(cert(n) == values[n] for n in range(12))


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_fa_projective_is_m_to_the_s(s):
    coeffs = expand(principal_projective_series(CategoryId("fa"), s), 14).as_list()
    cert = fa_polynomiality_certificate(coeffs, start=1)
    assert cert.degree == s
    assert all(cert(m) == m ** s for m in range(1, 15))
