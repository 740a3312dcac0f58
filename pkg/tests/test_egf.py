from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from lingcat.egf import EgfForm, egf_convert
from lingcat.errors import DomainError
from lingcat.poly import Poly
from lingcat.series import RationalSeries, expand, univariate_factors


def uni(num, factors):
    return RationalSeries(("t",), Poly.from_univariate(num), univariate_factors(factors))


def egf_oracle(form, order):
    """n! [t^n] of sum q_j(t) e^{jt}, from truncated exponential series."""
    out = [Fraction(0)] * (order + 1)
    for coeffs, j in form.terms:
        exp = [Fraction(j) ** k / factorial(k) for k in range(order + 1)]
        for r, q in enumerate(coeffs):
            for k in range(order + 1 - r):
                out[r + k] += q * exp[k]
    return [c * factorial(n) for n, c in enumerate(out)]


def test_examples():
    g = egf_convert(uni([0, 0, 1], [(1, 1), (2, 1)]))
    assert g == EgfForm((((Fraction(1, 2),), 0), ((-1,), 1), ((Fraction(1, 2),), 2)))
    assert g.format() == "1/2 - e^t + 1/2*e^(2t)"
    assert egf_convert(uni([1], [(1, 1)])) == EgfForm((((1,), 1),))
    assert egf_convert(uni([0, 1], [(1, 2)])) == EgfForm((((0, 1), 1),))
    assert egf_convert(uni([0, 1], [(1, 2)])).format() == "t*e^t"


def test_half_example_to_order_12():
    s = uni([0, 0, 1], [(1, 1), (2, 1)])
    g = egf_convert(s)
    expected = [0, 0] + [2 ** (m - 1) - 1 for m in range(2, 13)]
    assert expand(s, 12).as_list() == expected
    assert egf_oracle(g, 12) == expected
    assert g.sequence(12) == expected


def test_polynomial_part_goes_to_rate_zero():
    # (1 + t^3)/(1 - t): a_n = 1 + [n >= 3]
    g = egf_convert(uni([1, 0, 0, 1], [(1, 1)]))
    assert egf_oracle(g, 8) == [1, 1, 1, 2, 2, 2, 2, 2, 2]
    assert [j for _, j in g.terms] == [0, 1]


def test_rejects_bad_denominators():
    with pytest.raises(DomainError):
        egf_convert(RationalSeries(("t",), Poly.const(1, 1), [(Poly(1, {(2,): 1}), 1)]))
    two = RationalSeries(("t1", "t2"), Poly.const(2, 1), [(Poly(2, {(1, 0): 1}), 1)])
    with pytest.raises(DomainError):
        egf_convert(two)


def test_distinct_rates_enforced():
    with pytest.raises(DomainError):
        EgfForm((((1,), 1), ((2,), 1)))


def test_to_dict_is_plain():
    d = egf_convert(uni([0, 0, 1], [(1, 1), (2, 1)])).to_dict()
    assert [t["rate"] for t in d["terms"]] == [0, 1, 2]


@given(
    st.lists(st.integers(-3, 3), min_size=1, max_size=5),
    st.lists(st.tuples(st.integers(1, 4), st.integers(1, 3)), min_size=1, max_size=3),
)
def test_egf_reproduces_expansion(num, factors):
    s = uni(num, factors)
    g = egf_convert(s)
    coeffs = expand(s, 12).as_list()
    assert egf_oracle(g, 12) == coeffs
    assert g.sequence(12) == coeffs
