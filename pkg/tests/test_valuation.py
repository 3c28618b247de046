"""Tests for level-wise valuations, normal forms, and the criteria."""

import random
from fractions import Fraction

import pytest

from lensring import (
    CriterionVerdict,
    IntPolynomial,
    Valuation,
    criterion_necessary,
    criterion_necessary_search,
    criterion_sufficient,
    element_f,
    element_f_prime,
    evaluate_at_f_squared,
    is_in_4Z,
    make_element,
    membership_bound,
    normal_form,
    normal_form_reconstruct,
    project,
    valuation_from_text,
    valuation_to_text,
    w_l,
    x_polynomial,
)


def random_element(rng, K, span=9):
    return make_element(K, [rng.randrange(-span, span + 1) for _ in range(1 << K)])


def test_valuation_construction():
    v = Valuation.finite(2, 3, 2)
    assert (v.a, v.b, v.level) == (2, 3, 2)
    assert not v.is_infinite
    assert v.value() == Fraction(11, 4)
    assert Valuation.infinite().is_infinite
    with pytest.raises(ValueError):
        Valuation.finite(0, 4, 2)
    with pytest.raises(ValueError):
        Valuation.finite(0, -1, 2)
    with pytest.raises(ValueError):
        Valuation(1, None, 2)


def test_valuation_addition_carries():
    v = Valuation.finite(0, 3, 2) + Valuation.finite(0, 3, 2)
    assert (v.a, v.b) == (1, 2)
    v = Valuation.finite(1, 0, 3) + Valuation.finite(2, 7, 3)
    assert (v.a, v.b) == (3, 7)
    assert (Valuation.infinite() + Valuation.finite(1, 0, 2)).is_infinite
    with pytest.raises(ValueError):
        Valuation.finite(0, 0, 1) + Valuation.finite(0, 0, 2)


def test_valuation_ordering():
    lo = Valuation.finite(1, 1, 2)
    hi = Valuation.finite(1, 2, 2)
    inf = Valuation.infinite()
    assert lo < hi < inf
    assert min(hi, lo) == lo
    assert lo.at_least(Fraction(5, 4))
    assert not lo.at_least(Fraction(3, 2))
    assert lo.below(Fraction(3, 2))
    assert not lo.below(Fraction(5, 4))
    assert inf.at_least(Fraction(10**9))
    assert not inf.below(Fraction(10**9))


def test_valuation_text_round_trip():
    for v in (
        Valuation.finite(0, 3, 2),
        Valuation.finite(-2, 0, 1),
        Valuation.finite(5, 31, 5),
        Valuation.infinite(),
    ):
        assert valuation_from_text(valuation_to_text(v)) == v
    assert valuation_to_text(Valuation.finite(0, 3, 2)) == "0+3/2^2"
    assert valuation_to_text(Valuation.infinite()) == "inf"
    for bad in ("0+4/2^2", "1", "0+3/2", "0-3/2^2", "infty"):
        with pytest.raises(ValueError):
            valuation_from_text(bad)


def test_normal_form_known_values():
    K = 3
    # 1 - chi projects to 1 - chi at every level
    g = make_element(K, [1, -1])
    for l in range(1, K):
        nf = normal_form(project(g, l))
        assert (nf.a, nf.b, nf.u) == (0, 1, 1)
        assert nf.v2.is_zero()
    nf = normal_form(project(make_element(K, [6]), 2))
    assert (nf.a, nf.b, nf.u) == (1, 0, 1)
    assert nf.v1 == IntPolynomial((3,))
    # an odd denominator is carried by the unit u
    p = project(Fraction(1, 3) * make_element(K, [2]), 2)
    nf = normal_form(p)
    assert (nf.a, nf.b, nf.u) == (1, 0, 3)
    assert nf.v1 == IntPolynomial((1,))
    assert normal_form_reconstruct(nf, 2) == p
    with pytest.raises(ValueError):
        normal_form(project(make_element(K, []), 1))


def test_normal_form_round_trip_and_oddness():
    rng = random.Random(10)
    for K in (1, 2, 3, 4):
        for _ in range(25):
            g = random_element(rng, K)
            for l in range(K):
                p = project(g, l)
                if p.is_zero():
                    continue
                nf = normal_form(p)
                assert nf.v1(1) % 2 == 1
                assert nf.u % 2 == 1
                assert 0 <= nf.b < 1 << l
                assert normal_form_reconstruct(nf, l) == p


def test_w_l_worked_examples():
    for K in (1, 2, 3, 4):
        f = element_f(K)
        one = make_element(K, [1])
        for l in range(K):
            for a in range(5):
                w = w_l(make_element(K, [1 << a]), l)
                assert (w.a, w.b) == (a, 0)
            if l == 0:
                assert w_l(f, 0).is_infinite
            else:
                assert w_l(f, l).value() == 0
            for s in (1, -1):
                assert w_l(f + make_element(K, [s]), l).value() \
                    == 1 - Fraction(1, 1 << l)
            assert w_l(f * f - one, l).value() == 2 - Fraction(2, 1 << l)
            w = w_l(f * f + one, l)
            if l == 0:
                assert w.value() == 0
            elif l == 1:
                assert w.is_infinite
            else:
                assert w.value() == 1
            for k in (1, 3, 5, 7):
                assert w_l(element_f_prime(K, k), l).value() == 0


def test_w_l_is_additive_on_products():
    rng = random.Random(11)
    for K in (2, 3, 4):
        for _ in range(40):
            g1, g2 = random_element(rng, K), random_element(rng, K)
            g12 = g1 * g2
            for l in range(K):
                assert w_l(g12, l) == w_l(g1, l) + w_l(g2, l)


def test_w_l_sum_rule():
    rng = random.Random(12)
    for K in (2, 3, 4):
        for _ in range(40):
            g1, g2 = random_element(rng, K), random_element(rng, K)
            gs = g1 + g2
            for l in range(K):
                w1, w2 = w_l(g1, l), w_l(g2, l)
                ws = w_l(gs, l)
                if w1 == w2:
                    assert ws.is_infinite or w1.is_infinite \
                        or ws.value() >= w1.value()
                else:
                    assert ws == min(w1, w2)


def test_w_l_validates_level_index():
    g = make_element(3, [1])
    with pytest.raises(ValueError):
        w_l(g, 3)
    with pytest.raises(ValueError):
        w_l(g, -1)


def test_membership_bound_values():
    assert membership_bound(1, 0) == 2
    assert membership_bound(3, 0) == 4
    assert membership_bound(3, 2) == Fraction(11, 4)


def test_criterion_sufficient_known_cases():
    # a big power of two clears the bound at every level
    K = 3
    g = make_element(K, [1 << (K + 2)])
    assert criterion_sufficient(g) == CriterionVerdict.PROVES_MEMBERSHIP
    assert is_in_4Z(g)
    # 4 itself is a member but sits below the bound at low levels
    g = make_element(K, [4])
    assert criterion_sufficient(g) == CriterionVerdict.INCONCLUSIVE
    # an element failing the projection hypothesis is never judged
    assert criterion_sufficient(make_element(K, [1])) \
        == CriterionVerdict.INCONCLUSIVE


def test_criterion_necessary_on_a_ladder_element():
    # 8 f'_k f sits one level too high at K = 3 and a witness certifies it
    g = evaluate_at_f_squared([1], 3, 1)
    assert not is_in_4Z(g)
    verdict, j, l_star = criterion_necessary_search(g)
    assert verdict == CriterionVerdict.PROVES_NON_MEMBERSHIP
    h = make_element(3, [1, -1]) ** j
    assert criterion_necessary(g, h, l_star) \
        == CriterionVerdict.PROVES_NON_MEMBERSHIP


def test_criterion_necessary_validates_inputs():
    g = make_element(3, [4])
    h = make_element(3, [1])
    with pytest.raises(ValueError):
        criterion_necessary(g, make_element(2, [1]), 0)
    with pytest.raises(ValueError):
        criterion_necessary(g, Fraction(1, 2) * h, 0)
    with pytest.raises(ValueError):
        criterion_necessary(g, h, 3)


def test_criteria_never_contradict_the_oracle():
    rng = random.Random(13)
    for K in (1, 2, 3, 4):
        for _ in range(100):
            g = 4 * random_element(rng, K, span=4)
            if rng.randrange(2):
                g = g * (make_element(K, [1, -1]) ** rng.randrange(0, 3))
            member = is_in_4Z(g)
            if criterion_sufficient(g) == CriterionVerdict.PROVES_MEMBERSHIP:
                assert member
            verdict, _, _ = criterion_necessary_search(g)
            if verdict == CriterionVerdict.PROVES_NON_MEMBERSHIP:
                assert not member


def test_x_polynomial_family():
    assert x_polynomial(0) == IntPolynomial((0, -1))
    assert x_polynomial(1) == IntPolynomial((0, -1))
    for m in range(6):
        lhs = IntPolynomial((1, -1)) ** (1 << m)
        mono = [0] * ((1 << m) + 1)
        mono[0] = 1
        mono[1 << m] = 1
        assert lhs == 2 * x_polynomial(m) + IntPolynomial(tuple(mono))
    with pytest.raises(ValueError):
        x_polynomial(-1)
