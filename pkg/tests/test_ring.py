"""Tests for the quotient ring arithmetic."""

import random
from fractions import Fraction

import pytest

from lensring import (
    LevelProjection,
    RingElement,
    conjugate,
    crt_reconstruct,
    eigenspace_test,
    element_f,
    element_f_k,
    element_f_prime,
    element_from_text,
    element_to_text,
    evaluate_at_f_squared,
    invert,
    is_in_4Z,
    make_element,
    project,
    ring_arith,
)


def one(K):
    return make_element(K, [1])


def chi(K):
    return make_element(K, [0, 1])


def random_element(rng, K, span=9):
    return make_element(K, [rng.randrange(-span, span + 1) for _ in range(1 << K)])


def test_construction_validates_level_and_length():
    with pytest.raises(ValueError):
        RingElement(0, ())
    with pytest.raises(ValueError):
        RingElement(2, (Fraction(1),))
    RingElement(2, (Fraction(1), Fraction(0), Fraction(0)))


def test_construction_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        make_element(2, [0.5, 0, 0, 0])
    with pytest.raises(TypeError):
        make_element(2, [True, 0, 0, 0])


def test_make_element_folds_exponents():
    # chi^N = 1, so an index N entry folds onto the constant term
    K = 2
    folded = make_element(K, [0, 0, 0, 0, 5])
    assert folded == make_element(K, [5])
    # the norm element 1 + chi + ... + chi^(N-1) is zero
    assert make_element(K, [1, 1, 1, 1]).is_zero()
    # canonical representatives have degree < N - 1
    assert make_element(K, [0, 0, 0, 1]) == make_element(K, [-1, -1, -1])


def test_operators_match_ring_arith():
    rng = random.Random(0)
    for K in (1, 2, 3):
        for _ in range(10):
            a, b = random_element(rng, K), random_element(rng, K)
            assert ring_arith(a, b, "add") == a + b
            assert ring_arith(a, b, "sub") == a - b
            assert ring_arith(a, b, "mul") == a * b
    with pytest.raises(ValueError):
        ring_arith(one(2), one(2), "div")


def test_arithmetic_laws():
    rng = random.Random(1)
    for K in (1, 2, 3, 4):
        a, b, c = (random_element(rng, K) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == make_element(K, [])
        assert -a == make_element(K, []) - a


def test_scalar_and_power():
    K = 3
    a = make_element(K, [1, 2, 0, -1])
    assert 3 * a == a + a + a
    assert Fraction(1, 2) * (a + a) == a
    assert a ** 0 == one(K)
    assert a ** 3 == a * a * a
    with pytest.raises(ValueError):
        a ** -1


def test_mixed_level_arithmetic_rejected():
    with pytest.raises(ValueError):
        one(2) + one(3)
    with pytest.raises(ValueError):
        one(2) * one(3)


def test_invert_basic():
    for K in (1, 2, 3, 4):
        u = one(K) - chi(K)
        assert u * invert(u) == one(K)
        v = make_element(K, [3])
        assert v * invert(v) == one(K)


def test_invert_rejects_zero_and_zero_divisors():
    K = 3
    with pytest.raises(ValueError):
        invert(make_element(K, []))
    # (1 - chi^4)(1 + chi^4) = 1 - chi^8 = 0, so 1 + chi^4 is a zero divisor
    zd = make_element(K, [1, 0, 0, 0, 1])
    assert not zd.is_zero()
    with pytest.raises(ValueError):
        invert(zd)


def test_element_f_identities():
    for K in (1, 2, 3, 4, 5):
        f = element_f(K)
        assert (one(K) - chi(K)) * f == one(K) + chi(K)
        for k in (1, 3, 5, 7):
            fk = element_f_k(K, k)
            fpk = element_f_prime(K, k)
            ck = chi(K) ** k
            assert (one(K) - ck) * fk == one(K) + ck
            assert fk == f * fpk
            assert fpk.is_integral()
        # f^2 - 1 = 4 chi / (1 - chi)^2
        lhs = f * f - one(K)
        assert lhs * (one(K) - chi(K)) ** 2 == 4 * chi(K)


def test_element_f_k_validates_k():
    with pytest.raises(ValueError):
        element_f_k(3, 2)
    with pytest.raises(ValueError):
        element_f_k(3, 4)


def test_eight_f_at_level_two():
    g = 8 * element_f(2)
    assert g.coeffs == (Fraction(4), Fraction(8), Fraction(4))
    assert is_in_4Z(g)


def test_conjugate_is_ring_involution():
    rng = random.Random(2)
    for K in (1, 2, 3):
        a, b = random_element(rng, K), random_element(rng, K)
        assert conjugate(conjugate(a)) == a
        assert conjugate(a + b) == conjugate(a) + conjugate(b)
        assert conjugate(a * b) == conjugate(a) * conjugate(b)
    K = 3
    assert conjugate(chi(K)) * chi(K) == one(K)


def test_eigenspace_membership():
    K = 3
    f = element_f(K)
    assert eigenspace_test(f, "-")
    assert not eigenspace_test(f, "+")
    assert eigenspace_test(f * f, "+")
    # chi + chi^(-1) is conjugation invariant and even at -1
    sym = chi(K) + chi(K) ** 7
    assert eigenspace_test(sym, "+")
    # the constant 1 is conjugation invariant but odd at -1
    assert not eigenspace_test(one(K), "+")
    assert eigenspace_test(make_element(K, []), "+")
    assert eigenspace_test(make_element(K, []), "-")
    assert eigenspace_test(f, "−")
    with pytest.raises(ValueError):
        eigenspace_test(f, "plus")


def test_is_in_4Z():
    K = 3
    assert is_in_4Z(4 * random_element(random.Random(3), K))
    assert not is_in_4Z(make_element(K, [2]))
    assert not is_in_4Z(Fraction(1, 2) * make_element(K, [4]))
    # 4f is integral but has odd entries
    assert (4 * element_f(K)).is_integral()
    assert not is_in_4Z(4 * element_f(K))
    # zero qualifies
    assert is_in_4Z(make_element(K, []))


def test_evaluate():
    K = 2
    a = make_element(K, [1, 2, 3])
    assert a.evaluate(1) == 6
    assert a.evaluate(-1) == 2
    assert a.evaluate(Fraction(1, 2)) == Fraction(1) + 1 + Fraction(3, 4)


def test_projection_is_a_ring_map():
    rng = random.Random(4)
    for K in (2, 3, 4):
        a, b = random_element(rng, K), random_element(rng, K)
        for l in range(K):
            pa, pb = project(a, l), project(b, l)
            assert project(a + b, l) == pa + pb
            assert project(a * b, l) == pa * pb
    with pytest.raises(ValueError):
        project(one(2), 2)
    with pytest.raises(ValueError):
        project(one(2), -1)


def test_level_projection_is_negacyclic():
    # at level 1 the image of chi squares to -1
    p = LevelProjection(1, (Fraction(0), Fraction(1)))
    assert p * p == LevelProjection(1, (Fraction(-1), Fraction(0)))
    q = LevelProjection(0, (Fraction(3),))
    assert q * q == LevelProjection(0, (Fraction(9),))
    assert LevelProjection(1, (Fraction(4), Fraction(-8))).in_4Z()
    assert not LevelProjection(1, (Fraction(4), Fraction(2))).in_4Z()


def test_crt_round_trip():
    rng = random.Random(5)
    for K in (1, 2, 3, 4):
        for _ in range(20):
            g = random_element(rng, K)
            parts = [project(g, l) for l in range(K)]
            assert crt_reconstruct(parts) == g
    with pytest.raises(ValueError):
        crt_reconstruct([])


def test_crt_rejects_misordered_levels():
    g = random_element(random.Random(6), 3)
    parts = [project(g, l) for l in range(3)]
    with pytest.raises(ValueError):
        crt_reconstruct(parts[::-1])


def test_large_products_cross_check():
    # products big enough to engage the fast integer convolution
    rng = random.Random(7)
    K = 7
    n = 1 << K
    a = make_element(K, [rng.randrange(-10**9, 10**9) for _ in range(n)])
    b = make_element(K, [rng.randrange(-10**9, 10**9) for _ in range(n)])
    ab = a * b
    # fold the schoolbook product by hand
    acc = [Fraction(0)] * n
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs):
            acc[(i + j) % n] += ca * cb
    assert ab == make_element(K, acc)


def test_evaluate_at_f_squared_matches_dense_route():
    q = [1, 3, 1]
    for K in (3, 4):
        f = element_f(K)
        fsq = f * f
        for k in (1, 3):
            fpk = element_f_prime(K, k)
            qf = make_element(K, [])
            for c in reversed(q):
                qf = qf * fsq + make_element(K, [c])
            for m in (1, 2):
                want = 8 * fpk * f ** m * qf
                got = evaluate_at_f_squared(q, K, k, "odd", m)
                assert got == want
            want = 8 * fpk * (fsq - one(K)) * qf
            assert evaluate_at_f_squared(q, K, k, "even") == want
            scaled = evaluate_at_f_squared(
                q, K, k, "odd", 1, times_one_minus_chi=3
            )
            assert scaled == 8 * fpk * f * qf * (one(K) - chi(K)) ** 3


def test_evaluate_at_f_squared_validates_arguments():
    with pytest.raises(ValueError):
        evaluate_at_f_squared([1], 3, 1, "odd", 3)
    with pytest.raises(ValueError):
        evaluate_at_f_squared([1], 3, 1, "even", 1)
    with pytest.raises(ValueError):
        evaluate_at_f_squared([1], 3, 1, "cyclic")
    with pytest.raises(ValueError):
        evaluate_at_f_squared([1], 3, 1, "odd", 1, times_one_minus_chi=-1)
    with pytest.raises(ValueError):
        evaluate_at_f_squared([Fraction(1, 2)], 3, 1)


def test_text_round_trip():
    rng = random.Random(8)
    for K in (1, 2, 3):
        for _ in range(20):
            g = make_element(
                K,
                [
                    Fraction(rng.randrange(-20, 21), rng.randrange(1, 9))
                    for _ in range(1 << K)
                ],
            )
            assert element_from_text(element_to_text(g)) == g
    assert element_to_text(make_element(2, [1, Fraction(1, 2)])) \
        == "K=2; 1,1/2,0"


def test_text_parse_rejects_malformed_input():
    for bad in (
        "K=0; 1",
        "K=2; 1,2",
        "K=2; 1,2,3,4",
        "K=2; 1,2,x",
        "K=2; 1,1/0,0",
        "K=2; 1, 2, 3",
        "2; 1,2,3",
    ):
        with pytest.raises(ValueError):
            element_from_text(bad)
