from fractions import Fraction

import pytest

from humbert.arith import fundamental_decomposition, kronecker, prime_divisors
from humbert.bqf import class_number, hurwitz
from humbert.shimura import (
    ShimuraLevel,
    cm_point_count,
    local_embedding_count,
    volume_term,
    weighted_class_number,
)

L10 = ShimuraLevel(10, 1)
L11 = ShimuraLevel(1, 1)


def test_level_validation():
    with pytest.raises(ValueError, match="coprime"):
        ShimuraLevel(10, 2)
    with pytest.raises(ValueError, match="squarefree"):
        ShimuraLevel(4, 1)
    with pytest.raises(ValueError, match="even number"):
        ShimuraLevel(2, 1)
    with pytest.raises(ValueError, match="positive"):
        ShimuraLevel(0, 1)
    assert ShimuraLevel(6, 5).product == 30


def test_local_embedding_count_examples():
    assert local_embedding_count(L10, -8, 5) == 2    # 1 - (-8|5) = 1 - (-1)
    assert local_embedding_count(L10, -8, 2) == 1    # (-8|2) = 0
    assert local_embedding_count(L10, -8, 3) == 1    # 3 does not divide DN
    # q | D and q | f: d = -16 = 2^2 * (-4), f = 2, q = 2 | D
    assert local_embedding_count(L10, -16, 2) == 0
    with pytest.raises(ValueError, match="not a discriminant"):
        local_embedding_count(L10, -5, 2)
    with pytest.raises(ValueError, match="prime"):
        local_embedding_count(L10, -8, 6)


def test_local_embedding_count_level_side():
    level = ShimuraLevel(6, 5)
    # q = 5 | N, f = 1: 1 + (d0|5)
    assert local_embedding_count(level, -4, 5) == 1 + kronecker(-4, 5)
    # q = 5 | N and 5 | f: fixed value 2: d = -100 = 5^2 * (-4)
    assert local_embedding_count(level, -100, 5) == 2


def test_cm_point_count():
    assert cm_point_count(L10, -8) == 2
    assert cm_point_count(L10, -3) == 4
    for d in (-3, -4, -8, -20, -23):
        assert cm_point_count(L11, d) == class_number(d)


def test_cm_point_count_vanishes_when_d_ramifies_badly():
    # some q | D divides f
    for d in (-16, -400, -36):
        f = fundamental_decomposition(d)[1]
        if any(f % q == 0 for q in prime_divisors(10)):
            assert cm_point_count(L10, d) == 0


def test_cm_point_count_doubles_at_every_prime():
    # d fundamental with (d|q) = -1 at q | D and (d|q) = +1 at q | N
    level = ShimuraLevel(6, 5)
    for d in range(-3, -400, -1):
        if d % 4 not in (0, 1):
            continue
        if fundamental_decomposition(d)[1] != 1:
            continue
        if kronecker(d, 2) == -1 and kronecker(d, 3) == -1 and kronecker(d, 5) == 1:
            assert cm_point_count(level, d) == class_number(d) * 2**3, d


def test_volume_term():
    assert volume_term(L10) == Fraction(-1, 3)
    assert volume_term(L11) == Fraction(-1, 12)
    assert volume_term(ShimuraLevel(6, 1)) == Fraction(-1, 6)
    assert volume_term(ShimuraLevel(15, 1)) == Fraction(-2, 3)


def test_weighted_class_number_examples():
    assert weighted_class_number(L10, 0) == Fraction(-1, 3)
    assert weighted_class_number(L10, 8) == 1
    assert weighted_class_number(L10, 3) == Fraction(1, 3)
    assert weighted_class_number(L10, Fraction(7, 4)) == 0
    assert weighted_class_number(L10, 2) == 0
    # -7 = 1 mod 8, so (-7|2) = 1 and the local factor at 2 | D vanishes
    assert weighted_class_number(L10, 7) == 0
    with pytest.raises(ValueError, match="negative"):
        weighted_class_number(L10, -1)


def test_weighted_class_number_specializes_to_hurwitz():
    for m in range(0, 501):
        assert weighted_class_number(L11, m) == hurwitz(m), m


def test_weighted_class_number_nonnegative_for_positive_m():
    for m in range(1, 301):
        level = ShimuraLevel(6, 5)
        assert weighted_class_number(level, m) >= 0
        if (-m) % 4 in (2, 3):
            assert weighted_class_number(level, m) == 0
