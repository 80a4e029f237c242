import itertools
import random
from fractions import Fraction
from math import gcd

import pytest

from bplinks.errors import InvariantViolation
from bplinks.moduli import (
    exotic_weights,
    maslov_index,
    mean_euler,
    moduli_dimension,
    weighted_monomial_count,
)
from bplinks.stability import k_stability
from bplinks.families import exotic_vector


def brute_weighted_count(weights, degree):
    total = 0
    ranges = [range(degree // w + 1) for w in weights]
    for es in itertools.product(*ranges):
        if sum(w * e for w, e in zip(weights, es)) == degree:
            total += 1
    return total


def test_weighted_monomial_count_small():
    assert weighted_monomial_count((1, 2, 3), 6) == brute_weighted_count((1, 2, 3), 6)
    assert weighted_monomial_count((5,), 4) == 0
    assert weighted_monomial_count((2, 3), 1) == 0
    assert weighted_monomial_count((1,), 0) == 1


def test_weighted_monomial_count_random_against_brute():
    rng = random.Random(3)
    for _ in range(60):
        k = rng.randint(1, 4)
        weights = tuple(rng.randint(1, 7) for _ in range(k))
        degree = rng.randint(0, 25)
        assert weighted_monomial_count(weights, degree) == brute_weighted_count(
            weights, degree
        ), (weights, degree)


def test_exotic_weights_shape():
    weights, d = exotic_weights(6, 8, 3)
    assert d == 8 * 9 * 11 == 792
    assert weights == (396, 396, 99, 99, 99, 88, 72)


def test_moduli_dimension_example():
    dim = moduli_dimension(6, 8, 3)
    assert dim.h0_d == 80
    assert dim.dimension == 35
    assert dim.closed_form == 35
    assert dim.agree


def test_moduli_dimension_matches_closed_form_in_regime():
    for p in (8, 14, 20):
        for n in (6, 8):
            dim = moduli_dimension(n, p, 3)
            assert dim.agree, (n, p)


def test_moduli_dimension_rejects_bad_shape():
    with pytest.raises(ValueError):
        moduli_dimension(6, 9, 3)  # p odd
    with pytest.raises(ValueError):
        moduli_dimension(6, 8, 2)  # gcd(p, l) = 2
    with pytest.raises(ValueError):
        moduli_dimension(4, 8, 3)  # n too small


def test_maslov_index_examples():
    assert maslov_index(6, 8, 3) == 914  # 2(3*99 + 8*20)
    assert maslov_index(4, 10, 3) == 766  # 2(11*13 + 10*24)
    assert maslov_index(6, 2, 1) == 78  # degenerate small-p case still total


def test_maslov_equals_twice_index_invariant():
    rng = random.Random(17)
    checked = 0
    while checked < 100:
        n = rng.choice([4, 6, 8, 10])
        p = rng.randrange(4, 200, 2)
        l = rng.choice([1, 3, 5, 7, 9, 11])
        if gcd(p, l) != 1 or gcd(p + 1, l - 1) != 1:
            continue
        mu = maslov_index(n, p, l)
        stab = k_stability(exotic_vector(n, p, l))
        assert mu == 2 * stab.index_invariant, (n, p, l)
        checked += 1


def test_mean_euler_example_default_model():
    rep = mean_euler(6, 8, 3)
    assert rep.mu_p == 914
    assert rep.phi_2 == 336
    assert tuple(s.frequency for s in rep.strata) == (1, 3, 4, 8, 10, 24, 30, 80, 336)
    assert rep.chi_m == Fraction(-6009, 914)
    assert "approximate" in rep.chi_p_model


def test_mean_euler_custom_chi_polynomial():
    rep = mean_euler(6, 8, 3, chi_p=[0])
    assert rep.chi_m == Fraction(-889, 914)  # removes the 64 * 80 term


def test_mean_euler_degenerate_guard():
    # tiny p: frequencies are computed and any negativity must be flagged,
    # not silently emitted
    try:
        rep = mean_euler(6, 2, 1)
    except InvariantViolation as err:
        assert "frequency" in str(err)
    else:
        assert all(s.frequency >= 0 for s in rep.strata)


def test_frequencies_nonnegative_in_regime():
    for p in range(4, 60, 2):
        for l in (1, 3, 5):
            if gcd(p, l) != 1 or (l > 1 and gcd(p + 1, l - 1) != 1):
                continue
            rep = mean_euler(6, p, l)
            assert all(s.frequency >= 0 for s in rep.strata), (p, l)
            assert rep.phi_2 == p * ((p + 1) * (p + l) - 2 * p - l + 4) // 2
            assert rep.phi_2 >= 0


def test_chi_m_pairwise_distinct_along_p():
    values = []
    for p in range(8, 99, 6):  # p = 8, 14, ..., 98: even, coprime to 3
        rep = mean_euler(6, p, 3)
        values.append(rep.chi_m)
    assert len(set(values)) == len(values)
