from fractions import Fraction

import pytest

from bplinks.errors import RefusalError
from bplinks.families import (
    brieskorn_reference,
    exotic_vector,
    fit_exotic_tau,
    gen_exotic,
    gen_odd_dim,
    gen_standard,
)
from bplinks.lattice import tau_kernel
from bplinks.primes import is_prime, primes_in_interval
from bplinks.stability import CONTACT_INCONCLUSIVE, contact_obstruction, k_stability
from bplinks.topology import COND2, classify_sphere


def test_is_prime_small_and_carmichael():
    assert [p for p in range(2, 30) if is_prime(p)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
    ]
    assert not is_prime(561)  # Carmichael number
    assert not is_prime(1)
    assert is_prime(2**61 - 1)


def test_primes_in_interval_open_rational_bounds():
    assert primes_in_interval(Fraction(303, 8), Fraction(101, 2)) == [41, 43, 47]
    assert primes_in_interval(2, 3) == []  # endpoints excluded


def test_gen_odd_dim_examples():
    spec = gen_odd_dim(2, 101)
    assert spec.vector == (2, 2, 82, 86, 94, 101)
    assert spec.expectations["kervaire"] is True
    assert spec.expectations["se_metric"] is True

    spec = gen_odd_dim(2, 103)
    assert spec.expectations["kervaire"] is False
    assert spec.expectations["se_metric"] is True


def test_gen_odd_dim_refuses_when_primes_run_out():
    with pytest.raises(RefusalError):
        gen_odd_dim(2, 7)  # interval too narrow to hold three primes


def test_gen_standard_example():
    spec = gen_standard(2, 448)  # k = 448 = 16 * 28 forces a standard sphere
    assert spec.vector == (3, 3, 3, 1345, 4034)
    assert spec.expectations["expected_class_zero"] is True

    spec = gen_standard(3, 448)  # modulus 992 needs 16 * 992 | k instead
    assert spec.expectations["expected_class_zero"] is False


def test_gen_exotic_example():
    spec = gen_exotic(2, 1, 3, 56)
    assert spec.vector == (2, 2, 338, 339, 341)
    assert spec.expectations["target_class"] == 1
    assert spec.derived["m_divides_index"] is False


def test_gen_exotic_refuses_small_p():
    # q = 1 gives p = 8; for m = 5 (n = 10) the inequality fails
    with pytest.raises(RefusalError):
        gen_exotic(5, 1, 3, 1)


def test_gen_exotic_validates_l():
    with pytest.raises(ValueError):
        gen_exotic(2, 1, 4, 1)  # l must be 6k-3 or 6k-1


def test_exotic_vector_shape():
    assert exotic_vector(6, 8, 3) == (2, 2, 8, 8, 8, 9, 11)
    with pytest.raises(ValueError):
        exotic_vector(5, 8, 3)


def test_brieskorn_reference_examples():
    spec = brieskorn_reference(2, 1, -1)
    assert spec.vector == (2, 2, 2, 3, 5)
    assert spec.expectations["expected_tau"] == 8

    spec = brieskorn_reference(2, 2, -1)
    assert spec.vector == (2, 2, 2, 3, 11)
    assert spec.expectations["expected_tau"] == 16

    spec = brieskorn_reference(3, 1, 1)
    assert spec.vector == (2, 2, 2, 2, 2, 3, 7)
    assert spec.expectations["expected_tau"] == -8


def test_generated_members_are_stable_spheres():
    members = [
        gen_odd_dim(2, 101),
        gen_odd_dim(3, 1009),
        gen_standard(2, 2),
        gen_standard(3, 2),
        gen_exotic(2, 1, 3, 1),
        gen_exotic(3, 1, 5, 1),
        gen_exotic(2, 2, 9, 1),
    ]
    for spec in members:
        assert classify_sphere(spec.vector).is_homotopy_sphere, spec.vector
        assert k_stability(spec.vector).se_metric_exists, spec.vector


def test_odd_dim_members_satisfy_condition_two():
    for p_n in (101, 103, 211):
        spec = gen_odd_dim(2, p_n)
        assert classify_sphere(spec.vector).condition == COND2


def test_exotic_contact_obstruction_when_l_chosen_well():
    # picking l in {6k-3, 6k-1} so that m does not divide the index makes
    # the contact obstruction conclusive
    for m in (2, 3, 4, 5):
        for k in (1, 2, 3):
            chosen = None
            for l in (6 * k - 3, 6 * k - 1):
                for q in (1, 2, 3):
                    try:
                        spec = gen_exotic(m, k, l, q)
                    except RefusalError:
                        continue
                    if not spec.derived["m_divides_index"]:
                        chosen = spec
                        break
                if chosen:
                    break
            assert chosen is not None, (m, k)
            assert contact_obstruction(chosen.vector) != CONTACT_INCONCLUSIVE


def test_fit_exotic_tau_desk_scale():
    fit = fit_exotic_tau(2, 1, 3, samples=7, verify=3)
    assert fit.qp.period == 6
    assert [p for _, p, _ in fit.samples] == [8, 14, 20, 26, 32, 38, 44]
    assert fit.degree_used <= 4
    assert fit.verify is not None
    for p, predicted, actual in fit.verify:
        assert predicted == actual, p
    # spot values against the kernel directly
    assert dict((p, t) for _, p, t in fit.samples)[8] == tau_kernel((2, 2, 8, 9, 11)).tau
