import math

import numpy as np
import pytest

from qstkit import moyal_matrix as MM


def test_basis_product_rule():
    assert MM.basis_product(0, 1, 1, 2, 1.0, 8).m == 0
    assert MM.basis_product(0, 1, 1, 2, 1.0, 8).n == 2
    assert MM.basis_product(0, 1, 0, 2, 1.0, 8) is None  # delta_{10} = 0


def test_basis_product_matrix_form():
    N = 8
    a = MM.basis_element(0, 1, 1.0, N)
    b = MM.basis_element(1, 2, 1.0, N)
    prod = MM.star(a, b)
    assert np.array_equal(prod.coeff, MM.basis_element(0, 2, 1.0, N).coeff)
    zero = MM.star(a, MM.basis_element(0, 2, 1.0, N))
    assert np.all(zero.coeff == 0)


def test_involution():
    N = 6
    e = MM.basis_element(2, 4, 1.0, N)
    assert np.array_equal(MM.dagger(e).coeff, MM.basis_element(4, 2, 1.0, N).coeff)


def test_trace_pairing():
    N = 6
    theta = 0.7
    f01 = MM.basis_element(0, 1, theta, N)
    f10 = MM.basis_element(1, 0, theta, N)
    assert MM.trace_pairing(f01, f01) == pytest.approx(2 * math.pi * theta)
    assert MM.trace_pairing(f01, f10) == 0
    rng = np.random.default_rng(0)
    a = MM.TruncatedElement(rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)), theta)
    assert MM.trace_pairing(a, a).real >= 0
    assert abs(MM.trace_pairing(a, a).imag) < 1e-12


def test_truncation_rejected_not_projected():
    with pytest.raises(MM.TruncationError):
        MM.basis_element(8, 0, 1.0, 8)
    with pytest.raises(ValueError):
        MM.star(MM.basis_element(0, 0, 1.0, 4), MM.basis_element(0, 0, 1.0, 8))


def test_partition_check_N32():
    rep = MM.partition_check(32, 1.0)
    assert rep["passed"]
    assert rep["positivity_witness_error"] == 0.0
    assert rep["unity_reconstruction_error"] == 0.0
    assert rep["diagonal_commutation_error"] == 0.0


def test_positivity_witness_rule():
    # f_m0 * f_0m = f_mm via the delta_00 rule
    N = 8
    for m in range(N):
        w = MM.star(MM.basis_element(m, 0, 1.0, N), MM.basis_element(0, m, 1.0, N))
        assert np.array_equal(w.coeff, MM.basis_element(m, m, 1.0, N).coeff)


def test_diagonal_orthogonality():
    N = 8
    f11 = MM.basis_element(1, 1, 1.0, N)
    f22 = MM.basis_element(2, 2, 1.0, N)
    assert np.all(MM.star(f11, f22).coeff == 0)
    assert np.all(MM.star(f22, f11).coeff == 0)


def test_identity_checks_N32():
    rep = MM.identity_checks(32, 1.0)
    assert rep["passed"]
    for key, val in rep.items():
        if key != "passed":
            assert val <= 1e-13
