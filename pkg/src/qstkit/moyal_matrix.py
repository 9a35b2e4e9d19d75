"""Moyal matrix basis at finite truncation.

In the matrix basis {f_mn} the star product is literally matrix
multiplication: f_mn * f_kl = delta_nk f_ml, f_mn^dagger = f_nm, and the
trace pairing <a, b> = integral of a^dagger * b equals 2 pi theta times the
Frobenius pairing.  At truncation N everything is an N x N complex matrix;
out-of-truncation indices are rejected, never projected, so the algebra
stays exactly associative.  The diagonal family {f_mm} realizes the
noncommutative partition of unity on this algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class TruncationError(IndexError):
    pass


@dataclass(frozen=True)
class MatrixBasisElement:
    m: int
    n: int
    theta: float
    N: int

    def __post_init__(self):
        if not (0 <= self.m < self.N and 0 <= self.n < self.N):
            raise TruncationError(f"indices ({self.m},{self.n}) outside truncation N={self.N}")


@dataclass
class TruncatedElement:
    """N x N coefficient matrix g_mn of an algebra element, with theta."""

    coeff: np.ndarray
    theta: float

    def __post_init__(self):
        self.coeff = np.asarray(self.coeff, dtype=complex)
        if self.coeff.ndim != 2 or self.coeff.shape[0] != self.coeff.shape[1]:
            raise ValueError("coefficient matrix must be square")
        if not np.all(np.isfinite(self.coeff)):
            raise ValueError("coefficients must be finite")

    @property
    def N(self):
        return self.coeff.shape[0]


def basis_element(m: int, n: int, theta: float, N: int) -> TruncatedElement:
    e = MatrixBasisElement(m, n, theta, N)
    c = np.zeros((N, N), dtype=complex)
    c[e.m, e.n] = 1.0
    return TruncatedElement(c, theta)


def basis_product(m: int, n: int, k: int, l: int, theta: float, N: int):
    """f_mn * f_kl = delta_nk f_ml; returns None for the zero product."""
    MatrixBasisElement(m, n, theta, N)
    MatrixBasisElement(k, l, theta, N)
    if n != k:
        return None
    return MatrixBasisElement(m, l, theta, N)


def star(a: TruncatedElement, b: TruncatedElement) -> TruncatedElement:
    if a.N != b.N:
        raise ValueError(f"truncation mismatch: {a.N} vs {b.N}")
    return TruncatedElement(a.coeff @ b.coeff, a.theta)


def dagger(a: TruncatedElement) -> TruncatedElement:
    return TruncatedElement(a.coeff.conj().T, a.theta)


def trace_pairing(a: TruncatedElement, b: TruncatedElement) -> complex:
    """∫ a^dagger * b = 2 pi theta sum_mn conj(a_mn) b_mn."""
    if a.N != b.N:
        raise ValueError("truncation mismatch")
    return 2 * math.pi * a.theta * complex(np.sum(np.conj(a.coeff) * b.coeff))


def partition_check(N: int, theta: float = 1.0, n_samples: int = 4, seed: int = 0) -> dict:
    """Partition-of-unity axioms for the diagonal family {f_mm} at truncation N.

    positivity : f_mm = f_m0 * f_m0^dagger for every m < N
    unity      : sum_m f_mm * g = g for every in-truncation g
    commutation: chi * chi~ = chi~ * chi for diagonal pairs
    Local finiteness is vacuous at finite N.
    """
    rng = np.random.default_rng(seed)
    pos_err = 0.0
    for m in range(N):
        fm0 = basis_element(m, 0, theta, N)
        witness = star(fm0, dagger(fm0))
        fmm = basis_element(m, m, theta, N)
        pos_err = max(pos_err, float(np.max(np.abs(witness.coeff - fmm.coeff))))

    unit_sum = TruncatedElement(np.eye(N, dtype=complex), theta)
    unity_err = 0.0
    for _ in range(n_samples):
        gmat = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
        g = TruncatedElement(gmat, theta)
        unity_err = max(unity_err, float(np.max(np.abs(star(unit_sum, g).coeff - g.coeff))),
                        float(np.max(np.abs(star(g, unit_sum).coeff - g.coeff))))

    comm_err = 0.0
    for m in range(min(N, 6)):
        for n in range(min(N, 6)):
            a = basis_element(m, m, theta, N)
            b = basis_element(n, n, theta, N)
            comm_err = max(comm_err, float(np.max(np.abs(star(a, b).coeff - star(b, a).coeff))))

    return {
        "N": N,
        "positivity_witness_error": pos_err,
        "unity_reconstruction_error": unity_err,
        "diagonal_commutation_error": comm_err,
        "passed": pos_err == 0.0 and unity_err == 0.0 and comm_err == 0.0,
    }


def identity_checks(N: int, theta: float = 1.0, seed: int = 1) -> dict:
    """Product/involution/trace identities of the basis at truncation N."""
    rng = np.random.default_rng(seed)
    errs = {}
    # delta rule on random index quadruples
    e = 0.0
    for _ in range(50):
        m, n, k, l = (int(x) for x in rng.integers(0, N, size=4))
        prod = star(basis_element(m, n, theta, N), basis_element(k, l, theta, N))
        expect = np.zeros((N, N), dtype=complex)
        if n == k:
            expect[m, l] = 1.0
        e = max(e, float(np.max(np.abs(prod.coeff - expect))))
    errs["delta_rule"] = e
    # involution
    e = 0.0
    for _ in range(20):
        m, n = (int(x) for x in rng.integers(0, N, size=2))
        e = max(e, float(np.max(np.abs(dagger(basis_element(m, n, theta, N)).coeff
                                       - basis_element(n, m, theta, N).coeff))))
    errs["involution"] = e
    # orthonormality <f_mn, f_kl> = 2 pi theta delta_mk delta_nl
    e = 0.0
    for _ in range(30):
        m, n, k, l = (int(x) for x in rng.integers(0, N, size=4))
        val = trace_pairing(basis_element(m, n, theta, N), basis_element(k, l, theta, N))
        expect = 2 * math.pi * theta if (m == k and n == l) else 0.0
        e = max(e, abs(val - expect))
    errs["orthonormality"] = e
    # associativity on random triples
    e = 0.0
    for _ in range(10):
        a, b, c = (TruncatedElement(rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)), theta)
                   for _ in range(3))
        lhs = star(star(a, b), c).coeff
        rhs = star(a, star(b, c)).coeff
        scale = max(1.0, float(np.max(np.abs(lhs))))
        e = max(e, float(np.max(np.abs(lhs - rhs))) / scale)
    errs["associativity"] = e
    errs["passed"] = all(v <= 1e-13 for k, v in errs.items() if k != "passed")
    return errs
