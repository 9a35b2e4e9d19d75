"""Discretized kappa-Minkowski causality toy model (1+1 dimensions).

States live on a p0 grid; the coordinate operators are x0 = -i d/dp0 and
x1 = a e^{-p0/kappa}.  The module checks the Lorentzian-triple axioms for
the fundamental symmetry and the Dirac block operator, evaluates the
causal-cone quadratic form for linear candidate functions f = alpha x0 +
beta x1 on a seeded family of Gaussian states, and computes the
speed-of-light-analogue margin between two states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-10


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    n: int
    window: float  # p0 in [-W, W)
    scheme: str = "spectral"  # or "central"

    def __post_init__(self):
        if self.n < 16:
            raise GridError("need at least 16 grid points")
        if self.scheme not in ("central", "spectral"):
            raise GridError(f"unknown derivative scheme {self.scheme!r}")

    @property
    def h(self):
        return 2 * self.window / self.n

    def points(self):
        return -self.window + self.h * np.arange(self.n)

    def validate_kappa(self, kappa: float):
        if self.window < 10.0 / kappa:
            raise GridError("window must cover at least 10/kappa")
        if self.scheme == "spectral" and self.h > kappa / 2:
            raise GridError("grid too coarse for e^{-p0/kappa}: spectral aliasing")


def derivative_matrix(grid: GridSpec) -> np.ndarray:
    """Antisymmetric derivative matrix d/dp0 (so -i D is Hermitian)."""
    n, h = grid.n, grid.h
    if grid.scheme == "central":
        # truncated (Dirichlet) central differences: exactly antisymmetric
        D = np.zeros((n, n))
        for i in range(n - 1):
            D[i, i + 1] = 1.0 / (2 * h)
            D[i + 1, i] = -1.0 / (2 * h)
        return D
    # spectral differentiation via the DFT, Nyquist mode zeroed
    k = 2 * math.pi * np.fft.fftfreq(n, d=h)
    if n % 2 == 0:
        k[n // 2] = 0.0
    F = np.fft.fft(np.eye(n), axis=0)
    D = np.real(np.fft.ifft(1j * k[:, None] * F, axis=0))
    return D


def build_operators(grid: GridSpec, kappa: float, a: int = 1) -> dict:
    """x0 = -i D (Hermitian on the grid) and x1 = a diag(e^{-p0/kappa})."""
    if a not in (1, -1):
        raise ValueError("only the a = +/-1 representation branches are implemented")
    grid.validate_kappa(kappa)
    p = grid.points()
    D = derivative_matrix(grid)
    X0 = -1j * D
    X1 = a * np.diag(np.exp(-p / kappa))
    return {"X0": X0, "X1": X1, "p": p, "D": D}


def normalize(psi, grid: GridSpec):
    psi = np.asarray(psi, dtype=complex)
    nrm = math.sqrt(float(np.sum(np.abs(psi) ** 2) * grid.h))
    if nrm == 0:
        raise ValueError("zero state")
    return psi / nrm


def check_normalized(psi, grid: GridSpec):
    nrm = float(np.sum(np.abs(psi) ** 2) * grid.h)
    if abs(nrm - 1.0) > NORM_TOL:
        raise ValueError(f"state not normalized: |psi|^2 h = {nrm}")


def expectation(op, psi, grid: GridSpec) -> complex:
    return complex(np.vdot(psi, op @ psi) * grid.h)


def gaussian_state(grid: GridSpec, center: float, width: float, phase_t: float = 0.0):
    p = grid.points()
    psi = np.exp(-((p - center) ** 2) / (4 * width ** 2)).astype(complex)
    if phase_t:
        psi = psi * np.exp(1j * phase_t * p)
    return normalize(psi, grid)


# ---------------------------------------------------------------------------
# Lorentzian-triple data and axioms

GAMMA0 = np.array([[0, 1j], [1j, 0]])
GAMMA1 = np.array([[0, -1j], [1j, 0]])
FUND_SYM = 1j * GAMMA0  # I = i gamma^0


@dataclass
class DiracData:
    gamma0: np.ndarray = None
    gamma1: np.ndarray = None

    def __post_init__(self):
        self.gamma0 = GAMMA0 if self.gamma0 is None else self.gamma0
        self.gamma1 = GAMMA1 if self.gamma1 is None else self.gamma1

    @property
    def I(self):
        return 1j * self.gamma0


def dirac_operator(grid: GridSpec, kappa: float, a: int = 1) -> np.ndarray:
    """D = [[0, X-],[X+, 0]] with anti-self-adjoint deformed derivations.

    X0 = i kappa(1 - e^{-p0/kappa}) (diagonal, exactly anti-Hermitian; its
    commutative limit is i p0, the Fourier side of d/dx0) and
    X1 = J d/dp0 + J'/2 with J = dp0/dx1 = -(kappa/a) e^{p0/kappa}, the
    symmetrized grid realization of d/dx1 through x1 = a e^{-p0/kappa}.
    The anti-Hermiticity defect of X1 is the discretization error
    J' - [D, J], which decays at the derivative-scheme order.
    """
    ops = build_operators(grid, kappa, a)
    p, D = ops["p"], ops["D"]
    n = grid.n
    X0 = 1j * kappa * np.diag(1.0 - np.exp(-p / kappa))
    J = -(kappa / a) * np.exp(p / kappa)
    X1 = np.diag(J) @ D + 0.5 * np.diag(J / kappa)  # J' = J/kappa
    Xp = X0 + X1
    Xm = X0 - X1
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, n:] = Xm
    out[n:, :n] = Xp
    return out


def lorentzian_axiom_check(grid: GridSpec, kappa: float, a: int = 1,
                           state_family=None, seed: int = 0) -> dict:
    """I^2 = 1 and I^dagger = I exactly; Krein residual ||(D^dag I + I D) Psi||.

    The residual is measured on interior Gaussian states (spinor x grid), so
    boundary rows of the truncated derivative do not mask the interior
    scheme-order behaviour.
    """
    dd = DiracData()
    Imat = dd.I
    i_sq = float(np.max(np.abs(Imat @ Imat - np.eye(2))))
    i_herm = float(np.max(np.abs(Imat.conj().T - Imat)))

    Dop = dirac_operator(grid, kappa, a)
    n = grid.n
    I_big = np.kron(Imat, np.eye(n))
    M = Dop.conj().T @ I_big + I_big @ Dop

    if state_family is None:
        rng = np.random.default_rng(seed)
        state_family = []
        for _ in range(8):
            c = rng.uniform(-grid.window / 4, grid.window / 4)
            w = rng.uniform(0.5, 1.0)
            state_family.append(gaussian_state(grid, c, w))
    worst = 0.0
    for psi in state_family:
        for spinor in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
            big = np.kron(spinor, psi)
            worst = max(worst, float(np.linalg.norm(M @ big) * math.sqrt(grid.h)))
    return {"I_squared_residual": i_sq, "I_hermiticity_residual": i_herm,
            "krein_residual": worst}


# ---------------------------------------------------------------------------
# causal cone for linear candidates f = alpha x0 + beta x1

def cone_kernel(grid: GridSpec, kappa: float, a: int, alpha: float, beta: float,
                branch: int) -> np.ndarray:
    """K_ij = i(1 - e^{-(p_j - p_i)/kappa})(alpha(p_j - p_i) + beta a e^{-p_i/kappa} +- beta).

    The +-beta term (sign-ambiguous spatial-derivative part) sits inside the
    oscillatory factor; both branches are computed and reported separately.
    """
    p = grid.points()
    u = p[None, :] - p[:, None]
    return 1j * (1.0 - np.exp(-u / kappa)) * (
        alpha * u + beta * a * np.exp(-p[:, None] / kappa) + branch * beta
    )


def cone_condition(grid: GridSpec, kappa: float, a: int, alpha: float, beta: float,
                   n_states: int = 200, seed: int = 0, phases: bool = False) -> dict:
    """min over a seeded Gaussian family of Re<psi, K psi>, per +- branch.

    PASS iff both branch margins are >= -1e-8.  The default family varies
    center and width (real states); phases=True adds momentum displacement
    e^{i t p0}, the extended search used to exhibit commutative-limit
    violations for |beta/alpha| > 1 at large kappa.
    """
    grid.validate_kappa(kappa)
    rng = np.random.default_rng(seed)
    states = []
    for _ in range(n_states):
        c = rng.uniform(-grid.window / 2, grid.window / 2)
        w = rng.uniform(0.5, 2.0)
        t = rng.uniform(-2.0, 2.0) if phases else 0.0
        states.append(gaussian_state(grid, c, w, t))
    margins = {}
    for branch in (+1, -1):
        K = cone_kernel(grid, kappa, a, alpha, beta, branch)
        worst = math.inf
        for psi in states:
            val = float(np.real(np.vdot(psi, K @ psi)) * grid.h ** 2)
            worst = min(worst, val)
        margins[branch] = worst
    margin = min(margins.values())
    return {"margin": margin, "branch_margins": margins, "passed": margin >= -1e-8}


def sll_margin(psi1, psi2, grid: GridSpec, kappa: float, a: int = 1) -> float:
    """(<psi2|x0 psi2> - <psi1|x0 psi1>) - |<psi2|x1 psi2> - <psi1|x1 psi1>|."""
    check_normalized(psi1, grid)
    check_normalized(psi2, grid)
    ops = build_operators(grid, kappa, a)
    dx0 = np.real(expectation(ops["X0"], psi2, grid) - expectation(ops["X0"], psi1, grid))
    dx1 = np.real(expectation(ops["X1"], psi2, grid) - expectation(ops["X1"], psi1, grid))
    return float(dx0 - abs(dx1))
