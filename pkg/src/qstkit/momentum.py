"""Closed-form deformed momentum groups.

Each space-time's momenta compose through a non-abelian group law ("⊞")
obtained by exponentiating the coordinate algebra.  This module ships the
closed forms for the four presets plus the commutative group, their Haar
weights, modular functions and Jacobians, the right<->sum ordering
transform for kappa-Minkowski, the non-planar delta solver and a truncated
BCH composition that serves as the independent oracle for the closed
forms and as the generic-group fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .liestructure import MOYAL_PHASE_CONVENTIONS, StructureConstants, preset

SERIES_CUT = 1e-4  # switch point for removable singularities


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GroupDescriptor:
    """A momentum group: composition, inverse, Haar weights, modular function."""

    name: str
    dim: int
    structure: Optional[StructureConstants]
    add: Callable
    inv: Callable
    haar_left: Callable
    haar_right: Callable
    modular: Callable
    unimodular: bool
    ordering: Optional[str] = None
    jac_left: Optional[Callable] = None   # |det d(q+p)/dp|
    jac_right: Optional[Callable] = None  # |det d(p+q)/dp|
    exact_hessian: Optional[Callable] = None
    meta: dict = field(default_factory=dict, compare=False)

    def check_dim(self, *vecs):
        for v in vecs:
            if np.shape(v) != (self.dim,):
                raise DimensionMismatch(
                    f"{self.name}: expected momentum of length {self.dim}, got shape {np.shape(v)}"
                )
            if not np.all(np.isfinite(np.asarray(v, dtype=complex))):
                raise ValueError(f"{self.name}: momentum entries must be finite")


def add(g: GroupDescriptor, p, q):
    g.check_dim(p, q)
    return g.add(np.asarray(p), np.asarray(q))


def inv(g: GroupDescriptor, p):
    g.check_dim(p)
    return g.inv(np.asarray(p))


def modular(g: GroupDescriptor, p):
    g.check_dim(p)
    return g.modular(np.asarray(p))


# ---------------------------------------------------------------------------
# series-protected special functions

def g_right_to_sum(x):
    """g(x) = x / (1 - e^{-x}) with the removable singularity at 0."""
    x = float(x)
    if abs(x) < SERIES_CUT:
        # Taylor to order 4 (the x^3 coefficient vanishes)
        return 1.0 + x / 2 + x * x / 12 - x ** 4 / 720
    return x / (1.0 - math.exp(-x))


def _h_exp(x):
    """(e^x - 1)/x, series-protected."""
    if abs(x) < SERIES_CUT:
        return 1.0 + x / 2 + x * x / 6 + x ** 3 / 24 + x ** 4 / 120
    return math.expm1(x) / x


def _h_mexp(x):
    """(1 - e^{-x})/x, series-protected."""
    if abs(x) < SERIES_CUT:
        return 1.0 - x / 2 + x * x / 6 - x ** 3 / 24 + x ** 4 / 120
    return -math.expm1(-x) / x


# ---------------------------------------------------------------------------
# preset group laws

def _kappa_group(kappa: float, d: int) -> GroupDescriptor:
    sc = preset("kappa_minkowski", kappa=kappa, d=d)
    n = d + 1

    def kadd(p, q):
        out = np.array(p, dtype=float)
        out[0] = p[0] + q[0]
        out[1:] = p[1:] + math.exp(-p[0] / kappa) * np.asarray(q[1:])
        return out

    def kinv(p):
        out = np.empty(n)
        out[0] = -p[0]
        out[1:] = -math.exp(p[0] / kappa) * np.asarray(p[1:])
        return out

    def wl(p):
        return math.exp(d * p[0] / kappa)

    def wr(p):
        return 1.0

    def mod(p):
        return math.exp(d * p[0] / kappa)

    def hess():
        H = np.zeros((n, n, n), dtype=complex)
        for j in range(1, n):
            H[0, j, j] = -1.0 / kappa
        return H

    return GroupDescriptor(
        name="kappa_minkowski", dim=n, structure=sc,
        add=kadd, inv=kinv, haar_left=wl, haar_right=wr, modular=mod,
        unimodular=False, ordering="right",
        jac_left=lambda q, p: math.exp(-d * q[0] / kappa),
        jac_right=lambda p, q: 1.0,
        exact_hessian=hess,
        meta={"kappa": kappa, "d": d},
    )


def _kappa_sum_group(kappa: float, d: int) -> GroupDescriptor:
    """kappa-Minkowski in the sum (symmetric) wave-packet ordering."""
    sc = preset("kappa_minkowski", kappa=kappa, d=d)
    n = d + 1

    def sadd(p, q):
        s = p[0] + q[0]
        pref = math.exp(-p[0] / kappa) * g_right_to_sum(s / kappa)
        hp = _h_exp(p[0] / kappa)
        hq = _h_mexp(q[0] / kappa)
        return pref * (hp * np.asarray(p, float) + hq * np.asarray(q, float))

    def sinv(p):
        return -np.asarray(p, float)

    def mod(p):
        return math.exp(d * p[0] / kappa)

    def wl(p):
        # |(1 - e^{p0/kappa})/p0|^d; the printed expression is negative for
        # p0 > 0, the absolute value is taken.
        return abs(_h_exp(p[0] / kappa) / kappa) ** d

    def wr(p):
        return wl(p) / mod(p)

    return GroupDescriptor(
        name="kappa_minkowski_sum", dim=n, structure=sc,
        add=sadd, inv=sinv, haar_left=wl, haar_right=wr, modular=mod,
        unimodular=False, ordering="sum",
        meta={"kappa": kappa, "d": d},
    )


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def _rho_group(rho: float) -> GroupDescriptor:
    sc = preset("rho_minkowski", rho=rho)

    def radd(p, q):
        out = np.empty(4)
        out[0] = p[0] + q[0]
        out[1:3] = np.asarray(p[1:3]) + _rotation(rho * p[0]) @ np.asarray(q[1:3])
        out[3] = p[3] + q[3]
        return out

    def rinv(p):
        out = np.empty(4)
        out[0] = -p[0]
        out[1:3] = -_rotation(-rho * p[0]) @ np.asarray(p[1:3])
        out[3] = -p[3]
        return out

    def one(p):
        return 1.0

    def hess():
        H = np.zeros((4, 4, 4), dtype=complex)
        # d^2 (p+q)_1,2 / dp0 dq_j of R(rho p0) q at 0
        H[0, 1, 2] = rho
        H[0, 2, 1] = -rho
        return H

    return GroupDescriptor(
        name="rho_minkowski", dim=4, structure=sc,
        add=radd, inv=rinv, haar_left=one, haar_right=one, modular=one,
        unimodular=True,
        jac_left=lambda q, p: 1.0, jac_right=lambda p, q: 1.0,
        exact_hessian=hess,
        meta={"rho": rho},
    )


def _moyal_group(theta: float, dim: int = 5, phase_convention: str = "weyl") -> GroupDescriptor:
    sc = preset("moyal_extended", theta=theta, dim=dim, phase_convention=phase_convention)
    Theta = sc.meta["Theta"]
    c = MOYAL_PHASE_CONVENTIONS[phase_convention]
    ns = dim - 1
    cplx = isinstance(c, complex) and c.imag != 0

    def madd(p, q):
        p = np.asarray(p)
        q = np.asarray(q)
        out = np.array(p + q, dtype=complex if (cplx or np.iscomplexobj(p) or np.iscomplexobj(q)) else float)
        out[ns] = p[ns] + q[ns] + c * float(np.real(np.asarray(p[:ns])) @ Theta @ np.real(np.asarray(q[:ns])))
        return out

    def minv(p):
        return -np.asarray(p)

    def one(p):
        return 1.0

    def hess():
        H = np.zeros((dim, dim, dim), dtype=complex)
        H[:ns, :ns, ns] = c * Theta
        return H

    return GroupDescriptor(
        name="moyal_extended", dim=dim, structure=sc,
        add=madd, inv=minv, haar_left=one, haar_right=one, modular=one,
        unimodular=True,
        jac_left=lambda q, p: 1.0, jac_right=lambda p, q: 1.0,
        exact_hessian=hess,
        meta={"theta": theta, "Theta": Theta, "phase_convention": phase_convention},
    )


def _su2_group(lam: float) -> GroupDescriptor:
    sc = preset("su2_lambda", lam=lam)

    def sadd(p, q):
        p = np.asarray(p, float)
        q = np.asarray(q, float)
        np_, nq = np.linalg.norm(p), np.linalg.norm(q)
        a0, b0 = math.cos(lam * np_ / 2), math.cos(lam * nq / 2)
        av = (math.sin(lam * np_ / 2) / np_) * p if np_ > 0 else np.zeros(3)
        bv = (math.sin(lam * nq / 2) / nq) * q if nq > 0 else np.zeros(3)
        r0 = a0 * b0 - av @ bv
        rv = a0 * bv + b0 * av - np.cross(av, bv)
        nr = np.linalg.norm(rv)
        if nr < 1e-300:
            return np.zeros(3)
        angle = math.atan2(nr, r0)  # in [0, pi]
        return (2 * angle / lam) * rv / nr

    def sinv(p):
        return -np.asarray(p, float)

    def w(p):
        x = lam * np.linalg.norm(p) / 2
        if abs(x) < SERIES_CUT:
            s = 1.0 - x * x / 6 + x ** 4 / 120
        else:
            s = math.sin(x) / x
        return s * s

    def one(p):
        return 1.0

    return GroupDescriptor(
        name="su2_lambda", dim=3, structure=sc,
        add=sadd, inv=sinv, haar_left=w, haar_right=w, modular=one,
        unimodular=True,
        meta={"lam": lam},
    )


def _commutative_group(dim: int) -> GroupDescriptor:
    C = np.zeros((dim, dim, dim), dtype=complex)
    sc = StructureConstants("commutative", dim, 0.0, C)

    def one(p):
        return 1.0

    return GroupDescriptor(
        name="commutative", dim=dim, structure=sc,
        add=lambda p, q: np.asarray(p) + np.asarray(q),
        inv=lambda p: -np.asarray(p),
        haar_left=one, haar_right=one, modular=one,
        unimodular=True,
        jac_left=lambda q, p: 1.0, jac_right=lambda p, q: 1.0,
        exact_hessian=lambda: np.zeros((dim, dim, dim), dtype=complex),
        meta={},
    )


def group_preset(name: str, *, kappa=1.0, theta=1.0, rho=1.0, lam=1.0, d=1,
                 dim=None, ordering="right", phase_convention="weyl") -> GroupDescriptor:
    """Build the momentum group of a named space-time preset."""
    if name == "kappa_minkowski":
        if ordering == "right":
            return _kappa_group(float(kappa), int(d))
        if ordering == "sum":
            return _kappa_sum_group(float(kappa), int(d))
        raise ValueError(f"unknown kappa ordering {ordering!r}")
    if name == "rho_minkowski":
        return _rho_group(float(rho))
    if name == "moyal_extended":
        return _moyal_group(float(theta), 5 if dim is None else int(dim), phase_convention)
    if name == "su2_lambda":
        return _su2_group(float(lam))
    if name == "commutative":
        return _commutative_group(4 if dim is None else int(dim))
    raise ValueError(f"unknown group preset {name!r}")


# ---------------------------------------------------------------------------
# batched composition (vectorized closed forms, for large random sweeps)

def add_batch(g: GroupDescriptor, P, Q) -> np.ndarray:
    """Row-wise p ⊞ q for arrays of momenta, shape (n, dim)."""
    P = np.asarray(P)
    Q = np.asarray(Q)
    if P.shape != Q.shape or P.ndim != 2 or P.shape[1] != g.dim:
        raise DimensionMismatch("add_batch needs matching (n, dim) arrays")
    name = g.name
    if name == "kappa_minkowski":
        kappa = g.meta["kappa"]
        out = np.empty_like(P, dtype=float)
        out[:, 0] = P[:, 0] + Q[:, 0]
        out[:, 1:] = P[:, 1:] + np.exp(-P[:, 0] / kappa)[:, None] * Q[:, 1:]
        return out
    if name == "kappa_minkowski_sum":
        kappa = g.meta["kappa"]
        s = P[:, 0] + Q[:, 0]
        gv = np.array([g_right_to_sum(x) for x in s / kappa])
        hp = np.array([_h_exp(x) for x in P[:, 0] / kappa])
        hq = np.array([_h_mexp(x) for x in Q[:, 0] / kappa])
        pref = np.exp(-P[:, 0] / kappa) * gv
        return pref[:, None] * (hp[:, None] * P + hq[:, None] * Q)
    if name == "rho_minkowski":
        rho = g.meta["rho"]
        c = np.cos(rho * P[:, 0])
        s = np.sin(rho * P[:, 0])
        out = np.empty_like(P, dtype=float)
        out[:, 0] = P[:, 0] + Q[:, 0]
        out[:, 1] = P[:, 1] + c * Q[:, 1] - s * Q[:, 2]
        out[:, 2] = P[:, 2] + s * Q[:, 1] + c * Q[:, 2]
        out[:, 3] = P[:, 3] + Q[:, 3]
        return out
    if name == "moyal_extended":
        Theta = g.meta["Theta"]
        from .liestructure import MOYAL_PHASE_CONVENTIONS
        c = MOYAL_PHASE_CONVENTIONS[g.meta["phase_convention"]]
        ns = g.dim - 1
        out = np.array(P + Q, dtype=complex if isinstance(c, complex) else float)
        out[:, ns] += c * np.einsum("im,mn,in->i", np.real(P[:, :ns]), Theta, np.real(Q[:, :ns]))
        return out
    if name == "su2_lambda":
        lam = g.meta["lam"]
        npn = np.linalg.norm(P, axis=1)
        nqn = np.linalg.norm(Q, axis=1)
        a0 = np.cos(lam * npn / 2)
        b0 = np.cos(lam * nqn / 2)
        with np.errstate(invalid="ignore", divide="ignore"):
            av = np.where(npn[:, None] > 0, np.sin(lam * npn / 2)[:, None] * P / npn[:, None], 0.0)
            bv = np.where(nqn[:, None] > 0, np.sin(lam * nqn / 2)[:, None] * Q / nqn[:, None], 0.0)
        r0 = a0 * b0 - np.einsum("ij,ij->i", av, bv)
        rv = a0[:, None] * bv + b0[:, None] * av - np.cross(av, bv)
        nr = np.linalg.norm(rv, axis=1)
        angle = np.arctan2(nr, r0)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(nr[:, None] > 1e-300, (2 * angle / lam)[:, None] * rv / nr[:, None], 0.0)
        return out
    if name == "commutative":
        return P + Q
    return np.stack([np.asarray(g.add(p, q)) for p, q in zip(P, Q)])


def inv_batch(g: GroupDescriptor, P) -> np.ndarray:
    """Row-wise ⊟p for an array of momenta."""
    P = np.asarray(P)
    if g.name == "kappa_minkowski":
        kappa = g.meta["kappa"]
        out = np.empty_like(P, dtype=float)
        out[:, 0] = -P[:, 0]
        out[:, 1:] = -np.exp(P[:, 0] / kappa)[:, None] * P[:, 1:]
        return out
    if g.name == "rho_minkowski":
        rho = g.meta["rho"]
        c = np.cos(rho * P[:, 0])
        s = np.sin(rho * P[:, 0])
        out = np.empty_like(P, dtype=float)
        out[:, 0] = -P[:, 0]
        out[:, 1] = -(c * P[:, 1] + s * P[:, 2])
        out[:, 2] = -(-s * P[:, 1] + c * P[:, 2])
        out[:, 3] = -P[:, 3]
        return out
    if g.name in ("moyal_extended", "su2_lambda", "commutative", "kappa_minkowski_sum"):
        return -P
    return np.stack([np.asarray(g.inv(p)) for p in P])


# ---------------------------------------------------------------------------
# Haar invariance (pointwise Jacobian form)

def _fd_jacobian_det(f, x, h=1e-5):
    x = np.asarray(x, float)
    n = x.size
    J = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        J[:, j] = (np.real(f(x + e)) - np.real(f(x - e))) / (2 * h)
    return abs(float(np.linalg.det(J)))


def haar_invariance_check(g: GroupDescriptor, q, p, side="left", weight=None) -> float:
    """Pointwise Jacobian residual of Haar invariance.

    left : |w(p) - w(q [+] p) * |det d(q [+] p)/dp||
    right: |w(p) - w(p [+] q) * |det d(p [+] q)/dp||
    A weight override lets corrupted densities be probed.
    """
    g.check_dim(p, q)
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    if side == "left":
        w = weight if weight is not None else g.haar_left
        shifted = g.add(q, p)
        if g.jac_left is not None:
            det = g.jac_left(q, p)
        else:
            det = _fd_jacobian_det(lambda x: g.add(q, x), p)
        return abs(w(p) - w(shifted) * det)
    if side == "right":
        w = weight if weight is not None else g.haar_right
        shifted = g.add(p, q)
        if g.jac_right is not None:
            det = g.jac_right(p, q)
        else:
            det = _fd_jacobian_det(lambda x: g.add(x, q), p)
        return abs(w(p) - w(shifted) * det)
    raise ValueError("side must be 'left' or 'right'")


def modular_identity_residuals(g: GroupDescriptor, p, q) -> dict:
    """Relative residuals of Delta(p+q) = Delta(p)Delta(q), Delta(-p) = 1/Delta(p), Delta(0) = 1."""
    g.check_dim(p, q)
    prod = g.modular(p) * g.modular(q)
    r1 = abs(g.modular(g.add(p, q)) - prod) / (1.0 + abs(prod))
    r2 = abs(g.modular(g.inv(p)) - 1.0 / g.modular(p)) / (1.0 + 1.0 / g.modular(p))
    r3 = abs(g.modular(np.zeros(g.dim)) - 1.0)
    return {"homomorphism": r1, "inverse": r2, "identity": r3}


# ---------------------------------------------------------------------------
# ordering transform (kappa-Minkowski right <-> sum)

def ordering_transform(p, kappa: float, direction: str) -> np.ndarray:
    """phi(p) = (p0, g(p0/kappa) p_j) intertwines the right and sum laws."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    p = np.asarray(p, float)
    out = np.array(p)
    gv = g_right_to_sum(p[0] / kappa)
    if direction == "right_to_sum":
        out[1:] = gv * p[1:]
    elif direction == "sum_to_right":
        out[1:] = p[1:] / gv
    else:
        raise ValueError("direction must be 'right_to_sum' or 'sum_to_right'")
    return out


# ---------------------------------------------------------------------------
# non-planar delta solver

@dataclass
class DeltaSolveResult:
    ok: bool
    k: Optional[np.ndarray]
    residual: float
    reason: str = ""


def nonplanar_residual(g: GroupDescriptor, p, q, k) -> np.ndarray:
    """p [+] k [+] q [+] (-k), the argument of the non-planar delta."""
    return g.add(g.add(g.add(p, k), q), g.inv(k))


def delta_solve_nonplanar(g: GroupDescriptor, p, q, k0: float = 0.0,
                          tol: float = 1e-10, max_iter: int = 60) -> DeltaSolveResult:
    """Solve p [+] k [+] q [-] k = 0 for the spatial part of k at fixed k0."""
    g.check_dim(p, q)
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    n = g.dim
    if np.allclose(p, 0) and np.allclose(q, 0):
        k = np.zeros(n)
        k[0] = k0
        return DeltaSolveResult(True, k, 0.0, "trivial")

    if g.name == "kappa_minkowski":
        kappa = g.meta["kappa"]
        if abs(p[0] + q[0]) > tol:
            return DeltaSolveResult(False, None, abs(p[0] + q[0]),
                                    "energy component p0+q0 is constant in k and nonzero")
        denom = 1.0 - math.exp(-p[0] / kappa)
        if abs(denom) < 1e-14:
            r = p[1:] + math.exp(-(p[0] + k0) / kappa) * q[1:]
            if np.max(np.abs(r)) < tol:
                k = np.zeros(n)
                k[0] = k0
                return DeltaSolveResult(True, k, 0.0, "degenerate p0=0, residual already zero")
            return DeltaSolveResult(False, None, float(np.max(np.abs(r))),
                                    "p0=0 makes the spatial residual k-independent and nonzero")
        k = np.zeros(n)
        k[0] = k0
        k[1:] = (p[1:] + math.exp(-(p[0] + k0) / kappa) * q[1:]) / denom
        res = float(np.max(np.abs(nonplanar_residual(g, p, q, k))))
        return DeltaSolveResult(res < tol, k, res, "closed form")

    # general path: damped Newton on the spatial components at fixed k0
    def resid(kspat):
        k = np.concatenate(([k0], kspat))
        return np.real(nonplanar_residual(g, p, q, k))

    k_full0 = np.zeros(n)
    k_full0[0] = k0
    r0 = resid(np.zeros(n - 1))
    if abs(r0[0]) > tol and g.name in ("rho_minkowski", "commutative"):
        return DeltaSolveResult(False, None, abs(r0[0]),
                                "energy component is constant in k and nonzero")
    kspat = np.zeros(n - 1)
    h = 1e-6
    for _ in range(max_iter):
        r = resid(kspat)
        if np.max(np.abs(r)) < tol:
            k = np.concatenate(([k0], kspat))
            return DeltaSolveResult(True, k, float(np.max(np.abs(r))), "newton")
        J = np.empty((n, n - 1))
        for j in range(n - 1):
            e = np.zeros(n - 1)
            e[j] = h
            J[:, j] = (resid(kspat + e) - resid(kspat - e)) / (2 * h)
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        lam = 1.0
        best = np.max(np.abs(r))
        while lam > 1e-6:
            trial = kspat + lam * step
            if np.max(np.abs(resid(trial))) < best:
                kspat = trial
                break
            lam /= 2
        else:
            return DeltaSolveResult(False, None, float(best), "newton stalled")
    return DeltaSolveResult(False, None, float(np.max(np.abs(resid(kspat)))),
                            "newton did not converge")


# ---------------------------------------------------------------------------
# dispersion relations

def dispersion(choice: str, E: float, kappa: float) -> float:
    """|p|^2 for the two kinetic-generator choices (truncated at printed order)."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if choice == "P":
        return E * E
    if choice == "X":
        return E * E - E ** 3 / kappa
    raise ValueError("choice must be 'P' or 'X'")


# ---------------------------------------------------------------------------
# truncated BCH composition -- generic groups, and the oracle

# B_{2p}/(2p)! for the classical BCH recursion
_BCH_K2P = {
    2: 1.0 / 12,
    4: -1.0 / 720,
    6: 1.0 / 30240,
    8: -1.0 / 1209600,
    10: 1.0 / 47900160,
    12: -691.0 / 1307674368000,
}


def _compositions(n, k):
    """Ordered tuples of k positive integers summing to n."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def bch_compose(C: np.ndarray, p, q, order: int = 8):
    """p [+] q from the structure constants alone, via the truncated BCH series.

    Composes exp(i p.x) exp(i q.x) in the Lie algebra [x^m, x^n] = C^{mn}_r x^r
    using the Bernoulli-number recursion for the graded pieces z_n; this is
    the symmetric (sum-type) wave-packet ordering.
    """
    C = np.asarray(C, dtype=complex)
    dim = C.shape[0]
    A = 1j * np.asarray(p, dtype=complex)
    B = 1j * np.asarray(q, dtype=complex)

    def bracket(u, v):
        return np.einsum("m,n,mnr->r", u, v, C)

    z = [np.zeros(dim, dtype=complex), A + B]
    for n in range(1, order):
        acc = 0.5 * bracket(A - B, z[n])
        for twop in range(2, n + 1, 2):
            coeff = _BCH_K2P.get(twop)
            if coeff is None:
                break
            for comp in _compositions(n, twop):
                w = A + B
                for k in reversed(comp):
                    w = bracket(z[k], w)
                if np.any(w):
                    acc = acc + coeff * w
        z.append(acc / (n + 1))
    out = sum(z[1:]) / 1j
    if np.max(np.abs(out.imag)) < 1e-12 * (1 + np.max(np.abs(out.real))):
        return out.real
    return out


def group_from_structure(sc: StructureConstants, order: int = 8) -> GroupDescriptor:
    """Generic group law from structure constants via the truncated BCH series."""

    def gadd(p, q):
        return bch_compose(sc.C, p, q, order=order)

    def one(p):
        return 1.0

    return GroupDescriptor(
        name=f"bch:{sc.name}", dim=sc.dim, structure=sc,
        add=gadd, inv=lambda p: -np.asarray(p),
        haar_left=one, haar_right=one, modular=one,
        unimodular=True, meta={"order": order},
    )
