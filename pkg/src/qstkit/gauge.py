"""Twisted gauge structures on kappa-Minkowski plane waves.

The twisted derivations X0 = kappa(1 - E), X_j = P_j obey the E-twisted
Leibniz rule; gauge fields are tuples of wave packets, gauge transforms are
unit-modulus plane waves, and the field strength / covariance / dimension
checks are carried out exactly on packets.  The first-order Seiberg-Witten
map lives in a separate exact-polynomial representation, and the tangent-
space curvature formula works on constant central connection coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

from .liestructure import StructureConstants
from .momentum import GroupDescriptor
from .polyfield import Poly
from .waves import WavePacket, act, dagger, plane_wave, star, unit_wave


def _xop(mu: int, f: WavePacket) -> WavePacket:
    return act("X", f, index=mu)


def _eop(f: WavePacket, power: int = 1) -> WavePacket:
    return act("E", f, power=power)


def twisted_leibniz_residual(mu: int, f: WavePacket, g: WavePacket) -> float:
    """|X_mu(f*g) - X_mu(f)*g - E(f)*X_mu(g)| relative to the terms' scale."""
    lhs = _xop(mu, star(f, g))
    rhs = star(_xop(mu, f), g) + star(_eop(f), _xop(mu, g))
    return (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm())


def twisted_reality_residual(mu: int, f: WavePacket) -> float:
    """|(X_mu f)^dagger + E^{-1} X_mu (f^dagger)| relative to the terms' scale."""
    lhs = dagger(_xop(mu, f))
    rhs = _eop(_xop(mu, dagger(f)), power=-1).scale(-1.0)
    return (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm())


@dataclass
class GaugeField:
    """Components A_mu, one wave packet per space-time direction."""

    components: List[WavePacket]

    def __post_init__(self):
        names = {c.group.name for c in self.components}
        if len(names) != 1:
            raise ValueError("all gauge-field components must share the group")

    @property
    def group(self):
        return self.components[0].group

    @property
    def dim(self):
        return len(self.components)


def unitarity_residual(u: WavePacket) -> float:
    e0 = unit_wave(u.group)
    return max((star(u, dagger(u)) - e0).norm(), (star(dagger(u), u) - e0).norm())


def field_strength(A: GaugeField) -> list:
    """F_mn = X_m(A_n) - X_n(A_m) - i(E(A_m)*A_n - E(A_n)*A_m), antisymmetric."""
    n = A.dim
    F = [[None] * n for _ in range(n)]
    for mu in range(n):
        for nu in range(n):
            if mu == nu:
                F[mu][nu] = WavePacket(A.group)
                continue
            if nu < mu and F[nu][mu] is not None:
                F[mu][nu] = F[nu][mu].scale(-1.0)
                continue
            comm = star(_eop(A.components[mu]), A.components[nu]) - \
                star(_eop(A.components[nu]), A.components[mu])
            F[mu][nu] = _xop(mu, A.components[nu]) - _xop(nu, A.components[mu]) \
                + comm.scale(-1j)
    return F


def gauge_transform(A: GaugeField, u: WavePacket) -> GaugeField:
    """A_mu -> E(u^dagger) * A_mu * u + i E(u^dagger) * X_mu(u).

    The i on the inhomogeneous term is forced by A = i nabla(1) together
    with the -i in the field strength: with it the covariance identity
    F(A^u) = E^2(u^dagger) * F(A) * u closes exactly.
    """
    ud = dagger(u)
    eud = _eop(ud)
    comps = []
    for mu in range(A.dim):
        comps.append(star(star(eud, A.components[mu]), u)
                     + star(eud, _xop(mu, u)).scale(1j))
    return GaugeField(comps)


def covariance_residual(A: GaugeField, u: WavePacket) -> float:
    """|F(A^u) - E^2(u^dagger) * F(A) * u| relative to the F scale."""
    Fu = field_strength(gauge_transform(A, u))
    F = field_strength(A)
    e2ud = _eop(dagger(u), power=2)
    worst = 0.0
    for mu in range(A.dim):
        for nu in range(A.dim):
            target = star(star(e2ud, F[mu][nu]), u)
            worst = max(worst, (Fu[mu][nu] - target).norm() / (1.0 + target.norm()))
    return worst


def hermiticity_residual(A: GaugeField) -> float:
    """|A_mu^dagger - E^{-1}(A_mu)| per component (twisted Hermiticity)."""
    worst = 0.0
    for comp in A.components:
        worst = max(worst, (dagger(comp) - _eop(comp, power=-1)).norm())
    return worst


def twisted_hermitian_wave(group: GroupDescriptor, p) -> WavePacket:
    """e_p + e^{p0/kappa} e_{(-)p}: the minimal twisted-Hermitian packet."""
    kappa = group.meta["kappa"]
    p = np.asarray(p, float)
    return plane_wave(group, p) + plane_wave(group, group.inv(p), math.exp(p[0] / kappa))


def dimension_constraint_scan(d_values, kappa: float, p0_samples) -> dict:
    """max |e^{(4-d) p0/kappa} - 1| per d: zero for every p0 iff d = 4.

    This is the gauge-variation prefactor E^{d-2}(u) * E^2(u^dagger) on a
    plane-wave unitary u = e_p, evaluated exactly.
    """
    rows = {}
    for d in d_values:
        dev = 0.0
        for p0 in p0_samples:
            dev = max(dev, abs(math.exp((4 - d) * p0 / kappa) - 1.0))
        rows[int(d)] = dev
    zero_set = sorted(d for d, dev in rows.items() if dev == 0.0)
    return {"deviations": rows, "zero_set": zero_set}


def prefactor_packet(group: GroupDescriptor, u: WavePacket, d: int) -> WavePacket:
    """E^{d-2}(u) * E^2(u^dagger), the action's gauge-variation prefactor."""
    return star(_eop(u, power=d - 2), _eop(dagger(u), power=2))


# ---------------------------------------------------------------------------
# first-order Seiberg-Witten map on exact polynomial fields

MAX_SW_DEGREE = 4


@dataclass
class PolyGaugeField:
    """A_mu as exact polynomials in the space-time coordinates."""

    components: List[Poly]

    def __post_init__(self):
        nv = {c.nvars for c in self.components}
        if len(nv) != 1:
            raise ValueError("components must share the variable count")
        if any(c.degree() > MAX_SW_DEGREE for c in self.components):
            raise ValueError(f"degree overflow: SW map limited to degree {MAX_SW_DEGREE}")

    @property
    def nvars(self):
        return self.components[0].nvars

    @property
    def dim(self):
        return len(self.components)


def poly_field_strength(A: PolyGaugeField) -> list:
    F = [[Poly.zero(A.nvars)] * A.dim for _ in range(A.dim)]
    for mu in range(A.dim):
        for nu in range(A.dim):
            F[mu][nu] = A.components[nu].deriv(mu) - A.components[mu].deriv(nu)
    return F


def sw_map_order1(A: PolyGaugeField, Theta) -> PolyGaugeField:
    """A_mu - (1/2) Theta^{rho sigma} A_rho (d_sigma A_mu + F_{sigma mu})."""
    Theta = [[Fraction(x) for x in row] for row in Theta]
    F = poly_field_strength(A)
    out = []
    for mu in range(A.dim):
        hat = A.components[mu]
        for rho in range(A.dim):
            for sg in range(A.dim):
                c = Theta[rho][sg]
                if not c:
                    continue
                corr = A.components[rho] * (A.components[mu].deriv(sg) + F[sg][mu])
                hat = hat - corr.scale(Fraction(1, 2) * c)
        out.append(hat)
    return PolyGaugeField(out)


def sw_field_strength_order1(A: PolyGaugeField, Theta) -> list:
    """F_mn + Theta^{rs}(F_mr F_ns - A_r d_s F_mn): the printed first order."""
    Theta = [[Fraction(x) for x in row] for row in Theta]
    F = poly_field_strength(A)
    n = A.dim
    out = [[Poly.zero(A.nvars)] * n for _ in range(n)]
    for mu in range(n):
        for nu in range(n):
            hat = F[mu][nu]
            for rho in range(n):
                for sg in range(n):
                    c = Theta[rho][sg]
                    if not c:
                        continue
                    term = F[mu][rho] * F[nu][sg] - A.components[rho] * F[mu][nu].deriv(sg)
                    hat = hat + term.scale(c)
            out[mu][nu] = hat
    return out


def sw_field_strength_from_hat(A: PolyGaugeField, Theta) -> list:
    """F(A_hat) computed directly: d A_hat - d A_hat + Theta^{rs} d_r A_mu d_s A_nu.

    The Moyal commutator -i[A_hat_mu, A_hat_nu]_star contributes
    Theta^{rs} d_r A_mu d_s A_nu at first order.
    """
    Theta = [[Fraction(x) for x in row] for row in Theta]
    Ahat = sw_map_order1(A, Theta)
    n = A.dim
    out = [[Poly.zero(A.nvars)] * n for _ in range(n)]
    for mu in range(n):
        for nu in range(n):
            hat = Ahat.components[nu].deriv(mu) - Ahat.components[mu].deriv(nu)
            for rho in range(n):
                for sg in range(n):
                    c = Theta[rho][sg]
                    if not c:
                        continue
                    hat = hat + (A.components[mu].deriv(rho) * A.components[nu].deriv(sg)).scale(c)
            out[mu][nu] = hat
    return out


def sw_consistency_residual(A: PolyGaugeField, alpha: Poly, Theta) -> list:
    """Order-Theta gauge-equivalence residual, linearized in alpha.

    hat A(A + d alpha) - hat A(A) - [d alpha_hat - Theta^{rs} d_r alpha d_s A_mu]
    with alpha_hat = alpha + (1/2) Theta^{rs} d_r alpha A_s; identically zero
    as a polynomial for any inputs.
    """
    Theta = [[Fraction(x) for x in row] for row in Theta]
    n = A.dim
    F = poly_field_strength(A)
    dalpha = [alpha.deriv(mu) for mu in range(n)]
    residuals = []
    for mu in range(n):
        # alpha-linear part of hat A(A + d alpha) - hat A(A)
        lhs = dalpha[mu]
        for rho in range(n):
            for sg in range(n):
                c = Theta[rho][sg]
                if not c:
                    continue
                var = dalpha[rho] * (A.components[mu].deriv(sg) + F[sg][mu]) \
                    + A.components[rho] * dalpha[mu].deriv(sg)
                lhs = lhs - var.scale(Fraction(1, 2) * c)
        # deformed transform d_mu alpha_hat - Theta^{rs} d_r alpha d_s A_mu
        alpha_hat1 = Poly.zero(A.nvars)
        for rho in range(n):
            for sg in range(n):
                c = Theta[rho][sg]
                if not c:
                    continue
                alpha_hat1 = alpha_hat1 + (dalpha[rho] * A.components[sg]).scale(Fraction(1, 2) * c)
        rhs = dalpha[mu] + alpha_hat1.deriv(mu)
        for rho in range(n):
            for sg in range(n):
                c = Theta[rho][sg]
                if not c:
                    continue
                rhs = rhs - (dalpha[rho] * A.components[mu].deriv(sg)).scale(c)
        residuals.append(lhs - rhs)
    return residuals


def poly_field_to_jsonable(A: PolyGaugeField) -> list:
    """[[{"exp": [...], "re": r, "im": i}, ...] per component]."""
    out = []
    for comp in A.components:
        out.append([{"exp": list(e), "re": str(c[0]), "im": str(c[1])}
                    for e, c in sorted(comp.terms.items())])
    return out


def poly_field_from_json(text: str) -> PolyGaugeField:
    import json
    from fractions import Fraction as Fr
    data = json.loads(text)
    comps = []
    for terms in data if isinstance(data, list) else data["components"]:
        if terms:
            nv = len(terms[0]["exp"])
        else:
            nv = 4
        comps.append(Poly(nv, {tuple(t["exp"]): (Fr(str(t["re"])), Fr(str(t.get("im", 0))))
                               for t in terms}))
    return PolyGaugeField(comps)


# ---------------------------------------------------------------------------
# tangent-space curvature for constant central connection coefficients

@dataclass
class ConnectionCoefficients:
    Gamma: np.ndarray  # Gamma[mu][nu][rho] = Gamma^rho_{mu nu}, constant central
    structure: StructureConstants

    def __post_init__(self):
        self.Gamma = np.asarray(self.Gamma, dtype=complex)
        n = self.structure.dim
        if self.Gamma.shape != (n, n, n):
            raise ValueError("Gamma must be dim^3")


def tangent_curvature(conn: ConnectionCoefficients) -> np.ndarray:
    """R_{mu nu rho}^sigma = G^t_{nu rho} G^s_{mu t} - G^t_{mu rho} G^s_{nu t}
    - C^t_{mu nu} G^s_{t rho}; the coordinate-action terms vanish for
    constant coefficients."""
    G = conn.Gamma  # G[mu, nu, rho] = Gamma^rho_{mu nu}
    C = conn.structure.C
    R = (np.einsum("nrt,mts->mnrs", G, G)
         - np.einsum("mrt,nts->mnrs", G, G)
         - np.einsum("mnt,trs->mnrs", C, G))
    return R


def curvature_antisymmetry_residual(R: np.ndarray) -> float:
    return float(np.max(np.abs(R + R.transpose(1, 0, 2, 3))))
