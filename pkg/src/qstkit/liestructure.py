"""Lie-algebra-type noncommutativity data: structure constants and presets.

A quantum space-time of Lie-algebra type is fixed by a tensor C^{mu nu}_rho
with [x^mu, x^nu] = C^{mu nu}_rho x^rho, plus one deformation scale.  Four
presets are shipped: kappa-Minkowski in d spatial dimensions, the extended
Moyal space (with the unit phase slot appended so the algebra closes
linearly), rho-Minkowski, and the su(2) fuzzy space.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

JACOBI_TOL = 1e-12

PRESET_NAMES = ("kappa_minkowski", "moyal_extended", "rho_minkowski", "su2_lambda")

# Moyal fifth-slot conventions: increment of p5 under composition, as a
# multiple of p.Theta.q.  "weyl" is the only one whose group law regenerates
# the stored tensor (and it matches the integral star-product phase); the
# other two reproduce the two other printed forms.
MOYAL_PHASE_CONVENTIONS = {"weyl": -0.5, "real": 1.0, "imaginary": 1j}


class PresetError(ValueError):
    """Unknown preset name or inadmissible parameters/dimension."""


@dataclass(frozen=True)
class StructureConstants:
    """The tensor C^{mu nu}_rho of a Lie-algebra-type space-time."""

    name: str
    dim: int
    deformation: float
    C: np.ndarray  # complex, shape (dim, dim, dim), indexed [mu, nu, rho]
    labels: tuple = field(default=())
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        C = np.asarray(self.C, dtype=complex)
        if C.shape != (self.dim,) * 3:
            raise ValueError(f"C must have shape {(self.dim,)*3}, got {C.shape}")
        object.__setattr__(self, "C", C)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{m}" for m in range(self.dim)))

    def antisymmetry_violation(self) -> float:
        return float(np.max(np.abs(self.C + self.C.transpose(1, 0, 2))))

    def to_json(self) -> str:
        entries = []
        for mu in range(self.dim):
            for nu in range(self.dim):
                for rho in range(self.dim):
                    c = self.C[mu, nu, rho]
                    if c != 0:
                        entries.append(
                            {"mu": mu, "nu": nu, "rho": rho, "re": c.real, "im": c.imag}
                        )
        return json.dumps(
            {
                "name": self.name,
                "dim": self.dim,
                "deformation": self.deformation,
                "entries": entries,
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "StructureConstants":
        data = json.loads(text)
        dim = int(data["dim"])
        C = np.zeros((dim, dim, dim), dtype=complex)
        for e in data["entries"]:
            C[e["mu"], e["nu"], e["rho"]] = e["re"] + 1j * e["im"]
        return StructureConstants(
            name=data["name"], dim=dim, deformation=float(data["deformation"]), C=C
        )


def preset(name: str, *, kappa=None, theta=None, rho=None, lam=None, d=None,
           dim=None, phase_convention="weyl") -> StructureConstants:
    """Return the structure constants of one of the four shipped space-times.

    kappa_minkowski: [x^0,x^j] = (i/kappa) x^j for j = 1..d (any d >= 1).
    moyal_extended:  [x^mu,x^nu] = i Theta^{mu nu} x^5 with the unit slot
                     appended (dim = even spatial + 1, default 5).
    rho_minkowski:   dim 4, rotation-type bracket in the (x1,x2) plane.
    su2_lambda:      [x^j,x^k] = i lam eps^{jk}_l x^l, dim 3.
    """
    if name == "kappa_minkowski":
        if kappa is None or kappa <= 0:
            raise PresetError("kappa must be positive")
        d = 1 if d is None else int(d)
        if dim is not None and dim != d + 1:
            raise PresetError(f"kappa_minkowski with d={d} has dim {d+1}")
        if d < 1:
            raise PresetError("kappa_minkowski needs d >= 1")
        n = d + 1
        C = np.zeros((n, n, n), dtype=complex)
        for j in range(1, n):
            C[0, j, j] = 1j / kappa
            C[j, 0, j] = -1j / kappa
        return StructureConstants(name, n, float(kappa), C,
                                  meta={"d": d, "kappa": float(kappa)})

    if name == "moyal_extended":
        if theta is None or theta == 0:
            raise PresetError("theta must be nonzero")
        n = 5 if dim is None else int(dim)
        if n < 3 or n % 2 == 0:
            raise PresetError("moyal_extended needs an even spatial dim plus the phase slot")
        if phase_convention not in MOYAL_PHASE_CONVENTIONS:
            raise PresetError(f"unknown phase convention {phase_convention!r}")
        ns = n - 1
        Theta = np.zeros((ns, ns))
        for b in range(ns // 2):
            Theta[2 * b, 2 * b + 1] = theta
            Theta[2 * b + 1, 2 * b] = -theta
        C = np.zeros((n, n, n), dtype=complex)
        C[:ns, :ns, ns] = 1j * Theta
        return StructureConstants(
            name, n, float(theta), C,
            labels=tuple(f"x{m}" for m in range(ns)) + ("x5",),
            meta={"theta": float(theta), "Theta": Theta,
                  "phase_convention": phase_convention},
        )

    if name == "rho_minkowski":
        if rho is None or rho == 0:
            raise PresetError("rho must be nonzero")
        if dim is not None and dim != 4:
            raise PresetError("rho_minkowski is four-dimensional")
        C = np.zeros((4, 4, 4), dtype=complex)
        # Signs tied to the group law vec(p) + R(+rho p0) vec(q); the
        # coordinate bracket with the opposite sign corresponds to R(-rho p0).
        C[0, 1, 2] = -1j * rho
        C[1, 0, 2] = 1j * rho
        C[0, 2, 1] = 1j * rho
        C[2, 0, 1] = -1j * rho
        return StructureConstants(name, 4, float(rho), C, meta={"rho": float(rho)})

    if name == "su2_lambda":
        if lam is None or lam == 0:
            raise PresetError("lambda must be nonzero")
        if dim is not None and dim != 3:
            raise PresetError("su2_lambda is three-dimensional")
        eps = np.zeros((3, 3, 3))
        for (j, k, l), s in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                             ((1, 0, 2), -1), ((2, 1, 0), -1), ((0, 2, 1), -1)):
            eps[j, k, l] = s
        C = 1j * lam * eps
        return StructureConstants(name, 3, float(lam), C,
                                  labels=("x1", "x2", "x3"),
                                  meta={"lam": float(lam)})

    raise PresetError(f"unknown preset {name!r}; choose one of {PRESET_NAMES}")


def jacobi_check(sc: StructureConstants) -> dict:
    """Max |Jacobi sum| over all index tuples; passes iff <= 1e-12."""
    C = sc.C
    J = (
        np.einsum("mns,srt->mnrt", C, C)
        + np.einsum("nrs,smt->mnrt", C, C)
        + np.einsum("rms,snt->mnrt", C, C)
    )
    v = float(np.max(np.abs(J)))
    return {"max_violation": v, "passed": v <= JACOBI_TOL}


def _hessian_fd(add, dim, mu, nu, h):
    """d^2 (p [+] q)/dp_mu dq_nu at p = q = 0, central differences."""
    ep = np.zeros(dim)
    eq = np.zeros(dim)
    ep[mu] = h
    eq[nu] = h
    fpp = add(ep, eq)
    fpm = add(ep, -eq)
    fmp = add(-ep, eq)
    fmm = add(-ep, -eq)
    return (np.asarray(fpp) - np.asarray(fpm) - np.asarray(fmp) + np.asarray(fmm)) / (4 * h * h)


def recover_from_group_law(g, h: float = 1e-4, richardson: bool = True) -> StructureConstants:
    """Structure constants from a deformed addition law.

    C^{mu nu}_rho = -i (H^{mu nu}_rho - H^{nu mu}_rho) with H the mixed
    Hessian of the group law at the origin.  The descriptor's exact Hessian
    is used when provided; otherwise central finite differences at step h,
    with one Richardson step (h and h/2) for O(h^4) accuracy.
    """
    dim = g.dim
    exact = getattr(g, "exact_hessian", None)
    if exact is not None:
        H = exact()
    else:
        H = np.zeros((dim, dim, dim), dtype=complex)
        for mu in range(dim):
            for nu in range(dim):
                d1 = _hessian_fd(g.add, dim, mu, nu, h)
                if richardson:
                    d2 = _hessian_fd(g.add, dim, mu, nu, h / 2)
                    if np.max(np.abs(d2 - d1)) > 1e-2 * (1 + np.max(np.abs(d2))):
                        raise ArithmeticError(
                            f"Hessian estimate unstable at (mu,nu)=({mu},{nu}): "
                            f"h and h/2 values differ by {np.max(np.abs(d2-d1)):.3e}"
                        )
                    H[mu, nu] = (4 * d2 - d1) / 3
                else:
                    H[mu, nu] = d1
    C = -1j * (H - H.transpose(1, 0, 2))
    base = g.structure
    return StructureConstants(
        name=f"{g.name}:recovered",
        dim=dim,
        deformation=base.deformation if base is not None else float("nan"),
        C=C,
    )
