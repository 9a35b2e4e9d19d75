import math
from fractions import Fraction

import numpy as np
import pytest

from qstkit import loop as L
from qstkit.momentum import group_preset


@pytest.fixture(scope="module")
def kappa3():
    return group_preset("kappa_minkowski", kappa=1.0, d=3)


def test_kinetic_kappa_form(kappa3):
    ks = L.KineticSpec(kappa3, L.minkowski_signature(4), 1.0)
    k = np.array([0.4, 0.5, -0.2, 0.7])
    expect = -k[0] ** 2 + math.exp(k[0]) * float(np.dot(k[1:], k[1:])) + 1.0
    assert L.kinetic_eval(ks, k) == pytest.approx(expect, rel=1e-14)
    assert L.kinetic_eval(ks, np.zeros(4)) == 1.0  # m^2 at k = 0


def test_kinetic_parity(kappa3):
    rng = np.random.default_rng(0)
    for name, kw, sig in [
        ("kappa_minkowski", dict(kappa=1.0, d=3), L.minkowski_signature(4)),
        ("rho_minkowski", dict(rho=1.0), L.minkowski_signature(4)),
        ("moyal_extended", dict(theta=1.0), L.euclidean_signature(5)),
        ("su2_lambda", dict(lam=1.0), L.euclidean_signature(3)),
    ]:
        g = group_preset(name, **kw)
        ks = L.KineticSpec(g, sig, 0.5)
        for _ in range(20):
            k = rng.normal(size=g.dim) * 0.5
            assert L.kinetic_parity_residual(ks, k) < 1e-12


def test_kinetic_commutative_limit():
    g = group_preset("kappa_minkowski", kappa=1e8, d=3)
    ks = L.KineticSpec(g, L.minkowski_signature(4), 1.0)
    k = np.array([0.4, 0.5, -0.2, 0.7])
    expect = -k[0] ** 2 + float(np.dot(k[1:], k[1:])) + 1.0
    assert L.kinetic_eval(ks, k) == pytest.approx(expect, rel=1e-6)


def test_propagator_sweep_commutative_divergent():
    g = group_preset("commutative", dim=4)
    ks = L.KineticSpec(g, L.euclidean_signature(4), 1.0)
    sweep = L.propagator_sweep(ks, np.geomspace(10, 1e4, 8))
    assert sweep["verdict"] == "divergent"
    assert sweep["slope"] == pytest.approx(2.0, abs=0.05)  # quadratic growth


def test_propagator_sweep_kappa_convergent():
    g = group_preset("kappa_minkowski", kappa=1.0, d=3)
    ks = L.KineticSpec(g, L.minkowski_signature(4), 1.0)
    sweep = L.propagator_sweep(ks, np.geomspace(10, 1e4, 8))
    assert sweep["verdict"] == "convergent"


def test_propagator_large_mass_vanishes():
    g = group_preset("kappa_minkowski", kappa=1.0, d=3)
    vals = []
    for m in (1.0, 10.0, 100.0):
        ks = L.KineticSpec(g, L.minkowski_signature(4), m)
        vals.append(L.propagator_integral(ks, L.RegulatorSpec(Lambda=1e3))["value"])
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-20


def test_bessel_closed_form_instance():
    from scipy import special
    v = L.kmink_bessel_closed_form(1.0, 1.0, 3)
    assert v == pytest.approx(4 * math.pi * (4 * math.pi / 3) * special.kv(1, 1.5))


def test_bessel_ratio_constancy():
    rep = L.bessel_oracle_compare()
    assert rep["passed"]
    assert rep["max_rel_dev"] < 1e-6
    # the Wick normalization constant is exactly 1/2, independent of d
    for d, ratio in rep["ratios"].items():
        assert ratio == pytest.approx(0.5, rel=1e-8)


def test_bessel_decay_large_mass():
    assert L.kmink_bessel_closed_form(50.0, 1.0, 3) < 1e-20


def test_moyal_nonplanar_quad_vs_closed():
    Theta = group_preset("moyal_extended", theta=1.0).meta["Theta"]
    r = L.moyal_nonplanar(np.array([1.0, 0, 0, 0]), Theta, 1.0, 100.0)
    assert r["rel_err"] < 1e-6
    r2 = L.moyal_nonplanar(np.array([0.1, 0, 0, 0]), Theta, 1.0, 10.0)  # c = 1e-2 + 1e-2-ish
    assert r2["rel_err"] < 1e-6


def test_moyal_nonplanar_limits():
    Theta = group_preset("moyal_extended", theta=1.0).meta["Theta"]
    # p = 0: c = 1/Lambda^2, planar-like divergence as Lambda grows
    vals = [L.moyal_nonplanar(np.zeros(4), Theta, 1.0, Lam)["closed_form"]
            for Lam in (10.0, 100.0, 1000.0)]
    assert vals[0] < vals[1] < vals[2]
    assert vals[2] > 1e5
    # p != 0: finite limit with Lambda_eff^2 -> 4/(p Theta)^2
    vals = [L.moyal_nonplanar(np.array([1.0, 0, 0, 0]), Theta, 1.0, Lam)
            for Lam in (1e3, 1e6)]
    assert vals[0]["closed_form"] == pytest.approx(vals[1]["closed_form"], rel=1e-4)
    assert vals[1]["Lambda_eff2"] == pytest.approx(4.0, rel=1e-5)


def test_moyal_asymptotic_small_c():
    r = L.moyal_asymptotic_check(1.0, 1e-4)
    assert r["within_2pct"]
    r2 = L.moyal_asymptotic_check(1.0, 1e-6)
    assert abs(r2["ratio"] - 1) < abs(r["ratio"] - 1)


def test_two_point_commutative_reduction(kappa3):
    ks = L.KineticSpec(kappa3, L.minkowski_signature(4), 1.0)
    asm = L.two_point_assemble(kappa3, ks)
    co = asm.commutative_coefficients()
    assert co["planar"] == Fraction(1, 3)
    assert co["nonplanar"] == Fraction(1, 6)
    assert co["total"] == Fraction(1, 2)


def test_two_point_moyal_reduction():
    g = group_preset("moyal_extended", theta=1.0, phase_convention="real")
    ks = L.KineticSpec(g, L.euclidean_signature(5), 1.0)
    asm = L.two_point_assemble(g, ks)
    mr = asm.moyal_reduction()
    assert mr["coefficient"] == Fraction(1, 6)
    assert mr["planar_multiple"] == Fraction(2)
    rng = np.random.default_rng(1)
    for _ in range(10):
        p = np.concatenate([rng.normal(size=4), [0.0]])
        k = np.concatenate([rng.normal(size=4), [0.0]])
        assert asm.nonplanar_phase_residual(p, k) < 1e-12


def test_two_point_kappa_planar_factor(kappa3):
    ks = L.KineticSpec(kappa3, L.minkowski_signature(4), 1.0)
    asm = L.two_point_assemble(kappa3, ks)
    q = np.array([0.3, 0.1, -0.2, 0.4])
    dq = math.exp(3 * q[0])  # Delta(q) = e^{d q0 / kappa}
    # (1 + Delta(q)) factors out of the planar weight: ratio over the k-part
    k = np.zeros(4)
    assert asm.planar_weight(q, k) == pytest.approx((1 + dq) * 4.0)


def test_mixing_verdicts():
    assert L.mixing_classify("moyal").verdict == "MIXING"
    assert L.mixing_classify("kappa", d=3).verdict == "NO_MIXING"
    assert L.mixing_classify("kappa", d=2).verdict == "NO_MIXING"
    rep = L.mixing_classify("commutative")
    assert rep.verdict == "NO_MIXING"
    assert rep.planar_uv_divergent  # divergent planar, degenerate non-planar


def test_diagram_counts():
    assert L.diagram_counts("real_phi4") == {"total": 12, "planar": 8, "nonplanar": 4}
    assert L.diagram_counts("charged_orientable") == {"total": 4, "planar": 4, "nonplanar": 0}
    assert L.diagram_counts("charged_nonorientable") == {"total": 4, "planar": 2, "nonplanar": 2}


def test_diagram_planarity_is_adjacency():
    for d in L.diagram_enumerate("real_phi4"):
        i, j = d["loop_legs"]
        assert d["planar"] == ((abs(i - j) % 4) in (1, 3))


def test_sum_order_integrand_finite_at_k0_zero():
    v0 = L.sum_order_integrand(0.0, [1.0, 0.0, 0.0], 1.0, 1.0, 3)
    assert np.isfinite(v0)
    # matches the smooth continuation from nearby k0
    v1 = L.sum_order_integrand(1e-7, [1.0, 0.0, 0.0], 1.0, 1.0, 3)
    assert v0 == pytest.approx(v1, rel=1e-6)
    # and the sinh(x)/x factor at 0 gives exactly (-1/2kappa)^d / K
    expect = (-0.5) ** 3 / (1.0 + 1.0)
    assert v0 == pytest.approx(expect)


def test_graviton_divergence_degree():
    assert L.graviton_divergence_degree(1, 3) == 4
    assert L.graviton_divergence_degree(2, 3) == 6
    for Lp in (1, 2, 5):
        assert L.graviton_divergence_degree(Lp, 1) == 2


def test_kinetic_spec_validation(kappa3):
    with pytest.raises(ValueError):
        L.KineticSpec(kappa3, (1, -1), 1.0)  # wrong signature length
    with pytest.raises(ValueError):
        L.KineticSpec(kappa3, L.minkowski_signature(4), -1.0)
    with pytest.raises(ValueError):
        L.RegulatorSpec(Lambda=-1.0)


def test_schwinger_scheme_tracks_sharp_cutoff():
    g = group_preset("commutative", dim=4)
    ks = L.KineticSpec(g, L.euclidean_signature(4), 1.0)
    soft = [L.propagator_integral(ks, L.RegulatorSpec("schwinger", Lambda=Lam))["value"]
            for Lam in (10.0, 100.0, 1000.0)]
    # same quadratic growth as the sharp cutoff
    slope = math.log(soft[2] / soft[1]) / math.log(10.0)
    assert slope == pytest.approx(2.0, abs=0.05)
    gk = group_preset("kappa_minkowski", kappa=1.0, d=3)
    ksk = L.KineticSpec(gk, L.minkowski_signature(4), 1.0)
    # convergent integral: the two regulators agree up to O(<r^2>/Lambda^2)
    a = L.propagator_integral(ksk, L.RegulatorSpec("schwinger", Lambda=1e3))["value"]
    b = L.propagator_integral(ksk, L.RegulatorSpec("sharp_cutoff", Lambda=1e3))["value"]
    assert a == pytest.approx(b, rel=1e-4)
    a6 = L.propagator_integral(ksk, L.RegulatorSpec("schwinger", Lambda=1e6))["value"]
    assert abs(a6 - b) < abs(a - b)


def test_kappa_nonplanar_uses_delta_solver_momenta():
    # the k0-quadrature's spatial momentum matches delta_solve_nonplanar
    from qstkit.momentum import delta_solve_nonplanar
    kappa, d = 1.0, 3
    g = group_preset("kappa_minkowski", kappa=kappa, d=d)
    p = np.array([0.8, 0.4, -0.2, 0.1])
    q = np.asarray(g.inv(p))
    denom = 1.0 - math.exp(-p[0] / kappa)
    for k0 in (-0.7, 0.0, 1.3):
        sol = delta_solve_nonplanar(g, p, q, k0)
        assert sol.ok
        inline = p[1:] * (1.0 - math.exp(-k0 / kappa)) / denom
        assert np.max(np.abs(sol.k[1:] - inline)) < 1e-12


def test_kappa_nonplanar_value_finite_and_saturating():
    vals = [L.kappa_nonplanar_value(np.array([1.0, 0, 0, 0]), 1.0, 1.0, 3, Lam)
            for Lam in (50.0, 200.0, 800.0)]
    assert all(np.isfinite(v) for v in vals)
    assert abs(vals[2] - vals[1]) < abs(vals[1] - vals[0]) + 1e-12
