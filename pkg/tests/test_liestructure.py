import json

import numpy as np
import pytest

from qstkit.liestructure import (PresetError, StructureConstants, jacobi_check,
                                 preset, recover_from_group_law)
from qstkit.momentum import group_preset

PRESETS = [
    ("kappa_minkowski", dict(kappa=1.0, d=1)),
    ("kappa_minkowski", dict(kappa=2.0, d=3)),
    ("moyal_extended", dict(theta=1.0)),
    ("rho_minkowski", dict(rho=1.0)),
    ("su2_lambda", dict(lam=1.0)),
]


@pytest.mark.parametrize("name,kw", PRESETS)
def test_presets_are_lie_algebras(name, kw):
    sc = preset(name, **kw)
    assert jacobi_check(sc)["passed"]
    assert sc.antisymmetry_violation() == 0.0


def test_kappa_entries():
    sc = preset("kappa_minkowski", kappa=1.0, d=1)
    assert sc.C[0, 1, 1] == 1j
    assert sc.C[1, 0, 1] == -1j
    # every other entry vanishes
    C = sc.C.copy()
    C[0, 1, 1] = 0
    C[1, 0, 1] = 0
    assert np.all(C == 0)


def test_su2_entries_are_epsilon():
    sc = preset("su2_lambda", lam=1.0)
    assert sc.C[0, 1, 2] == 1j
    assert sc.C[1, 2, 0] == 1j
    assert sc.C[1, 0, 2] == -1j


def test_corrupted_tensor_fails_jacobi():
    sc = preset("su2_lambda", lam=1.0)
    C = sc.C.copy()
    C[0, 1, 2] = -C[0, 1, 2]  # flip one sign
    bad = StructureConstants("corrupt", 3, 1.0, C)
    assert jacobi_check(bad)["max_violation"] > 0.1


def test_preset_errors():
    with pytest.raises(PresetError):
        preset("kappa_minkowski", kappa=-1.0, d=1)
    with pytest.raises(PresetError):
        preset("moyal_extended", theta=0.0)
    with pytest.raises(PresetError):
        preset("rho_minkowski", rho=1.0, dim=5)
    with pytest.raises(PresetError):
        preset("nope", kappa=1.0)
    with pytest.raises(PresetError):
        preset("moyal_extended", theta=1.0, dim=4)


GROUPS = [
    ("kappa_minkowski", dict(kappa=1.0, d=1)),
    ("kappa_minkowski", dict(kappa=1.0, d=3)),
    ("moyal_extended", dict(theta=1.0)),
    ("rho_minkowski", dict(rho=1.0)),
    ("su2_lambda", dict(lam=1.0)),
]


@pytest.mark.parametrize("name,kw", GROUPS)
def test_recover_from_group_law_fd(name, kw):
    g = group_preset(name, **kw)
    # force the finite-difference path
    fd = group_preset(name, **kw)
    object.__setattr__(fd, "exact_hessian", None)
    rec = recover_from_group_law(fd)
    assert np.max(np.abs(rec.C - g.structure.C)) < 1e-6


@pytest.mark.parametrize("name,kw", GROUPS[:4])
def test_recover_from_group_law_symbolic(name, kw):
    g = group_preset(name, **kw)
    rec = recover_from_group_law(g)  # exact-Hessian path
    assert np.max(np.abs(rec.C - g.structure.C)) == 0.0


def test_recover_kappa_value():
    g = group_preset("kappa_minkowski", kappa=2.0, d=1)
    rec = recover_from_group_law(g)
    assert rec.C[0, 1, 1] == pytest.approx(1j / 2.0)


def test_abelian_law_recovers_zero():
    g = group_preset("commutative", dim=4)
    rec = recover_from_group_law(g)
    assert np.max(np.abs(rec.C)) == 0.0


def test_json_round_trip():
    sc = preset("rho_minkowski", rho=0.7)
    text = sc.to_json()
    back = StructureConstants.from_json(text)
    assert back.dim == sc.dim
    assert back.deformation == sc.deformation
    assert np.max(np.abs(back.C - sc.C)) == 0.0
    # and it is valid JSON with the documented shape
    data = json.loads(text)
    assert set(data) == {"name", "dim", "deformation", "entries"}
    assert all(set(e) == {"mu", "nu", "rho", "re", "im"} for e in data["entries"])
