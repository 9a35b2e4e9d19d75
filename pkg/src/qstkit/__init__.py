"""Computational toolkit for Lie-algebra-type quantum space-times.

Deformed momentum groups with their Haar/modular machinery, the plane-wave
star algebra and its twisted trace, an exact kappa-Poincare Hopf engine,
Drinfel'd twist checks, the Moyal matrix basis, one-loop two-point
machinery with UV/IR-mixing classification, twisted gauge-structure checks
and a discretized causality toy model.
"""

from .liestructure import StructureConstants, preset, jacobi_check, recover_from_group_law
from .momentum import GroupDescriptor, group_preset, add, inv, modular

__all__ = [
    "StructureConstants",
    "preset",
    "jacobi_check",
    "recover_from_group_law",
    "GroupDescriptor",
    "group_preset",
    "add",
    "inv",
    "modular",
]

__version__ = "0.1.0"
