"""Entanglement witnesses for blocks of spins: exact states, spin waves, thermal magnons."""

from .qstate import DensityMatrix, EulerAngles, PureState, SiteBlock
from .witness import WitnessMatrix3, WitnessVerdict, condition_one, condition_two, rotation_matrix, sorensen

__all__ = [
    "DensityMatrix",
    "EulerAngles",
    "PureState",
    "SiteBlock",
    "WitnessMatrix3",
    "WitnessVerdict",
    "condition_one",
    "condition_two",
    "rotation_matrix",
    "sorensen",
]
