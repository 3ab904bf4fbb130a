"""Block entanglement conditions evaluated on exact states.

All conditions are sufficient: ``detected=True`` certifies entanglement
between the two blocks (or, for :func:`sorensen`, violation of complete
separability); ``detected=False`` certifies nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eig3 import eigvalsh3
from .qstate import (
    PureState,
    SiteBlock,
    apply_block,
    apply_sequence,
    as_block,
    expectation,
    inner,
)

DEFAULT_TOL = 1e-9
HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class WitnessVerdict:
    lhs: float
    rhs: float
    margin: float
    detected: bool
    tolerance: float = DEFAULT_TOL
    indeterminate: bool = False

    @classmethod
    def from_sides(cls, lhs: float, rhs: float, tolerance: float = DEFAULT_TOL) -> WitnessVerdict:
        margin = lhs - rhs
        return cls(float(lhs), float(rhs), float(margin), bool(margin > tolerance), tolerance)

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "detected": self.detected,
            "tolerance": self.tolerance,
            "indeterminate": self.indeterminate,
        }


@dataclass(frozen=True)
class WitnessMatrix3:
    m: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> WitnessMatrix3:
        m = np.asarray(m, dtype=complex)
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL * max(1.0, np.max(np.abs(m))):
            raise ValueError("witness matrix is not Hermitian")
        return cls(m, eigvalsh3(m))


def _pair(state: PureState, a, b) -> tuple[SiteBlock, SiteBlock]:
    a, b = as_block(a), as_block(b)
    a.check(state)
    b.check(state)
    if not a.disjoint(b):
        raise ValueError(f"blocks {a.sites} and {b.sites} overlap")
    return a, b


_LADDER = {"lower": ("-", "+"), "raise": ("+", "-")}


def condition_one(
    state: PureState,
    a,
    b,
    *,
    ladder: str = "lower",
    lhs_variant: str = "ab_dagger",
    tolerance: float = DEFAULT_TOL,
) -> WitnessVerdict:
    """``|<A B^dag>|^2 > <A^dag A B^dag B>`` with ``A = J_a-``, ``B = J_b-``.

    ``ladder="raise"`` uses ``A = J_a+``, ``B = J_b+`` instead, which is the
    natural choice when excitations are flipped-down spins on a spin-up
    background (magnon states). ``lhs_variant="a_dagger_b"`` replaces the
    left-hand side by ``|<A^dag B>|^2``.
    """
    a, b = _pair(state, a, b)
    try:
        op, dag = _LADDER[ladder]
    except KeyError:
        raise ValueError(f"ladder must be 'lower' or 'raise', got {ladder!r}") from None
    if lhs_variant == "ab_dagger":
        amp = expectation(state, [(a, op), (b, dag)])
    elif lhs_variant == "a_dagger_b":
        amp = expectation(state, [(a, dag), (b, op)])
    else:
        raise ValueError(f"unknown lhs_variant {lhs_variant!r}")
    # A^dag A B^dag B = (B A)^dag (B A) for commuting disjoint blocks
    rhs = expectation(state, [(a, dag), (a, op), (b, dag), (b, op)]).real
    return WitnessVerdict.from_sides(abs(amp) ** 2, rhs, tolerance)


def condition_two(state: PureState, a, b, *, tolerance: float = DEFAULT_TOL) -> WitnessVerdict:
    """``|<J_a- J_b->|^2 > <J_a+ J_a-> <J_b+ J_b->``."""
    a, b = _pair(state, a, b)
    first, second = sorted((a, b), key=lambda blk: blk.sites)
    amp = expectation(state, [(first, "-"), (second, "-")])
    na = apply_block(state, a, "-")
    nb = apply_block(state, b, "-")
    rhs = inner(na, na).real * inner(nb, nb).real
    return WitnessVerdict.from_sides(abs(amp) ** 2, rhs, tolerance)


def operator_sides(state: PureState, a, b, dims=None) -> dict[str, tuple[float, float]]:
    """Both product-operator conditions evaluated with explicit matrices.

    Independent route for cross-checking :func:`condition_one` and
    :func:`condition_two` on small registers.
    """
    from .qstate import block_operator_matrix

    a, b = _pair(state, a, b)
    dims = state.dims
    psi = state.amplitudes
    jam = block_operator_matrix(dims, a, "-")
    jbm = block_operator_matrix(dims, b, "-")
    jap, jbp = jam.conj().T, jbm.conj().T

    def ev(mat):
        return np.vdot(psi, mat @ psi)

    one = (abs(ev(jam @ jbp)) ** 2, ev(jap @ jam @ jbp @ jbm).real)
    two = (abs(ev(jam @ jbm)) ** 2, ev(jap @ jam).real * ev(jbp @ jbm).real)
    return {"one": one, "two": two}


def sorensen(state: PureState, *, tolerance: float = DEFAULT_TOL) -> WitnessVerdict:
    """Spin-squeezing condition ``(dJ3)^2 / (<J1>^2 + <J2>^2) < 1/N``.

    Arranged as ``lhs = (<J1>^2 + <J2>^2)/N`` and ``rhs = (dJ3)^2`` so that a
    positive margin means the inequality holds. A vanishing mean transverse
    spin makes the ratio undefined; the verdict is then flagged
    ``indeterminate`` and never ``detected``.
    """
    if any(d != 2 for d in state.dims):
        raise ValueError("the spin-squeezing condition is defined for qubit registers")
    n = state.n_sites
    every = SiteBlock(tuple(range(n)))
    j1 = expectation(state, [(every, "x")]).real
    j2 = expectation(state, [(every, "y")]).real
    j3 = expectation(state, [(every, "z")]).real
    j3sq = expectation(state, [(every, "z"), (every, "z")]).real
    var = j3sq - j3**2
    transverse = j1**2 + j2**2
    if transverse <= tolerance:
        return WitnessVerdict(transverse / n, var, transverse / n - var, False, tolerance, True)
    return WitnessVerdict.from_sides(transverse / n, var, tolerance)


# A-side operator family for the rotation-invariant condition: J_a-, J_a+, J_a3
_A_FAMILY = ("-", "+", "z")
_ADJOINT = {"-": "+", "+": "-", "z": "z"}


def rotation_matrix(state: PureState, a, b) -> WitnessMatrix3:
    """Matrix ``M`` of the quadratic form ``c^dag M c > 0``.

    With ``A = sum_i c_i O_i`` over ``O = (J_a-, J_a+, J_a3)`` and
    ``B = J_b-``, the first condition ``|<A B^dag>|^2 > <A^dag A B^dag B>``
    reads ``sum_ik c_i^* M_ik c_k > 0`` with
    ``M_ik = <O_i J_b+>^* <O_k J_b+> - <O_i^dag O_k J_b+ J_b->``.
    """
    a, b = _pair(state, a, b)
    v = np.array([expectation(state, [(a, o), (b, "+")]) for o in _A_FAMILY])
    bb = apply_sequence(state, [(b, "+"), (b, "-")])
    lowered = [apply_block(state, a, o) for o in _A_FAMILY]
    g = np.empty((3, 3), dtype=complex)
    for i, oi in enumerate(_A_FAMILY):
        for k, ok in enumerate(_A_FAMILY):
            # <O_i^dag O_k B^dag B> = <O_i psi | O_k B^dag B psi>
            g[i, k] = inner(lowered[i], apply_block(bb, a, ok))
    m = np.outer(v.conj(), v) - g
    return WitnessMatrix3.from_matrix(m)


def rotation_verdict(m: WitnessMatrix3, tolerance: float = DEFAULT_TOL) -> WitnessVerdict:
    """Detected iff ``M`` has an eigenvalue above ``tolerance``."""
    top = float(m.eigenvalues[0])
    return WitnessVerdict.from_sides(top, 0.0, tolerance)


def old_condition_rotated(j: float, alpha: float, beta: float) -> float:
    """Closed-form margin of the first condition on ``R_a |psi>``.

    ``|psi> = (|-j, -j+1> + |-j+1, -j>)/sqrt(2)`` on two spin-``j`` sites and
    ``R_a`` rotates site ``a`` by ``(alpha, beta, gamma)``. The margin is
    divided by ``j^2``; ``gamma`` drops out. This is the reference form whose
    ``J_a3`` weight is ``1 + sin^2(alpha) sin^2(beta)``; see
    :func:`old_condition_rotated_corrected` for the exact margin.
    """
    _check_spin(j)
    cc = math.cos(alpha) * math.cos(beta)
    ss = (math.sin(alpha) * math.sin(beta)) ** 2
    return cc - j * (1.0 + ss) - 0.25 * (cc - 1.0) ** 2


def old_condition_rotated_corrected(j: float, alpha: float, beta: float) -> float:
    """Same margin with the ``J_a3`` coefficient of ``R^-1 J_+ R`` recomputed.

    Conjugation gives ``R^-1 J_+ R = a e^{i gamma} J_+ + b e^{-i gamma} J_-
    + (sin beta - i sin alpha cos beta) J_3``; the ``J_3`` weight enters the
    right-hand side as ``j |sin beta - i sin alpha cos beta|^2``.
    """
    _check_spin(j)
    cc = math.cos(alpha) * math.cos(beta)
    w3 = math.sin(beta) ** 2 + (math.sin(alpha) * math.cos(beta)) ** 2
    return cc - j * w3 - 0.25 * (cc - 1.0) ** 2


def _check_spin(j: float) -> None:
    if j <= 0 or abs(2 * j - round(2 * j)) > 1e-12:
        raise ValueError(f"j must be a positive integer or half-integer, got {j}")
