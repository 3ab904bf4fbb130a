"""State families and their closed-form witness margins.

Half-integer quantities (``j``, ``m``, ``m0``) are plain floats; the
coefficient vector of a spin-``j`` state is indexed by ``k = j + m`` running
over ``0 .. 2j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qstate import EulerAngles, PureState, SiteBlock, apply_block, rotate_block
from .witness import condition_two

NORM_TOL = 1e-12


def two_j(j: float) -> int:
    tj = round(2 * j)
    if j <= 0 or abs(2 * j - tj) > 1e-12:
        raise ValueError(f"j must be a positive integer or half-integer, got {j}")
    return int(tj)


def _index(j: float, m: float) -> int:
    k = j + m
    if abs(k - round(k)) > 1e-12 or not 0 <= round(k) <= two_j(j):
        raise ValueError(f"m={m} is not a valid projection for j={j}")
    return int(round(k))


@dataclass(frozen=True)
class CorrelatedSpec:
    """Coefficients ``c_m`` of ``sum_m c_m |j,m>_a |j,m>_b``, ``m = -j .. j``."""

    j: float
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if c.size != two_j(self.j) + 1:
            raise ValueError(f"need {two_j(self.j) + 1} coefficients for j={self.j}")
        if abs(np.vdot(c, c).real - 1.0) > NORM_TOL:
            raise ValueError("coefficients must be normalized")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def normalized(cls, j: float, coeffs) -> CorrelatedSpec:
        c = np.asarray(coeffs, dtype=complex)
        return cls(j, c / np.linalg.norm(c))

    @property
    def m_values(self) -> np.ndarray:
        return -self.j + np.arange(self.coeffs.size)


@dataclass(frozen=True)
class IntelligentSpec:
    j: float
    m0: float
    lam: float

    def __post_init__(self):
        _index(self.j, self.m0)
        if not self.lam > 1.0:
            raise ValueError(f"lambda must exceed 1, got {self.lam}")

    @property
    def kappa(self) -> float:
        """``sqrt(lambda^2 - 1)``."""
        return math.sqrt(self.lam**2 - 1.0)

    @property
    def theta(self) -> float:
        """Rotation angle in ``[pi/2, pi]`` with ``lambda = -1/cos(theta)``."""
        return math.acos(-1.0 / self.lam)

    @property
    def beta(self) -> complex:
        return -2j * self.m0 * self.kappa


# -- four-qubit example -------------------------------------------------------


def four_qubit_example() -> PureState:
    """``|0000>/sqrt(2) + (|0110> + |1001>)/2`` on sites 0..3."""
    amps = np.zeros(16, dtype=complex)
    amps[0b0000] = 1 / math.sqrt(2)
    amps[0b0110] = 0.5
    amps[0b1001] = 0.5
    return PureState((2, 2, 2, 2), amps)


# -- Dicke and correlated block states ----------------------------------------


def _popcounts(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    return np.array([bin(i).count("1") for i in idx])


def dicke_vector(n: int, m: float) -> np.ndarray:
    j = n / 2
    ones = _index(j, m)
    vec = (_popcounts(n) == ones).astype(complex)
    return vec / math.sqrt(math.comb(n, ones))


def dicke_state(n: int, m: float) -> PureState:
    """Symmetric ``n``-qubit state ``|j=n/2, m>`` with ``j+m`` ones."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return PureState((2,) * n, dicke_vector(n, m))


def correlated_state(spec: CorrelatedSpec) -> PureState:
    """``sum_m c_m |j,m>_a |j,m>_b`` on ``2n`` qubits, ``n = 2j``.

    Block ``a`` is sites ``0..n-1``, block ``b`` is sites ``n..2n-1``.
    """
    n = two_j(spec.j)
    if n > 8:
        raise ValueError("dense correlated states are limited to j <= 4")
    amps = np.zeros(4**n, dtype=complex)
    for m, c in zip(spec.m_values, spec.coeffs):
        if c != 0:
            d = dicke_vector(n, m)
            amps += c * np.kron(d, d)
    return PureState((2,) * (2 * n), amps)


def correlated_blocks(spec: CorrelatedSpec) -> tuple[SiteBlock, SiteBlock]:
    n = two_j(spec.j)
    return SiteBlock(tuple(range(n))), SiteBlock(tuple(range(n, 2 * n)))


def geometric_coeffs(j: float, x: float) -> CorrelatedSpec:
    """``c_m = eta * x^(j+m)``, normalized."""
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")
    k = np.arange(two_j(j) + 1)
    return CorrelatedSpec.normalized(j, x**k)


def _ladder_weights(spec: CorrelatedSpec) -> np.ndarray:
    j, m = spec.j, spec.m_values
    return (j + m) * (j - m + 1)


def collective_sides(spec: CorrelatedSpec) -> tuple[float, float]:
    """``|<J_a- J_b->|`` and ``<J_a+ J_a->`` from the closed-form sums."""
    c = spec.coeffs
    w = _ladder_weights(spec)
    lhs = abs(np.sum(w[1:] * c[:-1].conj() * c[1:]))
    rhs = float(np.sum(np.abs(c) ** 2 * w))
    return float(lhs), rhs


def collective_margin(spec: CorrelatedSpec) -> float:
    lhs, rhs = collective_sides(spec)
    return lhs - rhs


def single_spin_sides(spec: CorrelatedSpec) -> tuple[float, float]:
    """Sides of the one-qubit-per-block condition, rescaled by ``(2j)^2``."""
    c = spec.coeffs
    lhs, _ = collective_sides(spec)
    rhs = 2 * spec.j * float(np.sum(np.abs(c) ** 2 * (spec.j + spec.m_values)))
    return lhs, rhs


def single_spin_margin(spec: CorrelatedSpec) -> float:
    lhs, rhs = single_spin_sides(spec)
    return lhs - rhs


def single_spin_engine_sides(spec: CorrelatedSpec) -> tuple[float, float]:
    """Exact-engine sides for the first qubit of each block, in closed-form units.

    The engine returns ``(lhs/(2j)^2)^2`` and ``(rhs/(2j)^2)^2``; they are
    mapped back for comparison with :func:`single_spin_sides`.
    """
    n = two_j(spec.j)
    v = condition_two(correlated_state(spec), [0], [n])
    scale = (2 * spec.j) ** 2
    return math.sqrt(v.lhs) * scale, math.sqrt(max(v.rhs, 0.0)) * scale


# -- intelligent states -------------------------------------------------------


def intelligent_coefficients(spec: IntelligentSpec) -> np.ndarray:
    """Unnormalized ``C_{m,m}`` for ``m = -j .. j`` by forward recurrence.

    ``C_{m+1} = (beta + 2 i m kappa) / ((j+m+1)(j-m)) C_m`` starting from
    ``C_{-j} = 1``; the factor vanishes at ``m = m0`` so higher terms are 0.
    """
    j, kappa, beta = spec.j, spec.kappa, spec.beta
    size = two_j(j) + 1
    c = np.zeros(size, dtype=complex)
    c[0] = 1.0
    for k in range(_index(j, spec.m0)):
        m = -j + k
        c[k + 1] = (beta + 2j * m * kappa) / ((j + m + 1) * (j - m)) * c[k]
    return c


def intelligent_state(spec: IntelligentSpec) -> PureState:
    """Normalized ``exp(-i theta (J_1a + J_1b)) sum_m C_mm |m, m>`` on two spin-j sites."""
    d = two_j(spec.j) + 1
    c = intelligent_coefficients(spec)
    amps = np.zeros((d, d), dtype=complex)
    amps[np.arange(d), np.arange(d)] = c
    primed = PureState((d, d), amps.reshape(-1)).normalized()
    return rotate_block(primed, [0, 1], EulerAngles(spec.theta, 0.0, 0.0))


def intelligent_residual(state: PureState, spec: IntelligentSpec) -> float:
    """``|| [(J_1a + J_1b) + i lambda (J_2a + J_2b)] psi - beta psi ||``."""
    both = [0, 1]
    lhs = apply_block(state, both, "x") + apply_block(state, both, "y") * (1j * spec.lam)
    return (lhs - state * spec.beta).norm()


def intelligent_product_residual(state: PureState, spec: IntelligentSpec) -> float:
    """Residual of ``[J_a- J_b- - i kappa (J_3a + J_3b)] psi' = beta psi'``.

    ``psi'`` is ``state`` rotated back by ``exp(+i theta (J_1a + J_1b))``. The
    diagonal recurrence solves exactly this equation.
    """
    primed = rotate_block(state, [0, 1], EulerAngles(-spec.theta, 0.0, 0.0))
    lowered = apply_block(apply_block(primed, [0], "-"), [1], "-")
    out = lowered - apply_block(primed, [0, 1], "z") * (1j * spec.kappa)
    return (out - primed * spec.beta).norm()


def intelligent_margin_closed_form(spec: IntelligentSpec) -> float:
    """``|<J_a- J_b->| - <J_a+ J_a->`` from the reference single sums.

    Both sums carry the weight
    ``[4(lambda^2-1)]^(j+m) [(j-m)!/((m0-m)!(j+m)!)]^2``; they are divided by
    the sum of weights, which is the squared norm of the unrotated state, so
    the margin refers to a normalized state.
    """
    j, m0, lam = spec.j, spec.m0, spec.lam
    weights, aa, ab = [], [], []
    for k in range(_index(j, m0) + 1):
        m = -j + k
        w = (4 * (lam**2 - 1)) ** (j + m) * (
            math.factorial(round(j - m)) / (math.factorial(round(m0 - m)) * math.factorial(round(j + m)))
        ) ** 2
        weights.append(w)
        aa.append(w * ((lam**2 + 1) / (2 * lam**2) * (j * (j + 1) - m**2) - m / lam))
        ab.append(w * (2j * math.sqrt(lam**2 + 1) / lam * (m0 - m) - (lam**2 - 1) * m**2 / lam**2))
    norm = math.fsum(weights)
    return abs(sum(ab)) / norm - math.fsum(aa) / norm


def intelligent_engine_sides(spec: IntelligentSpec) -> tuple[float, float]:
    """``|<J_a- J_b->|`` and ``<J_a+ J_a->`` on the constructed state."""
    v = condition_two(intelligent_state(spec), [0], [1])
    return math.sqrt(v.lhs), math.sqrt(max(v.rhs, 0.0))


def intelligent_margin_engine(spec: IntelligentSpec) -> float:
    lhs, rhs = intelligent_engine_sides(spec)
    return lhs - rhs


def adjacent_flip_state(j: float) -> PureState:
    """``(|-j, -j+1> + |-j+1, -j>)/sqrt(2)`` on two spin-``j`` sites."""
    d = two_j(j) + 1
    amps = np.zeros((d, d), dtype=complex)
    amps[0, 1] = amps[1, 0] = 1 / math.sqrt(2)
    return PureState((d, d), amps.reshape(-1))
