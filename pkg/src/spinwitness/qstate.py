"""Dense state-vector engine for small spin registers.

A register is a tensor product of sites, each of dimension ``d >= 2`` and
carrying spin ``j = (d - 1) / 2``. Local basis index ``k`` corresponds to the
magnetic quantum number ``m = -j + k``, so for qubits ``|0>`` is spin down and
``|1>`` is spin up, and the raising operator maps ``|0>`` to ``|1>``.

Sites are addressed with 0-based indices. Amplitude vectors use C ordering,
i.e. site 0 is the most significant index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Amplitude vector over a product of finite-dimensional sites.

    The vector is not required to be normalized; operator actions return
    unnormalized states. Use :meth:`normalized` or the constructors for
    physical states.
    """

    dims: tuple[int, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"every site dimension must be >= 2, got {dims}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise ValueError(
                f"amplitude length {amps.size} does not match dims {dims}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, dims: Sequence[int], amplitudes, normalize: bool = True) -> PureState:
        state = cls(tuple(dims), np.array(amplitudes, dtype=complex))
        return state.normalized() if normalize else state

    @classmethod
    def basis(cls, dims: Sequence[int], indices: Sequence[int]) -> PureState:
        """Computational basis state ``|k_0 k_1 ...>``."""
        dims = tuple(dims)
        if len(indices) != len(dims):
            raise ValueError("one local index per site is required")
        amps = np.zeros(int(np.prod(dims)), dtype=complex)
        amps[np.ravel_multi_index(tuple(indices), dims)] = 1.0
        return cls(dims, amps)

    @classmethod
    def product(cls, local_states: Iterable) -> PureState:
        """Tensor product of (normalized) single-site vectors."""
        vecs = [np.asarray(v, dtype=complex) for v in local_states]
        amps = np.array([1.0 + 0j])
        for v in vecs:
            amps = np.kron(amps, v / np.linalg.norm(v))
        return cls(tuple(v.size for v in vecs), amps)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> PureState:
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.dims, self.amplitudes / nrm)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def __add__(self, other: PureState) -> PureState:
        _check_same_dims(self, other)
        return PureState(self.dims, self.amplitudes + other.amplitudes)

    def __sub__(self, other: PureState) -> PureState:
        _check_same_dims(self, other)
        return PureState(self.dims, self.amplitudes - other.amplitudes)

    def __mul__(self, scalar) -> PureState:
        return PureState(self.dims, self.amplitudes * complex(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class SiteBlock:
    """Strictly increasing tuple of site indices forming a collective spin."""

    sites: tuple[int, ...]

    def __post_init__(self):
        sites = tuple(int(s) for s in self.sites)
        if not sites:
            raise ValueError("a block needs at least one site")
        if any(b <= a for a, b in zip(sites, sites[1:])):
            raise ValueError(f"block sites must be strictly increasing, got {sites}")
        object.__setattr__(self, "sites", sites)

    def __iter__(self):
        return iter(self.sites)

    def __len__(self):
        return len(self.sites)

    def check(self, state: PureState) -> None:
        if self.sites[0] < 0 or self.sites[-1] >= state.n_sites:
            raise IndexError(
                f"block {self.sites} invalid for a {state.n_sites}-site state"
            )

    def disjoint(self, other: SiteBlock) -> bool:
        return not set(self.sites) & set(other.sites)


def as_block(block) -> SiteBlock:
    if isinstance(block, SiteBlock):
        return block
    if isinstance(block, (int, np.integer)):
        return SiteBlock((int(block),))
    return SiteBlock(tuple(block))


@dataclass(frozen=True)
class DensityMatrix:
    dim: int
    elements: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = np.asarray(self.elements, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got {rho.shape}")
        object.__setattr__(self, "elements", rho)

    def purity(self) -> float:
        return float(np.real(np.trace(self.elements @ self.elements)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.elements)

    def validate(self, tol: float = NORM_TOL) -> None:
        rho = self.elements
        if np.max(np.abs(rho - rho.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > tol:
            raise ValueError("density matrix trace differs from 1")
        if self.eigenvalues().min() < -PSD_TOL:
            raise ValueError("density matrix has a negative eigenvalue")


@dataclass(frozen=True)
class EulerAngles:
    """Angles of ``R = exp(-i alpha J1) exp(-i beta J2) exp(-i gamma J3)``."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not all(np.isfinite([self.alpha, self.beta, self.gamma])):
            raise ValueError("Euler angles must be finite")


# -- single-site spin matrices ------------------------------------------------


@lru_cache(maxsize=None)
def _spin_matrices(dim: int) -> dict[str, np.ndarray]:
    j = (dim - 1) / 2
    m = -j + np.arange(dim)
    jp = np.zeros((dim, dim), dtype=complex)
    for k in range(dim - 1):
        jp[k + 1, k] = np.sqrt((j - m[k]) * (j + m[k] + 1))
    jm = jp.T.copy()
    mats = {
        "+": jp,
        "-": jm,
        "z": np.diag(m).astype(complex),
        "x": (jp + jm) / 2,
        "y": (jp - jm) / 2j,
    }
    for mat in mats.values():
        mat.setflags(write=False)
    return mats


def spin_matrix(dim: int, kind: str) -> np.ndarray:
    """Single-site ``J_kind`` for ``kind`` in ``{'+', '-', 'z', 'x', 'y'}``."""
    try:
        return _spin_matrices(int(dim))[kind]
    except KeyError:
        raise ValueError(f"unknown spin operator {kind!r}") from None


def apply_site_operator(state: PureState, site: int, op: np.ndarray) -> PureState:
    """Apply a ``d x d`` matrix to one site."""
    if not 0 <= site < state.n_sites:
        raise IndexError(f"site {site} out of range for {state.n_sites} sites")
    psi = state.tensor()
    out = np.tensordot(op, psi, axes=([1], [site]))
    out = np.moveaxis(out, 0, site)
    return PureState(state.dims, out.reshape(-1))


def apply_block(state: PureState, block, kind: str) -> PureState:
    """Collective ``sum_{s in block} J_kind^{(s)}`` acting on ``state``."""
    block = as_block(block)
    block.check(state)
    total = np.zeros_like(state.amplitudes)
    for s in block:
        total = total + apply_site_operator(state, s, spin_matrix(state.dims[s], kind)).amplitudes
    return PureState(state.dims, total)


def apply_block_lowering(state: PureState, block) -> PureState:
    return apply_block(state, block, "-")


def apply_block_raising(state: PureState, block) -> PureState:
    return apply_block(state, block, "+")


def apply_block_jz(state: PureState, block) -> PureState:
    return apply_block(state, block, "z")


def apply_sequence(state: PureState, ops: Sequence[tuple]) -> PureState:
    """Apply ``(block, kind)`` pairs right to left, as in an operator product.

    ``apply_sequence(psi, [(a, '+'), (b, '-')])`` returns ``J_a+ J_b- |psi>``.
    """
    for block, kind in reversed(ops):
        state = apply_block(state, block, kind)
    return state


def inner(x: PureState, y: PureState) -> complex:
    """``<x|y>``, conjugate-linear in ``x``."""
    _check_same_dims(x, y)
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def expectation(state: PureState, ops: Sequence[tuple]) -> complex:
    """``<psi| O_1 O_2 ... |psi>`` for a product of collective operators."""
    return inner(state, apply_sequence(state, ops))


def block_operator_matrix(dims: Sequence[int], block, kind: str) -> np.ndarray:
    """Full-register matrix of a collective operator, built with Kronecker products.

    Independent of :func:`apply_block`; used as a cross-check for small
    registers.
    """
    dims = tuple(dims)
    block = as_block(block)
    size = int(np.prod(dims))
    total = np.zeros((size, size), dtype=complex)
    for s in block:
        term = np.array([[1.0 + 0j]])
        for i, d in enumerate(dims):
            term = np.kron(term, spin_matrix(d, kind) if i == s else np.eye(d))
        total += term
    return total


def reduced_density(state: PureState, keep) -> DensityMatrix:
    """Partial trace over every site not in ``keep``."""
    keep = as_block(keep)
    keep.check(state)
    rest = [s for s in range(state.n_sites) if s not in keep.sites]
    psi = np.transpose(state.tensor(), list(keep.sites) + rest)
    dk = int(np.prod([state.dims[s] for s in keep.sites]))
    mat = psi.reshape(dk, -1)
    return DensityMatrix(dk, mat @ mat.conj().T)


_SYSY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def concurrence(dm: DensityMatrix) -> float:
    """Two-qubit concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the decreasing square roots of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)``. They are obtained as the singular values
    of ``V^T (sy x sy) V`` with ``rho = V V^dag``, which avoids square roots
    of rounding-level eigenvalues.
    """
    if dm.dim != 4:
        raise ValueError("concurrence is defined for two qubits (dim 4)")
    rho = (dm.elements + dm.elements.conj().T) / 2
    w, u = np.linalg.eigh(rho)
    if w.min() < -PSD_TOL:
        raise ValueError("input is not positive semidefinite")
    v = u * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(v.T @ _SYSY @ v, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _expi_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i t h)`` for Hermitian ``h`` by spectral decomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def site_rotation(dim: int, angles: EulerAngles) -> np.ndarray:
    return (
        _expi_hermitian(spin_matrix(dim, "x"), angles.alpha)
        @ _expi_hermitian(spin_matrix(dim, "y"), angles.beta)
        @ _expi_hermitian(spin_matrix(dim, "z"), angles.gamma)
    )


def rotate_block(state: PureState, block, angles: EulerAngles) -> PureState:
    """Apply ``R(alpha, beta, gamma)`` generated by the block's collective spin.

    The collective generators are sums of commuting single-site terms, so the
    rotation factorizes into the same local rotation on every block site.
    """
    block = as_block(block)
    block.check(state)
    for s in block:
        state = apply_site_operator(state, s, site_rotation(state.dims[s], angles))
    return state


def random_state(dims: Sequence[int], rng: np.random.Generator) -> PureState:
    size = int(np.prod(dims))
    amps = rng.normal(size=size) + 1j * rng.normal(size=size)
    return PureState.from_amplitudes(dims, amps)


def random_product_state(dims: Sequence[int], blocks: Sequence, rng: np.random.Generator) -> PureState:
    """Random state that is a product across the given site groups.

    Each group gets an arbitrary (possibly entangled) pure state; sites not
    covered by any group get their own random local state. Groups must be
    disjoint.
    """
    groups = [as_block(b).sites for b in blocks]
    covered = {s for g in groups for s in g}
    groups += [(s,) for s in range(len(dims)) if s not in covered]
    psi = np.array([1.0 + 0j])
    order: list[int] = []
    for g in groups:
        local = random_state([dims[s] for s in g], rng).amplitudes
        psi = np.kron(psi, local)
        order.extend(g)
    tensor = psi.reshape([dims[s] for s in order])
    tensor = np.transpose(tensor, np.argsort(order))
    return PureState(tuple(dims), tensor.reshape(-1))


def _check_same_dims(x: PureState, y: PureState) -> None:
    if x.dims != y.dims:
        raise ValueError(f"dimension mismatch: {x.dims} vs {y.dims}")
