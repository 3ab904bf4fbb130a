"""Thermal spin-wave witness on a cubic lattice (spherical zone approximation).

Everything is expressed through the dimensionless temperature
``tau = sqrt(2JS / (kB T)) = sqrt(beta D) / a`` and the cutoff
``y0 = tau * sqrt(3) * pi``. Common positive prefactors ``(2S/N)^2`` are
dropped, so only the sign and relative size of ``Q`` carry meaning.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

SERIES_CUTOFF = 1e-4
DEFAULT_QUAD_TOL = 1e-10
MAX_SUBINTERVALS = 2**20
# scipy's quad refuses relative tolerances below 50 machine epsilons
MIN_EPSREL = 1.2e-14


class ConvergenceError(RuntimeError):
    """Quadrature or root search failed to reach the requested tolerance."""


class NoCrossingError(ValueError):
    """No sign change of ``Q`` inside the searched range."""


@dataclass(frozen=True)
class ThermalParams:
    tau: float
    quad_tol: float = DEFAULT_QUAD_TOL

    def __post_init__(self):
        if not self.tau > 0 or not math.isfinite(self.tau):
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not 0 < self.quad_tol < 1:
            raise ValueError(f"quad_tol must be in (0, 1), got {self.quad_tol}")

    @property
    def y0(self) -> float:
        return self.tau * math.sqrt(3) * math.pi

    @classmethod
    def from_y0(cls, y0: float, quad_tol: float = DEFAULT_QUAD_TOL) -> ThermalParams:
        return cls(y0 / (math.sqrt(3) * math.pi), quad_tol)


@dataclass(frozen=True)
class LinearBlocks:
    """Block A on sites ``1..m``, block B on ``L+1..L+m``, spacing ``a``."""

    m: int
    L: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("block size must be >= 1")
        if self.L < self.m:
            raise ValueError(f"blocks overlap: L={self.L} < m={self.m}")

    def positions(self) -> tuple[np.ndarray, np.ndarray]:
        a = np.arange(1, self.m + 1, dtype=float)
        b = np.arange(self.L + 1, self.L + self.m + 1, dtype=float)
        zeros = np.zeros(self.m)
        return np.column_stack([a, zeros, zeros]), np.column_stack([b, zeros, zeros])


@dataclass(frozen=True)
class PhysicalConstants:
    """Spin stiffness, lattice constant and Boltzmann constant (CGS defaults)."""

    D_stiffness: float = 0.5e-28  # erg cm^2
    a_lattice: float = 4e-8  # cm
    kB: float = 1.38e-16  # erg / K

    def __post_init__(self):
        if min(self.D_stiffness, self.a_lattice, self.kB) <= 0:
            raise ValueError("physical constants must be positive")


# -- integrands -----------------------------------------------------------------


def bose_weight(y: float) -> float:
    """``y^2 / (1 - exp(-y^2))`` with its removable point at 0."""
    if y < SERIES_CUTOFF:
        return 1.0 + 0.5 * y * y
    return y * y / -math.expm1(-y * y)


def _sinc(x: float) -> float:
    return 1.0 if x == 0.0 else math.sin(x) / x


def _panel_edges(y0: float, tau: float, dr: float) -> list[float]:
    """Breakpoints at the zeros of ``sinc(y dr / tau)`` plus a few Bose-scale cuts."""
    edges = {0.0, y0}
    edges.update(y for y in (1.0, 2.0, 4.0, 8.0) if y < y0)
    if dr > 0:
        step = math.pi * tau / dr
        n = int(y0 / step)
        edges.update(k * step for k in range(1, n + 1) if k * step < y0)
    return sorted(edges)


def _integrate(func: Callable[[float], float], edges: Sequence[float], tol: float) -> float:
    parts, errors, messages = [], [], []
    per_panel = max(50, MAX_SUBINTERVALS // max(1, len(edges) - 1))
    epsrel = max(tol * 1e-2, MIN_EPSREL)
    for lo, hi in zip(edges, edges[1:]):
        val, err, *rest = integrate.quad(
            func, lo, hi, epsabs=0.0, epsrel=epsrel, limit=per_panel, full_output=1
        )
        parts.append(val)
        errors.append(err)
        if len(rest) >= 2:
            messages.append(f"[{lo:.6g}, {hi:.6g}]: {rest[1]}")
    total = math.fsum(parts)
    scale = max(abs(total), math.fsum(abs(v) for v in parts))
    if math.fsum(errors) > tol * scale:
        detail = messages[0] if messages else "error estimate above tolerance"
        raise ConvergenceError(f"quadrature did not reach relative tolerance {tol:g} on {detail}")
    return total


@lru_cache(maxsize=None)
def _integral(kind: int, tau: float, dr: float, tol: float) -> float:
    y0 = tau * math.sqrt(3) * math.pi
    scale = dr / tau

    if kind == 1:
        def f(y):
            return _sinc(y * scale) * bose_weight(y)
    elif kind == 2:
        def f(y):
            return bose_weight(y) * math.exp(-y * y)
    else:
        def f(y):
            return _sinc(y * scale) * bose_weight(y) * math.exp(-y * y)

    return _integrate(f, _panel_edges(y0, tau, dr if kind != 2 else 0.0), tol)


def _check_dr(dr_over_a: float) -> float:
    dr = float(dr_over_a)
    if not dr >= 0 or not math.isfinite(dr):
        raise ValueError(f"distance must be >= 0, got {dr_over_a}")
    return dr


def integral_I1(params: ThermalParams, dr_over_a: float) -> float:
    """``int_0^y0 sinc(y dr pi sqrt3 / (y0 a)) y^2 / (1 - e^{-y^2}) dy``."""
    return _integral(1, params.tau, _check_dr(dr_over_a), params.quad_tol)


def integral_I2(params: ThermalParams) -> float:
    """``int_0^y0 y^2 e^{-y^2} / (1 - e^{-y^2}) dy``."""
    return _integral(2, params.tau, 0.0, params.quad_tol)


def integral_I3(params: ThermalParams, dr_over_a: float) -> float:
    """Like :func:`integral_I1` with an extra ``e^{-y^2}``."""
    return _integral(3, params.tau, _check_dr(dr_over_a), params.quad_tol)


def pair_Q(params: ThermalParams, dr_over_a: float) -> float:
    """``Q = I1^2 - (I2^2 + I1 I3)``; positive means entanglement is detected."""
    i1 = integral_I1(params, dr_over_a)
    i2 = integral_I2(params)
    i3 = integral_I3(params, dr_over_a)
    return i1 * i1 - (i2 * i2 + i1 * i3)


def _distance_key(d: float) -> float:
    # integer lattice distances come out of sqrt with rounding noise
    r = round(d)
    return float(r) if abs(d - r) < 1e-9 else float(d)


def block_Q_general(params: ThermalParams, positions_a, positions_b) -> float:
    """Block condition for arbitrary site positions (in units of ``a``).

    ``Q = S1^2 - ([m I2 + 2 sum_{i<i'} I3_ii']^2 + S1 S3)`` where ``S1`` and
    ``S3`` sum ``I1`` and ``I3`` over all inter-block pairs and the inner sum
    runs over pairs inside block A.
    """
    pa = np.atleast_2d(np.asarray(positions_a, dtype=float))
    pb = np.atleast_2d(np.asarray(positions_b, dtype=float))
    if pa.shape != pb.shape:
        raise ValueError("blocks must contain the same number of sites")
    if {tuple(p) for p in pa} & {tuple(p) for p in pb}:
        raise ValueError("blocks overlap")
    m = pa.shape[0]
    cross = [_distance_key(np.linalg.norm(p - q)) for p in pa for q in pb]
    inner_pairs = [
        _distance_key(np.linalg.norm(pa[i] - pa[k])) for i in range(m) for k in range(i + 1, m)
    ]
    s1 = math.fsum(integral_I1(params, d) for d in cross)
    s3 = math.fsum(integral_I3(params, d) for d in cross)
    intra = m * integral_I2(params) + 2 * math.fsum(integral_I3(params, d) for d in inner_pairs)
    return s1 * s1 - (intra * intra + s1 * s3)


def block_Q(params: ThermalParams, blocks: LinearBlocks) -> float:
    """Block condition for two collinear blocks of ``m`` neighbouring spins."""
    m, L = blocks.m, blocks.L
    cross = [float(j - i) for i in range(1, m + 1) for j in range(L + 1, L + m + 1)]
    inner_pairs = [float(k - i) for i in range(1, m + 1) for k in range(i + 1, m + 1)]
    s1 = math.fsum(integral_I1(params, d) for d in cross)
    s3 = math.fsum(integral_I3(params, d) for d in cross)
    intra = m * integral_I2(params) + 2 * math.fsum(integral_I3(params, d) for d in inner_pairs)
    return s1 * s1 - (intra * intra + s1 * s3)


# -- scans and crossings --------------------------------------------------------


def _pair_Q_point(args) -> float:
    tau, tol, dr = args
    return pair_Q(ThermalParams(tau, tol), dr)


def _map(func, items, workers: int):
    if workers <= 1:
        return [func(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def scan_distance(
    params: ThermalParams, dr_max: float, step: float = 1.0, workers: int = 1
) -> list[tuple[float, float]]:
    """Rows ``(dr/a, Q)`` for ``dr/a = step, 2*step, ..., dr_max``."""
    if not step > 0 or dr_max < step:
        raise ValueError("need 0 < step <= dr_max")
    n = int(math.floor(dr_max / step + 1e-9))
    drs = [step * k for k in range(1, n + 1)]
    qs = _map(_pair_Q_point, [(params.tau, params.quad_tol, d) for d in drs], workers)
    return list(zip(drs, qs))


def scan_temperature(
    dr_over_a: float, tau_grid: Sequence[float], quad_tol: float = DEFAULT_QUAD_TOL, workers: int = 1
) -> list[tuple[float, float]]:
    """Rows ``(tau, Q)`` at fixed distance, ascending in ``tau``."""
    taus = sorted(float(t) for t in tau_grid)
    for t in taus:
        ThermalParams(t, quad_tol)
    qs = _map(_pair_Q_point, [(t, quad_tol, dr_over_a) for t in taus], workers)
    return list(zip(taus, qs))


def scan_block(params: ThermalParams, L: int, m_max: int) -> list[tuple[int, float]]:
    """Rows ``(m, Q)`` for ``m = 1 .. m_max`` at fixed offset ``L``."""
    if m_max > L:
        raise ValueError(f"m_max={m_max} would make the blocks overlap (L={L})")
    return [(m, block_Q(params, LinearBlocks(m, L))) for m in range(1, m_max + 1)]


def crossing_dr(params: ThermalParams, dr_max: int = 60) -> int:
    """First integer ``dr/a >= 1`` with ``Q < 0``."""
    for dr in range(1, int(dr_max) + 1):
        if pair_Q(params, dr) < 0:
            return dr
    raise NoCrossingError(f"Q stays non-negative up to dr/a = {dr_max}")


def crossing_tau(
    dr_over_a: float,
    tau_lo: float = 0.5,
    tau_hi: float = 15.0,
    n_scan: int = 60,
    rtol: float = 1e-6,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> float:
    """Dimensionless temperature at which ``Q`` first turns negative on heating.

    Scans ``tau`` downward from ``tau_hi`` (low temperature) on a geometric
    grid and bisects the first ``+ -> -`` sign change to relative tolerance
    ``rtol``.
    """
    if not 0 < tau_lo < tau_hi:
        raise ValueError("need 0 < tau_lo < tau_hi")

    def q(t):
        return pair_Q(ThermalParams(t, quad_tol), dr_over_a)

    grid = np.geomspace(tau_hi, tau_lo, n_scan)
    prev_t, prev_q = grid[0], q(grid[0])
    if prev_q < 0:
        raise NoCrossingError(f"Q < 0 already at tau_hi = {tau_hi}")
    for t in grid[1:]:
        qt = q(t)
        if qt < 0:
            return _bisect(q, float(t), float(prev_t), rtol)
        prev_t, prev_q = t, qt
    raise NoCrossingError(f"no sign change of Q for tau in [{tau_lo}, {tau_hi}]")


def _bisect(func, lo: float, hi: float, rtol: float, max_iter: int = 200) -> float:
    """Root of ``func`` with ``func(lo) < 0 <= func(hi)``."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if func(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            return 0.5 * (lo + hi)
    raise ConvergenceError("bisection did not converge")


def kelvin_from_tau(tau: float, constants: PhysicalConstants = PhysicalConstants()) -> float:
    """``T = D / (kB a^2 tau^2)``."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    c = constants
    return c.D_stiffness / (c.kB * c.a_lattice**2 * tau**2)


def tau_from_kelvin(temperature: float, constants: PhysicalConstants = PhysicalConstants()) -> float:
    if not temperature > 0:
        raise ValueError("temperature must be positive")
    c = constants
    return math.sqrt(c.D_stiffness / (c.kB * c.a_lattice**2 * temperature))


# -- discrete k-space oracle ----------------------------------------------------


def lattice_sum_oracle(n_grid: int, params: ThermalParams, dr_over_a: float) -> tuple[float, float, float]:
    """Direct k-space sums for ``I1``, ``I2``, ``I3`` on an ``n_grid^3`` mesh.

    Evaluates the magnon-occupation sums ``(1/N) sum_k e^{i k.dr} n(k)`` and
    their ``e^{-beta omega}``-weighted partners over the sphere
    ``|k| <= sqrt(3) pi / a`` with ``beta omega = (tau a k)^2``. The mesh is a
    spherical product grid: Gauss-Legendre in ``|k|`` and ``cos(theta)``,
    uniform in ``phi``, with ``dr`` along the polar axis. The full phase
    ``exp(i k.dr)`` is summed, with no analytic angular reduction. The
    continuum normalization ``2 pi^2 tau^3`` maps the sums onto the integrals.
    """
    n = int(n_grid)
    if n < 8:
        raise ValueError("n_grid must be >= 8")
    tau, dr = params.tau, _check_dr(dr_over_a)
    kmax = math.sqrt(3) * math.pi  # units of 1/a
    xr, wr = np.polynomial.legendre.leggauss(n)
    k = kmax * (xr + 1) / 2
    wk = wr * kmax / 2
    c, wc = np.polynomial.legendre.leggauss(n)
    phi = 2 * math.pi * np.arange(n) / n
    wphi = np.full(n, 2 * math.pi / n)

    kk, cc, pp = np.meshgrid(k, c, phi, indexing="ij")
    weight = wk[:, None, None] * wc[None, :, None] * wphi[None, None, :] * kk**2
    kz = kk * cc
    phase = np.cos(kz * dr)  # imaginary part cancels between +-cos(theta)
    y2 = (tau * kk) ** 2
    occ = 1.0 / -np.expm1(-y2)
    boltz = np.exp(-y2)
    # (a^3 / (2 pi)^3) sum_k ... times 2 pi^2 tau^3
    norm = 2 * math.pi**2 * tau**3 / (2 * math.pi) ** 3
    s1 = norm * float(np.sum(weight * phase * occ))
    s2 = norm * float(np.sum(weight * occ * boltz))
    s3 = norm * float(np.sum(weight * phase * occ * boltz))
    return s1, s2, s3


def clear_cache() -> None:
    _integral.cache_clear()
