from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinwitness import thermal
from spinwitness.thermal import LinearBlocks, PhysicalConstants, ThermalParams

# Bose series (sqrt(pi)/4) zeta(3/2), evaluated independently
I2_TAU7 = 1.1575786866970583
# Sign pattern of Q(dr) at tau = 7, dr = 1..60, and of block Q(m) at L = 13
DISTANCE_SIGNS_TAU7 = "++++++++++++-++++++++++-+++-++--++------+-------------------"
BLOCK_SIGNS_TAU7_L13 = "-+++++----+++"


def _gl_integral(kind, tau, dr, panels=4000, order=8):
    """Composite Gauss-Legendre reference with uniform panels."""
    y0 = tau * math.sqrt(3) * math.pi
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, y0, panels + 1)
    mid, half = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
    y = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    bose = y * y / -np.expm1(-y * y)
    f = bose * (np.sinc(y * dr / tau / np.pi) if kind != 2 else 1.0)
    if kind != 1:
        f = f * np.exp(-y * y)
    return float(np.sum(wt * f))


def test_params_validation_and_cutoff():
    p = ThermalParams(7.0)
    assert abs(p.y0 - 7 * math.sqrt(3) * math.pi) < 1e-14
    assert abs(ThermalParams.from_y0(0.05).y0 - 0.05) < 1e-16
    for bad in (0.0, -1.0, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            ThermalParams(bad)
    with pytest.raises(ValueError):
        ThermalParams(1.0, quad_tol=0.0)
    with pytest.raises(ValueError):
        LinearBlocks(3, 2)
    with pytest.raises(ValueError):
        PhysicalConstants(D_stiffness=-1.0)
    with pytest.raises(ValueError):
        thermal.integral_I1(p, -1.0)


def test_bose_weight_series_branch():
    for y in (0.0, 1e-6, 5e-5, 9.99e-5):
        assert abs(thermal.bose_weight(y) - (1 + y * y / 2)) < 1e-15
    y = 1e-4 * 1.01
    assert abs(thermal.bose_weight(y) - (1 + y * y / 2 + y**4 / 12)) < 1e-13


def test_I2_bose_series():
    from scipy.special import zeta

    assert abs(math.sqrt(math.pi) / 4 * zeta(1.5) - I2_TAU7) < 1e-15
    assert abs(thermal.integral_I2(ThermalParams(7.0)) - I2_TAU7) < 1e-6


@pytest.mark.parametrize("tau", [0.3, 1.0, 3.0, 7.0])
@pytest.mark.parametrize("dr", [0, 1, 2, 5, 13])
def test_integrals_match_independent_quadrature(tau, dr):
    p = ThermalParams(tau)
    for kind, value in ((1, thermal.integral_I1(p, dr)), (2, thermal.integral_I2(p)), (3, thermal.integral_I3(p, dr))):
        ref = _gl_integral(kind, tau, dr)
        assert abs(value - ref) <= 1e-9 * max(1.0, abs(ref))


def test_dr_zero_limits():
    p = ThermalParams(2.0)
    assert thermal.integral_I3(p, 0.0) == thermal.integral_I2(p)
    plain = _gl_integral(1, 2.0, 0)  # sinc(0) = 1, no kernel left
    assert abs(thermal.integral_I1(p, 0.0) - plain) < 1e-9 * plain


def test_small_cutoff_limits():
    for y0 in (1e-3, 1e-2, 0.05):
        p = ThermalParams.from_y0(y0)
        assert abs(thermal.integral_I2(p) / y0 - 1) < y0
        assert abs(thermal.integral_I3(p, 3) / thermal.integral_I1(p, 3) - 1) < y0**2


def test_I2_increasing_in_cutoff():
    # strictly increasing while the tail increment exceeds quadrature noise
    vals = [thermal.integral_I2(ThermalParams(t)) for t in np.linspace(0.05, 0.6, 30)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    vals = [thermal.integral_I2(ThermalParams(t)) for t in np.linspace(0.6, 8, 30)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_I3_positive_and_bounded():
    p = ThermalParams(7.0)
    top = thermal.integral_I3(p, 0)
    for dr in range(1, 41):
        i3 = thermal.integral_I3(p, dr)
        assert 0 < i3 <= top


def test_I1_damped_oscillation():
    p = ThermalParams(7.0)
    vals = np.array([thermal.integral_I1(p, dr) for dr in range(1, 61)])
    assert np.any(vals > 0) and np.any(vals < 0)
    assert np.max(np.abs(vals[40:])) < np.max(np.abs(vals[:10]))


def test_tighter_tolerance_self_convergence():
    for dr in (1, 13, 40):
        a = thermal.integral_I1(ThermalParams(7.0), dr)
        b = thermal.integral_I1(ThermalParams(7.0, 1e-11), dr)
        assert abs(a - b) <= 1e-8 * abs(b)


def test_unreachable_tolerance_raises():
    with pytest.raises(thermal.ConvergenceError):
        thermal.integral_I1(ThermalParams(7.0, 1e-15), 13)


def test_distance_scan_sign_pattern():
    rows = thermal.scan_distance(ThermalParams(7.0), 60)
    assert [d for d, _ in rows] == list(range(1, 61))
    assert "".join("+" if q > 0 else "-" for _, q in rows) == DISTANCE_SIGNS_TAU7
    assert thermal.crossing_dr(ThermalParams(7.0)) == 13


def test_continuous_distance_mode():
    rows = thermal.scan_distance(ThermalParams(7.0), 2.0, step=0.25)
    assert [d for d, _ in rows] == [0.25 * k for k in range(1, 9)]


def test_high_temperature_never_detected():
    p = ThermalParams(0.01)
    assert all(q < 0 for _, q in thermal.scan_distance(p, 40))
    with pytest.raises(thermal.NoCrossingError):
        thermal.crossing_tau(1.0, tau_lo=0.01, tau_hi=0.05)


def test_block_reduces_to_pair():
    for tau in (2.0, 7.0):
        p = ThermalParams(tau)
        for L in (1, 5, 13):
            a, b = thermal.block_Q(p, LinearBlocks(1, L)), thermal.pair_Q(p, L)
            assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


def test_block_scan_sign_and_ranking():
    rows = thermal.scan_block(ThermalParams(7.0), 13, 13)
    assert "".join("+" if q > 0 else "-" for _, q in rows) == BLOCK_SIGNS_TAU7_L13
    top = sorted(rows, key=lambda r: r[1], reverse=True)[:3]
    assert {m for m, _ in top} == {11, 12, 13}
    with pytest.raises(ValueError):
        thermal.scan_block(ThermalParams(7.0), 5, 6)


def test_general_geometry_collinear_and_symmetries(rng):
    p = ThermalParams(7.0)
    blocks = LinearBlocks(4, 9)
    pa, pb = blocks.positions()
    ref = thermal.block_Q(p, blocks)
    assert abs(thermal.block_Q_general(p, pa, pb) - ref) <= 1e-12 * abs(ref)
    perm = rng.permutation(4)
    assert abs(thermal.block_Q_general(p, pa[perm], pb[rng.permutation(4)]) - ref) <= 1e-12 * abs(ref)
    assert abs(thermal.block_Q_general(p, pb, pa) - ref) <= 1e-12 * abs(ref)
    with pytest.raises(ValueError):
        thermal.block_Q_general(p, pa, pa)


def test_general_geometry_swap_3d(rng):
    p = ThermalParams(4.0)
    pts = rng.choice(6, size=(6, 3))
    pts = np.unique(pts, axis=0)[:6]
    pa, pb = pts[:3], pts[3:6]
    a = thermal.block_Q_general(p, pa, pb)
    b = thermal.block_Q_general(p, pb, pa)
    # the intra-block term is taken over block A, so the swap is a symmetry
    # only when both blocks have the same internal distances
    qa = thermal.block_Q_general(p, pa, pa + 10)
    qb = thermal.block_Q_general(p, pa + 10, pa)
    assert abs(qa - qb) <= 1e-12 * abs(qa)
    assert np.isfinite(a) and np.isfinite(b)


def test_kelvin_conversion():
    assert abs(thermal.kelvin_from_tau(1.0) - 0.5e-28 / (1.38e-16 * 16e-16)) < 1e-9
    assert thermal.kelvin_from_tau(1.0) == pytest.approx(226.449, abs=1e-3)
    assert thermal.kelvin_from_tau(7.0) == pytest.approx(4.62, abs=5e-3)
    assert thermal.kelvin_from_tau(2.0) == pytest.approx(thermal.kelvin_from_tau(1.0) / 4, rel=1e-15)
    assert thermal.tau_from_kelvin(thermal.kelvin_from_tau(3.3)) == pytest.approx(3.3, rel=1e-14)
    with pytest.raises(ValueError):
        thermal.kelvin_from_tau(0.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 50.0), st.floats(1e-30, 1e-26), st.floats(1e-9, 1e-6))
def test_kelvin_round_trip(tau, d, a):
    c = PhysicalConstants(d, a, 1.38e-16)
    assert thermal.tau_from_kelvin(thermal.kelvin_from_tau(tau, c), c) == pytest.approx(tau, rel=1e-12)


def test_crossing_tau_brackets_sign_change():
    tc = thermal.crossing_tau(3.0)
    lo = thermal.pair_Q(ThermalParams(tc * (1 - 1e-5)), 3.0)
    hi = thermal.pair_Q(ThermalParams(tc * (1 + 1e-5)), 3.0)
    assert lo < 0 <= hi


def test_lattice_oracle_refines_and_matches():
    p = ThermalParams(7.0)
    quad = (thermal.integral_I1(p, 3), thermal.integral_I2(p), thermal.integral_I3(p, 3))
    errs = []
    for n in (16, 32, 64):
        sums = thermal.lattice_sum_oracle(n, p, 3)
        errs.append(max(abs(s - q) / abs(q) for s, q in zip(sums, quad)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.02
    with pytest.raises(ValueError):
        thermal.lattice_sum_oracle(4, p, 1)


def test_lattice_oracle_zero_distance_is_plain_occupation():
    p = ThermalParams(3.0)
    i1, i2, i3 = thermal.lattice_sum_oracle(32, p, 0)
    assert abs(i3 - i2) < 1e-15 * abs(i2)
    assert abs(i1 - thermal.integral_I1(p, 0)) < 1e-6 * i1


def test_lattice_oracle_sign_of_Q():
    p = ThermalParams(7.0)
    for dr in (1, 5, 13):
        s1, s2, s3 = thermal.lattice_sum_oracle(64, p, dr)
        assert np.sign(s1 * s1 - s2 * s2 - s1 * s3) == np.sign(thermal.pair_Q(p, dr))


def test_scans_deterministic_across_workers_and_order():
    p = ThermalParams(5.0)
    serial = thermal.scan_distance(p, 12)
    thermal.clear_cache()
    parallel = thermal.scan_distance(p, 12, workers=2)
    assert serial == parallel
    thermal.clear_cache()
    taus = [3.0, 1.0, 2.0]
    backwards = [thermal.pair_Q(ThermalParams(t), 4.0) for t in reversed(sorted(taus))]
    rows = thermal.scan_temperature(4.0, taus)
    assert [t for t, _ in rows] == [1.0, 2.0, 3.0]
    assert [q for _, q in rows] == backwards[::-1]
