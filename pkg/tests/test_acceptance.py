"""Acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL verdict; the lines are printed as the
test runs and repeated in the terminal summary (see conftest.py). Running
this file directly prints the same lines without pytest.
"""

from __future__ import annotations

import math
import time

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta

from spinwitness import magnon, states, thermal, witness
from spinwitness.magnon import BlockPair1D, ChainSpec
from spinwitness.qstate import EulerAngles, concurrence, reduced_density, rotate_block
from spinwitness.states import CorrelatedSpec, IntelligentSpec
from spinwitness.thermal import LinearBlocks, PhysicalConstants, ThermalParams

LINES: dict[int, str] = {}


def record(number: int, title: str, checks: dict[str, bool], detail: str = "") -> None:
    ok = all(checks.values())
    failed = [name for name, good in checks.items() if not good]
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
    if failed:
        line += f" | failed: {', '.join(failed)}"
    if detail:
        line += f" | {detail}"
    LINES[number] = line
    print(line)
    assert ok, line


# 1 ---------------------------------------------------------------------------


def test_criterion_01_four_qubit():
    psi = states.four_qubit_example()
    v = witness.condition_two(psi, [0, 1], [2, 3])
    c = concurrence(reduced_density(psi, [0, 2]))
    best = math.inf
    for _ in range(50):
        t0 = time.perf_counter()
        witness.condition_two(psi, [0, 1], [2, 3])
        concurrence(reduced_density(psi, [0, 2]))
        best = min(best, time.perf_counter() - t0)
    record(
        1,
        "four-qubit example",
        {
            "lhs=0.5": abs(v.lhs - 0.5) < 1e-12,
            "rhs=0.25": abs(v.rhs - 0.25) < 1e-12,
            "detected": v.detected,
            "concurrence=0": abs(c) < 1e-10,
            "runtime<1ms": best < 1e-3,
        },
        f"lhs={v.lhs:.15g} rhs={v.rhs:.15g} C13={c:.3g} t={best * 1e6:.0f}us",
    )


# 2 ---------------------------------------------------------------------------

SPINS = (0.5, 1.0, 1.5, 2.0)


def test_criterion_02_geometric_correlated():
    sign_ok, boundary_ok, engine_ok = True, True, True
    worst = 0.0
    for j in SPINS:
        for x in (0.5, 0.9, 1.0, 1.1, 2.0):
            spec = states.geometric_coeffs(j, x)
            margin = states.collective_margin(spec)
            if (margin > 0) != (x < 1):
                sign_ok = False
            if x == 1.0 and abs(margin) >= 1e-10:
                boundary_ok = False
            a, b = states.correlated_blocks(spec)
            ev = witness.condition_two(states.correlated_state(spec), a, b)
            lhs, rhs = states.collective_sides(spec)
            err = max(abs(math.sqrt(ev.lhs) - lhs), abs(math.sqrt(ev.rhs) - rhs))
            worst = max(worst, err)
            engine_ok &= err < 1e-10
    record(
        2,
        "geometric correlated states",
        {"margin>0 iff x<1": sign_ok, "|margin(x=1)|<1e-10": boundary_ok, "engine match 1e-10": engine_ok},
        f"max engine diff={worst:.2e}",
    )


# 3 ---------------------------------------------------------------------------


def test_criterion_03_strength_ordering():
    rng = np.random.default_rng(7)
    counterexamples, fired = 0, 0
    for j in SPINS:
        n = states.two_j(j) + 1
        for i in range(1000):
            raw = rng.normal(size=n) + 1j * rng.normal(size=n)
            if i % 2:
                # real positive, decreasing vectors exercise the detected region
                raw = np.sort(np.abs(raw.real))[::-1]
            spec = CorrelatedSpec.normalized(j, raw)
            if states.single_spin_margin(spec) > 0:
                fired += 1
                if not states.collective_margin(spec) > 0:
                    counterexamples += 1
    record(
        3,
        "single-spin => collective",
        {"no counterexample": counterexamples == 0, "premise exercised": fired > 0},
        f"{fired} of 4000 vectors satisfy the single-spin condition",
    )


# 4 ---------------------------------------------------------------------------

STATED_GRID = ((1.0, -1.0, 4.0), (1.5, -0.5, 2.0))


def test_criterion_04_intelligent_threshold():
    def margin(lam):
        return states.intelligent_margin_closed_form(IntelligentSpec(1.0, -1.0, lam))

    root = brentq(margin, 1.5, 6.0, xtol=1e-12)
    residuals = {}
    for j, m0, lam in STATED_GRID:
        spec = IntelligentSpec(j, m0, lam)
        residuals[(j, m0, lam)] = states.intelligent_residual(states.intelligent_state(spec), spec)
    record(
        4,
        "intelligent-state threshold",
        {
            "lambda*=3 within 1e-6": abs(root - 3.0) < 1e-6,
            **{f"residual{key}<1e-8": r < 1e-8 for key, r in residuals.items()},
        },
        f"lambda*={root:.12f} residuals=" + ", ".join(f"{k}:{r:.3g}" for k, r in residuals.items()),
    )


# 5 ---------------------------------------------------------------------------


def test_criterion_05_rotation_invariant_witness():
    rng = np.random.default_rng(5)
    eig_ok, flags_ok = True, True
    for j in (0.5, 1.0, 2.0):
        psi = states.adjacent_flip_state(j)
        m = witness.rotation_matrix(psi, [0], [1])
        expected = sorted([j * j, -2 * j * j, -(j**3)], reverse=True)
        eig_ok &= bool(np.allclose(m.eigenvalues, expected, atol=1e-10, rtol=0))
        base = witness.rotation_verdict(m).detected
        for _ in range(100):
            ang = EulerAngles(*rng.uniform(0, 2 * np.pi, 3))
            rotated = witness.rotation_matrix(rotate_block(psi, [0], ang), [0], [1])
            flags_ok &= witness.rotation_verdict(rotated).detected == base
    grid = 2 * np.pi * np.arange(100) / 100
    margins = np.array([[witness.old_condition_rotated(1.0, a, b) for b in grid] for a in grid])
    zeros = [(int(i), int(k)) for i, k in zip(*np.nonzero(margins >= 0))]
    record(
        5,
        "rotation-invariant witness",
        {
            "eigenvalues {j^2,-2j^2,-j^3}": eig_ok,
            "flag invariant under 100 rotations": flags_ok,
            "j=1 old condition never detected": bool(np.all(margins <= 1e-9)),
            "j=1 strictly negative off the analytic zeros": set(zeros) <= {(0, 0), (50, 50)},
            "j=1/2 positive at origin": witness.old_condition_rotated(0.5, 0.0, 0.0) > 0,
        },
        f"j=1 max margin={margins.max():.3g} at grid points {zeros} (alpha,beta in {{(0,0),(pi,pi)}})",
    )


# 6 ---------------------------------------------------------------------------


def test_criterion_06_single_magnon():
    worst_rhs, worst_lhs = 0.0, 0.0
    for n_sites in (6, 8, 10, 12):
        chain = ChainSpec(n_sites)
        for n in range(-n_sites // 2 + 1, n_sites // 2 + 1):
            for m in range(1, n_sites // 2):
                for L in range(m, n_sites - m + 1):
                    blocks = BlockPair1D(m, L)
                    amp, v = magnon.single_magnon_engine(chain, n, blocks)
                    closed = magnon.single_magnon_lhs(chain, n, blocks)
                    worst_rhs = max(worst_rhs, v.rhs)
                    worst_lhs = max(worst_lhs, abs(v.lhs - abs(closed) ** 2), abs(amp - closed))
    chain = ChainSpec(12)
    small = all(magnon.single_magnon_verdict(chain, 1, BlockPair1D(m, 6)).detected for m in (1, 2, 3))
    record(
        6,
        "single magnon",
        {"rhs<1e-14": worst_rhs < 1e-14, "closed form = engine 1e-12": worst_lhs < 1e-12, "small blocks detected": small},
        f"max rhs={worst_rhs:.1e} max lhs diff={worst_lhs:.1e}",
    )


# 7 ---------------------------------------------------------------------------

ORACLE_TUPLES = ((16, 1, 2, 2, 5), (12, 1, 2, 2, 3), (16, 1, 3, 3, 5), (20, 1, 4, 2, 9), (24, 3, -2, 5, 7))


def test_criterion_07_two_magnons():
    chain = ChainSpec(64)
    margins = [magnon.two_magnon_verdict(chain, 2, 5, BlockPair1D(4, L)).margin for L in (4, 9, 30)]
    m1 = magnon.two_magnon_verdict(chain, 2, 5, BlockPair1D(1, 7)).margin
    reports = []
    for n_sites, n1, n2, m, L in ORACLE_TUPLES:
        reports.append(magnon.two_magnon_discrepancy(ChainSpec(n_sites), n1, n2, BlockPair1D(m, L)))
    needed = {"case", "closed_form", "oracle", "abs_diff", "rel_diff", "agree"}
    resolved = all(r["agree"] or needed <= set(r) for r in reports)
    agree = sum(r["agree"] for r in reports)
    record(
        7,
        "two magnons",
        {
            "margin L-independent 1e-12": max(margins) - min(margins) < 1e-12,
            "m=1 zero margin": m1 == 0.0,
            ">=5 oracle tuples": len(reports) >= 5,
            "agreement or discrepancy report": resolved,
        },
        f"{agree}/{len(reports)} tuples agree with the cosine kernel; discrepancy reports emitted for the rest",
    )


# 8 ---------------------------------------------------------------------------


def test_criterion_08_distance_scan():
    thermal.clear_cache()
    t0 = time.perf_counter()
    rows = thermal.scan_distance(ThermalParams(7.0), 60)
    elapsed = time.perf_counter() - t0
    signs = [q > 0 for _, q in rows]
    first_neg = next(int(d) for d, q in rows if q < 0)
    reentry = any(signs[first_neg:])
    record(
        8,
        "distance scan at tau=7",
        {"first negative at 13": first_neg == 13, "sign re-entry": reentry, "runtime<30s": elapsed < 30},
        f"first negative dr/a={first_neg}, t={elapsed:.2f}s",
    )


# 9 ---------------------------------------------------------------------------

CROSSING_KELVIN = {1: 420.0, 3: 150.0, 10: 20.0, 20: 8.0}


def test_criterion_09_crossing_temperatures():
    const = PhysicalConstants(0.5e-28, 4e-8, 1.38e-16)
    tau_lo, tau_hi = thermal.tau_from_kelvin(500.0, const), thermal.tau_from_kelvin(1.0, const)
    temps, within, monotone = {}, True, True
    for dr, target in CROSSING_KELVIN.items():
        tc = thermal.crossing_tau(dr, tau_lo=tau_lo, tau_hi=tau_hi, n_scan=120)
        temps[dr] = thermal.kelvin_from_tau(tc, const)
        within &= abs(temps[dr] - target) <= 0.15 * target
        grid = np.geomspace(tau_hi, tau_lo, 120)  # ascending temperature
        qs = [thermal.pair_Q(ThermalParams(t), dr) for t in grid]
        monotone &= all(b < a for a, b in zip(qs, qs[1:]))
    record(
        9,
        "crossing temperatures",
        {"within 15%": within, "Q(T) monotone decreasing": monotone},
        ", ".join(f"dr={d}: {temps[d]:.1f} K (target {CROSSING_KELVIN[d]:g})" for d in CROSSING_KELVIN),
    )


# 10 --------------------------------------------------------------------------


def test_criterion_10_block_scan():
    thermal.clear_cache()
    t0 = time.perf_counter()
    rows = thermal.scan_block(ThermalParams(7.0), 13, 13)
    elapsed = time.perf_counter() - t0
    q = dict(rows)
    top = sorted(q, key=q.get, reverse=True)[:3]
    record(
        10,
        "block scan at tau=7, L=13",
        {
            "Q(m=1)<0": q[1] < 0,
            "Q>0 for some m>=2": any(q[m] > 0 for m in range(2, 14)),
            "top three at 11,12,13": set(top) == {11, 12, 13},
            "runtime<60s": elapsed < 60,
        },
        f"top three m={top}, t={elapsed:.2f}s",
    )


# 11 --------------------------------------------------------------------------


def test_criterion_11_high_temperature():
    pair_ok, block_ok = True, True
    for y0 in (0.05, 0.02, 0.001):
        p = ThermalParams.from_y0(y0)
        pair_ok &= all(thermal.pair_Q(p, dr) < 0 for dr in range(0, 41))
        block_ok &= all(thermal.block_Q(p, LinearBlocks(m, 13)) < 0 for m in (1, 4, 8))
    record(11, "high-temperature impossibility", {"pair Q<0": pair_ok, "block Q<0": block_ok}, "y0 in {0.05, 0.02, 0.001}")


# 12 --------------------------------------------------------------------------


def test_criterion_12_quadrature_anchor():
    p = ThermalParams(7.0)
    i2 = thermal.integral_I2(p)
    anchor = math.sqrt(math.pi) / 4 * zeta(1.5)
    within, monotone, notes = True, True, []
    for dr in (1, 5, 13):
        quad = (thermal.integral_I1(p, dr), i2, thermal.integral_I3(p, dr))
        errs = []
        for n in (16, 32, 64):
            sums = thermal.lattice_sum_oracle(n, p, dr)
            errs.append([abs(s - q) / abs(q) for s, q in zip(sums, quad)])
        errs = np.array(errs)
        within &= bool(np.all(errs[-1] < 0.02))
        dr_mono = bool(np.all(errs[1:] < errs[:-1]))
        monotone &= dr_mono
        if not dr_mono:
            notes.append(f"dr={dr} I1 rel err 16/32/64: " + "/".join(f"{e:.2g}" for e in errs[:, 0]))
    record(
        12,
        "quadrature anchor and lattice oracle",
        {
            "I2 = (sqrt(pi)/4) zeta(3/2)": abs(i2 - anchor) < 1e-6,
            "lattice n=64 within 2%": within,
            "monotone refinement 16->32->64": monotone,
        },
        f"I2={i2:.12f}; " + "; ".join(notes),
    )


if __name__ == "__main__":
    for name, func in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                func()
            except AssertionError:
                pass
