"""Command-line front end.

Every command builds its whole output in memory and writes it in one go, so
an error never leaves a partial table behind. Exit codes: 0 success,
2 invalid arguments, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta

from . import magnon, states, thermal, witness
from .qstate import EulerAngles, concurrence, reduced_density, rotate_block

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

COMMANDS = (
    "four-qubit",
    "correlated",
    "intelligent",
    "rotation",
    "magnon",
    "thermal-distance",
    "thermal-temp",
    "thermal-block",
    "oracle-suite",
)


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    params: dict
    results: dict = field(default_factory=dict)
    oracle: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "oracle": self.oracle,
            "warnings": self.warnings,
        }


@dataclass
class Table:
    header: list[str]
    rows: list[tuple]
    style: str = ""
    meta: dict = field(default_factory=dict)


# -- serialization --------------------------------------------------------------


def fmt_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) or isinstance(x, np.floating):
        return f"{float(x):.17g}"
    return str(x)


def _csv_field(value) -> str:
    text = fmt_number(value)
    if any(c in text for c in ',"\n\r'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def table_to_csv(table: Table) -> str:
    lines = [",".join(table.header)]
    lines += [",".join(_csv_field(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    return x


def to_json(obj: dict) -> str:
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def report_to_csv(report: Report) -> str:
    """Flatten ``results`` and ``oracle`` into ``section,key,value`` rows."""
    rows = []
    for section in ("results", "oracle"):
        for key, value in _flatten(getattr(report, section)):
            rows.append((section, key, value))
    for w in report.warnings:
        rows.append(("warnings", w.get("case", "warning") if isinstance(w, dict) else "warning", json.dumps(_jsonable(w))))
    return table_to_csv(Table(["section", "key", "value"], rows))


def _flatten(d: dict, prefix: str = ""):
    for key, value in d.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        elif isinstance(value, (list, tuple, np.ndarray)):
            for i, v in enumerate(value):
                yield f"{name}[{i}]", v
        elif isinstance(value, complex):
            yield name + ".re", value.real
            yield name + ".im", value.imag
        else:
            yield name, value


# -- plot scripts ---------------------------------------------------------------

_PLOT_TEMPLATE = """\
import csv
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, {csv_path!r}), newline="") as fh:
    rows = list(csv.DictReader(fh))

fig, ax = plt.subplots()
{body}
ax.axhline(0.0, color="grey", lw=0.8)
ax.set_xlabel({xlabel!r})
ax.set_ylabel("Q")
fig.tight_layout()
fig.savefig(os.path.join(here, {png!r}))
"""

_SINGLE_SERIES = """\
x = [float(r[{x!r}]) for r in rows]
y = [float(r["Q"]) for r in rows]
ax.plot(x, y, "o-", ms=3)"""

_MULTI_SERIES = """\
for dr in {series!r}:
    sel = [r for r in rows if float(r["dr_over_a"]) == dr]
    x = [float(r[{x!r}]) for r in sel]
    y = [float(r["Q"]) for r in sel]
    ax.plot(x, y, label=f"dr={{dr:g}}")
ax.legend()"""

PLOT_STYLES = {
    "distance": ("dr_over_a", "Δr/a"),
    "temperature": ("T_kelvin", "T [K]"),
    "block": ("m", "m"),
}


def emit_plot_script(table: Table, style: str, csv_path: str) -> str:
    """Matplotlib script that plots ``csv_path`` (relative to the script)."""
    if style not in PLOT_STYLES:
        raise UsageError(f"no plot style for this table: {style!r}")
    xcol, xlabel = PLOT_STYLES[style]
    series = table.meta.get("series")
    if series:
        body = _MULTI_SERIES.format(series=[float(s) for s in series], x=xcol)
    else:
        body = _SINGLE_SERIES.format(x=xcol)
    png = os.path.splitext(os.path.basename(csv_path))[0] + ".png"
    return _PLOT_TEMPLATE.format(csv_path=csv_path, body=body, xlabel=xlabel, png=png)


# -- commands -------------------------------------------------------------------


def _verdict(v: witness.WitnessVerdict) -> dict:
    return v.as_dict()


def cmd_four_qubit(args) -> Report:
    psi = states.four_qubit_example()
    v = witness.condition_two(psi, [0, 1], [2, 3], tolerance=args.tol)
    conc = concurrence(reduced_density(psi, [0, 2]))
    sides = witness.operator_sides(psi, [0, 1], [2, 3])
    rep = Report("four-qubit", {"blocks": [[0, 1], [2, 3]], "tol": args.tol})
    rep.results = {**_verdict(v), "concurrence_rho13": conc}
    rep.oracle = {"matrix_lhs": sides["two"][0], "matrix_rhs": sides["two"][1]}
    return rep


def cmd_correlated(args) -> Report:
    spec = states.geometric_coeffs(args.j, args.x)
    lhs, rhs = states.collective_sides(spec)
    s_lhs, s_rhs = states.single_spin_sides(spec)
    rep = Report("correlated", {"j": args.j, "x": args.x, "tol": args.tol})
    rep.results = {
        "collective": {"lhs": lhs, "rhs": rhs, "margin": lhs - rhs, "detected": lhs - rhs > args.tol},
        "single_spin": {"lhs": s_lhs, "rhs": s_rhs, "margin": s_lhs - s_rhs, "detected": s_lhs - s_rhs > args.tol},
    }
    if states.two_j(args.j) <= 4:
        a, b = states.correlated_blocks(spec)
        v = witness.condition_two(states.correlated_state(spec), a, b)
        rep.oracle = {"engine_lhs": math.sqrt(v.lhs), "engine_rhs": math.sqrt(max(v.rhs, 0.0))}
    else:
        rep.warnings.append({"case": "engine", "message": "exact engine skipped for j > 2"})
    return rep


def cmd_intelligent(args) -> Report:
    spec = states.IntelligentSpec(args.j, args.m0, args.lam)
    margin = states.intelligent_margin_closed_form(spec)
    rep = Report("intelligent", {"j": args.j, "m0": args.m0, "lambda": args.lam, "tol": args.tol})
    rep.results = {"margin": margin, "detected": margin > args.tol, "theta": spec.theta}
    e_lhs, e_rhs = states.intelligent_engine_sides(spec)
    psi = states.intelligent_state(spec)
    rep.oracle = {
        "engine_lhs": e_lhs,
        "engine_rhs": e_rhs,
        "engine_margin": e_lhs - e_rhs,
        "residual_stated_equation": states.intelligent_residual(psi, spec),
        "residual_product_equation": states.intelligent_product_residual(psi, spec),
    }
    diff = abs(margin - (e_lhs - e_rhs))
    if diff > 1e-8:
        rep.warnings.append(
            {"case": "intelligent_margin", "closed_form": margin, "oracle": e_lhs - e_rhs, "abs_diff": diff}
        )
    return rep


def cmd_rotation(args) -> Report:
    psi = states.adjacent_flip_state(args.j)
    m0 = witness.rotation_matrix(psi, [0], [1])
    angles = EulerAngles(args.alpha, args.beta, args.gamma)
    m1 = witness.rotation_matrix(rotate_block(psi, [0], angles), [0], [1])
    v0, v1 = witness.rotation_verdict(m0, args.tol), witness.rotation_verdict(m1, args.tol)
    rep = Report(
        "rotation",
        {"j": args.j, "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma, "tol": args.tol},
    )
    rep.results = {
        "eigenvalues": m0.eigenvalues,
        "detected": v0.detected,
        "rotated_eigenvalues": m1.eigenvalues,
        "rotated_detected": v1.detected,
        "old_condition_margin": witness.old_condition_rotated(args.j, args.alpha, args.beta),
        "old_condition_margin_corrected": witness.old_condition_rotated_corrected(args.j, args.alpha, args.beta),
    }
    old = witness.condition_one(rotate_block(psi, [0], angles), [0], [1])
    rep.oracle = {
        "eigenvalues_reference": np.linalg.eigvalsh(m0.m)[::-1],
        "old_condition_engine_margin": old.margin / args.j**2,
    }
    return rep


def cmd_magnon(args) -> Report:
    chain = magnon.ChainSpec(args.n_sites)
    blocks = magnon.BlockPair1D(args.block_size, args.offset)
    blocks.validate(chain)
    params = {"n_sites": args.n_sites, "k1_index": args.k1_index, "k2_index": args.k2_index,
              "block_size": args.block_size, "offset": args.offset, "kernel": args.kernel}
    rep = Report("magnon", params)
    if args.k2_index is None:
        v = magnon.single_magnon_verdict(chain, args.k1_index, blocks, args.tol)
        rep.results = {"amplitude": magnon.single_magnon_lhs(chain, args.k1_index, blocks), **_verdict(v)}
        if args.n_sites <= magnon.MAX_ENGINE_SITES:
            amp, ev = magnon.single_magnon_engine(chain, args.k1_index, blocks)
            rep.oracle = {"engine_amplitude": amp, "engine_lhs": ev.lhs, "engine_rhs": ev.rhs}
        return rep
    v = magnon.two_magnon_verdict(chain, args.k1_index, args.k2_index, blocks, args.kernel, args.tol)
    x, y = magnon.two_magnon_xy(chain, args.k1_index, args.k2_index, blocks.m, args.kernel)
    rep.results = {**_verdict(v), "x": x, "y": y}
    report = magnon.two_magnon_discrepancy(chain, args.k1_index, args.k2_index, blocks, args.kernel)
    rep.oracle = {"fock_lhs": report["oracle_lhs"], "fock_rhs": report["oracle_rhs"]}
    if not report["agree"]:
        rep.warnings.append(report)
    return rep


def _thermal_params(args) -> thermal.ThermalParams:
    return thermal.ThermalParams(args.tau, args.quad_tol)


def _constants(args) -> thermal.PhysicalConstants:
    return thermal.PhysicalConstants(args.D, args.a, args.kB)


def cmd_thermal_distance(args) -> Table:
    rows = thermal.scan_distance(_thermal_params(args), args.dr_max, args.dr_step, args.workers)
    if args.dr_step == 1.0:
        rows = [(int(round(d)), q) for d, q in rows]
    return Table(["dr_over_a", "Q"], rows, "distance")


def _tau_grid(args, constants) -> list[float]:
    if args.T_min is not None or args.T_max is not None:
        t_lo = args.T_min if args.T_min is not None else 1.0
        t_hi = args.T_max if args.T_max is not None else 500.0
        if not 0 < t_lo < t_hi:
            raise UsageError("need 0 < --T-min < --T-max")
        lo, hi = thermal.tau_from_kelvin(t_hi, constants), thermal.tau_from_kelvin(t_lo, constants)
    else:
        lo, hi = args.tau_min, args.tau_max
        if not 0 < lo < hi:
            raise UsageError("need 0 < --tau-min < --tau-max")
    if args.n_tau < 2:
        raise UsageError("--n-tau must be >= 2")
    return [float(t) for t in np.geomspace(lo, hi, args.n_tau)]


def cmd_thermal_temp(args) -> Table:
    constants = _constants(args)
    taus = _tau_grid(args, constants)
    drs = args.dr if args.dr else [1.0, 3.0, 10.0, 20.0]
    series = []
    for dr in drs:
        if dr < 0:
            raise UsageError("--dr must be >= 0")
        for tau, q in thermal.scan_temperature(dr, taus, args.quad_tol, args.workers):
            series.append((dr, tau, thermal.kelvin_from_tau(tau, constants), q))
    if len(drs) == 1:
        return Table(["tau", "T_kelvin", "Q"], [r[1:] for r in series], "temperature")
    return Table(["dr_over_a", "tau", "T_kelvin", "Q"], series, "temperature", {"series": drs})


def cmd_thermal_block(args) -> Table:
    rows = thermal.scan_block(_thermal_params(args), args.L, args.m_max)
    return Table(["m", "Q"], rows, "block")


ORACLE_TUPLES = ((12, 1, 2, 2, 3), (16, 1, 3, 3, 5), (16, 2, 5, 4, 6), (20, 1, 4, 2, 9), (24, 3, -2, 5, 7))


def oracle_suite(quad_tol: float = thermal.DEFAULT_QUAD_TOL) -> tuple[list[tuple], list[dict]]:
    """Closed form versus independent route for every module.

    Returns ``(rows, discrepancies)`` with rows
    ``(case, closed_form, oracle, abs_diff, rel_diff)``.
    """
    rows, issues = [], []

    def add(case, closed, oracle):
        diff = abs(closed - oracle)
        rows.append((case, float(closed), float(oracle), diff, diff / max(abs(oracle), 1e-300)))

    psi = states.four_qubit_example()
    v = witness.condition_two(psi, [0, 1], [2, 3])
    sides = witness.operator_sides(psi, [0, 1], [2, 3])
    add("four_qubit.lhs", v.lhs, sides["two"][0])
    add("four_qubit.rhs", v.rhs, sides["two"][1])

    for j in (0.5, 1.0, 1.5, 2.0):
        spec = states.geometric_coeffs(j, 0.9)
        lhs, rhs = states.collective_sides(spec)
        a, b = states.correlated_blocks(spec)
        ev = witness.condition_two(states.correlated_state(spec), a, b)
        add(f"correlated.lhs j={j:g} x=0.9", lhs, math.sqrt(ev.lhs))
        add(f"correlated.rhs j={j:g} x=0.9", rhs, math.sqrt(ev.rhs))

    for lam in (2.0, 3.0, 4.0):
        spec = states.IntelligentSpec(1.0, -1.0, lam)
        closed = states.intelligent_margin_closed_form(spec)
        engine = states.intelligent_margin_engine(spec)
        add(f"intelligent.margin j=1 m0=-1 lambda={lam:g}", closed, engine)
        if abs(closed - engine) > 1e-8:
            issues.append({"case": rows[-1][0], "closed_form": closed, "oracle": engine, "abs_diff": abs(closed - engine)})

    for j in (0.5, 1.0, 2.0):
        m = witness.rotation_matrix(states.adjacent_flip_state(j), [0], [1])
        ref = np.linalg.eigvalsh(m.m)[::-1]
        for i in range(3):
            add(f"rotation.eig[{i}] j={j:g}", m.eigenvalues[i], ref[i])

    for alpha, beta in ((0.3, 0.7), (1.1, 2.0)):
        psi_r = rotate_block(states.adjacent_flip_state(1.0), [0], EulerAngles(alpha, beta, 0.4))
        engine = witness.condition_one(psi_r, [0], [1]).margin
        add(f"old_condition j=1 alpha={alpha:g} beta={beta:g}",
            witness.old_condition_rotated_corrected(1.0, alpha, beta), engine)
        reference = witness.old_condition_rotated(1.0, alpha, beta)
        if abs(reference - engine) > 1e-8:
            issues.append({"case": f"old_condition[reference] alpha={alpha:g} beta={beta:g}",
                           "closed_form": reference, "oracle": engine, "abs_diff": abs(reference - engine)})

    chain = magnon.ChainSpec(10)
    blocks = magnon.BlockPair1D(2, 4)
    closed = magnon.single_magnon_lhs(chain, 1, blocks)
    amp, _ = magnon.single_magnon_engine(chain, 1, blocks)
    add("single_magnon.lhs N=10 n=1 m=2 L=4", abs(closed) ** 2, abs(amp) ** 2)

    for n_sites, n1, n2, m, L in ORACLE_TUPLES:
        ch, bl = magnon.ChainSpec(n_sites), magnon.BlockPair1D(m, L)
        for kernel in magnon.KERNELS:
            rep = magnon.two_magnon_discrepancy(ch, n1, n2, bl, kernel)
            add(rep["case"], rep["closed_form"], rep["oracle"])
            if not rep["agree"]:
                issues.append(rep)

    p = thermal.ThermalParams(7.0, quad_tol)
    add("thermal.I2 tau=7 vs Bose series", thermal.integral_I2(p), math.sqrt(math.pi) / 4 * zeta(1.5))
    for dr in (1, 5, 13):
        sums = thermal.lattice_sum_oracle(64, p, dr)
        quad = (thermal.integral_I1(p, dr), thermal.integral_I2(p), thermal.integral_I3(p, dr))
        for name, q, s in zip(("I1", "I2", "I3"), quad, sums):
            add(f"thermal.{name} tau=7 dr={dr} lattice n=64", q, s)
    return rows, issues


def cmd_oracle_suite(args) -> Table:
    rows, issues = oracle_suite(args.quad_tol)
    return Table(["case", "closed_form", "oracle", "abs_diff", "rel_diff"], rows, meta={"warnings": issues})


# -- argument parsing -----------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


class _Parser(argparse.ArgumentParser):
    """Turns argparse's usage dump into a single-line error."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinwitness", description="Block entanglement witnesses for spin systems.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def common(p, default_format):
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--out", default="-", help="output path, '-' for standard output")
        p.add_argument("--tol", type=float, default=witness.DEFAULT_TOL, help="detection tolerance on the margin")
        p.add_argument("--quad-tol", type=float, default=thermal.DEFAULT_QUAD_TOL)
        p.add_argument("--plot-script", default=None, help="write a matplotlib script for the table here")
        return p

    common(sub.add_parser("four-qubit", help="two-qubit witness on a four-qubit state"), "json")

    p = common(sub.add_parser("correlated", help="geometric correlated block states"), "json")
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--x", type=float, required=True)

    p = common(sub.add_parser("intelligent", help="intelligent-state witness margin"), "json")
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--m0", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)

    p = common(sub.add_parser("rotation", help="rotation-invariant 3x3 witness"), "json")
    p.add_argument("--j", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)

    p = common(sub.add_parser("magnon", help="one- and two-magnon witnesses"), "json")
    p.add_argument("--n-sites", type=_positive_int, required=True)
    p.add_argument("--k1-index", type=int, required=True)
    p.add_argument("--k2-index", type=int, default=None)
    p.add_argument("--block-size", type=_positive_int, required=True)
    p.add_argument("--offset", type=int, required=True)
    p.add_argument("--kernel", choices=magnon.KERNELS, default="cosine")

    def thermal_common(p):
        p.add_argument("--workers", type=_positive_int, default=1)
        p.add_argument("--D", type=float, default=thermal.PhysicalConstants.D_stiffness)
        p.add_argument("--a", type=float, default=thermal.PhysicalConstants.a_lattice)
        p.add_argument("--kB", type=float, default=thermal.PhysicalConstants.kB)

    p = common(sub.add_parser("thermal-distance", help="Q versus distance"), "csv")
    thermal_common(p)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--dr-max", type=float, required=True)
    p.add_argument("--dr-step", type=float, default=1.0)

    p = common(sub.add_parser("thermal-temp", help="Q versus temperature"), "csv")
    thermal_common(p)
    p.add_argument("--dr", type=float, nargs="+", default=None)
    p.add_argument("--tau-min", type=float, default=0.5)
    p.add_argument("--tau-max", type=float, default=10.0)
    p.add_argument("--T-min", type=float, default=None)
    p.add_argument("--T-max", type=float, default=None)
    p.add_argument("--n-tau", type=int, default=60)

    p = common(sub.add_parser("thermal-block", help="block Q versus block size"), "csv")
    thermal_common(p)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--L", type=_positive_int, required=True)
    p.add_argument("--m-max", type=_positive_int, required=True)
    p.add_argument("--m", type=_positive_int, default=None, help="single block size instead of a scan")

    common(sub.add_parser("oracle-suite", help="closed forms versus independent routes"), "csv")
    return parser


HANDLERS = {
    "four-qubit": cmd_four_qubit,
    "correlated": cmd_correlated,
    "intelligent": cmd_intelligent,
    "rotation": cmd_rotation,
    "magnon": cmd_magnon,
    "thermal-distance": cmd_thermal_distance,
    "thermal-temp": cmd_thermal_temp,
    "thermal-block": cmd_thermal_block,
    "oracle-suite": cmd_oracle_suite,
}


def _params_of(args) -> dict:
    skip = {"command", "format", "out", "plot_script"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def render(args) -> tuple[str, Table | None]:
    if args.command == "thermal-block" and args.m is not None:
        args.m_max = args.m
        table = cmd_thermal_block(args)
        table.rows = table.rows[-1:]
    else:
        table_or_report = HANDLERS[args.command](args)
        if isinstance(table_or_report, Report):
            rep = table_or_report
            text = to_json(rep.as_dict()) if args.format == "json" else report_to_csv(rep)
            return text, None
        table = table_or_report
    if args.format == "csv":
        return table_to_csv(table), table
    rep = Report(
        args.command,
        _params_of(args),
        {"columns": table.header, "rows": [list(r) for r in table.rows]},
        warnings=table.meta.get("warnings", []),
    )
    if args.command == "thermal-distance":
        negative = [r[0] for r in table.rows if r[1] < 0]
        rep.results["first_negative"] = negative[0] if negative else None
    return to_json(rep.as_dict()), table


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"spinwitness: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text, table = render(args)
        script = None
        if args.plot_script:
            if table is None or args.out == "-" or args.format != "csv":
                raise UsageError("--plot-script needs a thermal table written as CSV to --out")
            rel = os.path.relpath(os.path.abspath(args.out), os.path.dirname(os.path.abspath(args.plot_script)))
            script = emit_plot_script(table, table.style, rel)
        _write(args.out, text)
        if script is not None:
            _write(args.plot_script, script)
    except thermal.ConvergenceError as exc:
        print(f"spinwitness: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, UsageError, OSError, IndexError) as exc:
        print(f"spinwitness: error: {exc}".replace("\n", " "), file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())
