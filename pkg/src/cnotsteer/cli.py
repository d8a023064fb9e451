"""Command-line front end.

Commands regenerate the package's reference tables, gates, and trajectories
as CSV/JSON files, and run the verification suite:

    cnotsteer table1      --out table1.csv
    cnotsteer table2      --out table2.csv
    cnotsteer gate        --mode one-step --delta 1.0 --out gate.json
    cnotsteer trajectory  --delta 1.0 --samples 2048 --out traj.csv
    cnotsteer verify

Output is deterministic for a fixed ``--seed``: repeated runs produce
byte-identical files.  CSV values are printed with six fixed decimals and
always carry a header row; cells that have no value (for example the
single-step columns beyond their detuning bound) are left empty.

Exit codes: 0 success, 2 domain error (for example detuning out of range),
3 I/O error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .equivclass import (
    cnot_distance,
    makhlin_invariants,
    trajectory_to_csv,
    weyl_coordinates,
    weyl_trajectory,
)
from .model import SystemParams
from .optimize import calibrate_single_step, calibrate_two_step
from .sequences import (
    CNOT,
    DetuningOutOfRangeError,
    FidelityUndefinedError,
    GateRecipe,
    UnsupportedCouplingError,
    fit_local_rotations,
    matrix_to_json,
    single_step_u,
    two_step_entangler,
    two_step_time,
)
from .propagate import entangling_u_frame1, entangling_u_frame2
from .verify import run_checks

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_VERIFY = 4

#: Environment variable that prefixes relative output paths.
OUTDIR_ENV = "CNOTSTEER_OUTDIR"

_TABLE_GRID = [round(0.1 * k, 1) for k in range(21)]  # 0.0 .. 2.0
_TABLE2_GRID = [round(1.0 + 0.1 * k, 1) for k in range(11)]  # 1.0 .. 2.0


def _out_path(arg: str) -> Path:
    path = Path(arg)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    return path


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


class _IOFailure(RuntimeError):
    pass


def _fmt(value: float | None) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return f"{value:.6f}"


def cmd_table1(args: argparse.Namespace) -> int:
    """Gate parameters for an ideal CNOT over the detuning grid 0.0-2.0.

    Columns: two-step time multiple T2 for all rows; single-step (T1,
    omega1/g) only where the single-step sequence reaches the CNOT class
    exactly (|delta| <= g), blank elsewhere.
    """
    lines = ["delta_over_g,T2,T1,omega1_over_g"]
    for delta in _TABLE_GRID:
        t2 = calibrate_two_step(delta).t_units
        if delta <= 1.0 + 1e-12:
            cal = calibrate_single_step(delta)
            lines.append(f"{delta:.2f},{_fmt(t2)},{_fmt(cal.t_units)},{_fmt(cal.omega1_over_g)}")
        else:
            lines.append(f"{delta:.2f},{_fmt(t2)},,")
    _write(_out_path(args.out), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_table2(args: argparse.Namespace) -> int:
    """Closest-to-CNOT single-step parameters for detunings 1.0-2.0."""
    lines = ["delta_over_g,T1,omega1_over_g,G1,G2"]
    for delta in _TABLE2_GRID:
        cal = calibrate_single_step(delta)
        assert cal.invariants is not None
        lines.append(
            f"{delta:.2f},{_fmt(cal.t_units)},{_fmt(cal.omega1_over_g)},"
            f"{_fmt(cal.invariants.g1.real)},{_fmt(cal.invariants.g2)}"
        )
    _write(_out_path(args.out), "\n".join(lines) + "\n")
    return EXIT_OK


def _gate_payload(args: argparse.Namespace) -> dict:
    delta = args.delta
    if args.mode == "two-step":
        p = SystemParams.from_ratios(delta_over_g=delta)
        t = two_step_time(p)
        segment = entangling_u_frame1(t, p) if args.frame == 1 else entangling_u_frame2(t, p)
        entangler = two_step_entangler(p, frame=args.frame)
        t_for_recipe = t
    else:
        cal = calibrate_single_step(delta)
        p = SystemParams.from_ratios(delta_over_g=delta, omega1_over_g=cal.omega1_over_g)
        t_for_recipe = cal.t_units * math.pi / 2.0
        segment = single_step_u(t_for_recipe, p)
        entangler = segment

    fit = fit_local_rotations(entangler, CNOT, seed=args.seed)
    gate = fit.rotations.realize(entangler)
    recipe = GateRecipe(
        kind=args.mode, params=p, t=t_for_recipe, rotations=fit.rotations
    )
    inv = makhlin_invariants(entangler)
    weyl = weyl_coordinates(entangler)
    payload = {
        "recipe": recipe.to_json_dict(),
        "frame": args.frame if args.mode == "two-step" else None,
        "entangling_matrix": matrix_to_json(segment),
        "gate_matrix": matrix_to_json(gate),
        "invariants": {"g1_re": inv.g1.real, "g1_im": inv.g1.imag, "g2": inv.g2},
        "class_distance_sq": cnot_distance(inv),
        "weyl_point": {"c1": weyl.c1, "c2": weyl.c2, "c3": weyl.c3},
        "frobenius_distance_to_cnot": fit.distance,
        "fidelity": fit.fidelity,
        "seed": args.seed,
    }
    return payload


def cmd_gate(args: argparse.Namespace) -> int:
    """Calibrate, fit rotations, and dump the full gate description as JSON."""
    payload = _gate_payload(args)
    _write(_out_path(args.out), json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_trajectory(args: argparse.Namespace) -> int:
    """Steering trajectory of the calibrated single-step gate at --delta.

    Writes ``t,c1,c2,c3`` (t in units of pi/2g, c in units of pi/2).  With
    ``--with-resonant-trace`` a companion file ``<stem>.resonant<suffix>``
    holds the resonant (delta = 0) trace over the same number of samples.
    """
    cal = calibrate_single_step(args.delta)
    p = SystemParams.from_ratios(delta_over_g=args.delta, omega1_over_g=cal.omega1_over_g)
    samples = weyl_trajectory(p, cal.t_units * math.pi / 2.0, args.samples)
    out = _out_path(args.out)
    _write(out, trajectory_to_csv(samples))
    if args.with_resonant_trace:
        cal0 = calibrate_single_step(0.0)
        p0 = SystemParams.from_ratios(delta_over_g=0.0, omega1_over_g=cal0.omega1_over_g)
        res_samples = weyl_trajectory(p0, cal0.t_units * math.pi / 2.0, args.samples)
        res_path = out.with_name(out.stem + ".resonant" + out.suffix)
        _write(res_path, trajectory_to_csv(res_samples))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the property suite and report one line per check."""
    results = run_checks(seed=args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed:", ", ".join(r.name for r in failed))
        return EXIT_VERIFY
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnotsteer",
        description="Calibrate and verify CNOT gates for detuned, weakly coupled qubits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=42,
                       help="seed for randomized search/restarts")

    p1 = sub.add_parser("table1", help="ideal-CNOT gate parameters vs detuning (CSV)")
    p1.add_argument("--out", default="table1.csv")
    add_common(p1)
    p1.set_defaults(func=cmd_table1)

    p2 = sub.add_parser("table2", help="closest-class single-step parameters (CSV)")
    p2.add_argument("--out", default="table2.csv")
    add_common(p2)
    p2.set_defaults(func=cmd_table2)

    pg = sub.add_parser("gate", help="calibrated gate, rotations and fidelity (JSON)")
    pg.add_argument("--mode", choices=["one-step", "two-step"], default="one-step")
    pg.add_argument("--delta", type=float, required=True, help="detuning in units of g")
    pg.add_argument("--frame", type=int, choices=[1, 2], default=1)
    pg.add_argument("--out", default="gate.json")
    add_common(pg)
    pg.set_defaults(func=cmd_gate)

    pt = sub.add_parser("trajectory", help="Weyl-chamber steering trajectory (CSV)")
    pt.add_argument("--delta", type=float, required=True, help="detuning in units of g")
    pt.add_argument("--samples", type=int, default=2048)
    pt.add_argument("--out", default="trajectory.csv")
    pt.add_argument("--with-resonant-trace", action="store_true")
    add_common(pt)
    pt.set_defaults(func=cmd_trajectory)

    pv = sub.add_parser("verify", help="run the invariant/property suite")
    add_common(pv)
    pv.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DetuningOutOfRangeError, UnsupportedCouplingError, FidelityUndefinedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
