"""
Command-line entry point.

    qzeno matrix --k 100 [--intelligent]
    qzeno trajectory --k 100 --trials 100000 --seed 0 --initial 00
    qzeno robustness --table | --k 100 --eps 0.5
    qzeno cluster --n 4 --k 1000
    qzeno phys --delta 1.0 --tau 0.0111

Reports go to stdout (or ``--out``) as JSON, or CSV with ``--format csv``.
Exit codes: 0 success, 2 usage error, 3 numerical-contract violation.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import core, qstate
from .cluster import MAX_QUBITS, grow_chain
from .errors import ContractError
from .physmodel import FEASIBILITY_NOTE, FluxParams, bell_time, continuous_run, physical_schedule, theta_from_physics
from .report import Report
from .robustness import DEFAULT_EPS, DEFAULT_KS, DEFAULT_TRIALS, RobustnessConfig, ps_random, table1_report
from .sampling import RngSeed
from .trajectory import estimate_success, no_click_branch, w_schedule

INITIAL_STATES = {
    "00": lambda: qstate.ket("00"),
    "01": lambda: qstate.ket("01"),
    "10": lambda: qstate.ket("10"),
    "psi+": qstate.psi_plus,
    "psi-": qstate.psi_minus,
}


class UsageError(Exception):
    pass


def _theta(value: str, k: int) -> float:
    if value == "auto":
        # k = 0 only ever asks for the identity
        return core.auto_theta(k) if k > 0 else 0.0
    try:
        return float(value)
    except ValueError:
        raise UsageError(f"--theta must be a number or 'auto', got {value!r}") from None


def _initial(token: str) -> tuple[str, np.ndarray]:
    token = token.replace("−", "-")
    if token not in INITIAL_STATES:
        raise UsageError(f"unknown initial state {token!r}; choose from {', '.join(INITIAL_STATES)}")
    return token, INITIAL_STATES[token]()


def _seed(value: int) -> RngSeed:
    try:
        return RngSeed(value)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_matrix(args) -> Report:
    if args.k < 0:
        raise UsageError("--k must be >= 0")
    theta = _theta(args.theta, args.k)
    if args.intelligent:
        if args.k <= 0 or args.k % 2:
            raise UsageError("--intelligent needs a positive even --k")
        m = core.intelligent_evolution(args.k, theta)
    else:
        m = core.matrix_power(core.build_w(theta), args.k)
    results = {
        "k": args.k,
        "theta": theta,
        "intelligent": args.intelligent,
        "basis": ["00", "10", "01"],
        "matrix": m,
        "success_prob": {
            "00": core.success_probability(m, core.KET_00),
            "10": core.success_probability(m, core.KET_10),
        },
    }
    return Report("matrix", {"k": args.k, "theta": args.theta, "intelligent": args.intelligent}, results)


def cmd_trajectory(args) -> Report:
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    theta = _theta(args.theta, args.k)
    name, initial = _initial(args.initial)
    sch = w_schedule(args.k, theta)
    mean, stderr = estimate_success(sch, initial, args.trials, _seed(args.seed))
    _, analytic = no_click_branch(sch, initial)
    inputs = {"k": args.k, "theta": args.theta, "trials": args.trials, "seed": args.seed, "initial": name}
    results = {"k": args.k, "theta": theta, "initial": name, "trials": args.trials, "seed": args.seed,
               "mean": mean, "stderr": stderr, "analytic": analytic}
    return Report("trajectory", inputs, results)


def cmd_robustness(args) -> Report:
    seed = _seed(args.seed)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.table:
        ks, eps_list = args.ks, args.eps_list
    else:
        if args.k is None or args.eps is None:
            raise UsageError("give --table, or both --k and --eps")
        ks, eps_list = [args.k], [args.eps]
    if any(e < 0 for e in eps_list):
        raise UsageError("error bounds must be >= 0")
    if any(k <= 0 or k % 2 for k in ks):
        raise UsageError("k values must be positive and even")
    if args.table:
        cells = table1_report(ks, eps_list, args.trials, seed)
    else:
        cells = [ps_random(RobustnessConfig(ks[0], eps_list[0], args.trials, seed))]
    inputs = {"ks": list(ks), "eps": list(eps_list), "trials": args.trials, "seed": args.seed, "table": args.table}
    return Report("robustness", inputs, {"cells": [c.as_dict() for c in cells]})


def cmd_cluster(args) -> Report:
    if not 2 <= args.n <= MAX_QUBITS:
        raise UsageError(f"--n must be between 2 and {MAX_QUBITS}")
    if args.k <= 0 or args.k % 2:
        raise UsageError("--k must be a positive even integer")
    steps = []
    for r in grow_chain(args.n, args.k):
        n_to = qstate.n_qubits(r.state)
        steps.append({
            "n_from": n_to - 1,
            "n_to": n_to,
            "success_prob": r.success_prob,
            "oracle_fidelity": r.oracle_fidelity,
            "corrections": ";".join(f"q{q}:{label}" for q, label in r.corrections.items()),
        })
    return Report("cluster", {"n": args.n, "k": args.k, "seed": args.seed}, {"steps": steps})


def cmd_phys(args) -> Report:
    if args.time == "auto":
        if args.delta <= 0:
            raise UsageError("--time auto needs --delta > 0")
        total = bell_time(args.delta)
    else:
        try:
            total = float(args.time)
        except ValueError:
            raise UsageError(f"--time must be a number or 'auto', got {args.time!r}") from None
    try:
        params = FluxParams(args.delta, args.tau, total)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    initial = qstate.ket("00")
    outcome = continuous_run(params, initial, _seed(args.seed))
    _, analytic = no_click_branch(physical_schedule(params), initial)
    fid = qstate.fidelity(outcome.final_state, qstate.psi_plus()) if outcome.survived else None
    results = {
        "theta": theta_from_physics(params),
        "n_steps": params.n_steps,
        "bell_time": bell_time(args.delta) if args.delta > 0 else None,
        "status": outcome.status,
        "click_step": outcome.click_step,
        "cumulative_prob": outcome.cumulative_prob,
        "analytic_success": analytic,
        "fidelity_psi_plus": fid,
        "note": FEASIBILITY_NOTE,
    }
    inputs = {"delta": args.delta, "tau": args.tau, "time": args.time, "total_time": total, "seed": args.seed}
    return Report("phys", inputs, results)


def _csv_list(kind):
    def parse(text: str):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json", help="report format (default: json)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true",
                        help="record wall-clock seconds in the report (makes output run-dependent)")

    parser = argparse.ArgumentParser(prog="qzeno", description="Two-qubit Zeno entanglement simulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common], help="M^k or M^(k/2) P M^k on the J0 subspace")
    p.add_argument("--k", type=int, default=100, help="number of W steps (default: 100)")
    p.add_argument("--theta", default="auto", help="step angle in radians, or 'auto' = pi/(2 sqrt2 k)")
    p.add_argument("--intelligent", action="store_true", help="build M^(k/2) P M^k instead of M^k")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("trajectory", parents=[common], help="Monte Carlo success rate of k W steps")
    p.add_argument("--k", type=int, default=100, help="number of W steps (default: 100)")
    p.add_argument("--theta", default="auto", help="step angle in radians, or 'auto'")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help=f"trajectories (default: {DEFAULT_TRIALS})")
    p.add_argument("--seed", type=int, default=0, help="master seed (default: 0)")
    p.add_argument("--initial", default="00", help="00, 01, 10, psi+ or psi- (default: 00)")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("robustness", parents=[common], help="P_s under random rotation errors")
    p.add_argument("--table", action="store_true", help="compute the full k x eps grid")
    p.add_argument("--k", type=int, default=None, help="single cell: even k")
    p.add_argument("--eps", type=float, default=None, help="single cell: max error as a fraction of theta")
    p.add_argument("--ks", type=_csv_list(int), default=list(DEFAULT_KS), help="grid k values (default: 50,100,1000)")
    p.add_argument("--eps-list", type=_csv_list(float), default=list(DEFAULT_EPS),
                   help="grid error bounds (default: 0,0.05,0.1,0.2,0.5)")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help=f"trials per cell (default: {DEFAULT_TRIALS})")
    p.add_argument("--seed", type=int, default=0, help="master seed (default: 0)")
    p.set_defaults(func=cmd_robustness)

    p = sub.add_parser("cluster", parents=[common], help="grow a linear cluster state from |+>")
    p.add_argument("--n", type=int, default=3, help=f"final chain length, 2..{MAX_QUBITS} (default: 3)")
    p.add_argument("--k", type=int, default=1000, help="even k per expansion, theta = pi/(2 sqrt2 k) (default: 1000)")
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the no-click branch is deterministic")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("phys", parents=[common], help="flux-qubit run: sigma_x evolution with frequent J-measurements")
    p.add_argument("--delta", type=float, default=1.0, help="tunneling amplitude (angular frequency, default: 1)")
    p.add_argument("--tau", type=float, default=float(np.pi / (200 * np.sqrt(2))),
                   help="time between J-measurements (default: pi/(200 sqrt2))")
    p.add_argument("--time", default="auto", help="total time, or 'auto' = pi/(2 sqrt2 delta)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default: 0)")
    p.set_defaults(func=cmd_phys)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qzeno {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ContractError as exc:
        print(f"qzeno {args.command}: numerical contract violated: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"qzeno {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        report.timing = {"wall_seconds": time.perf_counter() - start}
    text = report.to_csv() if args.format == "csv" else report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
