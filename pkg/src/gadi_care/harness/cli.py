"""Command line entry point: ``solve``, ``bench`` and ``analyze``.

Exit codes: 0 when the solve converged, 2 when it stopped on an iteration cap
or diverged, 1 on usage, input or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from ..care.config import SolverConfig
from ..care.newton import initial_guess
from ..care.problem import CareProblem
from ..exceptions import CareError
from ..oracle.iteration import build_iteration_matrix, compare_adi_gadi
from .bench import bench_tables, load_spec
from .examples import BENCH_SETTINGS, gen_example
from .io import load_problem, write_history, write_report
from .methods import METHODS, run_method

EXIT_OK, EXIT_USAGE, EXIT_NOT_CONVERGED = 0, 1, 2

INIT_FLAGS = {"step1": "algorithm_step1", "step1-negated": "algorithm_step1_negated", "zero": "zero"}
ETA_FLAGS = {"k3": "inverse_cubic", "k4": "inverse_quartic"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags, which would collide with
    # the "not converged" code
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _alpha(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a number, got {text!r}") from None


def _eta(text: str):
    if text in ETA_FLAGS:
        return ETA_FLAGS[text]
    if text.startswith("const:"):
        try:
            return float(text[6:])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected k3, k4 or const:VALUE, got {text!r}")


def _add_problem_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--problem", help="problem file (JSON)")
    src.add_argument("--example", type=int, choices=(1, 2, 3), help="built-in example")
    p.add_argument("--n", type=int, help="size of example 3")
    p.add_argument("--init", choices=sorted(INIT_FLAGS), help="initial guess policy")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gadi-care", description="Newton-GADI solvers for the complex CARE.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve one CARE")
    _add_problem_args(s)
    s.add_argument("--method", required=True, choices=METHODS)
    s.add_argument("--omega", type=float, help="relaxation parameter (default: example setting or 1)")
    s.add_argument("--alpha", type=_alpha, default="auto")
    s.add_argument("--eps-out", type=float, default=1e-8)
    s.add_argument("--eps-inn", type=float, default=1e-8)
    s.add_argument("--lmax", type=int, default=1000)
    s.add_argument("--kmax", type=int, default=1000)
    s.add_argument("--eta", type=_eta, help="forcing term: k3, k4 or const:VALUE")
    s.add_argument("--symmetrize", action="store_true", help="project inner iterates onto Hermitian matrices")
    s.add_argument("--report", help="write the full solve report (JSON)")
    s.add_argument("--history", help="write the per-step history (CSV)")

    b = sub.add_parser("bench", help="run a benchmark table spec")
    b.add_argument("--spec", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--jobs", type=int, default=1)

    a = sub.add_parser("analyze", help="spectral report of the GADI iteration matrices (n <= 16)")
    _add_problem_args(a)
    a.add_argument("--alpha", type=_alpha, default="auto")
    a.add_argument("--omega", type=float, required=True)
    return parser


def _load(args) -> tuple[CareProblem, dict]:
    if args.problem is not None:
        return load_problem(args.problem), {}
    if args.example == 3 and args.n is None:
        raise UsageError("--example 3 needs --n")
    return gen_example(args.example, args.n), dict(BENCH_SETTINGS[args.example])


def _init(args, settings: dict):
    if args.init is not None:
        return INIT_FLAGS[args.init]
    return settings.get("init", "algorithm_step1")


def _cmd_solve(args) -> int:
    P, settings = _load(args)
    omega = args.omega if args.omega is not None else settings.get("omega", 1.0)
    eta = args.eta if args.eta is not None else settings.get("eta") if args.method.startswith("inexact") else None
    cfg = SolverConfig(
        eps_out=args.eps_out,
        eps_inn=args.eps_inn,
        l_max=args.lmax,
        k_max=args.kmax,
        omega=omega,
        alpha=args.alpha,
        eta=eta,
        init=_init(args, settings),
        symmetrize_iterates=args.symmetrize,
    )
    rep = run_method(args.method, P, cfg)
    if args.report:
        write_report(rep, args.report, extra={"problem": P.name, "n": P.n})
    if args.history:
        write_history(rep, args.history)
    print(
        f"{rep.method}: {rep.termination}  NRes={rep.final_nres:.4e}  "
        f"it_out={rep.it_out}  it_cumul={rep.it_cumul}  time={rep.wall_time:.3f}s"
    )
    return EXIT_OK if rep.converged else EXIT_NOT_CONVERGED


def _cmd_bench(args) -> int:
    rows = bench_tables(load_spec(args.spec), out_dir=args.out, jobs=args.jobs)
    for r in rows:
        print(f"ex{r.example} n={r.n} {r.method}: {r.termination} NRes={r.nres_final:.3e} "
              f"it_out={r.it_out} it_cumul={r.it_cumul}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    P, settings = _load(args)
    X0 = initial_guess(P, _init(args, settings))
    A_0 = P.K @ X0 - P.A
    alpha = float(np.linalg.norm(A_0, 2)) if args.alpha == "auto" else args.alpha
    bundle = build_iteration_matrix(A_0, alpha, args.omega)
    out = {
        "problem": P.name,
        "n": P.n,
        "alpha": alpha,
        "omega": args.omega,
        "rho_T_alpha": bundle.rho_T_alpha,
        "rho_T_alpha_omega": bundle.rho_T_alpha_omega,
        "rho_bound": bundle.rho_bound,
    }
    try:
        cmp = compare_adi_gadi(A_0, alpha, args.omega)
    except CareError as exc:
        out["comparison"] = {"error": str(exc)}
    else:
        out["comparison"] = {
            "case": cmp.case,
            "eta": [cmp.eta.real, cmp.eta.imag],
            "zeta": [cmp.zeta.real, cmp.zeta.imag],
            "omega_window_upper": cmp.omega_window_upper if np.isfinite(cmp.omega_window_upper) else None,
            "consistent": cmp.consistent,
        }
    print(json.dumps(out, indent=1))
    return EXIT_OK


COMMANDS = {"solve": _cmd_solve, "bench": _cmd_bench, "analyze": _cmd_analyze}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (CareError, ValueError, OSError) as exc:
        print(f"gadi-care: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
