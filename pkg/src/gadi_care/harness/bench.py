"""Table runner: every (example, size, method) cell of a bench spec.

A bench spec is a JSON object::

    {"cases": [{"example": 1},
               {"example": 2, "omega": 0.015},
               {"example": 3, "n": [64, 128]}],
     "methods": ["newton-adi", "newton-gadi", "inexact-newton-adi", "inexact-newton-gadi"],
     "config": {"eps_out": 1e-8, "l_max": 1000}}

Per-case ``omega``, ``eta`` and ``init`` default to the example's
``BENCH_SETTINGS``; ``methods`` defaults to the four Newton variants.
"""
from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from ..care.config import SolverConfig
from ..exceptions import CareError
from .examples import BENCH_SETTINGS, gen_example
from .methods import METHODS, run_method

logger = logging.getLogger(__name__)

DEFAULT_METHODS = ("newton-adi", "newton-gadi", "inexact-newton-adi", "inexact-newton-gadi")


@dataclass
class BenchRow:
    example: int
    n: int
    method: str
    omega_star: float
    nres_final: float
    it_out: int
    it_ave: float
    it_cumul: int
    cpu_seconds: float
    termination: str = ""
    error: str = ""


HEADER = [f.name for f in fields(BenchRow)]


def _cells(spec: dict):
    methods = spec.get("methods") or list(DEFAULT_METHODS)
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r} in bench spec")
    for case in spec.get("cases", []):
        eid = int(case["example"])
        sizes = case.get("n", [None])
        if not isinstance(sizes, list):
            sizes = [sizes]
        for n in sizes:
            for m in methods:
                yield eid, n, m, case


def _run_cell(eid, n, method, case, base: dict) -> BenchRow:
    settings = dict(BENCH_SETTINGS.get(eid, {}))
    settings.update({k: case[k] for k in ("omega", "eta", "init") if k in case})
    omega = 0.0 if method.endswith("-adi") else float(settings.get("omega", 1.0))
    try:
        P = gen_example(eid, n)
        kwargs = {**base, **case.get("config", {})}
        kwargs.update(
            omega=omega,
            eta=settings.get("eta") if method.startswith("inexact") else None,
            init=settings.get("init", "algorithm_step1"),
        )
        rep = run_method(method, P, SolverConfig(**kwargs))
    except (CareError, ValueError, TypeError, ArithmeticError) as exc:
        logger.warning("bench cell example=%s n=%s %s failed: %s", eid, n, method, exc)
        return BenchRow(eid, n or 0, method, omega, float("nan"), 0, 0.0, 0, 0.0, "error", str(exc))
    return BenchRow(
        example=eid,
        n=P.n,
        method=method,
        omega_star=omega,
        nres_final=rep.final_nres,
        it_out=rep.it_out,
        it_ave=rep.it_ave,
        it_cumul=rep.it_cumul,
        cpu_seconds=rep.wall_time,
        termination=rep.termination,
    )


def bench_tables(spec: dict, out_dir=None, jobs: int = 1) -> list[BenchRow]:
    """Run every cell of ``spec``; write ``bench.csv`` plus one
    ``table_example<id>.csv`` per example when ``out_dir`` is given.

    Cells whose solve raises are kept with ``termination="error"``. Rows come
    back in spec order whatever ``jobs`` is.
    """
    base = dict(spec.get("config", {}))
    cells = list(_cells(spec))
    if jobs > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda c: _run_cell(*c, base), cells))
    else:
        rows = [_run_cell(*c, base) for c in cells]
    if out_dir is not None:
        write_rows(rows, out_dir)
    return rows


def write_rows(rows: list[BenchRow], out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [_write_csv(rows, out / "bench.csv")]
    for eid in sorted({r.example for r in rows}):
        paths.append(_write_csv([r for r in rows if r.example == eid], out / f"table_example{eid}.csv"))
    return paths


def _write_csv(rows, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=HEADER)
        w.writeheader()
        for r in rows:
            w.writerow(asdict(r))
    return path


def load_spec(path) -> dict:
    with open(path) as fh:
        spec = json.load(fh)
    if not isinstance(spec, dict):
        raise ValueError("bench spec must be a JSON object")
    return spec
