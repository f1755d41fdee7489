"""Problem files, solve reports and iteration histories.

A problem file is one JSON document::

    {"n": 2, "name": "...", "source": "...",
     "A": [[[re, im], [re, im]], [[re, im], [re, im]]],
     "K": [...], "Q": [...]}

Every complex entry is an ``[re, im]`` pair. Floats are written with
``repr`` precision so a save/load round trip is bit-exact.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from ..care.config import SolveReport
from ..care.problem import CareProblem
from ..exceptions import HermitianViolation, NonHermitianData, ParseError, ShapeError

HISTORY_HEADER = ["k", "nres", "inner_steps", "alpha", "lyap_residual"]


def encode_matrix(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M)]


def decode_matrix(data, field: str, n: int) -> np.ndarray:
    if not isinstance(data, list) or len(data) != n:
        got = len(data) if isinstance(data, list) else type(data).__name__
        raise ShapeError(f"field {field!r}: expected {n} rows, got {got}")
    M = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise ShapeError(f"field {field!r}, row {i}: expected {n} entries")
        for j, pair in enumerate(row):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ShapeError(f"field {field!r}, entry [{i}][{j}]: expected an [re, im] pair")
            re, im = pair
            if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair):
                raise ParseError(f"field {field!r}, entry [{i}][{j}]: non-numeric value {pair!r}")
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ParseError(f"field {field!r}, entry [{i}][{j}]: non-finite value {pair!r}")
            M[i, j] = complex(re, im)
    return M


def problem_to_dict(P: CareProblem, source: str = "") -> dict:
    d = {"n": P.n, "name": P.name}
    if source:
        d["source"] = source
    d.update(A=encode_matrix(P.A), K=encode_matrix(P.K), Q=encode_matrix(P.Q))
    return d


def problem_from_dict(data: dict) -> CareProblem:
    if not isinstance(data, dict):
        raise ParseError("problem file must hold a JSON object")
    missing = [k for k in ("n", "A", "K", "Q") if k not in data]
    if missing:
        raise ParseError(f"problem file is missing field(s) {', '.join(missing)}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"field 'n' must be a positive integer, got {n!r}")
    mats = {k: decode_matrix(data[k], k, n) for k in ("A", "K", "Q")}
    try:
        return CareProblem(mats["A"], mats["K"], mats["Q"], name=str(data.get("name", "")))
    except NonHermitianData as exc:
        raise HermitianViolation(str(exc)) from exc


def save_problem(P: CareProblem, path, source: str = "") -> None:
    Path(path).write_text(json.dumps(problem_to_dict(P, source), indent=1) + "\n")


def load_problem(path) -> CareProblem:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read problem file ({exc.strerror or exc})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return problem_from_dict(data)
    except (ParseError, ShapeError) as exc:
        raise type(exc)(f"{path}: {exc}") from exc


def write_report(report: SolveReport, path, extra: dict | None = None) -> None:
    d = report.to_dict()
    if extra:
        d.update(extra)
    Path(path).write_text(json.dumps(d, indent=1, default=_jsonable) + "\n")


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return encode_matrix(obj) if obj.ndim == 2 else obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_history(report: SolveReport, path) -> None:
    """One CSV row per Newton step: ``k,nres,inner_steps,alpha,lyap_residual``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(HISTORY_HEADER)
        for k, (nres, inner, alpha, lyap) in enumerate(
            zip(report.nres_history, report.inner_counts, report.alpha_history, report.lyap_residuals)
        ):
            w.writerow([k, repr(nres), inner, repr(alpha), repr(lyap)])
