"""Examples, file formats, benchmark tables and the command line."""
from .bench import BenchRow, bench_tables
from .examples import BENCH_SETTINGS, example1, example2, example3, gen_example, tridiag
from .io import load_problem, save_problem, write_history, write_report
from .methods import METHODS, run_method

__all__ = [
    "BenchRow",
    "METHODS",
    "BENCH_SETTINGS",
    "bench_tables",
    "example1",
    "example2",
    "example3",
    "gen_example",
    "load_problem",
    "run_method",
    "save_problem",
    "tridiag",
    "write_history",
    "write_report",
]
