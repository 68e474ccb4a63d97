"""Batched random trials and the four reproduction tables.

Table 1: mean certified error at fixed k=50 for each n.
Table 2: mean certified error per fixed k, pooled over every n >= k.
Table 3: free-capacity trials, mean error, solve time and greedy k per n.
Table 4: mean greedy first-reject error per fixed k, pooled as in Table 2,
next to the 0.5/k reference.

Trial ``t`` of cell ``(n, k)`` uses seed ``derive_seed(seed, n, k, t)``
(``k = 0`` for free capacity), so Tables 2 and 4 see the same instances
and results do not depend on scheduling. Worker processes are enabled
with the ``XDPKNAP_WORKERS`` environment variable.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .core import Instance, sort_by_ratio
from .greedy import greedy_plus
from .instgen import GenerationError, TrialConfig, derive_seed, generate
from .xdp import DEFAULT_G, xdp_solve

N_POOL = (10, 100, 1_000, 10_000, 100_000)

SCALES = {
    "desk": {
        1: {"n_list": (100, 1_000, 10_000), "trials": 200},
        2: {"k_list": (5, 50, 500), "trials": 100},
        3: {"n_list": (1_000, 10_000, 100_000), "trials": 50},
        4: {"k_list": (5, 50, 500), "trials": 100},
    },
    "paper": {
        1: {"n_list": (100, 1_000, 10_000, 100_000), "trials": 1000},
        2: {"k_list": (5, 50, 500, 5_000, 50_000), "trials": 1000},
        3: {"n_list": (10, 100, 1_000, 10_000, 100_000, 1_000_000), "trials": 1000},
        4: {"k_list": (5, 50, 500, 5_000, 50_000), "trials": 1000},
    },
}


@dataclass(frozen=True)
class TrialResult:
    n: int
    k: int
    e: float
    gefr: float
    runtime_seconds: float
    added_after_reject: int


@dataclass(frozen=True)
class TrialStats:
    table: int
    n: str
    k_mode: str
    k: Optional[int]
    trials: int
    failures: int
    mean_e: float
    mean_gefr: float
    mean_k: float
    mean_runtime_seconds: float
    e_times_k: float
    gefr_reference: Optional[float]

    @property
    def n_values(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.n.split(";"))


RUNTIME_FIELDS = ("mean_runtime_seconds",)


def solve_trial(inst: Instance, g: float = DEFAULT_G) -> TrialResult:
    """Solve one instance; the timed span is sort + greedy + XDP + backtrack."""
    t0 = time.perf_counter()
    order = sort_by_ratio(inst)
    rep = greedy_plus(inst, order)
    sol = xdp_solve(inst, order, g, greedy=rep)
    elapsed = time.perf_counter() - t0
    return TrialResult(inst.n, rep.k, sol.e, rep.gefr, elapsed, rep.added_after_reject)


def _run_job(job):
    cfg, g = job
    try:
        inst = generate(cfg)
    except GenerationError:
        return None
    return solve_trial(inst, g)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("XDPKNAP_WORKERS", "1")))
    except ValueError:
        return 1


def run_cell(n: int, trials: int, seed: int, fixed_k: Optional[int] = None,
             g: float = DEFAULT_G, workers: Optional[int] = None) -> list[Optional[TrialResult]]:
    """Run ``trials`` seeded trials at size ``n``; failed generations are ``None``."""
    jobs = [(TrialConfig(n, derive_seed(seed, n, fixed_k or 0, t), fixed_k), g) for t in range(trials)]
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs, chunksize=max(1, trials // (4 * workers))))


def _mean(values: Iterable[float]) -> float:
    vals = list(values)
    return math.fsum(vals) / len(vals)


def aggregate(table: int, results: Sequence[Optional[TrialResult]], fixed_k: Optional[int] = None,
              n_values: Optional[Sequence[int]] = None) -> TrialStats:
    ok = [r for r in results if r is not None]
    if not ok:
        raise GenerationError(f"every trial failed to generate (table {table}, k={fixed_k})")
    if n_values is None:
        n_values = sorted({r.n for r in ok})
    mean_e = _mean(r.e for r in ok)
    mean_k = _mean(r.k for r in ok)
    return TrialStats(
        table=table,
        n=";".join(str(int(v)) for v in n_values),
        k_mode="free" if fixed_k is None else "fixed",
        k=fixed_k,
        trials=len(ok),
        failures=len(results) - len(ok),
        mean_e=mean_e,
        mean_gefr=_mean(r.gefr for r in ok),
        mean_k=mean_k,
        mean_runtime_seconds=_mean(r.runtime_seconds for r in ok),
        e_times_k=mean_e * (fixed_k if fixed_k is not None else mean_k),
        gefr_reference=None if fixed_k is None else 0.5 / fixed_k,
    )


def pooled_n(k: int, pool: Sequence[int] = N_POOL) -> list[int]:
    """Every pooled size that can hold a k-item greedy solution."""
    return [n for n in pool if n >= k]


def run_table1(trials_per_n: int, n_list: Sequence[int], seed: int, g: float = DEFAULT_G,
               k: int = 50) -> list[TrialStats]:
    return [aggregate(1, run_cell(n, trials_per_n, seed, k, g), k, [n]) for n in n_list]


def _pooled(table: int, trials_per_cell: int, k_list: Sequence[int], seed: int, g: float,
            pool: Sequence[int]) -> list[TrialStats]:
    out = []
    for k in k_list:
        ns = pooled_n(k, pool)
        results = []
        for n in ns:
            results.extend(run_cell(n, trials_per_cell, seed, k, g))
        out.append(aggregate(table, results, k, ns))
    return out


def run_table2(trials_per_cell: int, k_list: Sequence[int], seed: int, g: float = DEFAULT_G,
               pool: Sequence[int] = N_POOL) -> list[TrialStats]:
    return _pooled(2, trials_per_cell, k_list, seed, g, pool)


def run_table3(trials_per_n: int, n_list: Sequence[int], seed: int,
               g: float = DEFAULT_G) -> list[TrialStats]:
    return [aggregate(3, run_cell(n, trials_per_n, seed, None, g), None, [n]) for n in n_list]


def run_table4(trials_per_cell: int, k_list: Sequence[int], seed: int, g: float = DEFAULT_G,
               pool: Sequence[int] = N_POOL) -> list[TrialStats]:
    return _pooled(4, trials_per_cell, k_list, seed, g, pool)


def run_table(table: int, scale: str = "desk", seed: int = 0, trials: Optional[int] = None,
              g: float = DEFAULT_G) -> list[TrialStats]:
    cfg = SCALES[scale][table]
    t = trials if trials is not None else cfg["trials"]
    if table == 1:
        return run_table1(t, cfg["n_list"], seed, g)
    if table == 2:
        return run_table2(t, cfg["k_list"], seed, g)
    if table == 3:
        return run_table3(t, cfg["n_list"], seed, g)
    if table == 4:
        return run_table4(t, cfg["k_list"], seed, g)
    raise ValueError(f"no table {table}")


COLUMNS = tuple(f.name for f in fields(TrialStats))


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_report(stats: Sequence[TrialStats], fmt: str = "csv") -> str:
    if not stats:
        raise ValueError("no stats to report")
    if fmt == "json":
        return json.dumps([asdict(s) for s in stats], indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for s in stats:
        writer.writerow([_cell(getattr(s, c)) for c in COLUMNS])
    return buf.getvalue()


def emit_report(stats: Sequence[TrialStats], path, fmt: str = "csv") -> Path:
    path = Path(path)
    path.write_text(format_report(stats, fmt))
    return path


def load_report(path) -> list[TrialStats]:
    """Read back a report written by :func:`emit_report` (CSV or JSON)."""
    text = Path(path).read_text()
    if text.lstrip().startswith("["):
        return [TrialStats(**row) for row in json.loads(text)]
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(TrialStats(
            table=int(row["table"]),
            n=row["n"],
            k_mode=row["k_mode"],
            k=int(row["k"]) if row["k"] else None,
            trials=int(row["trials"]),
            failures=int(row["failures"]),
            mean_e=float(row["mean_e"]),
            mean_gefr=float(row["mean_gefr"]),
            mean_k=float(row["mean_k"]),
            mean_runtime_seconds=float(row["mean_runtime_seconds"]),
            e_times_k=float(row["e_times_k"]),
            gefr_reference=float(row["gefr_reference"]) if row["gefr_reference"] else None,
        ))
    return out
