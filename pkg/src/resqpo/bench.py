"""Benchmark harness: overlap curation timings on the chain/cycle experiments.

Every (experiment, strategy) pair runs in its own spawned process so that
timings and the memory high-water mark are not polluted by earlier runs, and
so that a run exceeding the timeout can simply be terminated.
"""
from __future__ import annotations

import csv
import io
import multiprocessing as mp
import queue as queue_mod
import re
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .constraints import rigid_constraints
from .graph import Graph
from .overlaps import STRATEGIES, curate
from .rules import plain_builtin_rule

try:
    import resource
except ImportError:  # pragma: no cover - non-POSIX
    resource = None

CSV_COLUMNS = ("experiment", "strategy", "candidates", "correct", "wall_time_mean_over_5", "peak_memory")
REPS = 5
_STARTUP_GRACE = 60.0


@dataclass(frozen=True)
class Experiment:
    name: str
    left_rule: str  # its input graph is the left overlap graph
    right_rule: str  # its output graph is the right overlap graph

    def graphs(self) -> Tuple[Graph, Graph]:
        return plain_builtin_rule(self.left_rule).input, plain_builtin_rule(self.right_rule).output


SUITES: Dict[str, Tuple[Experiment, ...]] = {
    "gcm2020": (
        Experiment("P1", "delete-edge", "create-edge"),
        Experiment("P2", "break-chain:2", "create-cycle:2"),
        Experiment("P3", "break-chain:4", "create-cycle:4"),
        Experiment("P4", "break-chain:7", "create-cycle:7"),
    ),
}


@dataclass
class BenchRow:
    experiment: str
    strategy: str
    candidates: str
    correct: str
    wall_time: str
    peak_memory: str

    def as_list(self) -> List[str]:
        return [self.experiment, self.strategy, self.candidates, self.correct, self.wall_time, self.peak_memory]


def parse_duration(text: str) -> float:
    """``"600"``, ``"600s"``, ``"10m"``, ``"1.5h"`` or ``"250ms"`` to seconds."""
    m = re.fullmatch(r"\s*(\d+(?:\.\d*)?)\s*(ms|s|m|h)?\s*", text)
    if not m:
        raise ValueError(f"bad duration: {text!r}")
    scale = {None: 1.0, "s": 1.0, "ms": 1e-3, "m": 60.0, "h": 3600.0}[m.group(2)]
    value = float(m.group(1)) * scale
    if value <= 0:
        raise ValueError("duration must be positive")
    return value


def _peak_memory_mb() -> Optional[float]:
    if resource is None:
        return None
    # ru_maxrss is kilobytes on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


def _worker(suite: str, name: str, strategy: str, reps: int, out) -> None:
    exp = next(e for e in SUITES[suite] if e.name == name)
    a, b = exp.graphs()
    c = rigid_constraints()
    out.put(("ready",))
    for _ in range(reps):
        stats: dict = {}
        t0 = time.perf_counter()
        found = curate(a, b, c, strategy, stats)
        out.put(("run", time.perf_counter() - t0, stats.get("candidates"), len(found)))
    out.put(("done", _peak_memory_mb()))


def run_case(suite: str, exp: Experiment, strategy: str, timeout: float, reps: int = REPS) -> BenchRow:
    ctx = mp.get_context("spawn")
    out = ctx.Queue()
    proc = ctx.Process(target=_worker, args=(suite, exp.name, strategy, reps, out), daemon=True)
    proc.start()
    times: List[float] = []
    candidates = correct = None
    peak: Optional[float] = None
    timed_out = False
    try:
        out.get(timeout=_STARTUP_GRACE)
        for _ in range(reps):
            _, dt, candidates, correct = out.get(timeout=timeout)
            times.append(dt)
        _, peak = out.get(timeout=_STARTUP_GRACE)
    except queue_mod.Empty:
        timed_out = True
    finally:
        if proc.is_alive():
            proc.terminate()
        proc.join()
    if timed_out:
        return BenchRow(exp.name, strategy, "timeout", "timeout", "timeout", "n/a")
    return BenchRow(
        exp.name,
        strategy,
        str(candidates) if strategy == "direct" else "n/a",
        str(correct),
        f"{sum(times) / len(times):.6f}",
        "unsupported" if peak is None else f"{peak:.1f}",
    )


def run_suite(suite: str, strategies: Sequence[str], timeout: float, reps: int = REPS,
              experiments: Optional[Sequence[str]] = None, progress=None) -> List[BenchRow]:
    if suite not in SUITES:
        raise KeyError(suite)
    for s in strategies:
        if s not in STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}")
    rows = []
    for exp in SUITES[suite]:
        if experiments is not None and exp.name not in experiments:
            continue
        for s in strategies:
            row = run_case(suite, exp, s, timeout, reps)
            if progress is not None:
                progress(row)
            rows.append(row)
    return rows


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row.as_list())
    return buf.getvalue()
