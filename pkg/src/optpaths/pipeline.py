"""One-call runners tying partition, classification and optimization together.

``run_pipeline`` is what the command line and the benchmark harness use: it
runs the partition phase, then the selected optimizer, and returns all phase
reports plus the final state.  With ``debug_invariants`` set, the tree and
reachability audits run at every big-loop boundary and any failure raises
:class:`InvariantViolation` (the reached labeled set must also never
shrink).  The compiled min-plus lane is used when ``fast`` is set; it does
not support debug hooks or non-default algebras.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import fastlane
from .evolve import EomReport, eom, eom_two_course
from .graph import CostAlgebra, Graph, GraphError, min_plus_algebra
from .monarchy import (MonarchyReport, SchedulerKind, classify_status,
                       run_scheduler)
from .oracles import check_reachability, check_tree
from .partition import HdaReport, Regions, SolverState, hda_multi

ALGORITHMS = ("hda", "eom", "eom2", "hrp", "fr", "ht")

_SCHED = {"hrp": SchedulerKind.HRP, "fr": SchedulerKind.FR,
          "ht": SchedulerKind.HT}


class InvariantViolation(AssertionError):
    """A big-loop audit failed during a debug-instrumented run."""


@dataclass
class PipelineResult:
    algo: str
    regions: Regions
    state: SolverState
    hda_report: HdaReport
    classify_ms: float
    origins: int
    opt_report: Optional[Union[EomReport, MonarchyReport]]

    @property
    def schedule_ms(self) -> float:
        return self.opt_report.wall_time_ms if self.opt_report else 0.0


def _debug_hook(g: Graph, regions: Regions, state: SolverState, label: str):
    reached_sizes = []

    def hook(big_loop: int) -> None:
        rep = check_tree(state, g)
        if not rep.ok:
            raise InvariantViolation(
                f"{label}: tree audit failed at big loop {big_loop}:\n"
                + rep.summary())
        rep = check_reachability(state, regions)
        if not rep.ok:
            raise InvariantViolation(
                f"{label}: reachability audit failed at big loop {big_loop}:\n"
                + rep.summary())
        labeled = sum(1 for v in range(1, state.n + 1) if state.labeled(v))
        if reached_sizes and labeled < reached_sizes[-1]:
            raise InvariantViolation(
                f"{label}: labeled set shrank at big loop {big_loop}: "
                f"{reached_sizes[-1]} -> {labeled}")
        reached_sizes.append(labeled)

    return hook


def run_pipeline(g: Graph, sources: Sequence[int], algo: str,
                 algebra: Optional[CostAlgebra] = None,
                 fast: bool = False,
                 debug_invariants: bool = False) -> PipelineResult:
    if algo not in ALGORITHMS:
        raise GraphError(f"unknown algorithm {algo!r}; pick one of {ALGORITHMS}")
    if fast and debug_invariants:
        raise GraphError("debug invariants require the reference lane")
    if fast and algebra is not None:
        raise GraphError("the fast lane is fixed to min-plus")
    if fast:
        return _run_fast(g, sources, algo)
    if algebra is None:
        algebra = min_plus_algebra()

    regions, state, hda_rep = hda_multi(g, sources, algebra)
    hook = None
    if debug_invariants:
        hook = _debug_hook(g, regions, state, algo)
        hook(0)  # audit the partition output itself

    if algo == "hda":
        return PipelineResult(algo, regions, state, hda_rep, 0.0, 0, None)
    if algo in ("eom", "eom2"):
        run = eom if algo == "eom" else eom_two_course
        rep = run(g, regions, state, algebra, debug_check=hook)
        return PipelineResult(algo, regions, state, hda_rep, 0.0, 0, rep)

    t0 = time.perf_counter()
    statuses = classify_status(g, state, algebra, regions)
    classify_ms = (time.perf_counter() - t0) * 1e3
    rep = run_scheduler(_SCHED[algo], g, regions, state, statuses, algebra,
                        debug_check=hook)
    return PipelineResult(algo, regions, state, hda_rep, classify_ms,
                          statuses.origin_count, rep)


def _run_fast(g: Graph, sources: Sequence[int], algo: str) -> PipelineResult:
    run = fastlane.FastRun(g, sources)
    if algo == "hda":
        rep = None
    elif algo in ("eom", "eom2"):
        rep = run.eom(two_course=(algo == "eom2"))
    else:
        run.classify()
        rep = run.schedule(_SCHED[algo])
    return PipelineResult(algo, run.regions(), run.state(), run.hda_report,
                          run.classify_ms, run.origin_count, rep)
