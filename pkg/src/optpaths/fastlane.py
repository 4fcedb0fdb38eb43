"""Compiled min-plus kernels for mega-scale runs.

The reference solvers in :mod:`partition`, :mod:`evolve` and :mod:`monarchy`
are generic over the cost algebra and carry debug hooks; these kernels are
the same algorithms specialized to min-plus over int64 and jitted with
numba.  They mirror the reference loops statement for statement -- including
every counter -- and the test suite asserts exact equality of states and
counters between the two lanes, so either lane certifies the other.

If numba is unavailable the kernels still run as plain Python (slowly); use
``available()`` to decide whether the fast lane is worth routing to.
"""

from __future__ import annotations

import time
from typing import Sequence

import numpy as np

try:
    from numba import njit

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

from .evolve import EomReport
from .graph import Graph, GraphError
from .monarchy import MonarchyReport, SchedulerKind, StatusMap, _KIND_CODE
from .partition import HdaReport, Regions, SolverState


def available() -> bool:
    return _HAS_NUMBA


@njit(cache=True)
def _hda_kernel(n, fptr, fdst, rptr, rsrc, rw, sources):
    order = np.zeros(n, dtype=np.int64)
    region = np.zeros(n + 1, dtype=np.int64)
    pos = np.zeros(n + 1, dtype=np.int64)
    parent = np.zeros(n + 1, dtype=np.int64)
    cost = np.zeros(n + 1, dtype=np.int64)
    wu = np.zeros(n + 1, dtype=np.int64)
    status = np.zeros(n + 1, dtype=np.int64)
    issrc = np.zeros(n + 1, dtype=np.int64)
    count = 0
    for s in sources:
        issrc[s] = 1
        order[count] = s
        count += 1
        region[s] = 1
        pos[s] = count
        status[s] = 1
    inspections = 0
    i = 0
    while i < count:
        u = order[i]
        reg = region[u]
        for k in range(fptr[u], fptr[u + 1]):
            inspections += 1
            v = fdst[k]
            if region[v] == 0:
                region[v] = reg + 1
                order[count] = v
                count += 1
                pos[v] = count
                status[v] = 1
        for k in range(rptr[u], rptr[u + 1]):
            inspections += 1
            v = rsrc[k]
            rv = region[v]
            if 0 < rv < reg:
                if issrc[u] == 0:
                    w = cost[v] + rw[k]
                    if parent[u] == 0 or w < cost[u]:
                        parent[u] = v
                        cost[u] = w
                        wu[u] = rw[k]
        i += 1
    return order[:count], region, pos, parent, cost, wu, status, issrc, inspections


@njit(cache=True)
def _classify_kernel(order, fptr, fdst, fw, cost):
    n1 = len(cost)
    status = np.zeros(n1, dtype=np.int64)
    for idx in range(len(order)):
        status[order[idx]] = 1
    for idx in range(len(order)):
        u = order[idx]
        cu = cost[u]
        improves_any = False
        for k in range(fptr[u], fptr[u + 1]):
            v = fdst[k]
            if cu + fw[k] < cost[v]:
                status[v] = 0
                improves_any = True
        if not improves_any:
            status[u] = 0
    origins = 0
    for idx in range(len(order)):
        if status[order[idx]] == 1:
            origins += 1
    return status, origins


@njit(cache=True)
def _eom_kernel(order, region, rptr, rsrc, rw, parent, cost, wu, issrc,
                two_course):
    big_loops = 0
    improvements = 0
    node_scans = 0
    arc_relax = 0
    regular = 0
    wrong = 0
    n_order = len(order)
    while True:
        flag = 0
        backwards = two_course and (big_loops % 2 == 1)
        for idx in range(n_order):
            u = order[n_order - 1 - idx] if backwards else order[idx]
            node_scans += 1
            ru = region[u]
            for k in range(rptr[u], rptr[u + 1]):
                v = rsrc[k]
                if parent[v] == 0 and issrc[v] == 0:
                    continue
                arc_relax += 1
                if issrc[u]:
                    continue
                w = cost[v] + rw[k]
                if parent[u] == 0 or w < cost[u]:
                    parent[u] = v
                    cost[u] = w
                    wu[u] = rw[k]
                    flag += 1
                    if ru > region[v]:
                        regular += 1
                    else:
                        wrong += 1
        big_loops += 1
        improvements += flag
        if flag == 0:
            break
    return big_loops, improvements, node_scans, arc_relax, regular, wrong


@njit(cache=True)
def _sched_kernel(code, order, region, pos, fptr, fdst, fw, parent, cost, wu,
                  issrc, status):
    n_order = len(order)
    big_loops = 1
    node_scans = 0
    improvements = 0
    regular = 0
    wrong = 0
    cycle_flag = 0
    chase_start = 0
    i = 1
    while True:
        if i > n_order:
            if cycle_flag == 0:
                break
            cycle_flag = 0
            big_loops += 1
            chase_start = 0
            i = 1
            continue
        u = order[i - 1]
        node_scans += 1
        if status[u] != 1:
            i += 1
            continue
        best_pos = 0
        ru = region[u]
        cu = cost[u]
        for k in range(fptr[u], fptr[u + 1]):
            v = fdst[k]
            if issrc[v]:
                continue
            w = cu + fw[k]
            if parent[v] == 0 or w < cost[v]:
                parent[v] = u
                cost[v] = w
                wu[v] = fw[k]
                improvements += 1
                cycle_flag += 1
                status[v] = 1
                if region[v] > ru:
                    regular += 1
                else:
                    wrong += 1
                pv = pos[v]
                if best_pos == 0 or pv < best_pos:
                    best_pos = pv
        status[u] = 0
        if best_pos:
            if code == 0:
                i = best_pos if best_pos < i else i + 1
            else:
                if code == 2 and chase_start == 0:
                    chase_start = i
                i = best_pos
        else:
            if code == 2 and chase_start:
                i = chase_start + 1
                chase_start = 0
            else:
                i += 1
    return big_loops, node_scans, improvements, regular, wrong


class FastRun:
    """Array-backed pipeline state for one source set on one graph."""

    def __init__(self, g: Graph, sources: Sequence[int]):
        srcs = sorted(set(int(s) for s in sources))
        if not srcs:
            raise GraphError("source set must be non-empty")
        for s in srcs:
            if not 1 <= s <= g.n:
                raise GraphError(f"source {s} out of range 1..{g.n}")
        self.g = g
        self.sources = np.array(srcs, dtype=np.int64)
        t0 = time.perf_counter()
        (self.order, self.region, self.pos, self.parent, self.cost, self.wu,
         self.status, self.issrc, inspections) = _hda_kernel(
            g.n, g.fwd_ptr, g.fwd_dst, g.rev_ptr, g.rev_src, g.rev_w,
            self.sources)
        self.hda_report = HdaReport(
            reached_count=int(len(self.order)),
            region_count=int(self.region[self.order[-1]]) if len(self.order) else 0,
            arc_inspections=int(inspections),
            wall_time_ms=(time.perf_counter() - t0) * 1e3,
        )
        self.origin_count = 0
        self.classify_ms = 0.0

    def classify(self) -> int:
        t0 = time.perf_counter()
        self.status, origins = _classify_kernel(
            self.order, self.g.fwd_ptr, self.g.fwd_dst, self.g.fwd_w, self.cost)
        self.origin_count = int(origins)
        self.classify_ms = (time.perf_counter() - t0) * 1e3
        return self.origin_count

    def eom(self, two_course: bool = False) -> EomReport:
        g = self.g
        t0 = time.perf_counter()
        bl, imp, scans, relax, reg, wrong = _eom_kernel(
            self.order, self.region, g.rev_ptr, g.rev_src, g.rev_w,
            self.parent, self.cost, self.wu, self.issrc, two_course)
        return EomReport(
            big_loops=int(bl), improvements=int(imp), node_scans=int(scans),
            arc_relaxations=int(relax), regular_way=int(reg),
            wrong_way=int(wrong),
            wall_time_ms=(time.perf_counter() - t0) * 1e3)

    def schedule(self, kind: SchedulerKind) -> MonarchyReport:
        g = self.g
        code = _KIND_CODE[SchedulerKind(kind)]
        t0 = time.perf_counter()
        bl, scans, imp, reg, wrong = _sched_kernel(
            code, self.order, self.region, self.pos, g.fwd_ptr, g.fwd_dst,
            g.fwd_w, self.parent, self.cost, self.wu, self.issrc, self.status)
        return MonarchyReport(
            big_loops=int(bl), node_scans=int(scans), improvements=int(imp),
            origins_after_classify=self.origin_count,
            regular_way=int(reg), wrong_way=int(wrong), E=g.E,
            wall_time_ms=(time.perf_counter() - t0) * 1e3)

    # -- conversions back into the reference dataclasses ---------------------

    def regions(self) -> Regions:
        return Regions(
            order=self.order.tolist(),
            region_of=self.region.tolist(),
            position_of=self.pos.tolist(),
        )

    def state(self) -> SolverState:
        return SolverState(
            n=self.g.n,
            sources=tuple(int(s) for s in self.sources),
            parent=self.parent.tolist(),
            cost=self.cost.tolist(),
            weight_used=self.wu.tolist(),
            status=self.status.tolist(),
            is_source=[bool(x) for x in self.issrc.tolist()],
        )

    def statuses(self) -> StatusMap:
        return StatusMap(status=self.status.tolist(),
                         origin_count=self.origin_count)
