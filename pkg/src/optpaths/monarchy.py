"""Origin-driven push-relaxation with three worklist schedulers.

After the partition phase, a single classification pass screens the reached
nodes: a node that some neighbor can still improve is dormant (it will be
corrected, not trusted), and a node that improves nobody is dormant too.
The survivors -- nodes that improve a neighbor and that nobody improves --
are the origin candidates, and the scheduling phase lets their influence
diffuse by active pushes until no improving arc remains.

Schedulers differ only in how the worklist pointer moves over the discovery
order after a node improves some leaves:

* HRP (high rank priority): sweep left to right, and whenever an improved
  leaf sits at an earlier position, jump the pointer back to it.
* FR (free roaming): always jump to the improved leaf of highest rank
  (smallest position), forward or backward, and wrap at the array end.
* HT (hunting and tracing): like FR, but remember where the current chase
  started and return there (plus one) as soon as the chase hits a node that
  improves nothing.

All three halt when a full wrap-to-wrap cycle accepts zero relaxations, and
all three end at the same fixpoint costs as the plain sweeps.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from .graph import UNSET, CostAlgebra, Graph, GraphError, NodeId
from .partition import Regions, SolverState, hda_multi


class SchedulerKind(str, Enum):
    HRP = "hrp"
    FR = "fr"
    HT = "ht"


@dataclass
class StatusMap:
    """Binary activity map over nodes (1 = origin candidate, 0 = dormant)."""

    status: list[int]
    origin_count: int


@dataclass
class MonarchyReport:
    """Counters for one scheduler run; ratios are recomputed on access.

    ``node_scans`` counts every worklist position the pointer examines,
    active or dormant.  The normalized ratios divide by the graph's directed
    adjacency entry count ``E``.
    """

    big_loops: int
    node_scans: int
    improvements: int
    origins_after_classify: int
    regular_way: int
    wrong_way: int
    E: int
    wall_time_ms: float

    @property
    def snoa(self) -> float:
        return self.node_scans / self.E if self.E else 0.0

    @property
    def lambda_factor(self) -> float:
        return self.snoa

    @property
    def ooa(self) -> float:
        return self.origins_after_classify / self.E if self.E else 0.0

    @property
    def onoa(self) -> float:
        return self.improvements / self.E if self.E else 0.0


def comp_push(state: SolverState, g: Graph, algebra: CostAlgebra,
              root: NodeId, leaf: NodeId, weight: int) -> bool:
    """Push-relaxation: ``root`` offers itself as parent of ``leaf``.

    Same strict accept rule as the pull direction; sources are never
    relabeled.
    """
    if state.is_source[leaf]:
        return False
    w = algebra.extend(state.cost[root], weight)
    if state.parent[leaf] == UNSET or algebra.better(w, state.cost[leaf]):
        state.parent[leaf] = root
        state.cost[leaf] = w
        state.weight_used[leaf] = weight
        if state.tags is not None:
            state.tags[leaf] = state.tags[root]
        return True
    return False


def classify_status(g: Graph, state: SolverState, algebra: CostAlgebra,
                    regions: Regions) -> StatusMap:
    """Screen reached nodes into origin candidates and dormant ones.

    Starts with every reached node active, then one read-only pass over the
    discovery order: any leaf the current root could improve is knocked
    dormant (it is correctable, hence not a pure origin), and a root that
    improves no leaf is knocked dormant itself.  Survivors are the origins.
    """
    status = [0] * (state.n + 1)
    for u in regions.order:
        status[u] = 1
    fwd_ptr = g.fwd_ptr.tolist()
    fwd_dst = g.fwd_dst.tolist()
    fwd_w = g.fwd_w.tolist()
    extend = algebra.extend
    better = algebra.better
    cost = state.cost
    for u in regions.order:
        cu = cost[u]
        improves_any = False
        for k in range(fwd_ptr[u], fwd_ptr[u + 1]):
            v = fwd_dst[k]
            if better(extend(cu, fwd_w[k]), cost[v]):
                status[v] = 0
                improves_any = True
        if not improves_any:
            status[u] = 0
    return StatusMap(status=status, origin_count=sum(status))


_KIND_CODE = {SchedulerKind.HRP: 0, SchedulerKind.FR: 1, SchedulerKind.HT: 2}


def run_scheduler(kind: SchedulerKind, g: Graph, regions: Regions,
                  state: SolverState, statuses: StatusMap,
                  algebra: CostAlgebra,
                  debug_check: Optional[Callable[[int], None]] = None,
                  ) -> MonarchyReport:
    """Drive push-relaxation to the fixpoint under the selected pointer rule."""
    try:
        code = _KIND_CODE[SchedulerKind(kind)]
    except ValueError:
        raise GraphError(f"unknown scheduler kind: {kind!r}") from None

    t0 = time.perf_counter()
    order = regions.order
    position_of = regions.position_of
    region_of = regions.region_of
    status = statuses.status
    fwd_ptr = g.fwd_ptr.tolist()
    fwd_dst = g.fwd_dst.tolist()
    fwd_w = g.fwd_w.tolist()

    n_order = len(order)
    big_loops = 1
    node_scans = 0
    improvements = 0
    regular = 0
    wrong = 0
    cycle_flag = 0
    chase_start = 0  # 0 = no chase in flight (HT only)

    i = 1
    while True:
        if i > n_order:
            if debug_check is not None:
                debug_check(big_loops)
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
        ru = region_of[u]
        for k in range(fwd_ptr[u], fwd_ptr[u + 1]):
            v = fwd_dst[k]
            if comp_push(state, g, algebra, u, v, fwd_w[k]):
                improvements += 1
                cycle_flag += 1
                status[v] = 1
                if region_of[v] > ru:
                    regular += 1
                else:
                    wrong += 1
                pv = position_of[v]
                if best_pos == 0 or pv < best_pos:
                    best_pos = pv
        status[u] = 0
        if best_pos:
            if code == 0:  # HRP: only ever jump backwards
                i = best_pos if best_pos < i else i + 1
            else:  # FR / HT: chase the highest-rank improved leaf
                if code == 2 and chase_start == 0:
                    chase_start = i
                i = best_pos
        else:
            if code == 2 and chase_start:
                i = chase_start + 1
                chase_start = 0
            else:
                i += 1

    return MonarchyReport(
        big_loops=big_loops,
        node_scans=node_scans,
        improvements=improvements,
        origins_after_classify=statuses.origin_count,
        regular_way=regular,
        wrong_way=wrong,
        E=g.E,
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
    )


def multi_source_solve(g: Graph, sources: Sequence[NodeId],
                       algebra: CostAlgebra,
                       kind: SchedulerKind = SchedulerKind.HT,
                       ) -> tuple[SolverState, list[int], MonarchyReport]:
    """Solve with every source at layer 1 and per-node winning-source tags.

    Each accepted relaxation copies the parent's tag, so on halt every
    reached node carries the source achieving its (minimal) cost.  Ties are
    decided by the strict accept rule: the first source to label a node
    keeps it, and the labeling order follows the deterministic frontier
    order (sources are seeded in ascending id order).
    """
    if not sources:
        raise GraphError("source set must be non-empty")
    regions, state, _ = hda_multi(g, sources, algebra, with_tags=True)
    statuses = classify_status(g, state, algebra, regions)
    report = run_scheduler(kind, g, regions, state, statuses, algebra)
    assert state.tags is not None
    return state, state.tags, report
