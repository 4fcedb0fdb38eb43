"""Layered partition fused with pull-relaxation from upper ranks.

The partition phase runs a breadth-first frontier sweep from the source(s),
recording three views of the layering: the discovery order, the node-to-layer
map and the node-to-position map (inverse of the order).  While a frontier
node is scanned it also pulls a cost from every already-settled in-neighbor
one layer up, so the phase ends with, per reached node, the best cost among
all minimum-hop paths from the source.

The pull runs over the reverse adjacency: on an undirected graph that is
literally the forward star unit, while on a directed graph a forward leaf at
an upper rank need not be an in-neighbor, so the reverse unit is the one that
carries the usable arcs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .graph import UNSET, CostAlgebra, Graph, GraphError, NodeId

#: cost column marker for nodes the partition never reached
UNREACHED = "UNREACHED"


@dataclass
class Regions:
    """The partition triple.

    ``order`` lists reached nodes in discovery order (the worklist array all
    later phases sweep).  ``region_of[v]`` is the 1-based layer of ``v``
    (source layer is 1; 0 means never reached).  ``position_of[v]`` is the
    1-based position of ``v`` in ``order`` (0 means never reached), i.e.
    ``order[position_of[v] - 1] == v``.
    """

    order: list[int]
    region_of: list[int]
    position_of: list[int]

    @property
    def reached_count(self) -> int:
        return len(self.order)

    @property
    def region_count(self) -> int:
        return self.region_of[self.order[-1]] if self.order else 0


@dataclass
class SolverState:
    """Mutable heart of every solver run.

    ``parent[v]`` is the chosen predecessor (0 = unset; always 0 at sources),
    ``cost[v]`` the current path cost, ``weight_used[v]`` the weight of the
    arc actually accepted into ``parent[v] -> v`` (kept so cost consistency
    is checkable even with parallel arcs), ``status`` a scratch activity
    flag.  ``tags`` is present only on multi-source runs and names, per node,
    the source whose influence labeled it.
    """

    n: int
    sources: tuple[int, ...]
    parent: list[int]
    cost: list[int]
    weight_used: list[int]
    status: list[int]
    is_source: list[bool]
    tags: list[int] | None = None

    @classmethod
    def fresh(cls, n: int, sources: Sequence[int], zero: int,
              with_tags: bool = False) -> "SolverState":
        is_source = [False] * (n + 1)
        for s in sources:
            is_source[s] = True
        tags = None
        if with_tags:
            tags = [UNSET] * (n + 1)
            for s in sources:
                tags[s] = s
        return cls(
            n=n,
            sources=tuple(sources),
            parent=[UNSET] * (n + 1),
            cost=[zero] * (n + 1),
            weight_used=[0] * (n + 1),
            status=[0] * (n + 1),
            is_source=is_source,
            tags=tags,
        )

    def labeled(self, v: int) -> bool:
        return self.parent[v] != UNSET or self.is_source[v]

    def clone(self) -> "SolverState":
        return SolverState(
            n=self.n,
            sources=self.sources,
            parent=list(self.parent),
            cost=list(self.cost),
            weight_used=list(self.weight_used),
            status=list(self.status),
            is_source=list(self.is_source),
            tags=list(self.tags) if self.tags is not None else None,
        )


@dataclass
class HdaReport:
    reached_count: int
    region_count: int
    arc_inspections: int
    wall_time_ms: float


def comp_pull(state: SolverState, g: Graph, algebra: CostAlgebra,
              root: NodeId, leaf: NodeId, weight: int) -> bool:
    """Pull-relaxation: ``root`` adopts ``leaf`` as parent if that improves it.

    The comparison is strict -- an equal candidate cost never overwrites the
    incumbent, which is what keeps the parent array acyclic on zero-weight
    instances.  Sources are never relabeled.
    """
    if state.is_source[root]:
        return False
    w = algebra.extend(state.cost[leaf], weight)
    if state.parent[root] == UNSET or algebra.better(w, state.cost[root]):
        state.parent[root] = leaf
        state.cost[root] = w
        state.weight_used[root] = weight
        if state.tags is not None:
            state.tags[root] = state.tags[leaf]
        return True
    return False


def hda(g: Graph, source: NodeId, algebra: CostAlgebra,
        ) -> tuple[Regions, SolverState, HdaReport]:
    """Partition from a single source; see :func:`hda_multi` for the engine."""
    return hda_multi(g, [source], algebra)


def hda_multi(g: Graph, sources: Sequence[NodeId], algebra: CostAlgebra,
              with_tags: bool = False,
              ) -> tuple[Regions, SolverState, HdaReport]:
    """Frontier partition plus upper-rank pull from all sources at layer 1.

    Disconnected inputs are not an error: unreached nodes keep layer 0 and
    the report exposes the reached count.  Every arc is inspected at most
    twice (once for discovery, once for the pull), so this is a single pass.
    """
    if not sources:
        raise GraphError("source set must be non-empty")
    srcs = sorted(set(int(s) for s in sources))
    for s in srcs:
        if not 1 <= s <= g.n:
            raise GraphError(f"source {s} out of range 1..{g.n}")
    if with_tags is False and len(srcs) > 1:
        with_tags = True

    t0 = time.perf_counter()
    n = g.n
    state = SolverState.fresh(n, srcs, algebra.zero, with_tags=with_tags)
    order: list[int] = []
    region_of = [0] * (n + 1)
    position_of = [0] * (n + 1)

    fwd_ptr = g.fwd_ptr.tolist()
    fwd_dst = g.fwd_dst.tolist()
    fwd_w = g.fwd_w.tolist()
    rev_ptr = g.rev_ptr.tolist()
    rev_src = g.rev_src.tolist()
    rev_w = g.rev_w.tolist()

    for s in srcs:
        order.append(s)
        region_of[s] = 1
        position_of[s] = len(order)
        state.status[s] = 1

    inspections = 0
    i = 0
    while i < len(order):
        u = order[i]
        reg = region_of[u]
        # discovery: append unvisited forward leaves to the next layer
        for k in range(fwd_ptr[u], fwd_ptr[u + 1]):
            inspections += 1
            v = fwd_dst[k]
            if region_of[v] == 0:
                region_of[v] = reg + 1
                order.append(v)
                position_of[v] = len(order)
                state.status[v] = 1
        # pull: adopt the best already-settled in-neighbor one layer up
        for k in range(rev_ptr[u], rev_ptr[u + 1]):
            inspections += 1
            v = rev_src[k]
            rv = region_of[v]
            if 0 < rv < reg:
                comp_pull(state, g, algebra, u, v, rev_w[k])
        i += 1

    regions = Regions(order, region_of, position_of)
    report = HdaReport(
        reached_count=len(order),
        region_count=regions.region_count,
        arc_inspections=inspections,
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
    )
    return regions, state, report


# ---------------------------------------------------------------------------
# Result export (text): per node `<id> <region> <parent> <cost|UNREACHED>`,
# plus a trailing `<tag>` column on multi-source runs.
# ---------------------------------------------------------------------------

def export_results(state: SolverState, regions: Regions, out) -> None:
    tags = state.tags
    for v in range(1, state.n + 1):
        reg = regions.region_of[v]
        if reg == 0:
            row = f"{v} 0 0 {UNREACHED}"
        else:
            row = f"{v} {reg} {state.parent[v]} {state.cost[v]}"
        if tags is not None:
            row += f" {tags[v] if reg else 0}"
        out.write(row + "\n")


def export_results_file(state: SolverState, regions: Regions, path: str) -> None:
    with open(path, "w") as fh:
        export_results(state, regions, fh)
