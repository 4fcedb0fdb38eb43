"""Immutable graph store with per-node adjacency in both directions.

Node ids are 1-based; id 0 is reserved as the "unset" sentinel used by the
solver arrays (parent pointers, status flags).  Adjacency is kept in CSR
form over numpy int64 arrays: ``forward`` maps each node to its out-leaves
(the node's star unit) and ``reverse`` maps each node to its in-neighbors.
For undirected graphs both views are the same arrays.

Entry order within a node's adjacency list is arc-list insertion order:
for undirected input, each arc materializes its two directions at the arc's
position in the input list, so iterating ``leaves(g, u)`` is deterministic
and reproducible across runs.

Weights are nonnegative integers; zero is permitted (and required by the
planted zero-path instances).  Parallel arcs are stored verbatim; the
relaxation operators naturally keep the best of a parallel bundle.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np

NodeId = int

#: sentinel for "no node" in parent/position arrays
UNSET = 0


class GraphError(ValueError):
    """Raised when a graph fails structural validation at build time."""


class InstanceFormatError(ValueError):
    """Raised on malformed instance files; message carries the line number."""


@dataclass(frozen=True)
class Arc:
    """A weighted arc from ``head`` to ``tail`` (head is the origin end)."""

    head: int
    tail: int
    weight: int


@dataclass(frozen=True)
class CostAlgebra:
    """The cost seam shared by every relaxation operator.

    ``extend`` combines a path cost with an arc weight into a new path cost,
    ``better`` is a strict comparison (irreflexive, transitive) used to
    filter candidates -- equality never wins -- and ``zero`` is the cost of
    the empty path at a source.
    """

    extend: Callable[[int, int], int]
    better: Callable[[int, int], bool]
    zero: int


def min_plus_algebra() -> CostAlgebra:
    """Integer addition with strict less-than: ordinary shortest paths."""
    return CostAlgebra(extend=operator.add, better=operator.lt, zero=0)


class Graph:
    """Immutable weighted multigraph with forward and reverse star units.

    Attributes:
        n: node count (ids 1..n).
        directed: whether the input arcs were taken as one-way.
        arc_head, arc_tail, arc_weight: the input arc list, verbatim.
        fwd_ptr, fwd_dst, fwd_w: CSR of out-leaves per node.
        rev_ptr, rev_src, rev_w: CSR of in-neighbors per node.
        m: maximum out-degree over all nodes.
        E: total number of directed adjacency entries (an undirected arc
           counts twice).
    """

    __slots__ = (
        "n", "directed",
        "arc_head", "arc_tail", "arc_weight",
        "fwd_ptr", "fwd_dst", "fwd_w",
        "rev_ptr", "rev_src", "rev_w",
        "m", "E",
    )

    def __init__(self, n, directed, arc_head, arc_tail, arc_weight,
                 fwd, rev, m, E):
        self.n = n
        self.directed = directed
        self.arc_head = arc_head
        self.arc_tail = arc_tail
        self.arc_weight = arc_weight
        self.fwd_ptr, self.fwd_dst, self.fwd_w = fwd
        self.rev_ptr, self.rev_src, self.rev_w = rev
        self.m = m
        self.E = E

    @property
    def arcs(self) -> list[Arc]:
        """The input arc list as Arc objects (builds a fresh list)."""
        return [
            Arc(int(h), int(t), int(w))
            for h, t, w in zip(self.arc_head, self.arc_tail, self.arc_weight)
        ]

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, arcs={len(self.arc_head)}, {kind}, E={self.E}, m={self.m})"


def _csr_by_key(key: np.ndarray, dst: np.ndarray, wts: np.ndarray, n: int):
    """Bucket (key -> (dst, w)) entries into CSR, stable in input order."""
    counts = np.bincount(key, minlength=n + 2)
    ptr = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(counts[: n + 1], out=ptr[1:])
    order = np.argsort(key, kind="stable")
    return ptr, dst[order].copy(), wts[order].copy()


def build_graph(n: int,
                arcs: Sequence[tuple[int, int, int]] | np.ndarray,
                directed: bool = False) -> Graph:
    """Validate an arc list and assemble the CSR adjacency in both directions.

    Rejects out-of-range endpoints, negative weights and self-loops, naming
    the first offending arc.  Parallel arcs are allowed and stored verbatim.
    """
    if n < 1:
        raise GraphError(f"node count must be >= 1, got {n}")
    a = np.asarray(arcs, dtype=np.int64)
    if a.size == 0:
        a = a.reshape(0, 3)
    if a.ndim != 2 or a.shape[1] != 3:
        raise GraphError("arcs must be a sequence of (head, tail, weight) triples")
    head, tail, weight = a[:, 0], a[:, 1], a[:, 2]

    bad = (head < 1) | (head > n) | (tail < 1) | (tail > n)
    if bad.any():
        i = int(np.argmax(bad))
        raise GraphError(
            f"arc {i} ({int(head[i])},{int(tail[i])},{int(weight[i])}): "
            f"endpoint out of range 1..{n}")
    neg = weight < 0
    if neg.any():
        i = int(np.argmax(neg))
        raise GraphError(
            f"arc {i} ({int(head[i])},{int(tail[i])},{int(weight[i])}): negative weight")
    loop = head == tail
    if loop.any():
        i = int(np.argmax(loop))
        raise GraphError(f"arc {i} ({int(head[i])},{int(tail[i])}): self-loop")

    if directed:
        fwd = _csr_by_key(head, tail, weight, n)
        rev = _csr_by_key(tail, head, weight, n)
    else:
        # Materialize both directions interleaved per input arc so that the
        # per-node entry order equals "append both ends while reading the list".
        k = len(head)
        h2 = np.empty(2 * k, dtype=np.int64)
        t2 = np.empty(2 * k, dtype=np.int64)
        w2 = np.empty(2 * k, dtype=np.int64)
        h2[0::2], h2[1::2] = head, tail
        t2[0::2], t2[1::2] = tail, head
        w2[0::2], w2[1::2] = weight, weight
        fwd = _csr_by_key(h2, t2, w2, n)
        rev = fwd

    ptr = fwd[0]
    degrees = ptr[2: n + 2] - ptr[1: n + 1] if n >= 1 else ptr[:0]
    m = int(degrees.max()) if len(degrees) and len(fwd[1]) else 0
    E = int(len(fwd[1]))
    return Graph(n, directed, head.copy(), tail.copy(), weight.copy(), fwd, rev, m, E)


def _check_node(g: Graph, u: int) -> None:
    if not 1 <= u <= g.n:
        raise GraphError(f"node {u} out of range 1..{g.n}")


def leaves(g: Graph, u: NodeId) -> list[tuple[NodeId, int]]:
    """Out-leaves of ``u`` with weights, in arc-list insertion order."""
    _check_node(g, u)
    lo, hi = int(g.fwd_ptr[u]), int(g.fwd_ptr[u + 1])
    return [(int(v), int(w)) for v, w in zip(g.fwd_dst[lo:hi], g.fwd_w[lo:hi])]


def in_neighbors(g: Graph, u: NodeId) -> list[tuple[NodeId, int]]:
    """In-neighbors of ``u`` with weights; equals ``leaves`` when undirected."""
    _check_node(g, u)
    lo, hi = int(g.rev_ptr[u]), int(g.rev_ptr[u + 1])
    return [(int(v), int(w)) for v, w in zip(g.rev_src[lo:hi], g.rev_w[lo:hi])]


# ---------------------------------------------------------------------------
# Instance file format (text, one record per line):
#   line 1:     n <node-count> <arc-count> <directed|undirected>
#   then:       <head> <tail> <weight>        (arc-count lines)
# Lines starting with '#' are comments and may appear anywhere.
# ---------------------------------------------------------------------------

def write_instance(g: Graph, out: TextIO, comments: Iterable[str] = ()) -> None:
    """Emit the instance format; ``comments`` become '#'-prefixed lines."""
    for c in comments:
        out.write(f"# {c}\n")
    kind = "directed" if g.directed else "undirected"
    out.write(f"n {g.n} {len(g.arc_head)} {kind}\n")
    lines = [
        f"{h} {t} {w}\n"
        for h, t, w in zip(g.arc_head.tolist(), g.arc_tail.tolist(),
                           g.arc_weight.tolist())
    ]
    out.writelines(lines)


def write_instance_file(g: Graph, path: str, comments: Iterable[str] = ()) -> None:
    with open(path, "w") as fh:
        write_instance(g, fh, comments)


def read_instance(src: TextIO) -> tuple[Graph, list[str]]:
    """Parse the instance format; returns the graph and the comment lines."""
    comments: list[str] = []
    header = None
    arcs: list[tuple[int, int, int]] = []
    n = arc_count = 0
    directed = False
    for lineno, raw in enumerate(src, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[0] != "n":
                raise InstanceFormatError(
                    f"line {lineno}: expected 'n <nodes> <arcs> <directed|undirected>'")
            try:
                n, arc_count = int(parts[1]), int(parts[2])
            except ValueError:
                raise InstanceFormatError(f"line {lineno}: non-integer count") from None
            if parts[3] not in ("directed", "undirected"):
                raise InstanceFormatError(
                    f"line {lineno}: orientation must be 'directed' or 'undirected'")
            directed = parts[3] == "directed"
            header = lineno
            continue
        if len(parts) != 3:
            raise InstanceFormatError(
                f"line {lineno}: expected '<head> <tail> <weight>'")
        try:
            arcs.append((int(parts[0]), int(parts[1]), int(parts[2])))
        except ValueError:
            raise InstanceFormatError(f"line {lineno}: non-integer field") from None
    if header is None:
        raise InstanceFormatError("line 1: missing header")
    if len(arcs) != arc_count:
        raise InstanceFormatError(
            f"header declares {arc_count} arcs but file contains {len(arcs)}")
    try:
        return build_graph(n, arcs, directed=directed), comments
    except GraphError as exc:
        raise InstanceFormatError(str(exc)) from exc


def read_instance_file(path: str) -> tuple[Graph, list[str]]:
    with open(path) as fh:
        return read_instance(fh)
