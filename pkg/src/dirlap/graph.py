"""Directed weighted graphs with vertex measures.

A graph here is a finite vertex set {0, ..., n-1} with a strictly positive
measure m(x) per vertex and a set of directed edges (x, y) carrying strictly
positive weights b(x, y). At most one edge per ordered pair, no self loops,
and every vertex must have positive total outgoing weight beta_plus(x) and
positive total incoming weight beta_minus(x).

The Kirchhoff balance condition beta_plus(x) == beta_minus(x) at every
vertex (outflow equals inflow, as for a circulation) is what makes the
formal adjoint of the Laplacian a Laplacian again; `check_kirchhoff`
measures how far a graph is from it.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._io import dump_json, write_text_atomic
from .errors import (
    DuplicateEdgeError,
    EmptySubsetError,
    InputParseError,
    IsolatedDirectionError,
    NonPositiveMeasureError,
    NonPositiveWeightError,
    SchemaViolationError,
    SelfLoopError,
)

# Relative tolerance (against max beta_plus) used when none is given.
KIRCHHOFF_DEFAULT_REL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Immutable directed weighted graph.

    Attributes:
        n: number of vertices (ids are 0..n-1).
        measure: shape (n,) strictly positive vertex measures m(x).
        edge_from, edge_to: shape (E,) int arrays, one entry per edge.
        edge_weight: shape (E,) strictly positive weights b(x, y).

    Edges are stored sorted by (from, to), so two graphs built from the
    same data have identical arrays.
    """

    n: int
    measure: np.ndarray
    edge_from: np.ndarray
    edge_to: np.ndarray
    edge_weight: np.ndarray

    @cached_property
    def beta_plus(self) -> np.ndarray:
        """Total outgoing weight per vertex: sum_y b(x, y)."""
        out = np.bincount(self.edge_from, weights=self.edge_weight, minlength=self.n)
        out.flags.writeable = False
        return out

    @cached_property
    def beta_minus(self) -> np.ndarray:
        """Total incoming weight per vertex: sum_y b(y, x)."""
        out = np.bincount(self.edge_to, weights=self.edge_weight, minlength=self.n)
        out.flags.writeable = False
        return out

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """Dense (n, n) matrix B with B[x, y] = b(x, y), zero elsewhere."""
        B = np.zeros((self.n, self.n))
        B[self.edge_from, self.edge_to] = self.edge_weight
        B.flags.writeable = False
        return B

    @cached_property
    def undirected_adjacency(self) -> list[list[int]]:
        """Neighbor lists of the undirected skeleton {x, y} in E."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in zip(self.edge_from.tolist(), self.edge_to.tolist()):
            adj[u].add(v)
            adj[v].add(u)
        return [sorted(s) for s in adj]

    def edges(self) -> Iterable[tuple[int, int, float]]:
        """Iterate (from, to, weight) triples in canonical order."""
        for u, v, w in zip(
            self.edge_from.tolist(), self.edge_to.tolist(), self.edge_weight.tolist()
        ):
            yield u, v, w


@dataclass(frozen=True)
class KirchhoffReport:
    """Outcome of a balance check.

    satisfied is True iff max_violation <= tolerance, where
    max_violation = max_x |beta_plus(x) - beta_minus(x)|.
    """

    satisfied: bool
    max_violation: float
    violating_vertices: tuple[int, ...]
    tolerance: float

    def to_json_obj(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "max_violation": self.max_violation,
            "violating_vertices": list(self.violating_vertices),
            "tolerance": self.tolerance,
        }


def build_graph(
    measures: Sequence[float], edges: Iterable[tuple[int, int, float]]
) -> DirectedGraph:
    """Validate and build a DirectedGraph.

    Args:
        measures: one strictly positive measure per vertex; len defines n.
        edges: (from, to, weight) triples; ordered pairs must be unique,
            loops are rejected, weights must be strictly positive.

    Raises:
        NonPositiveMeasureError, NonPositiveWeightError, SelfLoopError,
        DuplicateEdgeError, IsolatedDirectionError, SchemaViolationError.
    """
    m = np.asarray(list(measures), dtype=float)
    n = m.size
    if n == 0:
        raise SchemaViolationError("graph needs at least one vertex")
    bad = np.flatnonzero(~(m > 0))
    if bad.size:
        raise NonPositiveMeasureError(
            f"measure of vertex {int(bad[0])} is {m[bad[0]]!r}, must be > 0"
        )

    triples = [(int(u), int(v), float(w)) for u, v, w in edges]
    for u, v, w in triples:
        if not (0 <= u < n and 0 <= v < n):
            raise SchemaViolationError(f"edge ({u}, {v}) endpoint out of range 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"self loop at vertex {u}")
        if not w > 0:
            raise NonPositiveWeightError(f"edge ({u}, {v}) has weight {w!r}, must be > 0")
    triples.sort(key=lambda t: (t[0], t[1]))
    for a, b in zip(triples, triples[1:]):
        if a[0] == b[0] and a[1] == b[1]:
            raise DuplicateEdgeError(f"duplicate edge ({a[0]}, {a[1]})")

    ef = np.asarray([t[0] for t in triples], dtype=np.int64)
    et = np.asarray([t[1] for t in triples], dtype=np.int64)
    ew = np.asarray([t[2] for t in triples], dtype=float)
    for arr in (m, ef, et, ew):
        arr.flags.writeable = False
    g = DirectedGraph(n=n, measure=m, edge_from=ef, edge_to=et, edge_weight=ew)

    dead = np.flatnonzero(g.beta_plus <= 0)
    if dead.size:
        raise IsolatedDirectionError(f"vertex {int(dead[0])} has no outgoing weight")
    dead = np.flatnonzero(g.beta_minus <= 0)
    if dead.size:
        raise IsolatedDirectionError(f"vertex {int(dead[0])} has no incoming weight")
    return g


def beta(g: DirectedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Return (beta_plus, beta_minus): out- and in-weight per vertex."""
    return g.beta_plus, g.beta_minus


def check_kirchhoff(g: DirectedGraph, tol: float | None = None) -> KirchhoffReport:
    """Check beta_plus == beta_minus at every vertex.

    tol is an absolute tolerance on |beta_plus - beta_minus|; when omitted
    it defaults to 1e-9 relative to max beta_plus.
    """
    if tol is not None and tol < 0:
        raise ValueError("tol must be >= 0")
    diff = np.abs(g.beta_plus - g.beta_minus)
    effective = tol if tol is not None else KIRCHHOFF_DEFAULT_REL_TOL * float(g.beta_plus.max())
    violating = tuple(int(i) for i in np.flatnonzero(diff > effective))
    max_violation = float(diff.max())
    return KirchhoffReport(
        satisfied=max_violation <= effective,
        max_violation=max_violation,
        violating_vertices=violating,
        tolerance=float(effective),
    )


def subset_array(g: DirectedGraph, omega: Iterable[int]) -> np.ndarray:
    """Validate a vertex subset and return it as a sorted unique int array."""
    idx = sorted({int(v) for v in omega})
    if not idx:
        raise EmptySubsetError("vertex subset is empty")
    if idx[0] < 0 or idx[-1] >= g.n:
        raise SchemaViolationError(f"subset member out of range 0..{g.n - 1}")
    return np.asarray(idx, dtype=np.int64)


def boundaries(
    g: DirectedGraph, omega: Iterable[int]
) -> tuple[list[int], list[tuple[int, int, float]]]:
    """Vertex and edge boundary of a subset.

    Returns (vertex_boundary, edge_boundary) where vertex_boundary lists the
    vertices of omega with an undirected neighbor outside it, and
    edge_boundary lists every directed edge (either orientation) with exactly
    one endpoint inside omega.
    """
    idx = subset_array(g, omega)
    inside = np.zeros(g.n, dtype=bool)
    inside[idx] = True
    crossing = inside[g.edge_from] ^ inside[g.edge_to]
    edge_boundary = [
        (int(u), int(v), float(w))
        for u, v, w in zip(
            g.edge_from[crossing], g.edge_to[crossing], g.edge_weight[crossing]
        )
    ]
    touched: set[int] = set()
    for u, v, _ in edge_boundary:
        touched.add(u if inside[u] else v)
    return sorted(touched), edge_boundary


def connectivity(g: DirectedGraph) -> tuple[bool, bool]:
    """Return (connected, strongly_connected).

    connected: the undirected skeleton is connected.
    strongly_connected: every vertex reaches every other along directed
    edges. The second implies the first.
    """

    def _reach(adj: Sequence[Sequence[int]], start: int) -> int:
        seen = np.zeros(g.n, dtype=bool)
        seen[start] = True
        queue = deque([start])
        count = 1
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    queue.append(y)
        return count

    undirected = g.undirected_adjacency
    connected = _reach(undirected, 0) == g.n

    fwd: list[list[int]] = [[] for _ in range(g.n)]
    bwd: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in zip(g.edge_from.tolist(), g.edge_to.tolist()):
        fwd[u].append(v)
        bwd[v].append(u)
    strong = _reach(fwd, 0) == g.n and _reach(bwd, 0) == g.n
    return connected, strong


def schrodinger_potential(g: DirectedGraph) -> np.ndarray:
    """Per-vertex imbalance potential (beta_plus - beta_minus) / m.

    Identically zero exactly when the graph is Kirchhoff balanced; this is
    the zeroth-order term by which the formal adjoint of the Laplacian
    differs from a plain Laplacian.
    """
    return (g.beta_plus - g.beta_minus) / g.measure


def graph_to_json_obj(g: DirectedGraph) -> dict:
    return {
        "vertices": [{"id": i, "m": float(g.measure[i])} for i in range(g.n)],
        "edges": [{"from": u, "to": v, "b": w} for u, v, w in g.edges()],
    }


def graph_from_json_obj(obj) -> DirectedGraph:
    """Build a graph from the documented JSON shape.

    {"vertices": [{"id": 0, "m": 1.0}, ...],
     "edges": [{"from": 0, "to": 1, "b": 2.0}, ...]}

    Vertex ids must be exactly 0..n-1 (any order).
    """
    if not isinstance(obj, dict):
        raise SchemaViolationError("graph JSON must be an object")
    try:
        vertices = obj["vertices"]
        edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise SchemaViolationError(f"graph JSON missing key: {exc}") from exc
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise SchemaViolationError("'vertices' and 'edges' must be arrays")

    measures: dict[int, float] = {}
    for item in vertices:
        try:
            vid = int(item["id"])
            m = float(item["m"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolationError(f"bad vertex entry {item!r}") from exc
        if vid in measures:
            raise SchemaViolationError(f"vertex id {vid} listed twice")
        measures[vid] = m
    n = len(measures)
    if sorted(measures) != list(range(n)):
        raise SchemaViolationError("vertex ids must be exactly 0..n-1")

    triples = []
    for item in edges:
        try:
            triples.append((int(item["from"]), int(item["to"]), float(item["b"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaViolationError(f"bad edge entry {item!r}") from exc
    return build_graph([measures[i] for i in range(n)], triples)


def load_graph(path: str) -> DirectedGraph:
    """Read a graph JSON file. Raises InputParseError on unreadable files."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{path} is not valid JSON: {exc}") from exc
    return graph_from_json_obj(obj)


def save_graph(g: DirectedGraph, path: str) -> None:
    """Write a graph JSON file atomically."""
    write_text_atomic(path, dump_json(graph_to_json_obj(g)))
