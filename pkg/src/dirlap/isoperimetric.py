"""Cheeger-type isoperimetric constants, filtrations and profiles at infinity.

For a vertex subset Omega, the constant is

    inf over finite non-empty U inside Omega of  b(edge boundary of U) / denom(U)

where the edge boundary counts directed edges crossing U in either
direction, and denom is the measure m(U) ("measure" normalization) or the
outflow beta_plus(U) ("beta_plus" normalization). On a balanced graph the
two crossing directions carry equal total weight, so the numerator is twice
the one-directional cut.

cheeger_exact enumerates every subset of Omega (cap: |Omega| <= 22) with
vectorized bitmask tables; cheeger_heuristic runs a spectral sweep cut plus
greedy single-vertex exchange and returns an upper bound.

A filtration is a nested exhausting family of connected subsets; profiling
the complements (min/max vertex ratios, Cheeger constants, Dirichlet
spectral gaps) gives lower bounds for the essential spectrum and detects
heavy ends, where the complements' weight-to-measure ratio blows up.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    DisconnectedError,
    EmptyComplementError,
    EmptySubsetError,
    SubsetTooLargeError,
)
from .graph import DirectedGraph, connectivity, subset_array
from .operators import assemble, dirichlet
from .spectral import nu

MAX_EXACT_SUBSET = 22
NORMALIZATIONS = ("measure", "beta_plus")

# slack used when reporting whether a profile sequence is monotone
_MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class CheegerResult:
    """Constant value, the subset achieving it, and how it was obtained.

    mode is "exact" (full enumeration; witness is the lexicographically
    smallest minimizer) or "upper_bound" (heuristic; value >= the true
    constant, witness is the best subset found).
    """

    value: float
    witness: tuple[int, ...]
    mode: str
    normalization: str

    def to_json_obj(self) -> dict:
        return {
            "value": self.value,
            "witness": list(self.witness),
            "mode": self.mode,
            "normalization": self.normalization,
        }


def _denominator_values(g: DirectedGraph, normalization: str) -> np.ndarray:
    if normalization not in NORMALIZATIONS:
        raise ValueError(
            f"unknown normalization {normalization!r}, expected one of {NORMALIZATIONS}"
        )
    return g.measure if normalization == "measure" else g.beta_plus


def _subset_sums(vals: np.ndarray) -> np.ndarray:
    """table[S] = sum of vals[i] over bits i set in S, for all 2^k masks."""
    k = vals.size
    table = np.zeros(1 << k)
    for i in range(k):
        step = 1 << i
        table.reshape(-1, 2 * step)[:, step:] += vals[i]
    return table


def _cut_table(g: DirectedGraph, idx: np.ndarray) -> np.ndarray:
    """table[S] = total weight of directed edges leaving or entering the
    subset of idx encoded by bitmask S (boundary taken in the full graph)."""
    k = idx.size
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[idx] = np.arange(k)
    ext = np.zeros(k)
    internal: dict[tuple[int, int], float] = {}
    for u, v, w in zip(
        g.edge_from.tolist(), g.edge_to.tolist(), g.edge_weight.tolist()
    ):
        pu, pv = int(pos[u]), int(pos[v])
        if pu >= 0 and pv >= 0:
            key = (pu, pv) if pu < pv else (pv, pu)
            internal[key] = internal.get(key, 0.0) + w
        elif pu >= 0:
            ext[pu] += w
        elif pv >= 0:
            ext[pv] += w
    cut = _subset_sums(ext)
    if internal:
        masks = np.arange(1 << k, dtype=np.uint32)
        for (i, j), w in sorted(internal.items()):
            cut += w * (((masks >> i) ^ (masks >> j)) & 1)
    return cut


def _mask_to_ids(mask: int, idx: np.ndarray) -> tuple[int, ...]:
    return tuple(int(idx[i]) for i in range(idx.size) if (mask >> i) & 1)


def cheeger_exact(
    g: DirectedGraph, omega: Iterable[int], normalization: str = "measure"
) -> CheegerResult:
    """Exact constant by enumeration of all non-empty subsets of omega.

    Raises SubsetTooLargeError when |omega| > 22. Ties on the optimal value
    are broken toward the lexicographically smallest witness (subsets
    compared as sorted id lists).
    """
    denom_vals = _denominator_values(g, normalization)
    idx = subset_array(g, omega)
    k = idx.size
    if k > MAX_EXACT_SUBSET:
        raise SubsetTooLargeError(
            f"|omega| = {k} exceeds the exact enumeration cap {MAX_EXACT_SUBSET}"
        )
    cut = _cut_table(g, idx)
    denom = _subset_sums(denom_vals[idx])
    denom[0] = 1.0  # avoid 0/0; the empty subset is excluded below
    ratios = cut / denom
    ratios[0] = np.inf
    best = float(ratios.min())
    tied = np.flatnonzero(ratios == ratios.min())
    witness = min(_mask_to_ids(int(mask), idx) for mask in tied)
    return CheegerResult(
        value=best, witness=witness, mode="exact", normalization=normalization
    )


class _SweepState:
    """Incrementally tracked cut and denominator of a growing/changing subset."""

    def __init__(self, g: DirectedGraph, denom_vals: np.ndarray):
        self.adj: list[list[tuple[int, float]]] = [[] for _ in range(g.n)]
        for u, v, w in zip(
            g.edge_from.tolist(), g.edge_to.tolist(), g.edge_weight.tolist()
        ):
            self.adj[u].append((v, w))
            self.adj[v].append((u, w))
        self.denom_vals = denom_vals
        self.in_u = np.zeros(g.n, dtype=bool)
        self.cut = 0.0
        self.denom = 0.0
        self.size = 0

    def toggle_delta(self, x: int) -> float:
        """Change in cut if membership of x were flipped."""
        delta = 0.0
        for y, w in self.adj[x]:
            crossed = self.in_u[x] ^ self.in_u[y]
            delta += w * (1.0 - 2.0 * crossed)
        return delta

    def toggle(self, x: int) -> None:
        self.cut += self.toggle_delta(x)
        if self.in_u[x]:
            self.denom -= self.denom_vals[x]
            self.size -= 1
        else:
            self.denom += self.denom_vals[x]
            self.size += 1
        self.in_u[x] = not self.in_u[x]

    def ratio_after_toggle(self, x: int) -> float:
        new_cut = self.cut + self.toggle_delta(x)
        if self.in_u[x]:
            new_denom = self.denom - self.denom_vals[x]
        else:
            new_denom = self.denom + self.denom_vals[x]
        return new_cut / new_denom


def cheeger_heuristic(
    g: DirectedGraph, omega: Iterable[int], normalization: str = "measure"
) -> CheegerResult:
    """Upper bound via a spectral sweep cut plus greedy vertex exchange.

    Orders the vertices of omega by the second-smallest eigenvector of the
    Dirichlet restriction of the symmetrized operator, sweeps prefixes from
    both ends (and all singletons), then repeatedly applies the best
    single-vertex add/remove while it strictly lowers the ratio.
    """
    denom_vals = _denominator_values(g, normalization)
    idx = subset_array(g, omega)
    k = idx.size

    order: list[int]
    if k == 1:
        order = [int(idx[0])]
    else:
        kind = "h" if normalization == "measure" else "normalized_h"
        op = dirichlet(assemble(g, kind), idx)
        sym = np.sqrt(op.metric)
        a = op.matrix * (sym[:, None] / sym[None, :])
        _, vecs = np.linalg.eigh(0.5 * (a + a.T))
        f = vecs[:, 1] / sym
        order = [int(idx[i]) for i in np.argsort(f, kind="stable")]

    best_value = np.inf
    best_set: tuple[int, ...] = ()

    def consider(value: float, members: Iterable[int]) -> None:
        nonlocal best_value, best_set
        if value < best_value:
            best_value = value
            best_set = tuple(int(v) for v in sorted(members))

    for ordering in (order, order[::-1]):
        state = _SweepState(g, denom_vals)
        for x in ordering:
            state.toggle(x)
            consider(state.cut / state.denom, np.flatnonzero(state.in_u))

    singleton_state = _SweepState(g, denom_vals)
    for x in order:
        consider(singleton_state.toggle_delta(x) / denom_vals[x], (x,))

    state = _SweepState(g, denom_vals)
    for x in best_set:
        state.toggle(x)
    current = state.cut / state.denom
    for _ in range(1000 + 10 * k):
        best_move = -1
        best_ratio = current
        for x in order:
            if state.in_u[x] and state.size == 1:
                continue
            r = state.ratio_after_toggle(x)
            if r < best_ratio:
                best_ratio = r
                best_move = x
        if best_move < 0:
            break
        state.toggle(best_move)
        current = best_ratio
    members = tuple(int(v) for v in np.flatnonzero(state.in_u))
    return CheegerResult(
        value=float(current), witness=members, mode="upper_bound", normalization=normalization
    )


def m_M_constants(g: DirectedGraph, omega: Iterable[int]) -> tuple[float, float]:
    """(min, max) of beta_plus(x) / m(x) over the subset.

    These are the constants by which measure and outflow norms compare on
    the subset; both equal 1 identically when m == beta_plus.
    """
    idx = subset_array(g, omega)
    ratios = g.beta_plus[idx] / g.measure[idx]
    return float(ratios.min()), float(ratios.max())


@dataclass(frozen=True)
class Filtration:
    """Strictly nested connected vertex sets exhausting the graph."""

    root: int
    levels: tuple[tuple[int, ...], ...]


def build_filtration(g: DirectedGraph, root: int) -> Filtration:
    """Balls of increasing radius around root in the undirected skeleton.

    Each ball induces a connected subgraph, consecutive balls are strictly
    nested, and the last one is the whole vertex set. Requires a connected
    graph.
    """
    if not (0 <= root < g.n):
        raise ValueError(f"root {root} out of range 0..{g.n - 1}")
    connected, _ = connectivity(g)
    if not connected:
        raise DisconnectedError("filtration needs a connected graph")
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[root] = 0
    queue = deque([root])
    adj = g.undirected_adjacency
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    levels = []
    for r in range(int(dist.max()) + 1):
        levels.append(tuple(int(v) for v in np.flatnonzero(dist <= r)))
    return Filtration(root=root, levels=tuple(levels))


@dataclass(frozen=True)
class LevelProfile:
    """Numbers attached to one filtration level's complement."""

    level: int
    complement_size: int
    m_c: float
    M_c: float
    h_c: float
    h_tilde_c: float
    nu_dirichlet: float
    ess_lower_bound: float
    h_mode: str
    h_tilde_mode: str


def _nondecreasing(seq: list[float]) -> bool:
    return all(b >= a - _MONOTONE_SLACK * max(1.0, abs(a)) for a, b in zip(seq, seq[1:]))


def _nonincreasing(seq: list[float]) -> bool:
    return all(b <= a + _MONOTONE_SLACK * max(1.0, abs(a)) for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class InfinityProfile:
    """Per-level complement profiles along a filtration, plus trend flags.

    The m_c and Cheeger sequences are nondecreasing and M_c nonincreasing
    when computed exactly (infima/suprema over shrinking families);
    heuristic levels can break that, which is why all_exact is reported.
    heavy_end is the verdict "the complements' min weight-to-measure ratio
    grew at least tenfold and never decreased".
    """

    levels: tuple[LevelProfile, ...]
    m_nondecreasing: bool
    M_nonincreasing: bool
    h_nondecreasing: bool
    h_tilde_nondecreasing: bool
    all_exact: bool
    heavy_end: bool

    def sequence(self, field: str) -> list[float]:
        return [getattr(row, field) for row in self.levels]


def infinity_profile(
    g: DirectedGraph, filt: Filtration, budget: int = MAX_EXACT_SUBSET
) -> InfinityProfile:
    """Profile the complements of a filtration's levels.

    budget caps the complement size that is still enumerated exactly
    (hard-limited by the exact cap 22); larger complements fall back to the
    heuristic and are flagged via h_mode / h_tilde_mode and all_exact.
    Levels whose complement is empty (the final exhausting level) are
    skipped; at least one usable level must remain.
    """
    if len(filt.levels) < 2:
        raise ValueError("filtration needs at least 2 levels")
    budget = min(int(budget), MAX_EXACT_SUBSET)
    delta = assemble(g, "delta")
    all_ids = frozenset(range(g.n))
    rows: list[LevelProfile] = []
    for li, level in enumerate(filt.levels, start=1):
        comp = sorted(all_ids.difference(level))
        if not comp:
            continue
        m_c, M_c = m_M_constants(g, comp)
        solve = cheeger_exact if len(comp) <= budget else cheeger_heuristic
        h = solve(g, comp, "measure")
        ht = solve(g, comp, "beta_plus")
        nu_d = nu(dirichlet(delta, comp))
        rows.append(
            LevelProfile(
                level=li,
                complement_size=len(comp),
                m_c=m_c,
                M_c=M_c,
                h_c=h.value,
                h_tilde_c=ht.value,
                nu_dirichlet=nu_d,
                ess_lower_bound=m_c * ht.value**2 / 8.0,
                h_mode=h.mode,
                h_tilde_mode=ht.mode,
            )
        )
    if not rows:
        raise EmptyComplementError("every filtration level has an empty complement")
    m_seq = [r.m_c for r in rows]
    heavy = len(rows) >= 2 and _nondecreasing(m_seq) and m_seq[-1] >= 10.0 * m_seq[0]
    return InfinityProfile(
        levels=tuple(rows),
        m_nondecreasing=_nondecreasing(m_seq),
        M_nonincreasing=_nonincreasing([r.M_c for r in rows]),
        h_nondecreasing=_nondecreasing([r.h_c for r in rows]),
        h_tilde_nondecreasing=_nondecreasing([r.h_tilde_c for r in rows]),
        all_exact=all(r.h_mode == "exact" and r.h_tilde_mode == "exact" for r in rows),
        heavy_end=heavy,
    )
