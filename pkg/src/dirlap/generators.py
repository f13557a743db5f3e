"""Graph families used by the tests, the CLI and the verification corpus.

Random families use a splitmix-style 64-bit generator so an instance is
pinned down by its seed alone, and default weights live on a dyadic grid
(k/8) so that flow-balance sums are float-exact.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInstanceError
from .graph import DirectedGraph, build_graph

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: the public single-state 64-bit mixer.

    step: x += 0x9E3779B97F4A7C15; z = x;
          z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
          z = (z ^ z>>27) * 0x94D049BB133111EB;
          return z ^ z>>31   (all mod 2^64)
    """

    def __init__(self, seed: int):
        self._x = seed & _MASK64

    def next_u64(self) -> int:
        self._x = (self._x + 0x9E3779B97F4A7C15) & _MASK64
        z = self._x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0**-53)

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound). bound must be >= 1."""
        return self.next_u64() % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]

    def complex_vector(self, n: int) -> np.ndarray:
        """Complex vector with re, im uniform in [-1, 1)."""
        re = np.array([2.0 * self.next_float() - 1.0 for _ in range(n)])
        im = np.array([2.0 * self.next_float() - 1.0 for _ in range(n)])
        return re + 1j * im


def _dyadic_weight(rng: SplitMix64, lo: float, hi: float) -> float:
    # eighth-integer grid inside [lo, hi]; sums of these are exact in binary
    k_lo = int(np.ceil(lo * 8))
    k_hi = int(np.floor(hi * 8))
    if k_lo < 1:
        k_lo = 1
    if k_hi < k_lo:
        raise ValueError(f"weight range [{lo}, {hi}] contains no k/8 grid point")
    return (k_lo + rng.next_below(k_hi - k_lo + 1)) / 8.0


def gen_cycle(n: int, w: float = 1.0) -> DirectedGraph:
    """Directed n-cycle 0 -> 1 -> ... -> n-1 -> 0, constant weight, m = 1."""
    if n < 2:
        raise ValueError("cycle needs n >= 2")
    return build_graph([1.0] * n, [(i, (i + 1) % n, w) for i in range(n)])


def gen_opposing_cycles(
    n: int = 3, w_forward: float = 2.0, w_backward: float = 1.0
) -> DirectedGraph:
    """Two opposing directed n-cycles with different weights, m = 1.

    Balanced but genuinely asymmetric whenever the two weights differ:
    b(x, y) != b(y, x) on every pair, yet outflow == inflow everywhere.
    """
    if n < 3:
        raise ValueError("opposing cycles need n >= 3")
    edges = [(i, (i + 1) % n, w_forward) for i in range(n)]
    edges += [((i + 1) % n, i, w_backward) for i in range(n)]
    return build_graph([1.0] * n, edges)


def gen_random_circulation(
    n: int,
    k_cycles: int,
    seed: int,
    weight_range: tuple[float, float] = (0.25, 4.0),
) -> DirectedGraph:
    """Superpose k random directed simple cycles with dyadic random weights.

    Each cycle contributes its weight to outflow and inflow of every vertex
    it visits, so the result is Kirchhoff balanced by construction (exactly,
    thanks to the dyadic grid). Parallel contributions to the same ordered
    pair are merged by summation. The first cycle runs through all n
    vertices in random order, so no vertex is left isolated and k_cycles=1
    yields a relabeled weighted cycle.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if k_cycles < 1:
        raise ValueError("need k_cycles >= 1")
    rng = SplitMix64(seed)
    for _attempt in range(100):
        accum: dict[tuple[int, int], float] = {}

        def add_cycle(order: list[int], w: float) -> None:
            for a, b in zip(order, order[1:] + order[:1]):
                accum[(a, b)] = accum.get((a, b), 0.0) + w

        first = list(range(n))
        rng.shuffle(first)
        add_cycle(first, _dyadic_weight(rng, *weight_range))
        for _ in range(k_cycles - 1):
            length = 2 + rng.next_below(n - 1)
            pool = list(range(n))
            rng.shuffle(pool)
            add_cycle(pool[:length], _dyadic_weight(rng, *weight_range))

        covered = {u for u, _ in accum} | {v for _, v in accum}
        if len(covered) < n:
            continue
        edges = [(u, v, w) for (u, v), w in sorted(accum.items())]
        return build_graph([1.0] * n, edges)
    raise DegenerateInstanceError(
        f"no valid circulation after 100 attempts (n={n}, k={k_cycles}, seed={seed})"
    )


def gen_layered_heavy(L: int, width: int, gamma: float, radial: float = 1.0) -> DirectedGraph:
    """L concentric layers of directed cycles with geometrically growing weight.

    Layer l (0-based) is a directed cycle on `width` vertices with weight
    gamma**l; consecutive layers are joined by symmetric radial edge pairs of
    weight radial * gamma**l (l the inner layer). m = 1. Balanced exactly:
    the cycle contributes gamma**l to both flows at each of its vertices and
    radial pairs are symmetric. With gamma > 1 the weights escape to
    infinity along the layers, the model of a heavy end.
    """
    if L < 1 or width < 2:
        raise ValueError("need L >= 1 and width >= 2")
    if gamma <= 0 or radial <= 0:
        raise ValueError("gamma and radial must be > 0")
    edges: list[tuple[int, int, float]] = []

    def vid(layer: int, j: int) -> int:
        return layer * width + j

    for layer in range(L):
        w_cycle = gamma**layer
        for j in range(width):
            edges.append((vid(layer, j), vid(layer, (j + 1) % width), w_cycle))
        if layer + 1 < L:
            w_radial = radial * gamma**layer
            for j in range(width):
                edges.append((vid(layer, j), vid(layer + 1, j), w_radial))
                edges.append((vid(layer + 1, j), vid(layer, j), w_radial))
    return build_graph([1.0] * (L * width), edges)


def gen_symmetric_tree(depth: int, branching: int, weight_growth: float = 1.0) -> DirectedGraph:
    """Rooted tree with both edge orientations present and equal.

    A tree has no directed cycles besides back-and-forth travel, so balance
    forces b(x, y) == b(y, x); this family realizes that forced-symmetric
    case. Edges from a vertex at depth d to its children carry weight
    weight_growth**d in both directions. m = 1.
    """
    if depth < 1 or branching < 1:
        raise ValueError("need depth >= 1 and branching >= 1")
    if weight_growth <= 0:
        raise ValueError("weight_growth must be > 0")
    edges: list[tuple[int, int, float]] = []
    level = [0]
    next_id = 1
    for d in range(depth):
        w = weight_growth**d
        nxt = []
        for parent in level:
            for _ in range(branching):
                child = next_id
                next_id += 1
                edges.append((parent, child, w))
                edges.append((child, parent, w))
                nxt.append(child)
        level = nxt
    return build_graph([1.0] * next_id, edges)


def corpus() -> list[tuple[str, DirectedGraph]]:
    """Named balanced instances used by the verification suite.

    All entries have n <= 9 so exhaustive subset sweeps stay cheap, and they
    cover every family: plain cycles, opposing cycles, random circulations,
    a layered heavy-end graph, and a forced-symmetric tree.
    """
    return [
        ("cycle3", gen_cycle(3, 1.0)),
        ("cycle5", gen_cycle(5, 1.0)),
        ("cycle8_w2", gen_cycle(8, 2.0)),
        ("opposing3", gen_opposing_cycles()),
        ("circulation6_s1", gen_random_circulation(6, 3, seed=1)),
        ("circulation8_s2", gen_random_circulation(8, 4, seed=2)),
        ("circulation9_s3", gen_random_circulation(9, 4, seed=3)),
        ("layered3", gen_layered_heavy(3, 3, 2.0, 1.0)),
        ("tree2", gen_symmetric_tree(2, 2, 2.0)),
    ]
