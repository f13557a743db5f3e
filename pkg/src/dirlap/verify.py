"""Checks that the spectral inequalities hold on concrete instances.

Every check returns a TheoremReport: an inequality chain evaluated on one
instance, with lhs[i] <= rhs[i] expected entrywise, margin = min(rhs - lhs),
and passed <=> margin >= -tolerance. Equalities are encoded as the two
opposite inequalities. Randomized checks draw from a fixed-seed splitmix64
stream, so outputs are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyComplementError, SubsetTooLargeError
from .generators import SplitMix64, corpus
from .graph import DirectedGraph, boundaries, connectivity, subset_array
from .isoperimetric import (
    Filtration,
    MAX_EXACT_SUBSET,
    build_filtration,
    cheeger_exact,
    infinity_profile,
    m_M_constants,
)
from .operators import assemble, dirichlet, greens_residual, metric_inner, to_euclidean
from .spectral import eig, kernel_dimension, numerical_range_boundary, nu, operator_norm

DEFAULT_ABS_TOL = 1e-8
DEFAULT_REL_TOL = 1e-8

# strictness floor for "strictly positive" spectral gaps (see the Dirichlet
# bounds): asserted as >= -STRICT_FLOOR rather than > 0, which is the best a
# floating point check can honestly do
STRICT_FLOOR = 1e-12

_GREEN_SEED = 0x6772E55
_FUJIWARA_SEED = 0xF731A4A
_RANGE_SAMPLES_DISC = 360
_RANGE_SAMPLES_FUJIWARA = 16


@dataclass(frozen=True)
class TheoremReport:
    """One verified inequality chain on one instance."""

    theorem_id: str
    instance: str
    lhs: tuple[float, ...]
    rhs: tuple[float, ...]
    margin: float
    passed: bool
    tolerance: float

    def to_json_obj(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "instance": self.instance,
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
            "margin": self.margin,
            "passed": self.passed,
            "tolerance": self.tolerance,
        }


def _default_tolerance(values: Iterable[float]) -> float:
    scale = max((abs(v) for v in values), default=0.0)
    return DEFAULT_ABS_TOL + DEFAULT_REL_TOL * scale


def _report(
    theorem_id: str,
    instance: str,
    pairs: Sequence[tuple[float, float]],
    tolerance: float | None = None,
) -> TheoremReport:
    lhs = tuple(float(a) for a, _ in pairs)
    rhs = tuple(float(b) for _, b in pairs)
    if tolerance is None:
        tolerance = _default_tolerance(lhs + rhs)
    margin = min(b - a for a, b in zip(lhs, rhs))
    return TheoremReport(
        theorem_id=theorem_id,
        instance=instance,
        lhs=lhs,
        rhs=rhs,
        margin=float(margin),
        passed=bool(margin >= -tolerance),
        tolerance=float(tolerance),
    )


def _omega_tag(omega: Iterable[int]) -> str:
    return "{" + ",".join(str(int(v)) for v in sorted(set(omega))) + "}"


def verify_green(
    g: DirectedGraph, instance: str = "graph", n_pairs: int = 100, seed: int = _GREEN_SEED
) -> TheoremReport:
    """Summation-by-parts identity on random complex vector pairs.

    The residual is compared against 1e-9 * scale per pair, scale being the
    magnitude of the three terms involved. Raises KirchhoffViolatedError on
    unbalanced graphs (via greens_residual).
    """
    rng = SplitMix64(seed)
    delta = assemble(g, "delta").matrix
    worst = 0.0
    for _ in range(n_pairs):
        f = rng.complex_vector(g.n)
        h = rng.complex_vector(g.n)
        resid = greens_residual(g, f, h)
        t1 = metric_inner(g.measure, delta @ f, h)
        t2 = np.conj(metric_inner(g.measure, delta @ h, f))
        df = f[g.edge_from] - f[g.edge_to]
        dh = h[g.edge_from] - h[g.edge_to]
        t3 = complex(np.sum(g.edge_weight * df * np.conj(dh)))
        scale = max(1.0, abs(t1), abs(t2), abs(t3))
        worst = max(worst, resid / scale)
    return _report(
        "greens_formula",
        f"{instance}|pairs={n_pairs}",
        [(worst, 1e-9)],
        tolerance=0.0,
    )


def verify_bounded(
    g: DirectedGraph, instance: str = "graph", n_angles: int = _RANGE_SAMPLES_DISC
) -> TheoremReport:
    """Normalized operator: norm <= 2, numerical range in the unit-radius
    disc centered at 1, and (connected case) a simple zero eigenvalue."""
    op = assemble(g, "normalized_delta")
    norm = operator_norm(op)
    samples = numerical_range_boundary(op, n_angles)
    max_dist = float(np.max(np.abs(samples.points - 1.0)))
    pairs = [(norm, 2.0), (max_dist, 1.0)]
    connected, _ = connectivity(g)
    if connected:
        kdim = kernel_dimension(op)
        pairs.append((float(abs(kdim - 1)), 0.0))
    return _report("norm_disc_kernel", f"{instance}|angles={n_angles}", pairs)


def verify_kyfan(
    matrix: np.ndarray, instance: str = "matrix", tolerance: float | None = None
) -> TheoremReport:
    """Partial-sum comparison between Re of eigenvalues and eigenvalues of
    the Hermitian part.

    With both lists ascending, the top-q sums of Re(eigenvalues) are bounded
    by the top-q sums of the Hermitian part's eigenvalues, with equality for
    q = n (both equal the real part of the trace).
    """
    a = np.asarray(matrix, dtype=complex)
    re_sorted = np.sort(eig(a).eigenvalues.real)
    sym_sorted = np.sort(np.linalg.eigvalsh(0.5 * (a + a.conj().T)))
    n = a.shape[0]
    pairs = []
    for q in range(1, n + 1):
        pairs.append((float(re_sorted[n - q :].sum()), float(sym_sorted[n - q :].sum())))
    # q = n is an equality: add the reversed inequality
    pairs.append((float(sym_sorted.sum()), float(re_sorted.sum())))
    return _report("ky_fan_partial_sums", instance, pairs, tolerance)


def verify_dirichlet_bounds(
    g: DirectedGraph, omega: Iterable[int], instance: str = "graph"
) -> TheoremReport:
    """Spectral bounds for the normalized operator restricted to a proper
    subset with zero boundary conditions.

    Checks: Re of the lowest eigenvalue is (strictly) positive and <= 1; the
    extreme eigenvalues of the Hermitian part sum to <= 2; the Hermitian
    part's bottom eigenvalue lower-bounds Re of the lowest eigenvalue; Re of
    the top eigenvalue stays below 2. Strict positivity is asserted at the
    1e-12 floor.
    """
    idx = subset_array(g, omega)
    if idx.size >= g.n:
        raise ValueError("omega must be a proper subset")
    vertex_boundary, _ = boundaries(g, idx)
    if not vertex_boundary:
        raise ValueError("omega must have a non-empty vertex boundary")
    op = dirichlet(assemble(g, "normalized_delta"), idx)
    lam = eig(op.matrix).eigenvalues
    re_low = float(lam[0].real)
    re_high = float(lam[-1].real)
    a = to_euclidean(op)
    sym = np.sort(np.linalg.eigvalsh(0.5 * (a + a.conj().T)))
    s_low, s_high = float(sym[0]), float(sym[-1])
    tol = _default_tolerance([re_low, re_high, s_low, s_high, 2.0])
    pairs = [
        (STRICT_FLOOR - tol, re_low),  # strict positivity at the 1e-12 floor
        (re_low, 1.0),
        (s_low + s_high, 2.0),
        (s_low, re_low),
        (re_high, 2.0),
    ]
    return _report(
        "dirichlet_eigenvalue_bounds",
        f"{instance}|omega={_omega_tag(idx)}",
        pairs,
        tolerance=tol,
    )


def verify_cheeger_sandwich(
    g: DirectedGraph, omega: Iterable[int], instance: str = "graph"
) -> TheoremReport:
    """Two-sided isoperimetric bounds on the Dirichlet spectral gap.

    With h the measure-normalized and ht the outflow-normalized constant,
    nu_m / nu_t the gaps of the plain / normalized restrictions, and m, M
    the extreme outflow-to-measure ratios on omega:

        h^2 / 8     <= M nu_m <= M h / 2
        ht^2 / 8    <= nu_t   <= ht / 2
        m ht^2 / 8  <= nu_m
    """
    idx = subset_array(g, omega)
    if idx.size > MAX_EXACT_SUBSET:
        raise SubsetTooLargeError(
            f"|omega| = {idx.size} exceeds the exact enumeration cap {MAX_EXACT_SUBSET}"
        )
    h = cheeger_exact(g, idx, "measure").value
    ht = cheeger_exact(g, idx, "beta_plus").value
    nu_m = nu(dirichlet(assemble(g, "delta"), idx))
    nu_t = nu(dirichlet(assemble(g, "normalized_delta"), idx))
    m_c, M_c = m_M_constants(g, idx)
    pairs = [
        (h * h / 8.0, M_c * nu_m),
        (M_c * nu_m, 0.5 * M_c * h),
        (ht * ht / 8.0, nu_t),
        (nu_t, 0.5 * ht),
        (m_c * ht * ht / 8.0, nu_m),
    ]
    return _report(
        "cheeger_sandwich", f"{instance}|omega={_omega_tag(idx)}", pairs
    )


def verify_fujiwara(
    g: DirectedGraph,
    omega: Iterable[int],
    instance: str = "graph",
    n_angles: int = _RANGE_SAMPLES_FUJIWARA,
    n_vectors: int = 100,
    seed: int = _FUJIWARA_SEED,
) -> TheoremReport:
    """Isoperimetric envelope of the Dirichlet numerical range.

    Every point of the numerical range of the restricted plain operator has
    2 Re(point) between m (2 - sqrt(4 - ht^2)) and M (2 + sqrt(4 - ht^2)).
    Checked on the boundary sweep extremes (rho = min Re over samples,
    sigma = max Re), and as the sharper interior chain
    m r(f) <= 2 Re (A f, f)_m <= M r(f) on random unit vectors, where
    r(f) = 2 Re (At f, f)_bp / (f, f)_bp compares against the normalized
    restriction At.
    """
    idx = subset_array(g, omega)
    if idx.size > MAX_EXACT_SUBSET:
        raise SubsetTooLargeError(
            f"|omega| = {idx.size} exceeds the exact enumeration cap {MAX_EXACT_SUBSET}"
        )
    ht = cheeger_exact(g, idx, "beta_plus").value
    m_c, M_c = m_M_constants(g, idx)
    op_m = dirichlet(assemble(g, "delta"), idx)
    op_t = dirichlet(assemble(g, "normalized_delta"), idx)
    samples = numerical_range_boundary(op_m, n_angles)
    rho = float(samples.points.real.min())
    sigma = float(samples.points.real.max())
    s = float(np.sqrt(max(0.0, 4.0 - ht * ht)))
    pairs = [
        (m_c * (2.0 - s), 2.0 * rho),
        (2.0 * rho, 2.0 * sigma),
        (2.0 * sigma, M_c * (2.0 + s)),
    ]

    rng = SplitMix64(seed)
    worst_low: tuple[float, float] | None = None
    worst_high: tuple[float, float] | None = None
    for _ in range(n_vectors):
        f = rng.complex_vector(idx.size)
        norm_m = metric_inner(op_m.metric, f, f).real
        two_re_lam = 2.0 * metric_inner(op_m.metric, op_m.matrix @ f, f).real / norm_m
        norm_t = metric_inner(op_t.metric, f, f).real
        r = 2.0 * metric_inner(op_t.metric, op_t.matrix @ f, f).real / norm_t
        low = (m_c * r, two_re_lam)
        high = (two_re_lam, M_c * r)
        if worst_low is None or low[1] - low[0] < worst_low[1] - worst_low[0]:
            worst_low = low
        if worst_high is None or high[1] - high[0] < worst_high[1] - worst_high[0]:
            worst_high = high
    if worst_low is not None and worst_high is not None:
        pairs.extend([worst_low, worst_high])
    return _report(
        "fujiwara_envelope",
        f"{instance}|omega={_omega_tag(idx)}|angles={n_angles}|vectors={n_vectors}",
        pairs,
    )


def verify_ess_bound_consistency(
    g: DirectedGraph,
    filt: Filtration,
    instance: str = "graph",
    budget: int = MAX_EXACT_SUBSET,
) -> TheoremReport:
    """Per-level essential-spectrum lower bounds along a filtration.

    The Dirichlet gap of each complement bounds the essential spectrum's
    real part from below, so the sequence nu(level complement) must be
    nondecreasing, and each level must satisfy the isoperimetric bound
    m_c ht_c^2 / 8 <= nu.
    """
    profile = infinity_profile(g, filt, budget)
    if len(profile.levels) < 2:
        raise EmptyComplementError("need at least 2 levels with non-empty complement")
    pairs = []
    for a, b in zip(profile.levels, profile.levels[1:]):
        pairs.append((a.nu_dirichlet, b.nu_dirichlet))
    for row in profile.levels:
        pairs.append((row.ess_lower_bound, row.nu_dirichlet))
    return _report(
        "essential_spectrum_lower_bound",
        f"{instance}|root={filt.root}|levels={len(profile.levels)}",
        pairs,
    )


def _proper_subsets(n: int, max_size: int) -> Iterable[tuple[int, ...]]:
    """All subsets of 0..n-1 with 1 <= size <= max_size, smallest first."""
    for size in range(1, max_size + 1):
        yield from combinations(range(n), size)


def _selected_subsets(g: DirectedGraph) -> list[tuple[int, ...]]:
    """Deterministic small subset family for graphs too big to sweep."""
    subsets: list[tuple[int, ...]] = [(0,), (g.n // 2,), (g.n - 1,)]
    connected, _ = connectivity(g)
    if connected:
        filt = build_filtration(g, 0)
        for level in filt.levels[:-1][:4]:
            if len(level) <= MAX_EXACT_SUBSET:
                subsets.append(level)
            comp = tuple(sorted(set(range(g.n)) - set(level)))
            if 0 < len(comp) <= MAX_EXACT_SUBSET:
                subsets.append(comp)
    seen = set()
    unique = []
    for sub in subsets:
        if sub not in seen and 0 < len(sub) < g.n:
            seen.add(sub)
            unique.append(sub)
    return unique


def verify_graph(
    g: DirectedGraph,
    name: str = "graph",
    exhaustive_limit: int = 9,
    sandwich_size_cap: int = 8,
    budget: int = MAX_EXACT_SUBSET,
) -> list[TheoremReport]:
    """Run the whole suite on one balanced graph.

    For n <= exhaustive_limit the subset sweeps are exhaustive (proper
    subsets for the Dirichlet bounds; subsets up to sandwich_size_cap for
    the isoperimetric checks); larger graphs get a deterministic selection.
    """
    reports = [
        verify_green(g, name),
        verify_bounded(g, name),
        verify_kyfan(to_euclidean(assemble(g, "normalized_delta")), f"{name}|normalized_delta"),
    ]
    if g.n <= exhaustive_limit:
        dirichlet_subsets = list(_proper_subsets(g.n, g.n - 1))
        sandwich_subsets = list(_proper_subsets(g.n, min(sandwich_size_cap, g.n)))
    else:
        dirichlet_subsets = _selected_subsets(g)
        sandwich_subsets = dirichlet_subsets
    for omega in dirichlet_subsets:
        reports.append(verify_dirichlet_bounds(g, omega, name))
    for omega in sandwich_subsets:
        reports.append(verify_cheeger_sandwich(g, omega, name))
        reports.append(verify_fujiwara(g, omega, name))
    connected, _ = connectivity(g)
    if connected:
        filt = build_filtration(g, 0)
        usable = sum(1 for level in filt.levels if len(level) < g.n)
        if usable >= 2:
            reports.append(verify_ess_bound_consistency(g, filt, name, budget))
    return reports


def verify_corpus() -> list[TheoremReport]:
    """Run the suite over the built-in corpus."""
    reports: list[TheoremReport] = []
    for name, g in corpus():
        reports.extend(verify_graph(g, name))
    return reports
