"""Eigenvalues, numerical range boundary, and norm computations.

Everything is computed in Euclidean coordinates after conjugating by the
square root of the metric (see operators.to_euclidean), which preserves the
spectrum and turns metric inner products into plain ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergenceError
from .operators import Operator, to_euclidean

_HERMITIAN_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted by (real part, imaginary part), optional vectors.

    eigenvectors, when present, holds one column per eigenvalue in the same
    order.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class NumericalRangeBoundary:
    """Boundary samples of {(A f, f) : ||f|| = 1} for the metric product.

    points[k] is the boundary point found in sweep direction angles[k];
    nu is the smallest real part over the samples (equal to the true
    infimum of Re over the numerical range whenever pi is among the
    angles).
    """

    angles: np.ndarray
    points: np.ndarray
    nu: float


def _is_hermitian(a: np.ndarray) -> bool:
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    return float(np.max(np.abs(a - a.conj().T))) <= _HERMITIAN_RTOL * (1.0 + scale)


def _sort_complex(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((values.imag, values.real))
    return values[order], order


def eig(matrix: np.ndarray, compute_vectors: bool = False) -> Spectrum:
    """Dense eigendecomposition with a deterministic eigenvalue order.

    Hermitian (in particular real symmetric) inputs are routed to the
    symmetric solver and come back real and ascending; everything else goes
    through the general solver and is sorted by (Re, Im). The LAPACK QR
    iteration failing to converge surfaces as NoConvergenceError.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    try:
        if _is_hermitian(a):
            if compute_vectors:
                vals, vecs = np.linalg.eigh(a)
            else:
                vals, vecs = np.linalg.eigvalsh(a), None
            vals = vals.astype(complex)
        else:
            if compute_vectors:
                vals, vecs = np.linalg.eig(a)
            else:
                vals, vecs = np.linalg.eigvals(a), None
            vals, order = _sort_complex(vals)
            if vecs is not None:
                vecs = vecs[:, order]
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"eigenvalue iteration did not converge: {exc}") from exc
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    """Deterministic representative: first nonzero component real positive."""
    scale = float(np.max(np.abs(v)))
    for x in v:
        if abs(x) > 1e-12 * scale:
            return v * (np.conj(x) / abs(x))
    return v


def numerical_range_boundary(op: Operator, n_angles: int) -> NumericalRangeBoundary:
    """Sample the numerical range boundary by a rotation sweep.

    For each angle theta, the top eigenvector v of the Hermitian part of
    e^{i theta} A (Euclidean coordinates) maximizes Re e^{i theta}(A f, f)
    over unit f, so (A v, v) is a boundary point with outer normal
    direction e^{-i theta}. Angles are 2 pi k / n_angles, k = 0..n_angles-1.
    """
    if n_angles < 4:
        raise ValueError("need n_angles >= 4")
    a = to_euclidean(op).astype(complex)
    ah = a.conj().T
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    points = np.empty(n_angles, dtype=complex)
    try:
        for k, theta in enumerate(angles):
            rotated = 0.5 * (np.exp(1j * theta) * a + np.exp(-1j * theta) * ah)
            _, vecs = np.linalg.eigh(rotated)
            v = _phase_normalize(vecs[:, -1])
            points[k] = v.conj() @ (a @ v)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"eigenvalue iteration did not converge: {exc}") from exc
    return NumericalRangeBoundary(
        angles=angles, points=points, nu=float(points.real.min())
    )


def nu(op: Operator) -> float:
    """inf Re of the numerical range: smallest eigenvalue of the Hermitian
    part in Euclidean coordinates. Computed spectrally, not by sampling."""
    a = to_euclidean(op)
    sym = 0.5 * (a + a.conj().T)
    try:
        return float(np.linalg.eigvalsh(sym)[0])
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"eigenvalue iteration did not converge: {exc}") from exc


def operator_norm(op: Operator) -> float:
    """Metric operator norm = largest singular value in Euclidean coordinates."""
    try:
        return float(np.linalg.svd(to_euclidean(op), compute_uv=False)[0])
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"singular value iteration did not converge: {exc}") from exc


def kernel_dimension(op: Operator, tol: float = 1e-8) -> int:
    """Number of eigenvalues with modulus <= tol.

    For the normalized Laplacian of a balanced graph this counts connected
    components (1 when connected: the kernel is spanned by constants and the
    zero eigenvalue is simple).
    """
    vals = eig(op.matrix).eigenvalues
    return int(np.count_nonzero(np.abs(vals) <= tol))
