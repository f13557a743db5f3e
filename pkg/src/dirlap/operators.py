"""Laplacian-type operators on a directed weighted graph.

Six kinds are assembled, all dense real matrices paired with the metric
(vertex weights) of the inner product they live in:

    delta                   (1/m)(beta_plus f - B f)            metric m
    delta_prime             (1/m)(beta_plus f - B^T f)          metric m
    h                       delta + delta_prime                 metric m
    normalized_delta        same as delta with m := beta_plus   metric beta_plus
    normalized_delta_prime  likewise                            metric beta_plus
    normalized_h            likewise                            metric beta_plus

delta_prime is the formal adjoint of delta for the metric inner product:
(delta f, h) == (f, delta_prime h) for all vectors. Under Kirchhoff balance
its row sums vanish, i.e. it is again a Laplacian (for the transposed
weights); in general delta_prime 1 equals the imbalance potential.
h is always self-adjoint for its metric.

A Dirichlet restriction keeps the rows and columns of a vertex subset,
which imposes zero boundary values on the complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import EmptySubsetError, KirchhoffViolatedError, SchemaViolationError
from .graph import DirectedGraph, check_kirchhoff

KINDS = (
    "delta",
    "delta_prime",
    "h",
    "normalized_delta",
    "normalized_delta_prime",
    "normalized_h",
)


@dataclass(frozen=True, eq=False)
class Operator:
    """A dense matrix together with the metric of its inner product.

    support lists the original vertex ids the rows/columns refer to; None
    means the full vertex set in order.
    """

    matrix: np.ndarray
    metric: np.ndarray
    kind: str
    support: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def base_kind(self) -> str:
        """Kind with any dirichlet(...) wrapper removed."""
        kind = self.kind
        while kind.startswith("dirichlet(") and kind.endswith(")"):
            kind = kind[len("dirichlet(") : -1]
        return kind


def assemble(g: DirectedGraph, kind: str) -> Operator:
    """Assemble one of the six operator kinds for a graph."""
    if kind not in KINDS:
        raise ValueError(f"unknown operator kind {kind!r}, expected one of {KINDS}")
    B = g.weight_matrix
    w = g.beta_plus if kind.startswith("normalized_") else g.measure
    diag = np.diag(g.beta_plus / w)
    base = kind.removeprefix("normalized_")
    if base == "delta":
        M = diag - B / w[:, None]
    elif base == "delta_prime":
        M = diag - B.T / w[:, None]
    else:  # h
        M = 2.0 * diag - (B + B.T) / w[:, None]
    M.flags.writeable = False
    return Operator(matrix=M, metric=w, kind=kind)


def dirichlet(op: Operator, omega: Iterable[int]) -> Operator:
    """Restrict an operator to a vertex subset (zero boundary conditions).

    omega is given in original vertex ids; for an already-restricted
    operator it must be a subset of its support.
    """
    ids = sorted({int(v) for v in omega})
    if not ids:
        raise EmptySubsetError("vertex subset is empty")
    if op.support is None:
        n = op.size
        if ids[0] < 0 or ids[-1] >= n:
            raise SchemaViolationError(f"subset member out of range 0..{n - 1}")
        positions = ids
    else:
        lookup = {v: i for i, v in enumerate(op.support)}
        try:
            positions = [lookup[v] for v in ids]
        except KeyError as exc:
            raise SchemaViolationError(
                f"vertex {exc.args[0]} is not in the operator support"
            ) from exc
    pos = np.asarray(positions, dtype=np.int64)
    M = op.matrix[np.ix_(pos, pos)].copy()
    M.flags.writeable = False
    return Operator(
        matrix=M,
        metric=op.metric[pos],
        kind=f"dirichlet({op.kind})",
        support=tuple(ids),
    )


def to_euclidean(op: Operator) -> np.ndarray:
    """Conjugate the matrix into the plain inner product: W^1/2 A W^-1/2.

    Spectrum is unchanged; self-adjointness for the metric becomes ordinary
    symmetry, so Euclidean tools (eigh, svd) apply directly.
    """
    s = np.sqrt(op.metric)
    return op.matrix * (s[:, None] / s[None, :])


def metric_inner(metric: np.ndarray, f: np.ndarray, h: np.ndarray) -> complex:
    """Weighted inner product sum_x metric(x) f(x) conj(h(x))."""
    return complex(np.sum(metric * np.asarray(f) * np.conj(h)))


def greens_residual(g: DirectedGraph, f: np.ndarray, h: np.ndarray) -> float:
    """Defect of the summation-by-parts identity on a balanced graph.

    Computes |(delta f, h)_m + conj((delta h, f)_m)
              - sum_edges b(x,y) (f(x)-f(y)) conj(h(x)-h(y))|,
    which is zero in exact arithmetic whenever outflow == inflow holds.

    Raises KirchhoffViolatedError if the graph is not balanced.
    """
    report = check_kirchhoff(g)
    if not report.satisfied:
        raise KirchhoffViolatedError(
            f"graph violates flow balance by {report.max_violation:g}"
        )
    f = np.asarray(f, dtype=complex)
    h = np.asarray(h, dtype=complex)
    D = assemble(g, "delta").matrix
    t1 = metric_inner(g.measure, D @ f, h)
    t2 = np.conj(metric_inner(g.measure, D @ h, f))
    df = f[g.edge_from] - f[g.edge_to]
    dh = h[g.edge_from] - h[g.edge_to]
    t3 = complex(np.sum(g.edge_weight * df * np.conj(dh)))
    return abs(t1 + t2 - t3)


def quadratic_form(op: Operator, f: np.ndarray) -> float:
    """Energy 2 Re (A f, f)_metric of a delta-type operator.

    Only meaningful for kind delta / normalized_delta (possibly Dirichlet
    restricted); on a balanced graph it equals
    sum_edges b(x,y) |f(x)-f(y)|^2, hence is nonnegative.
    """
    if op.base_kind() not in ("delta", "normalized_delta"):
        raise ValueError(f"quadratic_form expects a delta kind, got {op.kind!r}")
    f = np.asarray(f, dtype=complex)
    return float(2.0 * metric_inner(op.metric, op.matrix @ f, f).real)


def operator_to_json_obj(op: Operator) -> dict:
    return {
        "kind": op.kind,
        "metric": [float(x) for x in op.metric],
        "matrix": [[float(x) for x in row] for row in op.matrix],
        "support": None if op.support is None else list(op.support),
    }


def operator_from_json_obj(obj) -> Operator:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise SchemaViolationError("operator JSON must be an object with a 'matrix' key")
    try:
        matrix = np.asarray(obj["matrix"], dtype=float)
        metric = np.asarray(obj["metric"], dtype=float)
        kind = str(obj["kind"])
        support = obj.get("support")
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaViolationError(f"bad operator JSON: {exc}") from exc
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise SchemaViolationError("operator matrix must be square")
    if metric.shape != (matrix.shape[0],):
        raise SchemaViolationError("metric length must match the matrix")
    if not np.all(metric > 0):
        raise SchemaViolationError("metric entries must be > 0")
    matrix.flags.writeable = False
    metric.flags.writeable = False
    return Operator(
        matrix=matrix,
        metric=metric,
        kind=kind,
        support=None if support is None else tuple(int(v) for v in support),
    )


def operator_to_csv_text(op: Operator) -> str:
    """Row-major CSV with two header lines: kind and metric."""
    lines = ["kind," + op.kind]
    lines.append("metric," + ",".join(repr(float(x)) for x in op.metric))
    for row in op.matrix:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def operator_from_csv_text(text: str) -> Operator:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3 or not lines[0].startswith("kind,") or not lines[1].startswith("metric,"):
        raise SchemaViolationError("operator CSV needs 'kind,...' and 'metric,...' header lines")
    kind = lines[0].split(",", 1)[1]
    try:
        metric = np.asarray([float(x) for x in lines[1].split(",")[1:]], dtype=float)
        matrix = np.asarray([[float(x) for x in ln.split(",")] for ln in lines[2:]], dtype=float)
    except ValueError as exc:
        raise SchemaViolationError(f"bad operator CSV: {exc}") from exc
    return operator_from_json_obj(
        {"kind": kind, "metric": metric.tolist(), "matrix": matrix.tolist(), "support": None}
    )
