"""Independent reference computations used as test oracles.

Everything here is deliberately written the slow, obvious way (itertools
enumeration, direct summation, plain geometry) so it shares no code paths
with the package.
"""

from itertools import combinations

import numpy as np


def brute_cheeger(g, omega, normalization):
    """Reference Cheeger constant: enumerate subsets with itertools and sum
    boundary weights straight off the edge list."""
    omega = sorted(set(omega))
    denom_source = g.measure if normalization == "measure" else g.beta_plus
    best = None
    best_set = None
    for size in range(1, len(omega) + 1):
        for sub in combinations(omega, size):
            inside = set(sub)
            cut = sum(
                w
                for u, v, w in zip(
                    g.edge_from.tolist(), g.edge_to.tolist(), g.edge_weight.tolist()
                )
                if (u in inside) != (v in inside)
            )
            denom = sum(denom_source[v] for v in sub)
            value = cut / denom
            key = tuple(sub)
            if best is None or value < best or (value == best and key < best_set):
                best = value
                best_set = key
    return best, best_set


def convex_hull(points):
    """Monotone-chain hull of complex points, counterclockwise, as a list."""
    pts = sorted(set((float(p.real), float(p.imag)) for p in points))
    if len(pts) <= 2:
        return [complex(x, y) for x, y in pts]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return [complex(x, y) for x, y in hull]


def _segment_distance(p, a, b):
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * np.conj(ab)).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def hull_distance(p, points):
    """Distance from complex p to the convex hull of the given points."""
    hull = convex_hull(points)
    p = complex(p)
    if len(hull) == 1:
        return abs(p - hull[0])
    if len(hull) == 2:
        return _segment_distance(p, hull[0], hull[1])
    inside = True
    for a, b in zip(hull, hull[1:] + hull[:1]):
        cross = ((b - a).real * (p - a).imag) - ((b - a).imag * (p - a).real)
        if cross < 0:
            inside = False
            break
    if inside:
        return 0.0
    return min(_segment_distance(p, a, b) for a, b in zip(hull, hull[1:] + hull[:1]))


def support_value(points, angle):
    """Support function max_p <p, e^{i angle}> of a finite point set."""
    d = np.exp(1j * angle)
    return max((p * np.conj(d)).real for p in points)


def spectra_mismatch(got, expected):
    """Symmetric nearest-neighbor distance between two spectra.

    Robust against ordering: conjugate pairs can have real parts equal only
    up to rounding, which makes sorted elementwise comparison unstable.
    When the true eigenvalues are separated by much more than the returned
    value, a small result certifies a one-to-one matching.
    """
    a = np.asarray(got, dtype=complex).ravel()
    b = np.asarray(expected, dtype=complex).ravel()
    assert a.size == b.size
    dist = np.abs(a[:, None] - b[None, :])
    return float(max(dist.min(axis=0).max(), dist.min(axis=1).max()))
