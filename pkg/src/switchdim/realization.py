"""Point configurations realizing centered dissimilarity matrices.

The centered matrix F equals twice the pseudo-Gram matrix of the realized
points around the weighted centroid, so factoring F/2 through its
eigendecomposition yields explicit coordinates: eigenvectors scaled by
sqrt(|eigenvalue|), positive eigenvalues first.  Exactness lives in the
signatures computed elsewhere; here coordinates are floating point and are
verified through residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .exact import Matrix, Signature, inertia
from .jacobi import as_float, jacobi_eigh


class RealizationError(RuntimeError):
    pass


class CenterNotUniqueError(RuntimeError):
    def __init__(self, affine_defect: int):
        super().__init__(
            f"sphere center is not unique: the points span a subspace with "
            f"affine defect {affine_defect}"
        )
        self.affine_defect = affine_defect


@dataclass(frozen=True)
class PointConfiguration:
    """n points in R^{p,q}: first p coordinates count positive, last q negative."""

    points: np.ndarray
    p: int
    q: int
    source: Matrix | None
    tolerance: float
    labels: tuple | None = None

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def metric_signs(self) -> np.ndarray:
        return np.concatenate([np.ones(self.p), -np.ones(self.q)])

    def scalar_squares(self) -> np.ndarray:
        """All pairwise values <<x_i - x_j, x_i - x_j>> as an n x n array."""
        diffs = self.points[:, None, :] - self.points[None, :, :]
        return (diffs * diffs * self.metric_signs()).sum(axis=2)

    def self_squares(self) -> np.ndarray:
        return (self.points * self.points * self.metric_signs()).sum(axis=1)


def realize(
    centered: Matrix,
    target: Matrix,
    tol: float = 1e-8,
    *,
    signature: Signature | None = None,
    labels: tuple | None = None,
) -> PointConfiguration:
    """Factor the centered matrix into coordinates and verify the round trip.

    The split (p, q) must match the exact inertia of the centered matrix;
    the realized pairwise scalar squares must reproduce the target
    dissimilarity within ``tol`` (relative to its largest entry).
    """
    if signature is None:
        signature = inertia(centered)
    gram = as_float(centered) / 2.0
    eig = jacobi_eigh(gram)
    cut = 1e-8 * max(1.0, float(np.abs(gram).max(initial=0.0)))
    pos = [i for i, v in enumerate(eig.values) if v > cut]
    neg = [i for i, v in enumerate(eig.values) if v < -cut]
    neg.sort(key=lambda i: eig.values[i])
    p, q = len(pos), len(neg)
    if (p, q) != signature.pair:
        raise RealizationError(
            f"float factorization found split ({p},{q}) but the exact signature "
            f"is {signature.pair}; eigenvalues too close to the zero threshold"
        )
    cols = [eig.vectors[:, i] * math.sqrt(abs(eig.values[i])) for i in pos + neg]
    n = centered.rows
    points = np.column_stack(cols) if cols else np.zeros((n, 0))
    config = PointConfiguration(
        points=points, p=p, q=q, source=target, tolerance=tol, labels=labels
    )
    realized = config.scalar_squares()
    want = as_float(target)
    scale = max(1.0, float(np.abs(want).max(initial=0.0)))
    dev = np.abs(realized - want)
    worst = float(dev.max(initial=0.0))
    if worst > tol * scale:
        i, j = np.unravel_index(int(dev.argmax()), dev.shape)
        raise RealizationError(
            f"realized scalar squares deviate from the target by {worst:.3e} "
            f"(worst pair {i},{j}; tolerance {tol * scale:.3e})"
        )
    return config


@dataclass
class DistanceSetReport:
    """Distinct scalar-square values of a configuration, with verification extras."""

    values: tuple[float, ...]
    multiplicities: tuple[int, ...]
    s: int
    contains_zero: bool
    point_count: int
    duplicate_groups: tuple[tuple[int, ...], ...]
    bound: int | None = None
    attains_bound: bool | None = None
    spherical: bool | None = None
    center: tuple[float, ...] | None = None
    antipodal: bool | None = None


def distance_set(config: PointConfiguration, tol: float = 1e-8) -> DistanceSetReport:
    """Cluster the pairwise scalar squares of the distinct points.

    Vertices mapping to the same point (possible when a distance value is
    zero) are collapsed first and reported, not treated as errors.  Cluster
    gaps must be comfortably larger than the merge tolerance; a gap between
    tol and 10*tol is ambiguous and raises.
    """
    pts = config.points
    n = pts.shape[0]
    coord_scale = max(1.0, float(np.abs(pts).max(initial=0.0)))
    groups = _collapse_points(pts, tol * coord_scale)
    reps = [grp[0] for grp in groups]
    sq = config.scalar_squares()
    vals = sorted(sq[i, j] for ai, i in enumerate(reps) for j in reps[ai + 1 :])
    if not vals:
        return DistanceSetReport(
            values=(),
            multiplicities=(),
            s=0,
            contains_zero=False,
            point_count=len(reps),
            duplicate_groups=tuple(tuple(grp) for grp in groups if len(grp) > 1),
        )
    scale = max(1.0, float(np.abs(sq).max(initial=0.0)))
    merge, keep = tol * scale, 10.0 * tol * scale
    clusters: list[list[float]] = [[vals[0]]]
    for prev, cur in zip(vals, vals[1:]):
        gap = cur - prev
        if gap <= merge:
            clusters[-1].append(cur)
        elif gap <= keep:
            raise RealizationError(
                f"ambiguous distance clustering: gap {gap:.3e} lies between the "
                f"merge tolerance {merge:.3e} and the separation requirement {keep:.3e}"
            )
        else:
            clusters.append([cur])
    values = tuple(float(np.mean(c)) for c in clusters)
    return DistanceSetReport(
        values=values,
        multiplicities=tuple(len(c) for c in clusters),
        s=len(values),
        contains_zero=any(abs(v) <= merge for v in values),
        point_count=len(reps),
        duplicate_groups=tuple(tuple(grp) for grp in groups if len(grp) > 1),
    )


def _collapse_points(pts: np.ndarray, tol: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i in range(pts.shape[0]):
        for grp in groups:
            if np.linalg.norm(pts[grp[0]] - pts[i]) <= tol:
                grp.append(i)
                break
        else:
            groups.append([i])
    return groups


def cardinality_bound(p: int, q: int, s: int, spherical: bool = False) -> int:
    """Upper bound on the size of an s-(indefinite-)distance set in R^{p,q}.

    The plain bound C(p+q+s, s) assumes 0 is not among the distance values;
    certifying that is the caller's job.  On a sphere the bound drops to
    C(p+q+s-1, s) when p = 1 or q = 1 and to
    C(p+q+s-1, s) + C(p+q+s-2, s-1) otherwise.
    """
    if s < 1:
        raise ValueError("bounds need at least one distance value")
    d = p + q
    if not spherical:
        return math.comb(d + s, s)
    if p == 1 or q == 1:
        return math.comb(d + s - 1, s)
    return math.comb(d + s - 1, s) + math.comb(d + s - 2, s - 1)


def sphericity_check(config: PointConfiguration, tol: float = 1e-8) -> np.ndarray | None:
    """Common center c with <<x_i - c, x_i - c>> constant, or None.

    Solves the linear system 2<<x_i - x_0, c>> = <<x_i,x_i>> - <<x_0,x_0>>
    in the indefinite metric and accepts when all radii agree within
    tolerance.  A rank-deficient system means the center is not determined
    by the points and raises :class:`CenterNotUniqueError`.
    """
    pts = config.points
    n, d = pts.shape
    if n < d + 1:
        raise ValueError("need at least p+q+1 points to pin down a sphere center")
    signs = config.metric_signs()
    norms = config.self_squares()
    lhs = 2.0 * (pts[1:] - pts[0]) * signs
    rhs = norms[1:] - norms[0]
    rank = np.linalg.matrix_rank(lhs, tol=1e-8 * max(1.0, float(np.abs(lhs).max(initial=0.0))))
    if rank < d:
        raise CenterNotUniqueError(affine_defect=d - rank)
    center, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    diffs = pts - center
    radii = (diffs * diffs * signs).sum(axis=1)
    scale = max(1.0, float(np.abs(norms).max(initial=0.0)))
    if float(radii.max() - radii.min()) <= tol * scale:
        return center
    return None


@dataclass(frozen=True)
class AntipodalReport:
    antipodal: bool
    pairing: tuple[tuple[int, int], ...]


def antipodal_check(config: PointConfiguration, tol: float = 1e-8) -> AntipodalReport:
    """Match every point with its negation; requires a centered configuration."""
    pts = config.points
    n = pts.shape[0]
    scale = max(1.0, float(np.abs(pts).max(initial=0.0)))
    used = [False] * n
    pairing = []
    for i in range(n):
        if used[i]:
            continue
        match = None
        for j in range(i, n):
            if not used[j] and np.linalg.norm(pts[i] + pts[j]) <= tol * scale:
                match = j
                break
        if match is None:
            return AntipodalReport(antipodal=False, pairing=tuple(pairing))
        used[i] = used[match] = True
        pairing.append((i, match))
    return AntipodalReport(antipodal=True, pairing=tuple(pairing))


def negate_double(config: PointConfiguration) -> PointConfiguration:
    """The configuration together with its pointwise negation."""
    return PointConfiguration(
        points=np.vstack([config.points, -config.points]),
        p=config.p,
        q=config.q,
        source=None,
        tolerance=config.tolerance,
        labels=None,
    )


def coordinates_to_json(config: PointConfiguration, distances: dict | None = None) -> dict:
    out = {
        "p": config.p,
        "q": config.q,
        "points": [[float(x) for x in row] for row in config.points],
        "labels": [list(l) if isinstance(l, tuple) else l for l in config.labels]
        if config.labels is not None
        else None,
        "tolerance": config.tolerance,
    }
    if distances is not None:
        out["distances"] = distances
    return out


def coordinates_from_json(data: dict) -> PointConfiguration:
    labels = data.get("labels")
    rows = data["points"]
    pts = np.array(rows, dtype=float)
    if pts.ndim != 2:
        pts = pts.reshape(len(rows), 0)
    return PointConfiguration(
        points=pts,
        p=int(data["p"]),
        q=int(data["q"]),
        source=None,
        tolerance=float(data.get("tolerance", 1e-8)),
        labels=tuple(tuple(l) if isinstance(l, list) else l for l in labels) if labels else None,
    )


def with_verification(
    report: DistanceSetReport,
    config: PointConfiguration,
    tol: float = 1e-8,
    *,
    spherical: bool = False,
    antipodal: bool = False,
) -> DistanceSetReport:
    """Fill the bound/sphericity/antipodality fields of a distance report."""
    if spherical:
        try:
            center = sphericity_check(config, tol)
        except CenterNotUniqueError:
            center = None
        is_spherical = center is not None
        bound = cardinality_bound(config.p, config.q, report.s, spherical=True)
        report = replace(
            report,
            spherical=is_spherical,
            center=tuple(map(float, center)) if center is not None else None,
            bound=bound,
        )
    else:
        bound = (
            cardinality_bound(config.p, config.q, report.s)
            if report.s >= 1 and not report.contains_zero
            else None
        )
        report = replace(report, bound=bound)
    if antipodal:
        report = replace(report, antipodal=antipodal_check(config, tol).antipodal)
    if report.bound is not None:
        report = replace(report, attains_bound=report.point_count == report.bound)
    return report
