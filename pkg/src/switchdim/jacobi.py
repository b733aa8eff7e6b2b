"""Floating-point symmetric eigensolver: cyclic Jacobi rotations.

This is the package's only numeric eigensolver.  It exists as an independent
cross-check for the exact inertia in :mod:`switchdim.exact` (the exact result
is always authoritative) and to extract coordinates in
:mod:`switchdim.realization`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import Matrix


class JacobiConvergenceError(RuntimeError):
    """Raised when the off-diagonal mass does not vanish within the sweep cap."""

    def __init__(self, off_norm: float, sweeps: int):
        super().__init__(
            f"Jacobi sweep cap reached after {sweeps} sweeps; "
            f"remaining off-diagonal norm {off_norm:.3e}"
        )
        self.off_norm = off_norm
        self.sweeps = sweeps


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray  # descending
    vectors: np.ndarray  # column i pairs with values[i]; orthonormal
    residual: float  # max |A v - lambda v| over pairs
    sweeps: int


def as_float(matrix: Matrix | np.ndarray) -> np.ndarray:
    if isinstance(matrix, Matrix):
        return np.array([[float(x) for x in matrix.row(i)] for i in range(matrix.rows)])
    return np.asarray(matrix, dtype=float)


def jacobi_eigh(matrix, tol: float = 1e-12, max_sweeps: int = 100) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Stops when the off-diagonal Frobenius norm drops below ``tol`` times the
    matrix scale; raises :class:`JacobiConvergenceError` otherwise.
    """
    a = as_float(matrix).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("jacobi_eigh requires a square matrix")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > tol * scale:
        raise ValueError("jacobi_eigh requires a symmetric matrix")
    a = (a + a.T) / 2.0
    v = np.eye(n)
    goal = tol * max(1.0, np.linalg.norm(a, "fro"))

    sweeps = 0
    while _off_norm(a) > goal:
        if sweeps >= max_sweeps:
            raise JacobiConvergenceError(_off_norm(a), sweeps)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                _rotate(a, v, p, q, c, s)

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    residual = float(np.abs(as_float(matrix) @ vectors - vectors * values).max(initial=0.0))
    return EigenDecomposition(values=values, vectors=vectors, residual=residual, sweeps=sweeps)


def _off_norm(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(a * a) - np.sum(np.diag(a) ** 2)))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    ap, aq = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * ap - s * aq
    a[:, q] = s * ap + c * aq
    ap, aq = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * ap - s * aq
    a[q, :] = s * ap + c * aq
    vp, vq = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def float_signature(values: np.ndarray, inf_norm: float, zero_tol: float = 1e-8):
    """Signature guessed from float eigenvalues with a scale-aware zero band.

    Advisory only: exact inertia is authoritative wherever both are available.
    """
    cut = zero_tol * max(1.0, inf_norm)
    pos = int(np.sum(values > cut))
    neg = int(np.sum(values < -cut))
    return pos, neg, len(values) - pos - neg
