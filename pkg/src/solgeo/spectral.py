"""Eigenvalue computations and graph-spectrum certificates.

Every certificate downstream consumes *measured* spectral quantities from
these routines, never high-probability thresholds; the thresholds only
gate whether a nontrivial bound is attempted.  To keep floating point from
breaking soundness, each certified inequality shifts the measured quantity
by ``eig_slack`` in the conservative direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instances import MultiGraph

# Relative residual the dense symmetric eigensolver must meet, and the
# multiplier applied when budgeting slack into certified inequalities.
EIG_TOL = 1e-8
SLACK_FACTOR = 10.0

# Dense eigensolves only; sizes beyond this are refused rather than
# silently degraded to an uncertified iterative method.
MAX_DENSE_N = 5000


class EigensolverError(RuntimeError):
    """Raised when a computed eigenpair fails its residual contract."""


def eig_slack(scale: float) -> float:
    """Additive slack covering eigensolver error at the given norm scale."""
    return SLACK_FACTOR * EIG_TOL * max(scale, 1.0)


@dataclass(frozen=True)
class SpectralReport:
    """Measured spectral evidence for a multigraph.

    ``lambda2`` is the second-smallest eigenvalue of the normalized
    Laplacian (None if not computed), ``demeaned_norm`` the operator norm
    of A - (d_avg/n) J with parallel edges counted (None if not computed).
    """

    n: int
    m: int
    d_min: int
    d_max: int
    d_avg: float
    lambda2: float | None
    demeaned_norm: float | None
    eig_tolerance: float = EIG_TOL

    def __post_init__(self) -> None:
        if not (self.d_min <= self.d_avg + 1e-12 and self.d_avg <= self.d_max + 1e-12):
            raise ValueError("degree statistics out of order")
        if self.lambda2 is not None and not (-1e-9 <= self.lambda2 <= 2 + 1e-9):
            raise ValueError("normalized Laplacian eigenvalue out of [0, 2]")
        if self.demeaned_norm is not None and self.demeaned_norm < 0:
            raise ValueError("operator norm must be nonnegative")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "d_min": self.d_min,
            "d_max": self.d_max,
            "d_avg": self.d_avg,
            "lambda2": self.lambda2,
            "demeaned_norm": self.demeaned_norm,
            "eig_tolerance": self.eig_tolerance,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SpectralReport":
        return cls(
            d["n"], d["m"], d["d_min"], d["d_max"], d["d_avg"],
            d["lambda2"], d["demeaned_norm"], d["eig_tolerance"],
        )


def _checked_extremes(A: np.ndarray, indices: list[int], scale: float) -> tuple[np.ndarray, np.ndarray]:
    """Dense symmetric eigensolve with residual verification on the
    eigenpairs that will be reported."""
    n = A.shape[0]
    if n > MAX_DENSE_N:
        raise ValueError(f"dense eigensolve limited to n <= {MAX_DENSE_N}")
    vals, vecs = np.linalg.eigh(A)
    for idx in indices:
        v = vecs[:, idx]
        residual = np.linalg.norm(A @ v - vals[idx] * v)
        if residual > EIG_TOL * max(scale, 1.0):
            raise EigensolverError(
                f"eigenpair residual {residual:.3e} exceeds tolerance at index {idx}"
            )
    return vals, vecs


def spectral_report(
    G: MultiGraph, laplacian: bool = True, demeaned: bool = True
) -> SpectralReport:
    """Measure degree statistics plus the requested spectral quantities."""
    n = G.n
    degrees = np.array(G.degrees, dtype=float)
    d_min = int(degrees.min()) if n else 0
    d_max = int(degrees.max()) if n else 0
    d_avg = G.average_degree()

    lam2: float | None = None
    if laplacian:
        if d_min == 0:
            raise ValueError("normalized Laplacian requires no isolated vertices")
        A = G.adjacency()
        inv_sqrt = 1.0 / np.sqrt(degrees)
        L = np.eye(n) - (inv_sqrt[:, None] * A) * inv_sqrt[None, :]
        L = (L + L.T) / 2.0
        vals, _ = _checked_extremes(L, [0, min(1, n - 1)], 2.0)
        lam2 = float(np.clip(vals[min(1, n - 1)], 0.0, 2.0))

    norm: float | None = None
    if demeaned:
        norm = _demeaned_norm_value(G)

    return SpectralReport(n, G.m, d_min, d_max, d_avg, lam2, norm)


def normalized_laplacian_gap(G: MultiGraph, demeaned: bool = True) -> SpectralReport:
    """Report lambda2 of the normalized Laplacian (plus degree statistics)."""
    return spectral_report(G, laplacian=True, demeaned=demeaned)


def _demeaned_norm_value(G: MultiGraph) -> float:
    if G.m == 0:
        return 0.0
    A = G.adjacency()
    Abar = A - (G.average_degree() / G.n) * np.ones((G.n, G.n))
    Abar = (Abar + Abar.T) / 2.0
    scale = float(np.linalg.norm(Abar, ord="fro"))
    vals, _ = _checked_extremes(Abar, [0, G.n - 1], scale)
    return float(max(abs(vals[0]), abs(vals[-1])))


def demeaned_norm(G: MultiGraph) -> float:
    """Operator norm of A - (d_avg/n) J, multiplicities counted."""
    return _demeaned_norm_value(G)


def edge_expansion_lower_bound(report: SpectralReport, s: int) -> float:
    """Certified lower bound on e(S, S-complement) valid for every vertex
    set S with |S| = s whose volume is at most half the total volume,
    via the easy direction of the Cheeger inequality."""
    if report.lambda2 is None:
        raise ValueError("report does not carry lambda2")
    if s < 0:
        raise ValueError("set size must be nonnegative")
    if s == 0:
        return 0.0
    lam2 = max(0.0, report.lambda2 - eig_slack(2.0))
    return 0.5 * lam2 * report.d_min * s


def mixing_interval(report: SpectralReport, s: int, t: int) -> tuple[float, float]:
    """Certified interval for e(S, T) over all |S| = s, |T| = t, from the
    expander mixing lemma with the measured de-meaned norm."""
    if report.demeaned_norm is None:
        raise ValueError("report does not carry the de-meaned norm")
    if s < 0 or t < 0:
        raise ValueError("set sizes must be nonnegative")
    if s == 0 or t == 0:
        return (0.0, 0.0)
    center = report.d_avg / report.n * s * t
    nu = report.demeaned_norm + eig_slack(report.demeaned_norm)
    radius = nu * math.sqrt(s * t)
    return (center - radius, center + radius)


def symmetric_spectrum(M: np.ndarray, check: bool = True) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending, with residual
    verification of the extreme pairs."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(M, M.T, atol=1e-10):
        raise ValueError("matrix must be symmetric")
    if check:
        scale = float(np.linalg.norm(M, ord="fro"))
        vals, _ = _checked_extremes(M, [0, M.shape[0] - 1], scale)
        return vals
    return np.linalg.eigvalsh(M)
