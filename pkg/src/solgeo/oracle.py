"""Exact ground-truth computations: exhaustive enumeration, GF(2)
elimination, and branch-and-bound.  These validate certificates and are
never on the certification path.

Enumeration encodes an assignment as an integer index whose bit i is set
exactly when x_i == -1, so Hamming distances are popcounts of XORs and
batch sweeps reduce to numpy bit arithmetic and matmuls.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .certificates import (
    BalanceCertificate,
    ClusterCertificate,
    CountCertificate,
    RefutationCertificate,
)
from .instances import (
    MultiGraph,
    Predicate,
    SignedHypergraph,
    UnsignedHypergraph,
    XorInstance,
    signs_to_index,
    violation_budget,
)

_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    """Exact value of an oracle computation plus bookkeeping."""

    kind: str
    exact_value: object
    enumeration_size: int
    runtime_ms: float = field(compare=False, default=0.0)

    def to_json_dict(self, timing: bool = False) -> dict:
        d = {
            "kind": self.kind,
            "exact_value": self.exact_value,
            "enumeration_size": self.enumeration_size,
        }
        if timing:
            d["runtime_ms"] = self.runtime_ms
        return d


def _elapsed_ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def _bit_matrix(indices: np.ndarray, variables: Sequence[int]) -> np.ndarray:
    """Bit i of each index, for each listed variable; shape (len, len(vars))."""
    cols = [((indices >> v) & 1).astype(np.uint32) for v in variables]
    return np.stack(cols, axis=1) if cols else np.zeros((len(indices), 0), np.uint32)


def _odd_mask(S: Sequence[int]) -> int:
    mask = 0
    for v in S:
        mask ^= 1 << v
    return mask


def xor_sign_table(H: UnsignedHypergraph) -> np.ndarray:
    """(2^n x m) matrix of prod(x[S]) over all assignments, as int8."""
    if H.n > 24:
        raise ValueError("enumeration limited to n <= 24")
    idx = np.arange(1 << H.n, dtype=np.uint64)
    table = np.empty((1 << H.n, H.m), dtype=np.int8)
    for j, S in enumerate(H.edges):
        masked = idx & np.uint64(_odd_mask(S))
        parity = np.bitwise_count(masked).astype(np.int8) & 1
        table[:, j] = 1 - 2 * parity
    return table


def batch_xor_counts(
    table: np.ndarray, signings: np.ndarray, budget: int
) -> np.ndarray:
    """Number of assignments violating at most ``budget`` clauses, for each
    signing (rows of ``signings``, entries +-1)."""
    m = table.shape[1]
    sat = (table.astype(np.float32) @ signings.astype(np.float32).T + m) / 2.0
    violations = m - np.rint(sat)
    return (violations <= budget).sum(axis=0).astype(np.int64)


def _violations_signed(I: SignedHypergraph, P: Predicate) -> np.ndarray:
    """Violation count of every assignment (2^n array), via per-clause
    pattern lookup."""
    if I.n > 24:
        raise ValueError("enumeration limited to n <= 24")
    idx = np.arange(1 << I.n, dtype=np.uint32)
    lut = np.array(P.table, dtype=np.uint8)
    violations = np.zeros(1 << I.n, dtype=np.int32)
    for c, S in I.clauses:
        pattern = np.full(1 << I.n, signs_to_index(c), dtype=np.uint32)
        for i, v in enumerate(S):
            pattern ^= ((idx >> np.uint32(v)) & np.uint32(1)) << np.uint32(i)
        violations += 1 - lut[pattern]
    return violations


def _violations_xor(I: XorInstance) -> np.ndarray:
    if I.n > 24:
        raise ValueError("enumeration limited to n <= 24")
    idx = np.arange(1 << I.n, dtype=np.uint64)
    violations = np.zeros(1 << I.n, dtype=np.int32)
    for b, S in I.clauses:
        masked = idx & np.uint64(_odd_mask(S))
        parity = (np.bitwise_count(masked) & 1).astype(np.int32)
        prod = 1 - 2 * parity
        violations += (prod != b).astype(np.int32)
    return violations


def violation_profile(
    I: SignedHypergraph | XorInstance, P: Predicate | None = None
) -> np.ndarray:
    """Exact per-assignment violation counts for a CSP or XOR instance."""
    if isinstance(I, XorInstance):
        return _violations_xor(I)
    if P is None:
        raise ValueError("a predicate is required for signed instances")
    return _violations_signed(I, P)


def brute_count(
    I: SignedHypergraph | XorInstance, P: Predicate | None, eta: float
) -> OracleResult:
    """Exact count of (1-eta)-satisfying assignments by full enumeration."""
    t0 = time.perf_counter()
    if I.m == 0:
        raise ValueError("cannot count satisfiers of an empty instance")
    violations = violation_profile(I, P)
    budget = violation_budget(eta, I.m)
    count = int((violations <= budget).sum())
    return OracleResult("count", count, 1 << I.n, _elapsed_ms(t0))


def gaussian_count(I: XorInstance) -> OracleResult:
    """Exact count of exactly-satisfying assignments over GF(2):
    0 if inconsistent, else 2^(n - rank)."""
    t0 = time.perf_counter()
    rows: list[tuple[int, int]] = []
    for b, S in I.clauses:
        mask = _odd_mask(S)
        rhs = 1 if b == -1 else 0
        rows.append((mask, rhs))
    pivots: dict[int, tuple[int, int]] = {}
    inconsistent = False
    for mask, rhs in rows:
        while mask:
            top = mask.bit_length() - 1
            if top in pivots:
                pmask, prhs = pivots[top]
                mask ^= pmask
                rhs ^= prhs
            else:
                pivots[top] = (mask, rhs)
                break
        else:
            if rhs:
                inconsistent = True
                break
    if inconsistent:
        count = 0
    else:
        count = 1 << (I.n - len(pivots))
    return OracleResult("gauss-count", count, I.m, _elapsed_ms(t0))


@dataclass(frozen=True)
class ClusterProfile:
    """All near-satisfiers of one instance: pairwise Hamming-distance
    histogram and the greedy radius-(theta n) cover count."""

    n: int
    num_solutions: int
    distance_histogram: dict[int, int]
    cover_count: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "num_solutions": self.num_solutions,
            "distance_histogram": {str(k): v for k, v in sorted(self.distance_histogram.items())},
            "cover_count": self.cover_count,
        }


def _pairwise_distance_histogram(solutions: np.ndarray) -> dict[int, int]:
    hist: dict[int, int] = {}
    sols = solutions.astype(np.uint64)
    for i in range(len(sols)):
        d = np.bitwise_count(sols[i + 1:] ^ sols[i])
        for dist, cnt in zip(*np.unique(d, return_counts=True)):
            hist[int(dist)] = hist.get(int(dist), 0) + int(cnt)
    return hist


def _greedy_cover(solutions: np.ndarray, radius: float) -> int:
    remaining = solutions.astype(np.uint64)
    covers = 0
    while len(remaining):
        rep = remaining[0]
        covers += 1
        dist = np.bitwise_count(remaining ^ rep)
        remaining = remaining[dist > radius + 1e-9]
    return covers


def brute_clusters(I: XorInstance, eta: float, theta: float) -> tuple[OracleResult, ClusterProfile]:
    """Exact pairwise-distance profile of the (1-eta)-satisfiers plus the
    greedy count of radius-(theta n) balls needed to cover them."""
    t0 = time.perf_counter()
    if I.n > 14:
        raise ValueError("cluster enumeration limited to n <= 14")
    violations = _violations_xor(I)
    budget = violation_budget(eta, I.m)
    solutions = np.nonzero(violations <= budget)[0]
    profile = ClusterProfile(
        I.n,
        int(len(solutions)),
        _pairwise_distance_histogram(solutions),
        _greedy_cover(solutions, theta * I.n),
    )
    return (
        OracleResult("clusters", profile.to_json_dict(), 1 << I.n, _elapsed_ms(t0)),
        profile,
    )


def brute_max_bias(
    I: SignedHypergraph | XorInstance, P: Predicate | None, eta: float
) -> OracleResult:
    """Maximum bias over all (1-eta)-satisfiers; None if there are none."""
    t0 = time.perf_counter()
    if I.m == 0:
        raise ValueError("cannot scan satisfiers of an empty instance")
    violations = violation_profile(I, P)
    budget = violation_budget(eta, I.m)
    solutions = np.nonzero(violations <= budget)[0].astype(np.uint64)
    if len(solutions) == 0:
        value = None
    else:
        ones = np.bitwise_count(solutions).astype(np.int64)
        value = float(np.max(np.abs(I.n - 2 * ones)) / I.n)
    return OracleResult("max-bias", value, 1 << I.n, _elapsed_ms(t0))


def brute_sk_opt_and_count(G: np.ndarray, eta: float) -> OracleResult:
    """Exact max of x^T G x over the hypercube and the number of x
    reaching 2 (1-eta) n^(3/2)."""
    t0 = time.perf_counter()
    G = np.asarray(G, dtype=float)
    n = G.shape[0]
    if n > 18:
        raise ValueError("SK enumeration limited to n <= 18")
    threshold = 2.0 * (1.0 - eta) * n**1.5
    best = -math.inf
    count = 0
    total = 1 << n
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        X = 1.0 - 2.0 * _bit_matrix(idx, range(n)).astype(np.float64)
        vals = np.einsum("ij,ij->i", X @ G, X)
        best = max(best, float(vals.max()))
        count += int((vals >= threshold - 1e-9).sum())
    return OracleResult(
        "sk", {"opt": best, "count": count}, total, _elapsed_ms(t0)
    )


def independence_number(G: MultiGraph) -> int:
    """Exact independence number by branch and bound with a greedy-coloring
    upper bound for pruning."""
    n = G.n
    nbr = [0] * n
    for u, v in G.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    def clique_cover_bound(candidates: int) -> int:
        # a partition of the candidates into cliques; an independent set
        # meets each clique at most once, so the class count is a bound
        classes: list[int] = []
        c = candidates
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            for i, cls in enumerate(classes):
                if (nbr[v] & cls) == cls:
                    classes[i] = cls | (1 << v)
                    break
            else:
                classes.append(1 << v)
        return len(classes)

    best = 0

    def expand(candidates: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while candidates:
            if size + clique_cover_bound(candidates) <= best:
                return
            v = (candidates & -candidates).bit_length() - 1
            candidates &= ~(1 << v)
            expand(candidates & ~nbr[v], size + 1)

    expand((1 << n) - 1, 0)
    return best


def brute_independent_sets(G: MultiGraph, size_threshold: int) -> OracleResult:
    """Independence number plus the exact count of independent sets of size
    at least ``size_threshold``."""
    t0 = time.perf_counter()
    n = G.n
    if n > 26:
        raise ValueError("independent-set enumeration limited to n <= 26")
    nbr = [0] * n
    for u, v in G.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    alpha = independence_number(G)
    count = 0

    def enumerate_sets(start: int, size: int, banned: int) -> None:
        nonlocal count
        if size >= size_threshold:
            count += 1
        if size + (n - start) < size_threshold:
            return
        for v in range(start, n):
            if not banned & (1 << v):
                enumerate_sets(v + 1, size + 1, banned | (1 << v) | nbr[v])

    if size_threshold <= 0:
        raise ValueError("size threshold must be positive")
    enumerate_sets(0, 0, 0)
    return OracleResult(
        "indset", {"alpha": alpha, "count": count}, 1 << n, _elapsed_ms(t0)
    )


def brute_subspace_count(basis: np.ndarray, eps: float) -> OracleResult:
    """Exact count of vectors in {+-1/sqrt(n)}^n within eps of the span of
    the given basis columns."""
    t0 = time.perf_counter()
    basis = np.asarray(basis, dtype=float)
    n = basis.shape[0]
    if n > 20:
        raise ValueError("subspace enumeration limited to n <= 20")
    if basis.size == 0 or basis.shape[1] == 0:
        Q = np.zeros((n, 0))
    else:
        # rank-revealing orthonormalization: plain QR would silently widen
        # the span of a rank-deficient basis
        U, s, _ = np.linalg.svd(basis, full_matrices=False)
        Q = U[:, s > 1e-10 * s.max()]
    total = 1 << n
    count = 0
    scale = 1.0 / math.sqrt(n)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        Y = (1.0 - 2.0 * _bit_matrix(idx, range(n)).astype(np.float64)) * scale
        proj = Y @ Q
        dist_sq = np.maximum(1.0 - np.einsum("ij,ij->i", proj, proj), 0.0)
        count += int((np.sqrt(dist_sq) <= eps + 1e-12).sum())
    return OracleResult("subspace-count", count, total, _elapsed_ms(t0))


# ---------------------------------------------------------------------------
# Certificate verification
# ---------------------------------------------------------------------------

SOUND = "sound"
VIOLATED = "violated"
INAPPLICABLE = "inapplicable"


def _count_verdict(log2_bound: float, count: int) -> str:
    if count <= 0:
        return SOUND
    return SOUND if math.log2(count) <= log2_bound + 1e-9 else VIOLATED


def verify_certificate(cert, oracle: OracleResult) -> str:
    """Compare a certificate against an exact oracle result.

    Returns "sound", "violated" (must never happen), or "inapplicable"
    when the kinds do not match.
    """
    if isinstance(cert, CountCertificate):
        if cert.kind == "count" and oracle.kind == "count":
            return _count_verdict(cert.log2_bound, int(oracle.exact_value))
        if cert.kind == "sk-count" and oracle.kind == "sk":
            return _count_verdict(cert.log2_bound, int(oracle.exact_value["count"]))
        if cert.kind == "indset-count" and oracle.kind == "indset":
            return _count_verdict(cert.log2_bound, int(oracle.exact_value["count"]))
        return INAPPLICABLE
    if isinstance(cert, ClusterCertificate):
        if oracle.kind != "clusters":
            return INAPPLICABLE
        if cert.fallback:
            return SOUND
        data = oracle.exact_value
        theta_n = cert.theta * cert.n
        lo, hi = cert.gap_interval
        for dist_str, cnt in data["distance_histogram"].items():
            d = int(dist_str)
            if cnt and not (d <= theta_n + 1e-9 or (lo - 1e-9 <= d <= hi + 1e-9)):
                return VIOLATED
        if data["cover_count"] > 2.0**cert.log2_cluster_bound * (1 + 1e-9):
            return VIOLATED
        return SOUND
    if isinstance(cert, BalanceCertificate):
        if oracle.kind != "max-bias":
            return INAPPLICABLE
        if oracle.exact_value is None:
            return SOUND
        return SOUND if oracle.exact_value < cert.rho - 1e-12 else VIOLATED
    if isinstance(cert, RefutationCertificate):
        if cert.kind == "refutation" and oracle.kind == "count":
            return SOUND if int(oracle.exact_value) == 0 else VIOLATED
        if cert.kind == "indset-refutation" and oracle.kind == "indset":
            refuted = cert.evidence["refuted_size"]
            return SOUND if oracle.exact_value["alpha"] < refuted else VIOLATED
        return INAPPLICABLE
    return INAPPLICABLE
