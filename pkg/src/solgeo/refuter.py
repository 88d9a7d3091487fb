"""Sound upper bounds for sparse multilinear polynomials on the hypercube,
quasirandomness certification of signed hypergraphs, and the certified
implication from near-SAT-satisfaction to near-XOR-satisfaction.

Every bound returned here holds for *every* point of the hypercube; the
branches are elementary (absolute sums, quadratic-form norms, flattened
singular values) so soundness never rests on a probabilistic event.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .instances import SignedHypergraph

# Relative inflation applied to spectral branch values so LAPACK rounding
# can never push a reported bound below the true maximum.
SPECTRAL_REL_SLACK = 1e-11

# Dense flattening is used while the full coefficient tensor fits
# comfortably in memory; beyond that a Holder bound on sigma_max applies.
_DENSE_FLATTEN_LIMIT = 4_000_000


@dataclass(frozen=True)
class SparsePolynomial:
    """Homogeneous degree-t multilinear polynomial sum_T w_T x^T with
    ordered index tuples T in [n]^t (repeated indices allowed)."""

    n: int
    degree: int
    terms: dict[tuple[int, ...], float]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        for T, w in self.terms.items():
            if len(T) != self.degree:
                raise ValueError(f"term {T} has wrong arity")
            if any(not (0 <= i < self.n) for i in T):
                raise ValueError(f"term {T} has an index out of range")
            if not math.isfinite(w):
                raise ValueError("coefficients must be finite")

    def negated(self) -> "SparsePolynomial":
        return SparsePolynomial(
            self.n, self.degree, {T: -w for T, w in self.terms.items()}
        )

    def evaluate(self, x: np.ndarray) -> float:
        total = 0.0
        for T, w in self.terms.items():
            prod = w
            for i in T:
                prod *= x[i]
            total += prod
        return total


@dataclass(frozen=True)
class PolynomialBound:
    """A certified upper bound on max_x p(x), with the winning branch."""

    value: float
    branch: str
    branches: dict[str, float] = field(compare=False)


def _abs_sum(p: SparsePolynomial) -> float:
    return float(sum(abs(w) for w in p.terms.values()))


def _quadratic_norm_bound(p: SparsePolynomial) -> float:
    W = np.zeros((p.n, p.n))
    for (a, b), w in p.terms.items():
        W[a, b] += w / 2.0
        W[b, a] += w / 2.0
    norm = float(np.max(np.abs(np.linalg.eigvalsh(W)))) if p.n else 0.0
    return p.n * norm * (1.0 + SPECTRAL_REL_SLACK)


def _flatten_bound(p: SparsePolynomial) -> float:
    t = p.degree
    a = (t + 1) // 2
    b = t - a

    def row_index(T: tuple[int, ...]) -> tuple[int, int]:
        r = 0
        for i in T[:a]:
            r = r * p.n + i
        c = 0
        for i in T[a:]:
            c = c * p.n + i
        return r, c

    rows, cols = p.n**a, p.n**b
    if rows * cols <= _DENSE_FLATTEN_LIMIT:
        M = np.zeros((rows, cols))
        for T, w in p.terms.items():
            r, c = row_index(T)
            M[r, c] += w
        sigma = float(np.linalg.svd(M, compute_uv=False)[0]) if p.terms else 0.0
    else:
        # sigma_max <= sqrt(max row 1-norm * max column 1-norm)
        row_sums: dict[int, float] = {}
        col_sums: dict[int, float] = {}
        for T, w in p.terms.items():
            r, c = row_index(T)
            row_sums[r] = row_sums.get(r, 0.0) + abs(w)
            col_sums[c] = col_sums.get(c, 0.0) + abs(w)
        if not row_sums:
            sigma = 0.0
        else:
            sigma = math.sqrt(max(row_sums.values()) * max(col_sums.values()))
    return p.n ** (t / 2.0) * sigma * (1.0 + SPECTRAL_REL_SLACK)


def refute_polynomial(p: SparsePolynomial) -> PolynomialBound:
    """Certified upper bound on max over the hypercube of p(x).

    Always includes the absolute-coefficient-sum branch; degree 2 adds the
    quadratic-form bound n * ||W||, higher degrees add the flattening bound
    n^(t/2) * sigma_max.  The minimum across branches is returned.
    """
    branches = {"abs-sum": _abs_sum(p)}
    if p.degree == 2:
        branches["quadratic-norm"] = _quadratic_norm_bound(p)
    elif p.degree >= 3:
        branches["flatten"] = _flatten_bound(p)
    branch = min(branches, key=lambda name: branches[name])
    return PolynomialBound(branches[branch], branch, branches)


@dataclass(frozen=True)
class QuasirandomnessCertificate:
    """Certified bounds on |D_hat(T)| of the local distribution, holding
    simultaneously for every assignment, for all nonempty T with |T| <= t."""

    t: int
    eps: float
    per_T_bounds: dict[tuple[int, ...], float] = field(compare=False)
    branches: dict[tuple[int, ...], str] = field(compare=False)

    def __post_init__(self) -> None:
        if self.per_T_bounds:
            worst = max(self.per_T_bounds.values())
            if abs(worst - self.eps) > 1e-12:
                raise ValueError("eps must equal the worst per-T bound")

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "eps": self.eps,
            "per_T_bounds": {
                ",".join(map(str, T)): b for T, b in sorted(self.per_T_bounds.items())
            },
            "branches": {
                ",".join(map(str, T)): b for T, b in sorted(self.branches.items())
            },
        }


def _coefficient_polynomial(
    I: SignedHypergraph, T: tuple[int, ...]
) -> SparsePolynomial:
    """The polynomial x -> D_hat_{I,x}(T), as a function of the assignment."""
    terms: dict[tuple[int, ...], float] = {}
    inv_m = 1.0 / I.m
    for c, S in I.clauses:
        sign = 1.0
        for i in T:
            sign *= c[i]
        U = tuple(S[i] for i in T)
        terms[U] = terms.get(U, 0.0) + sign * inv_m
    return SparsePolynomial(I.n, len(T), terms)


def certify_quasirandom(I: SignedHypergraph, t: int) -> QuasirandomnessCertificate:
    """Certify that for every assignment x, all Fourier coefficients
    D_hat_{I,x}(T) with 0 < |T| <= t are at most eps in magnitude."""
    if I.m == 0:
        raise ValueError("cannot certify an empty instance")
    if not (1 <= t <= I.k - 1):
        raise ValueError(f"t must be in [1, k-1], got {t}")
    per_T: dict[tuple[int, ...], float] = {}
    branches: dict[tuple[int, ...], str] = {}
    for mask in range(1, 1 << I.k):
        T = tuple(i for i in range(I.k) if (mask >> i) & 1)
        if len(T) > t:
            continue
        poly = _coefficient_polynomial(I, T)
        up = refute_polynomial(poly)
        down = refute_polynomial(poly.negated())
        # |D_hat(T)| <= 1 unconditionally, so the trivial bound caps both sides
        per_T[T] = min(1.0, max(up.value, down.value))
        branches[T] = up.branch
    eps = max(per_T.values())
    return QuasirandomnessCertificate(t, eps, per_T, branches)


@dataclass(frozen=True)
class XorPrincipleBound:
    """Certified statement: every (1-eta)-satisfying assignment of a kSAT
    instance XOR-satisfies at least ``fraction_lower_bound`` of its clauses
    (equivalently XOR-violates at most an ``eta_x`` fraction)."""

    k: int
    eta: float
    eps: float
    eta_x: float
    fraction_lower_bound: float
    quasirandomness: QuasirandomnessCertificate


def kxor_principle(I: SignedHypergraph, eta: float) -> XorPrincipleBound:
    """Lower bound the XOR-satisfied fraction of any (1-eta)-satisfying
    assignment of I read as a kSAT instance.

    From the SAT objective's Fourier expansion, the top coefficient obeys
    D_hat([k]) >= 1 - 2^k eta - (2^k - 2) eps once every lower-order
    coefficient is certified to be at most eps in magnitude; the XOR
    fraction is (1 + D_hat([k])) / 2.
    """
    if I.k < 3:
        raise ValueError("the XOR principle requires k >= 3")
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    q = certify_quasirandom(I, I.k - 1)
    eta_x = 2.0 ** (I.k - 1) * eta + (2.0 ** (I.k - 1) - 1.0) * q.eps
    fraction = min(1.0, max(0.0, 1.0 - eta_x))
    return XorPrincipleBound(I.k, eta, q.eps, eta_x, fraction, q)
