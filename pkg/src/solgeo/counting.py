"""Certified upper bounds on the number of near-satisfying assignments:
the 2XOR spectral base case, the recursive kXOR certifier, kSAT/kCSP via
the XOR principle, and the refutation-from-counting reduction.

All internal bookkeeping uses absolute violation budgets (integers), so
the floor arithmetic of the block recursion is exact.  Bounds are capped
at 2^n; a certificate whose bound reaches the cap carries the fallback
flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .certificates import CheckRecord, CountCertificate, RefutationCertificate
from .instances import (
    MultiGraph,
    SignedHypergraph,
    UnsignedHypergraph,
    XorInstance,
    Predicate,
    csp_to_ksat,
    violation_budget,
)
from .refuter import kxor_principle
from .spectral import eig_slack, normalized_laplacian_gap

# Width multiplier on the degree-concentration gate.  The clean
# density^(-1/3) window only holds once the density beats log^3(n); the
# calibrated widening keeps the gate meaningful at finite sizes without
# touching soundness (it only decides whether a nontrivial bound is
# attempted).
DEGREE_WINDOW_C = 2.5


def log2_binomial_tail(n: int, radius: int) -> float:
    """log2 of sum_{l <= radius} C(n, l); exact integer arithmetic up to
    n = 64, log-gamma beyond."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    radius = min(radius, n)
    if n <= 64:
        return math.log2(sum(math.comb(n, l) for l in range(radius + 1)))
    terms = [
        (math.lgamma(n + 1) - math.lgamma(l + 1) - math.lgamma(n - l + 1))
        / math.log(2.0)
        for l in range(radius + 1)
    ]
    top = max(terms)
    return top + math.log2(sum(2.0 ** (t - top) for t in terms))


def log2_sum_of_powers(exponents: list[float]) -> float:
    """log2(sum_i 2^e_i), overflow-safe."""
    if not exponents:
        raise ValueError("empty sum")
    top = max(exponents)
    return top + math.log2(sum(2.0 ** (e - top) for e in exponents))


def aggregate_partition(
    n: int, block_sizes: list[int], block_log2_bounds: list[float]
) -> float:
    """Combine per-block bounds u_i into log2 of sum_i 2^{|S_i|} * u_i."""
    if len(block_sizes) != len(block_log2_bounds):
        raise ValueError("sizes and bounds must align")
    if not block_sizes or any(s < 1 for s in block_sizes) or sum(block_sizes) != n:
        raise ValueError("block sizes must partition [n]")
    return log2_sum_of_powers(
        [s + u for s, u in zip(block_sizes, block_log2_bounds)]
    )


@dataclass(frozen=True)
class _BoundResult:
    log2_bound: float
    fallback: bool
    checks: tuple[CheckRecord, ...]
    trace: tuple[dict, ...]
    transcript: dict


def _fallback(n: int, checks: tuple[CheckRecord, ...], transcript: dict) -> _BoundResult:
    return _BoundResult(float(n), True, checks, (), transcript)


def _cap(n: int, log2_bound: float) -> tuple[float, bool]:
    if log2_bound >= n:
        return float(n), True
    return log2_bound, False


# ---------------------------------------------------------------------------
# 2XOR base case
# ---------------------------------------------------------------------------

def _count_2xor_budget(G: MultiGraph, budget: int) -> _BoundResult:
    """Bound, valid for every signing of G, on assignments violating at
    most ``budget`` edges.

    If x and x' both violate at most ``budget`` constraints, their product
    y violates at most 2*budget constraints of the all-positive instance,
    and the violated set contains the cut around y's minority side.  The
    measured spectral gap turns that cut into a Hamming radius.
    """
    n = G.n
    simple = G.simple()
    transcript: dict = {"m_given": G.m, "m_simple": simple.m, "budget": budget}
    if simple.m == 0 or n < 2:
        checks = (CheckRecord("nonempty", float(simple.m), 1.0, False),)
        return _fallback(n, checks, transcript)

    delta = simple.m / n
    degrees = simple.degrees
    center = 2.0 * delta
    window = center * DEGREE_WINDOW_C * delta ** (-1.0 / 3.0)
    max_dev = max(abs(d - center) for d in degrees)
    degree_check = CheckRecord("degree-window", max_dev, window, max_dev <= window)

    if min(degrees) == 0:
        lam2_check = CheckRecord("lambda2-threshold", 0.0, 1.0 - delta ** -0.25, False)
        return _fallback(n, (degree_check, lam2_check), transcript)

    report = normalized_laplacian_gap(simple, demeaned=False)
    lam2_threshold = 1.0 - delta ** -0.25
    lam2_check = CheckRecord(
        "lambda2-threshold", report.lambda2, lam2_threshold,
        report.lambda2 >= lam2_threshold,
    )
    checks = (degree_check, lam2_check)
    transcript["lambda2"] = report.lambda2
    transcript["d_min"] = report.d_min
    if not (degree_check.passed and lam2_check.passed):
        return _fallback(n, checks, transcript)

    # smallest minority-side size whose certified cut exceeds the doubled budget
    lam2_eff = max(0.0, report.lambda2 - eig_slack(2.0))
    cut_per_vertex = 0.5 * lam2_eff * report.d_min
    s_star = None
    for s in range(1, n + 1):
        if cut_per_vertex * s > 2.0 * budget + 1e-9:
            s_star = s
            break
    if s_star is None:
        return _fallback(n, checks, transcript)

    transcript["s_star"] = s_star
    radius = s_star - 1
    log2_bound, fallback = _cap(n, 1.0 + log2_binomial_tail(n, radius))
    return _BoundResult(log2_bound, fallback, checks, (), transcript)


def certify_count_2xor(G: MultiGraph, eta: float) -> CountCertificate:
    """Certificate on the number of (1-eta)-satisfying assignments of any
    2XOR instance with underlying multigraph G, for all signings at once."""
    budget = violation_budget(eta, G.m)
    res = _count_2xor_budget(G, budget)
    return CountCertificate(
        kind="count",
        n=G.n,
        log2_bound=res.log2_bound,
        eta=eta,
        fallback=res.fallback,
        checks=res.checks,
        signature=G.sha256(),
        recursion_trace=res.trace,
        transcript=res.transcript,
    )


# ---------------------------------------------------------------------------
# kXOR recursion
# ---------------------------------------------------------------------------

def _partition_blocks(
    n: int, c: float, partition_seed: int | None = None
) -> list[list[int]]:
    """Vertex blocks of size ceil(n^c); the last block absorbs the
    remainder.  The default partition is contiguous index ranges so that
    certificates are deterministic; a seed switches to a random balanced
    partition for experiments."""
    size = max(1, math.ceil(n**c))
    blocks_target = max(1, math.ceil(n ** (1.0 - c)))
    if (blocks_target - 1) * size >= n:
        blocks_target = math.ceil(n / size)
    if partition_seed is None:
        order = list(range(n))
    else:
        import numpy as _np

        order = _np.random.default_rng(partition_seed).permutation(n).tolist()
    blocks = []
    start = 0
    for _ in range(blocks_target - 1):
        blocks.append(sorted(order[start : start + size]))
        start += size
    blocks.append(sorted(order[start:]))
    return blocks


def _induced_block_hypergraph(
    H: UnsignedHypergraph, block: list[int]
) -> UnsignedHypergraph:
    """(k-1)-uniform hypergraph induced by a vertex block: hyperedges with
    exactly one vertex inside the block, projected to their outside
    vertices and relabeled to the complement's index order."""
    inside = set(block)
    remap = {}
    idx = 0
    for v in range(H.n):
        if v not in inside:
            remap[v] = idx
            idx += 1
    out = []
    for S in H.edges:
        hits = sum(1 for v in S if v in inside)
        if hits != 1:
            continue
        out.append(tuple(remap[v] for v in S if v not in inside))
    return UnsignedHypergraph(H.k - 1, H.n - len(block), tuple(out))


def _kxor_budget(
    H: UnsignedHypergraph, budget: int, eps: float, depth: int,
    partition_seed: int | None = None,
) -> _BoundResult:
    n, k = H.n, H.k
    if depth > H.k:
        raise RuntimeError("recursion exceeded the clause arity")
    if k == 2:
        G = MultiGraph.build(n, [S for S in H.edges if len(set(S)) == 2])
        return _count_2xor_budget(G, budget)

    clean = H.without_repeats().dedup()
    transcript: dict = {
        "k": k, "m_given": H.m, "m_clean": clean.m, "budget": budget,
    }
    if clean.m == 0 or n < 2:
        checks = (CheckRecord("nonempty", float(clean.m), 1.0, False),)
        return _fallback(n, checks, transcript)

    density = clean.m / n
    delta_exp = math.log(density) / math.log(n) if density > 0 else float("-inf")
    if delta_exp >= k - 2:
        c = 0.0
    else:
        c = min(1.0, max(0.0, 1.0 - delta_exp / (k - 2) + eps))
    if max(1, math.ceil(n**c)) >= n:
        # a single block covering [n] certifies nothing: the instance is
        # too sparse for the recursion at this size
        transcript.update({"density": density, "delta_exponent": delta_exp, "c": c})
        checks = (CheckRecord("density-usable", density, float(n), False),)
        return _fallback(n, checks, transcript)
    blocks = _partition_blocks(n, c, partition_seed)
    ell = len(blocks)
    block_budget = (k * budget) // ell

    transcript.update(
        {
            "density": density,
            "delta_exponent": delta_exp,
            "c": c,
            "blocks": ell,
            "block_size": len(blocks[0]),
            "block_budget": block_budget,
        }
    )

    sizes = []
    bounds = []
    trace = []
    child_seed = None if partition_seed is None else partition_seed + 1
    for i, block in enumerate(blocks):
        sub_H = _induced_block_hypergraph(clean, block)
        sub = _kxor_budget(sub_H, block_budget, eps, depth + 1, child_seed)
        sizes.append(len(block))
        bounds.append(sub.log2_bound)
        entry = {
            "block": i,
            "size": len(block),
            "m_induced": sub_H.m,
            "budget": block_budget,
            "log2_bound": sub.log2_bound,
            "fallback": sub.fallback,
            "transcript": sub.transcript,
            "checks": [c.to_json_dict() for c in sub.checks],
        }
        if partition_seed is None:
            entry["start"] = block[0]
        else:
            entry["vertices"] = block
        trace.append(entry)

    log2_bound, fallback = _cap(n, aggregate_partition(n, sizes, bounds))
    return _BoundResult(log2_bound, fallback, (), tuple(trace), transcript)


def certify_count_kxor(
    H: UnsignedHypergraph, eta: float, eps: float = 0.05,
    partition_seed: int | None = None,
) -> CountCertificate:
    """Certificate, valid for every signing, on the number of assignments
    violating at most an eta fraction of the hyperedges of H.

    The default contiguous partition keeps certificates deterministic;
    ``partition_seed`` switches to a random balanced partition for
    experiments.
    """
    budget = violation_budget(eta, H.m)
    res = _kxor_budget(H, budget, eps, 0, partition_seed)
    return CountCertificate(
        kind="count",
        n=H.n,
        log2_bound=res.log2_bound,
        eta=eta,
        fallback=res.fallback,
        checks=res.checks,
        signature=H.sha256(),
        recursion_trace=res.trace,
        transcript=res.transcript,
    )


def certify_count_ksat(
    I: SignedHypergraph, eta: float, eps: float = 0.05
) -> CountCertificate:
    """Certificate on the number of (1-eta)-satisfying assignments of I as
    a kSAT instance: the XOR principle converts the SAT slack into an XOR
    slack, then the signing-independent kXOR certifier takes over."""
    if I.k < 3:
        raise ValueError("kSAT counting requires k >= 3")
    if I.m == 0:
        raise ValueError("cannot certify an empty instance")
    principle = kxor_principle(I, eta)
    principle_check = CheckRecord(
        "xor-principle-nontrivial", principle.eta_x, 1.0, principle.eta_x < 1.0
    )
    transcript = {
        "quasirandom_eps": principle.eps,
        "eta_x": principle.eta_x,
        "quasirandomness": principle.quasirandomness.to_json_dict(),
    }
    if not principle_check.passed:
        return CountCertificate(
            kind="count",
            n=I.n,
            log2_bound=float(I.n),
            eta=eta,
            fallback=True,
            checks=(principle_check,),
            signature=I.sha256(),
            transcript=transcript,
        )
    budget_x = violation_budget(principle.eta_x, I.m)
    res = _kxor_budget(I.hypergraph(), budget_x, eps, 0)
    transcript.update(res.transcript)
    return CountCertificate(
        kind="count",
        n=I.n,
        log2_bound=res.log2_bound,
        eta=eta,
        fallback=res.fallback,
        checks=(principle_check,) + res.checks,
        signature=I.sha256(),
        recursion_trace=res.trace,
        transcript=transcript,
    )


def certify_count_kcsp(
    I: SignedHypergraph, P: Predicate, eta: float, eps: float = 0.05
) -> CountCertificate:
    """Certificate on (1-eta)-satisfiers of I under an arbitrary predicate,
    via composition with a fixed non-satisfying string of P."""
    reduced = csp_to_ksat(I, P)
    inner = certify_count_ksat(reduced, eta, eps)
    transcript = dict(inner.transcript)
    transcript["reduction_string"] = list(P.first_unsatisfying())
    return CountCertificate(
        kind="count",
        n=I.n,
        log2_bound=inner.log2_bound,
        eta=eta,
        fallback=inner.fallback,
        checks=inner.checks,
        signature=I.sha256(),
        recursion_trace=inner.recursion_trace,
        transcript=transcript,
    )


# ---------------------------------------------------------------------------
# Refutation from counting
# ---------------------------------------------------------------------------

def refute_from_count(
    I: XorInstance, count_cert: CountCertificate, eta: float
) -> RefutationCertificate | None:
    """Upgrade a small count bound into a refutation of (1-eta/2)-satisfiers.

    If some x were (1-eta/2)-satisfying, flipping any subset of a variable
    set S touched by few clauses would yield 2^|S| distinct assignments all
    (1-eta)-satisfying; a certified count below 2^|S| rules that out.
    """
    if count_cert.n != I.n:
        raise ValueError("certificate does not match the instance size")
    if count_cert.eta < eta - 1e-12:
        raise ValueError("certificate slack is smaller than the requested eta")
    n, m, k = I.n, I.m, I.k
    set_size = int(math.floor(eta * n / (3.0 * k) + 1e-9))
    if set_size < 1:
        return None
    S = set(range(set_size))
    incidence = sum(1 for _, U in I.clauses if any(v in S for v in U))
    incidence_budget = int(math.floor(eta * m / 2.0 + 1e-9))
    if incidence > incidence_budget:
        return None
    if count_cert.log2_bound > set_size - 1e-9:
        return None
    return RefutationCertificate(
        kind="refutation",
        n=n,
        eta_refuted=eta / 2.0,
        evidence={
            "count_certificate": count_cert.to_json_dict(),
            "set_size": set_size,
            "clause_incidence": incidence,
            "incidence_budget": incidence_budget,
        },
        signature=I.sha256(),
    )
