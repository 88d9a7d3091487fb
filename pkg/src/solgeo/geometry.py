"""Cluster-count certification for 3XOR/3CSP and refutation of biased
(unbalanced) near-satisfiers for 3CSP and kXOR/kCSP.

The structural engine is the primal multigraph of the hypergraph: its
measured de-meaned operator norm feeds the expander mixing lemma, which
lower-bounds how many hyperedges any lopsided vertex split must place
with two vertices inside (T2) or all three inside (T3) the larger side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .certificates import BalanceCertificate, CheckRecord, ClusterCertificate
from .instances import (
    MultiGraph,
    Predicate,
    SignedHypergraph,
    UnsignedHypergraph,
    XorInstance,
    csp_to_ksat,
    primal_graph,
    split_by_sign,
    truncated_xor,
    violation_budget,
)
from .refuter import PolynomialBound, SparsePolynomial, kxor_principle, refute_polynomial
from .spectral import SpectralReport, eig_slack, mixing_interval, spectral_report

# Calibrated constant gating whether the primal norm is in the regime
# where nontrivial cluster/balance bounds are attempted.
PRIMAL_NORM_C0 = 3.0

# Tiny strictness margin for "certified count exceeds budget" comparisons.
_MARGIN = 1e-9


@dataclass(frozen=True)
class PrimalExpansion:
    """Measured primal-graph spectral evidence plus its calibration check."""

    report: SpectralReport
    check: CheckRecord


@dataclass(frozen=True)
class HyperedgeSplit:
    """Certified lower bounds, valid for every vertex set S of size
    (1/2 + gamma) n simultaneously, on the number of hyperedges with two
    vertices in S and one outside (lb2) and fully inside S (lb3)."""

    gamma: float
    lb2: float
    lb3: float


def certify_primal_expansion(
    H: UnsignedHypergraph, c0: float = PRIMAL_NORM_C0
) -> PrimalExpansion:
    """De-meaned operator norm of the primal multigraph, with a pass/fail
    against the calibration threshold c0 * sqrt(density * ln n)."""
    clean = H.without_repeats()
    G = primal_graph(clean)
    report = spectral_report(G, laplacian=False, demeaned=True)
    density = clean.m / H.n
    threshold = c0 * math.sqrt(density * math.log(max(H.n, 2)))
    check = CheckRecord(
        "primal-norm", report.demeaned_norm, threshold,
        report.demeaned_norm <= threshold,
    )
    return PrimalExpansion(report, check)


def hyperedge_split_bounds(
    H: UnsignedHypergraph, report: SpectralReport, gamma: float
) -> HyperedgeSplit:
    """Instantiate the T2/T3 lower bounds at split parameter gamma from the
    mixing intervals of the measured primal norm.

    With s = (1/2 + gamma) n: crossing edges come from T1 and T2 hyperedges
    (two each) and edges inside the complement from T0 and T1, giving
    |T2| >= e(S, comp)/2 - e(comp, comp)/2; edges inside S come from T3
    (three each) and T2 (one each), giving |T3| >= (e(S,S) - e(S,comp))/6.
    """
    if not (0.0 <= gamma <= 0.5 + 1e-12):
        raise ValueError("gamma must lie in [0, 1/2]")
    n = H.n
    s = (0.5 + gamma) * n
    comp = n - s
    d = report.d_avg
    nu = (report.demeaned_norm or 0.0) + eig_slack(report.demeaned_norm or 0.0)

    cross_mean = d / n * s * comp
    cross_rad = nu * math.sqrt(max(s * comp, 0.0))
    e_cross_lb = cross_mean - cross_rad
    e_cross_ub = cross_mean + cross_rad
    e_comp_comp_ub = d / n * comp * comp + nu * comp
    e_in_s_lb = d / n * s * s - nu * s

    lb2 = max(0.0, 0.5 * e_cross_lb - 0.5 * e_comp_comp_ub)
    lb3 = max(0.0, (e_in_s_lb - e_cross_ub) / 6.0)
    return HyperedgeSplit(gamma, lb2, lb3)


# ---------------------------------------------------------------------------
# Balanced-code bound
# ---------------------------------------------------------------------------

def balanced_code_bound(eps: float, n: int, k_max: int = 200) -> float:
    """log2 upper bound on the size of any eps-balanced code of length n.

    For code vectors with pairwise inner products at most eps*n in absolute
    value, the k-th Hadamard power of their Gram matrix is PSD with trace
    N n^k and squared Frobenius norm at most N n^2k (1 + N eps^2k), so its
    rank is at least N / (1 + N eps^2k) while also at most C(n+k-1, k).
    Whenever C(n+k-1, k) * eps^2k < 1/2 this yields N <= 2 C(n+k-1, k).
    """
    if not (0.0 <= eps < 0.5):
        raise ValueError("eps must lie in [0, 1/2)")
    if n < 1:
        raise ValueError("n must be positive")
    best = float(n)
    log_eps = math.log(eps) if eps > 0 else float("-inf")
    for k in range(1, k_max + 1):
        rank_cap = math.comb(n + k - 1, k)
        feasible = math.log(rank_cap) + 2 * k * log_eps < math.log(0.5)
        if feasible:
            best = min(best, math.log2(2 * rank_cap))
    return best


# ---------------------------------------------------------------------------
# Cluster certificates
# ---------------------------------------------------------------------------

def _cluster_fallback(
    H: UnsignedHypergraph, eta: float, checks: tuple[CheckRecord, ...],
    primal_json: dict, transcript: dict,
) -> ClusterCertificate:
    return ClusterCertificate(
        n=H.n,
        eta=eta,
        theta=0.5,
        log2_cluster_bound=float(H.n),
        gap_interval=(0.0, float(H.n)),
        primal_report=primal_json,
        fallback=True,
        checks=checks,
        signature=H.sha256(),
        transcript=transcript,
    )


def certify_clusters_3xor(
    H: UnsignedHypergraph, eta: float, c0: float = PRIMAL_NORM_C0
) -> ClusterCertificate:
    """Certify, for every signing of H at once, that (1-eta)-satisfiers
    pairwise sit within theta*n or inside the half-distance gap window,
    and bound the number of radius-(theta*n) clusters.

    theta is the smallest grid value for which the T2 bound excludes every
    product-vector majority side in ((1/2+theta)n, (1-theta)n) and the T3
    bound excludes every minority side above (1/2+theta)n, both against the
    doubled violation budget.
    """
    if H.k != 3:
        raise ValueError("cluster certification is for 3-uniform hypergraphs")
    n = H.n
    budget = violation_budget(eta, H.m)
    clean = H.without_repeats().dedup()
    primal = certify_primal_expansion(clean, c0)
    primal_json = primal.report.to_json_dict()
    density = clean.m / n if n else 0.0
    theta_rule = max(
        2 * eta, density ** -0.5 * math.log(max(n, 2)) if density > 0 else 1.0
    )
    transcript = {
        "budget": budget,
        "m_clean": clean.m,
        "density": density,
        "theta_asymptotic_rule": theta_rule,
    }
    checks = (primal.check,)
    if clean.m == 0 or not primal.check.passed:
        return _cluster_fallback(H, eta, checks, primal_json, transcript)

    need = 2.0 * budget + _MARGIN
    ok2 = {}
    ok3 = {}
    for s in range(n // 2 + 1, n + 1):
        split = hyperedge_split_bounds(clean, primal.report, s / n - 0.5)
        ok2[s] = split.lb2 > need
        ok3[s] = split.lb3 > need

    theta_steps = None
    for t in range(0, n // 4 + 1):
        if t / n >= 0.25:
            break
        # distances d in (t, n/2 - t) are excluded via T2 at s = n - d
        lo2 = t + 1
        hi2 = math.ceil(n / 2.0 - t) - 1
        t2_ok = all(ok2[n - d] for d in range(lo2, hi2 + 1))
        # distances d above n/2 + t are excluded via T3 at s = d
        lo3 = math.floor(n / 2.0 + t) + 1
        t3_ok = all(ok3[d] for d in range(lo3, n + 1))
        if t2_ok and t3_ok:
            theta_steps = t
            break
    if theta_steps is None:
        return _cluster_fallback(H, eta, checks, primal_json, transcript)

    theta = theta_steps / n
    code_log2 = min(float(n), balanced_code_bound(min(2 * theta, 0.4999), n))
    transcript["theta_steps"] = theta_steps
    return ClusterCertificate(
        n=n,
        eta=eta,
        theta=theta,
        log2_cluster_bound=code_log2,
        gap_interval=((0.5 - theta) * n, (0.5 + theta) * n),
        primal_report=primal_json,
        fallback=False,
        checks=checks,
        signature=H.sha256(),
        transcript=transcript,
    )


def certify_clusters_3csp(
    I: SignedHypergraph, P: Predicate, eta: float, c0: float = PRIMAL_NORM_C0
) -> ClusterCertificate:
    """Cluster certificate for (1-eta)-satisfiers of I under a 3-ary
    predicate: reduce to 3SAT, convert the slack with the XOR principle,
    then certify the underlying hypergraph."""
    if I.k != 3 or P.k != 3:
        raise ValueError("3CSP cluster certification requires arity 3")
    if I.m == 0:
        raise ValueError("cannot certify an empty instance")
    reduced = csp_to_ksat(I, P)
    principle = kxor_principle(reduced, eta)
    transcript = {
        "quasirandom_eps": principle.eps,
        "eta_x": principle.eta_x,
    }
    H = reduced.hypergraph()
    if principle.eta_x >= 1.0:
        checks = (CheckRecord("xor-principle-nontrivial", principle.eta_x, 1.0, False),)
        cert = _cluster_fallback(H, eta, checks, {}, transcript)
    else:
        cert = certify_clusters_3xor(H, principle.eta_x, c0)
        transcript.update(cert.transcript)
    return ClusterCertificate(
        n=I.n,
        eta=eta,
        theta=cert.theta,
        log2_cluster_bound=cert.log2_cluster_bound,
        gap_interval=cert.gap_interval,
        primal_report=cert.primal_report,
        fallback=cert.fallback,
        checks=cert.checks,
        signature=I.sha256(),
        transcript=transcript,
    )


# ---------------------------------------------------------------------------
# Balance certificates
# ---------------------------------------------------------------------------

def _lb3_at_bias(
    part: UnsignedHypergraph, rho: float
) -> tuple[float, SpectralReport, CheckRecord]:
    """Lower bound on fully-inside hyperedges of ``part``, valid for every
    vertex set of size at least ceil((1+rho)/2 * n): the exact grid scan
    over admissible sizes (the bound need not be monotone once the
    measured norm is large relative to the degrees)."""
    n = part.n
    s_min = math.ceil((1.0 + rho) / 2.0 * n - 1e-9)
    expansion = certify_primal_expansion(part)
    if s_min < n / 2 or s_min > n:
        return 0.0, expansion.report, expansion.check
    worst = math.inf
    for s in range(s_min, n + 1):
        split = hyperedge_split_bounds(part, expansion.report, s / n - 0.5)
        worst = min(worst, split.lb3)
    return worst, expansion.report, expansion.check


def certify_balance_3csp(
    I: SignedHypergraph, P: Predicate, rho: float, eta: float
) -> BalanceCertificate | None:
    """Certify that no rho-biased assignment (1-eta)-satisfies I under a
    3-ary predicate, or decline.

    After reducing to 3SAT, the all-unnegated sub-instance is violated on
    hyperedges fully inside the +1 side and the fully-negated sub-instance
    on hyperedges fully inside the -1 side; either side of a rho-biased
    assignment is large enough for the T3 bound to apply.
    """
    if I.k != 3 or P.k != 3:
        raise ValueError("3CSP balance certification requires arity 3")
    if not (0.0 < rho <= 1.0):
        raise ValueError("rho must lie in (0, 1]")
    if I.m == 0:
        raise ValueError("cannot certify an empty instance")
    reduced = csp_to_ksat(I, P)
    part_pos, part_neg = split_by_sign(reduced)
    if part_pos.m == 0 or part_neg.m == 0:
        return None
    h_pos = part_pos.hypergraph().without_repeats().dedup()
    h_neg = part_neg.hypergraph().without_repeats().dedup()
    if h_pos.m == 0 or h_neg.m == 0:
        return None
    v_pos, rep_pos, chk_pos = _lb3_at_bias(h_pos, rho)
    v_neg, rep_neg, chk_neg = _lb3_at_bias(h_neg, rho)
    v_min = min(v_pos, v_neg)
    m = I.m
    if v_min <= eta * m + _MARGIN:
        return None
    transcript = {
        "v_plus": v_pos,
        "v_minus": v_neg,
        "m_plus": h_pos.m,
        "m_minus": h_neg.m,
        "eta_asymptotic_rule": rho / 16.0,
        "primal_report_plus": rep_pos.to_json_dict(),
        "primal_report_minus": rep_neg.to_json_dict(),
    }
    return BalanceCertificate(
        n=I.n,
        rho=rho,
        eta=eta,
        violated_fraction_bound=v_min / m,
        checks=(chk_pos, chk_neg),
        signature=I.sha256(),
        transcript=transcript,
    )


@dataclass(frozen=True)
class InducedPositiveFraction:
    """Certified eps such that for every assignment to S, the induced 2XOR
    instance is (1/2 + eps)-positive."""

    eps: float
    m_truncated: int
    bound: PolynomialBound


def certify_induced_positive_fraction(
    I: XorInstance, S: list[int]
) -> InducedPositiveFraction:
    """Bound, uniformly over assignments sigma to S, the positive-clause
    excess of the induced 2XOR instance.

    The signed sum over induced clauses equals the truncated instance's
    polynomial sum_U w_U sigma^U, whose maximum is certified by the
    polynomial refuter; dividing by the clause count and halving turns the
    excess into the positivity margin eps.
    """
    if I.k < 4:
        raise ValueError("induced positivity requires k >= 4")
    if not S:
        raise ValueError("S must be nonempty")
    trunc = truncated_xor(I, S, I.k - 2)
    if trunc.m == 0:
        raise ValueError("truncated instance is empty")
    remap = {v: i for i, v in enumerate(sorted(set(S)))}
    terms: dict[tuple[int, ...], float] = {}
    for b, U in trunc.clauses:
        key = tuple(remap[v] for v in U)
        terms[key] = terms.get(key, 0.0) + float(b)
    poly = SparsePolynomial(len(remap), I.k - 2, terms)
    bound = refute_polynomial(poly)
    eps = min(0.5, bound.value / (2.0 * trunc.m))
    return InducedPositiveFraction(eps, trunc.m, bound)


def refute_biased_2xor_family(G: MultiGraph, eps: float, rho: float) -> float:
    """Certified lower bound on the violated fraction, for every
    (1/2+eps)-positive 2XOR instance on G and every assignment with bias at
    least rho.

    Edges inside either side of the assignment's split are satisfied only
    if signed positive; the mixing bound forces a gamma fraction of edges
    inside the two sides, of which at most 1/2 + eps can be positive.
    """
    if G.m == 0:
        raise ValueError("the family graph must be nonempty")
    if not (0.0 <= rho <= 1.0):
        raise ValueError("rho must lie in [0, 1]")
    n = G.n
    davg = G.average_degree()
    nu = spectral_report(G, laplacian=False, demeaned=True).demeaned_norm
    nu += eig_slack(nu)
    gamma_frac = (davg * n / 2.0 * (1.0 + rho**2) - nu * n - davg) / (2.0 * G.m)
    return max(0.0, gamma_frac - (0.5 + eps))


def certify_balance_kxor(I: XorInstance, rho: float) -> BalanceCertificate | None:
    """Certify that no sufficiently biased assignment nearly satisfies the
    kXOR instance, or decline.

    The clauses with exactly k-2 variables in a fixed rho*n-sized set S
    form a family of 2XOR instances on the outside variables, one per
    assignment to S, all sharing one multigraph; the family's certified
    positivity margin plus the biased-family refuter exclude every
    assignment whose outside part is rho-biased.
    """
    if I.k < 4:
        raise ValueError("kXOR balance certification requires k >= 4")
    if not (0.0 < rho <= 1.0):
        raise ValueError("rho must lie in (0, 1]")
    n, m = I.n, I.m
    if m == 0:
        return None
    clean = XorInstance(
        I.k, n, tuple((b, U) for b, U in I.clauses if len(set(U)) == I.k)
    )
    s = math.ceil(rho * n)
    if s >= n - 1:
        return None
    S = list(range(s))
    Sset = set(S)
    remap = {v: i for i, v in enumerate(range(s, n))}
    edges = []
    for b, U in clean.clauses:
        outside = [v for v in U if v not in Sset]
        if len(outside) != 2:
            continue
        edges.append((remap[outside[0]], remap[outside[1]]))
    if not edges:
        return None
    G = MultiGraph.build(n - s, edges)
    if G.m == 0:
        return None
    induced = certify_induced_positive_fraction(clean, S)
    v_frac = refute_biased_2xor_family(G, induced.eps, rho)
    if v_frac <= _MARGIN:
        return None
    violated_fraction = v_frac * G.m / m
    eta = violated_fraction * (1.0 - 1e-9)
    rho_whole = (rho * (n - s) + s) / n
    eta_rule = rho ** (I.k - 2) * rho**2 / 2.0
    transcript = {
        "set_size": s,
        "selected_clauses": G.m,
        "eps_induced": induced.eps,
        "violated_fraction_induced": v_frac,
        "rho_inner": rho,
        "eta_asymptotic_rule": eta_rule,
        "refuter_branch": induced.bound.branch,
    }
    checks = (
        CheckRecord("family-violation-positive", v_frac, 0.0, True),
    )
    return BalanceCertificate(
        n=n,
        rho=rho_whole,
        eta=eta,
        violated_fraction_bound=violated_fraction,
        checks=checks,
        signature=I.sha256(),
        transcript=transcript,
    )


def certify_balance_kcsp(
    I: SignedHypergraph, P: Predicate, rho: float
) -> BalanceCertificate | None:
    """Balance refutation for I under an arbitrary predicate with k >= 4:
    reduce to kSAT, certify the XOR-side balance, then convert the XOR
    slack back through the XOR principle."""
    if I.k < 4 or P.k != I.k:
        raise ValueError("kCSP balance certification requires matching k >= 4")
    if I.m == 0:
        raise ValueError("cannot certify an empty instance")
    reduced = csp_to_ksat(I, P)
    xor = reduced.to_xor()
    inner = certify_balance_kxor(xor, rho)
    if inner is None:
        return None
    principle = kxor_principle(reduced, 0.0)
    # largest SAT slack whose implied XOR slack stays under the certificate
    scale = 2.0 ** (I.k - 1)
    eta_p = (inner.eta - (scale - 1.0) * principle.eps) / scale
    if eta_p <= 0:
        return None
    transcript = dict(inner.transcript)
    transcript.update(
        {
            "quasirandom_eps": principle.eps,
            "eta_xor": inner.eta,
            "eta_asymptotic_rule": rho**I.k / 2.0,
        }
    )
    return BalanceCertificate(
        n=I.n,
        rho=inner.rho,
        eta=eta_p * (1.0 - 1e-9),
        violated_fraction_bound=eta_p,
        checks=inner.checks,
        signature=I.sha256(),
        transcript=transcript,
    )
