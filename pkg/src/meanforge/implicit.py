"""Implicitly defined means via the scalar balance equation.

The central operation solves, for a strictly-increasing symmetric outer
function ``mu`` of n variables, a prefix ``v`` of m < n values and a target
vector ``w`` of n values with ``v`` embedded in ``w``::

    mu(v_1, ..., v_m, x, ..., x) = mu(w_1, ..., w_n)

The left side is continuous and strictly increasing in ``x`` and brackets the
target between ``x = min(w)`` and ``x = max(w)``, so bisection on that
bracket finds the unique root; no derivative is assumed to exist.  Lifting
the pointwise solve over vectors of mean values yields new means:
``implicit_mean`` balances a small family of means against a larger one, and
``generalized_beta_mean`` balances a single inner mean against the plain
vector (which reproduces the Beta-type mean for an arithmetic inner mean and
geometric outer).

Embeddability of all-power-mean families is decidable exactly: the family of
power means is embedded in another one precisely when the corresponding
exponent vectors are embedded.  Other families only get sampled verdicts,
reported as such.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ArityError, ConvergenceError, HypothesisViolation
from .ordering import as_vector, is_embedded, is_embedded_within, is_ordered_majorized
from .means import (
    POSITIVE_REALS,
    DerivedMean,
    Interval,
    MeanExpr,
    OuterFn,
    PowerMean,
    declared_arity,
    eval_mean,
    eval_outer,
)
from .sampling import CheckReport, SamplePlan, sample_vectors

__all__ = [
    "DEFAULT_TOL",
    "MAX_BISECTION_STEPS",
    "SolveResult",
    "EmbedReport",
    "embedding_eps",
    "solve_scalar",
    "implicit_mean",
    "generalized_beta_value",
    "generalized_beta_mean",
    "power_mean_embedded",
    "verify_embedding",
    "compare_implicit_means",
]

DEFAULT_TOL = 1e-12
MAX_BISECTION_STEPS = 200

# Relaxation applied when checking the embedding precondition on computed
# mean values; scales with the magnitude of the target vector.
EMBED_EPS_SCALE = 1e-9


@dataclass(frozen=True)
class SolveResult:
    """Root of the scalar balance equation.

    ``bracket`` is [min(w), max(w)]; the root always lies inside it, even
    when the iteration cap was hit.  ``residual`` is
    ``|mu(v_1,..,v_m,root,..,root) - mu(w)|`` re-evaluated after the solve.
    ``status`` is one of ``"converged"``, ``"max-iterations"``,
    ``"hypothesis-violated"`` (the last only appears in CLI records; the
    library raises :class:`HypothesisViolation` instead of returning it).
    """

    root: float
    bracket: tuple[float, float]
    residual: float
    iterations: int
    status: str


@dataclass(frozen=True)
class EmbedReport:
    """Verdict on embeddability of one mean family in another.

    ``certified`` verdicts are exact (all-power-mean exponent rule, or one
    family being a sub-multiset of the other); ``sampled`` means no violation
    was found at ``samples_checked`` points and is not a proof; ``refuted``
    carries a re-checkable counterexample.
    """

    mode: str  # "certified" | "sampled" | "refuted"
    samples_checked: int = 0
    counterexample: Optional[dict] = None
    certificate: Optional[dict] = None


def embedding_eps(w: Sequence[float]) -> float:
    """Relaxation used for embedding checks on computed values near ``w``'s scale."""
    return EMBED_EPS_SCALE * max(abs(x) for x in w)


def _require_converged(result: SolveResult, context: str) -> float:
    if result.status != "converged":
        raise ConvergenceError(
            f"{context}: no convergence within {result.iterations} bisection steps")
    return result.root


def solve_scalar(outer: OuterFn, prefix: Sequence[float], target: Sequence[float],
                 tol: float = DEFAULT_TOL,
                 max_iterations: int = MAX_BISECTION_STEPS) -> SolveResult:
    """Solve ``outer(prefix, x, ..., x) = outer(target)`` for ``x`` by bisection.

    Requires ``prefix`` embedded in ``target`` (checked with rounding
    relaxation); a hard violation raises :class:`HypothesisViolation` because
    the bracket guarantee is void without it.  Convergence is on relative
    bracket width, so the root is accurate to ``tol`` *relative* even when
    the initial bracket spans orders of magnitude.
    """
    v = as_vector(prefix)
    w = as_vector(target)
    m, n = len(v), len(w)
    if not m < n:
        raise ArityError(f"prefix must be shorter than the target, got {m} >= {n}")
    pinned = declared_arity(outer)
    if pinned is not None and pinned != n:
        raise ArityError(f"{outer} takes {pinned} values but the target has {n}")
    verdict = is_embedded_within(v, w, embedding_eps(w))
    if not verdict.embedded:
        raise HypothesisViolation(
            "prefix is not embedded in the target vector (no solution is "
            "guaranteed and the bracket argument fails)",
            witness={"prefix": list(v), "target": list(w),
                     "minorized": verdict.minorized,
                     "majorized": verdict.majorized,
                     "witness_index": verdict.witness_index})

    lo, hi = min(w), max(w)
    bracket = (lo, hi)
    fill = n - m

    def f(x: float) -> float:
        return eval_outer(outer, v + (x,) * fill)

    goal = eval_outer(outer, w)
    if lo == hi:
        return SolveResult(lo, bracket, abs(f(lo) - goal), 0, "converged")
    # Boundary roots: rounding can place the target at (or just past) an end
    # of the bracket even though the exact root is interior.
    if f(lo) - goal >= 0.0:
        return SolveResult(lo, bracket, abs(f(lo) - goal), 0, "converged")
    if f(hi) - goal <= 0.0:
        return SolveResult(hi, bracket, abs(f(hi) - goal), 0, "converged")

    iterations = 0
    status = "max-iterations"
    while True:
        width = hi - lo
        if width <= tol * max(abs(lo), abs(hi)):
            status = "converged"
            break
        if iterations >= max_iterations:
            break
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:  # float resolution exhausted
            status = "converged"
            break
        iterations += 1
        if f(mid) - goal < 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return SolveResult(root, bracket, abs(f(root) - goal), iterations, status)


def implicit_mean(small: Sequence[MeanExpr], big: Sequence[MeanExpr],
                  outer: OuterFn, domain: Interval = POSITIVE_REALS,
                  tol: float = DEFAULT_TOL) -> DerivedMean:
    """The mean whose value at v solves outer(S_1(v),..,S_m(v),x,..,x) = outer(M_1(v),..,M_n(v)).

    The caller is responsible for the family-level embedding of ``small`` in
    ``big`` (certify with :func:`verify_embedding`); every evaluation still
    checks the pointwise embedding and raises on hard violations.  The result
    is a symmetric mean squeezed between min and max of the ``big`` values.
    """
    small = tuple(small)
    big = tuple(big)
    if not 1 <= len(small) < len(big):
        raise ArityError(
            f"need 1 <= len(small) < len(big), got {len(small)}, {len(big)}")
    pinned = declared_arity(outer)
    if pinned is not None and pinned != len(big):
        raise ArityError(f"{outer} takes {pinned} values but len(big)={len(big)}")

    def evaluate(sv: tuple[float, ...]) -> float:
        prefix = tuple(eval_mean(s, sv) for s in small)
        target = tuple(eval_mean(b, sv) for b in big)
        result = solve_scalar(outer, prefix, target, tol=tol)
        return _require_converged(result, "implicit mean evaluation")

    from .dsl import ProblemSpec  # local: dsl depends on means only
    label = str(ProblemSpec(outer=outer, small=small, big=big, domain=domain))
    return DerivedMean(name=label, fn=evaluate, domain=domain)


def generalized_beta_value(inner: MeanExpr, outer: OuterFn,
                           entries: Sequence[float],
                           tol: float = DEFAULT_TOL) -> float:
    """Value at ``entries`` of the mean solving outer(inner(v), x, ..., x) = outer(v)."""
    v = as_vector(entries)
    if len(v) < 2:
        raise ArityError("the balanced mean needs at least 2 entries")
    inner_value = eval_mean(inner, v)
    result = solve_scalar(outer, (inner_value,), v, tol=tol)
    return _require_converged(result, "balanced mean evaluation")


def generalized_beta_mean(inner: MeanExpr, outer: OuterFn, arity: int,
                          domain: Interval = POSITIVE_REALS,
                          tol: float = DEFAULT_TOL) -> DerivedMean:
    """The k-variable mean solving outer(inner(v), x, ..., x) = outer(v).

    The single inner value satisfies min(v) <= inner(v) <= max(v), so the
    embedding precondition holds automatically at every point.  With
    ``inner=P[1]`` and ``outer=mean[P[0]]`` this is the Beta-type mean.
    """
    if arity < 2:
        raise ArityError("the balanced mean needs arity >= 2")
    pinned = declared_arity(outer)
    if pinned is not None and pinned != arity:
        raise ArityError(f"{outer} takes {pinned} values but arity={arity}")
    from .means import GeneralizedBetaMean as _Node
    label = str(_Node(inner, outer))
    return DerivedMean(
        name=label,
        fn=lambda sv: generalized_beta_value(inner, outer, sv, tol=tol),
        domain=domain,
        arity=arity,
    )


def power_mean_embedded(alpha: Sequence[float], beta: Sequence[float]) -> bool:
    """Exact embeddability of power-mean families via their exponent vectors.

    The family (P[a_1],..,P[a_m]) is embedded in (P[b_1],..,P[b_n]) as
    functions precisely when the vector of exponents ``alpha`` is embedded in
    ``beta``: at every nonconstant positive vector the order-s power mean is
    continuous and strictly increasing in s, so the sorted mean values
    compare exactly like the sorted exponents.
    """
    return is_embedded(alpha, beta).embedded


def _as_counter(family: Sequence[MeanExpr]) -> Counter:
    return Counter(family)


def _default_plan(domain: Interval, seed: int = 0) -> SamplePlan:
    lower = domain.lower if math.isfinite(domain.lower) else 0.0
    upper = domain.upper if math.isfinite(domain.upper) else 100.0
    return SamplePlan(arity=3, count=256, seed=seed, lower=lower, upper=upper)


def verify_embedding(small: Sequence[MeanExpr], big: Sequence[MeanExpr],
                     domain: Interval = POSITIVE_REALS,
                     plan: Optional[SamplePlan] = None) -> EmbedReport:
    """Certify, sample, or refute embeddability of ``small`` in ``big``.

    Certification happens when ``small`` is a sub-multiset of ``big``
    (selecting values from a vector always embeds) or when both families are
    power means (exponent rule).  A refutation always carries a witness
    vector at which the exact embedding check on the computed mean values
    fails.
    """
    small = tuple(small)
    big = tuple(big)
    if plan is None:
        plan = _default_plan(domain)

    if len(small) <= len(big):
        counts_small, counts_big = _as_counter(small), _as_counter(big)
        if all(counts_big[key] >= cnt for key, cnt in counts_small.items()):
            return EmbedReport(mode="certified",
                               certificate={"rule": "sub-multiset"})

    all_power = all(isinstance(m, PowerMean) for m in small + big)
    exponent_verdict = None
    if all_power:
        alpha = tuple(m.order for m in small)
        beta = tuple(m.order for m in big)
        exponent_verdict = {"rule": "power-mean-exponents",
                            "alpha": list(alpha), "beta": list(beta),
                            "embedded": power_mean_embedded(alpha, beta)}
        if exponent_verdict["embedded"]:
            return EmbedReport(mode="certified", certificate=exponent_verdict)
        # Exponents not embedded: every sufficiently nonconstant vector is a
        # witness; fall through to sampling to produce one.

    checked = 0
    for v in sample_vectors(plan):
        checked += 1
        small_values = tuple(eval_mean(s, v) for s in small)
        big_values = tuple(eval_mean(b, v) for b in big)
        relaxed = is_embedded_within(small_values, big_values,
                                     embedding_eps(big_values))
        if not relaxed.embedded:
            exact = is_embedded(small_values, big_values)
            return EmbedReport(
                mode="refuted",
                samples_checked=checked,
                counterexample={
                    "vector": list(v),
                    "small_values": list(small_values),
                    "big_values": list(big_values),
                    "minorized": exact.minorized,
                    "majorized": exact.majorized,
                    "witness_index": exact.witness_index,
                },
                certificate=exponent_verdict)
    if all_power:
        # Exponent rule says "not embedded" but no sampled witness appeared
        # (conceivable only for extremely close exponents); report honestly.
        return EmbedReport(mode="sampled", samples_checked=checked,
                           certificate=exponent_verdict)
    return EmbedReport(mode="sampled", samples_checked=checked)


def _ordered_majorized_family(low: Sequence[MeanExpr], high: Sequence[MeanExpr],
                              plan: SamplePlan) -> Optional[dict]:
    """None when (low_1,..) < (high_1,..) pointwise on samples, else a witness."""
    low = tuple(low)
    high = tuple(high)
    if all(isinstance(m, PowerMean) for m in low + high):
        lo_exp = tuple(m.order for m in low)
        hi_exp = tuple(m.order for m in high)
        check = is_ordered_majorized(lo_exp, hi_exp)
        if check.holds:
            return None
        return {"rule": "power-mean-exponents", "low": list(lo_exp),
                "high": list(hi_exp), "witness_index": check.witness_index}
    for v in sample_vectors(plan):
        low_values = tuple(eval_mean(m, v) for m in low)
        high_values = tuple(eval_mean(m, v) for m in high)
        check = is_ordered_majorized(low_values, high_values,
                                     embedding_eps(high_values))
        if not check.holds:
            return {"rule": "sampled", "vector": list(v),
                    "low_values": list(low_values),
                    "high_values": list(high_values),
                    "witness_index": check.witness_index}
    return None


def compare_implicit_means(small: Sequence[MeanExpr], big: Sequence[MeanExpr],
                           small_star: Sequence[MeanExpr],
                           big_star: Sequence[MeanExpr],
                           outer: OuterFn, plan: SamplePlan,
                           domain: Interval = POSITIVE_REALS,
                           tol: float = 1e-9) -> CheckReport:
    """Sampled check of the comparability law between two implicit means.

    With ``big_star`` ordered majorized by ``big`` and ``small`` ordered
    majorized by ``small_star`` (same lengths), the starred implicit mean
    never exceeds the unstarred one.  Preconditions are certified through
    exponents for all-power families and sampled otherwise; a violated
    precondition raises :class:`HypothesisViolation` with a witness.
    """
    small, big = tuple(small), tuple(big)
    small_star, big_star = tuple(small_star), tuple(big_star)
    if len(small) != len(small_star):
        raise ArityError("the two prefix families must have equal length")
    if len(big) != len(big_star):
        raise ArityError("the two target families must have equal length")
    for name, low, high in (("big* < big", big_star, big),
                            ("small < small*", small, small_star)):
        witness = _ordered_majorized_family(low, high, plan)
        if witness is not None:
            raise HypothesisViolation(f"ordering precondition {name} fails",
                                      witness=witness)
    for name, s, b in (("small in big", small, big),
                       ("small* in big*", small_star, big_star)):
        report = verify_embedding(s, b, domain, plan)
        if report.mode == "refuted":
            raise HypothesisViolation(f"embedding precondition {name} fails",
                                      witness=report.counterexample)

    plain = implicit_mean(small, big, outer, domain)
    starred = implicit_mean(small_star, big_star, outer, domain)
    worst = -math.inf
    checked = 0
    for v in sample_vectors(plan):
        checked += 1
        a = eval_mean(plain, v)
        a_star = eval_mean(starred, v)
        gap = a_star - a
        worst = max(worst, gap)
        if gap > tol:
            return CheckReport(False, checked, counterexample={
                "vector": list(v), "value": a, "starred_value": a_star,
                "gap": gap}, max_residual=worst)
    return CheckReport(True, checked, max_residual=worst)
