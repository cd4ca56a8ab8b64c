"""Seeded property suites behind ``meanforge check``.

Each property runs on deterministically seeded samples and returns one
JSON-friendly record ``{kind, input, output, residual?, witness?}``; a fixed
seed therefore reproduces byte-identical output.  The suites cover the
ordering laws (duality, reflexivity/transitivity, the permutation
characterization, monotone transport), the mean/outer invariants, the scalar
solver contract with its closed-form oracles, and the invariant-mean
identities.

The pair/instance constructors double as test fixtures: they build vector
pairs with a *known* ordering relation (pointwise domination after sorting
implies ordered majorization; selecting a sub-multiset implies embedding;
window draws between sorted entries imply embedding), so the predicates
under test are exercised against ground truth established independently of
their own code path.
"""

from __future__ import annotations

import math
import random
from typing import Iterator, Optional, Sequence

from .ordering import (
    is_embedded,
    is_ordered_majorized,
    is_ordered_minorized,
    map_vector,
    sort_ascending,
    sort_descending,
)
from .means import (
    BetaMean,
    DerivedMean,
    Generator,
    MeanOuter,
    OuterFn,
    PowerMean,
    PowerSum,
    Product,
    QuasiAggregate,
    Sum,
    beta_mean,
    check_mean_property,
    eval_mean,
    eval_outer,
    power_mean,
)
from .implicit import (
    DEFAULT_TOL,
    compare_implicit_means,
    generalized_beta_mean,
    implicit_mean,
    power_mean_embedded,
    solve_scalar,
)
from .invariance import (
    complementary_mean,
    gauss_iterate,
    invariant_mean,
    verify_invariance,
)
from .sampling import SamplePlan, sample_vectors

__all__ = [
    "SUITE_NAMES",
    "run_suite",
    "majorized_pair",
    "embedded_pair",
    "embedded_exponents",
    "comparability_quadruple",
    "solver_instances",
    "closed_form_sum_mean",
    "closed_form_prod_mean",
    "EXAMPLE_SMALL",
    "EXAMPLE_BIG",
]

SUITE_NAMES = ("vectors", "means", "pexider", "invariance")

# The worked four-versus-two power-mean family used by the oracle checks.
EXAMPLE_SMALL = (PowerMean(0), PowerMean(2))
EXAMPLE_BIG = (PowerMean(-2), PowerMean(-1), PowerMean(1), PowerMean(3))


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}/{name}")


def _record(kind: str, inp: dict, passed: bool,
            residual: Optional[float] = None,
            witness: Optional[dict] = None) -> dict:
    rec = {"kind": kind, "input": inp, "output": "PASS" if passed else "FAIL"}
    if residual is not None:
        rec["residual"] = residual
    if witness is not None:
        rec["witness"] = witness
    return rec


# ---------------------------------------------------------------------------
# constructors for pairs with known ordering relations
# ---------------------------------------------------------------------------

def _uniform_vector(rng: random.Random, n: int, lo: float, hi: float) -> tuple[float, ...]:
    return tuple(rng.uniform(lo, hi) for _ in range(n))


def majorized_pair(rng: random.Random, m: int, n: int,
                   lo: float = 0.5, hi: float = 100.0) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """A pair (v, w) with v ordered majorized by w, for any lengths m, n.

    For m <= n, v is built pointwise below the m largest entries of w; for
    m > n, the n smallest entries of v are built pointwise below the sorted
    w and the remaining entries are free (extra entries only lower each k-th
    smallest value).
    """
    w = list(_uniform_vector(rng, n, lo, hi))
    if m <= n:
        top = sorted(w, reverse=True)[:m]
        v = [x - rng.random() * (x - lo) for x in top]
    else:
        base = [x - rng.random() * (x - lo) for x in sorted(w)]
        v = base + [rng.uniform(lo, hi) for _ in range(m - n)]
    rng.shuffle(v)
    rng.shuffle(w)
    return tuple(v), tuple(w)


def embedded_pair(rng: random.Random, m: int, n: int,
                  lo: float = 0.5, hi: float = 100.0) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """A pair (v, w), len(v)=m <= len(w)=n, with v a sub-multiset of w (so v embedded)."""
    w = list(_uniform_vector(rng, n, lo, hi))
    asc = sorted(w)
    v = [asc[i] for i in sorted(rng.sample(range(n), m))]
    rng.shuffle(v)
    rng.shuffle(w)
    return tuple(v), tuple(w)


def embedded_exponents(rng: random.Random, m: int, n: int,
                       span: float = 3.0) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Exponent vectors (alpha, beta) with alpha embedded in beta.

    Each alpha_k is drawn inside the window [beta_k, beta_{k+n-m}] of the
    ascending beta; any such draw is embedded as a multiset.
    """
    beta = sorted(rng.uniform(-span, span) for _ in range(n))
    alpha = [beta[k] + rng.random() * (beta[k + n - m] - beta[k])
             for k in range(m)]
    rng.shuffle(alpha)
    return tuple(alpha), tuple(beta)


def comparability_quadruple(rng: random.Random, m: int, n: int, span: float = 3.0):
    """Exponent families (sigma, beta, sigma_star, beta_star) for the comparability law.

    Construction guarantees: beta_star pointwise below beta (so ordered
    majorized), sigma_star a sub-multiset of beta_star (embedded), sigma
    pointwise below sigma_star but still inside its beta windows (embedded in
    beta, and ordered majorized by sigma_star).
    """
    beta = sorted(rng.uniform(-span, span) for _ in range(n))
    idx = sorted(rng.sample(range(n), m))
    gaps = [beta[i] - beta[k] for k, i in enumerate(idx)]
    drop_family = [rng.random() * g / 2 for g in gaps]
    drop_prefix = [rng.random() * g / 2 for g in gaps]
    beta_star = list(beta)
    for k, i in enumerate(idx):
        beta_star[i] = beta[i] - drop_family[k]
    for j in range(n):
        if j not in idx:
            beta_star[j] -= rng.random() * 0.5
    sigma_star = [beta[i] - drop_family[k] for k, i in enumerate(idx)]
    sigma = [sigma_star[k] - drop_prefix[k] for k in range(m)]
    return tuple(sigma), tuple(beta), tuple(sigma_star), tuple(beta_star)


_SOLVER_OUTERS: tuple[OuterFn, ...] = (Sum(), Product(), PowerSum(3))


def solver_instances(seed: int, count: int,
                     outers: Sequence[OuterFn] = _SOLVER_OUTERS,
                     arities: Sequence[int] = (2, 3, 5)) -> Iterator[tuple]:
    """Admissible solver instances (outer, alpha, beta, v), embedding certified.

    The power-mean prefix family with exponents ``alpha`` is embedded in the
    family with exponents ``beta`` by the exponent rule, so the balance
    equation is solvable at every positive v.  One instance in ten uses a
    near-constant v to hit the degenerate-bracket path.
    """
    rng = _rng(seed, "solver-instances")
    for index in range(count):
        n = rng.randint(2, 5)
        m = rng.randint(1, n - 1)
        alpha, beta = embedded_exponents(rng, m, n)
        k = rng.choice(list(arities))
        if index % 10 == 0:
            base = rng.uniform(0.5, 99.0)
            v = tuple(base + 1e-7 * rng.random() for _ in range(k))
        else:
            v = tuple(rng.uniform(0.5, 100.0) for _ in range(k))
        outer = outers[index % len(outers)]
        yield outer, alpha, beta, v


def closed_form_sum_mean(v: Sequence[float]) -> float:
    """Oracle for the worked example under the sum outer: (sum of the four
    target power means minus the two prefix ones) / 2."""
    p = {s: power_mean(s, v) for s in (-2, -1, 0, 1, 2, 3)}
    return (p[-2] + p[-1] + p[1] + p[3] - p[0] - p[2]) / 2.0


def closed_form_prod_mean(v: Sequence[float]) -> float:
    """Oracle for the worked example under the product outer:
    sqrt(product of the four target power means / product of the prefix ones)."""
    p = {s: power_mean(s, v) for s in (-2, -1, 0, 1, 2, 3)}
    return math.sqrt(p[-2] * p[-1] * p[1] * p[3] / (p[0] * p[2]))


# ---------------------------------------------------------------------------
# vectors suite
# ---------------------------------------------------------------------------

def _vectors_duality(samples: int, seed: int) -> dict:
    rng = _rng(seed, "duality")
    for _ in range(samples):
        n = rng.randint(2, 6)
        v = _uniform_vector(rng, n, -100.0, 100.0)
        w = _uniform_vector(rng, n, -100.0, 100.0)
        if is_ordered_majorized(v, w).holds != is_ordered_minorized(w, v).holds:
            return _record("vectors.duality", {"samples": samples, "seed": seed},
                           False, witness={"v": list(v), "w": list(w)})
    return _record("vectors.duality", {"samples": samples, "seed": seed}, True)


def _vectors_reflexive_transitive(samples: int, seed: int) -> dict:
    rng = _rng(seed, "reflexive-transitive")
    kind = "vectors.reflexivity_transitivity"
    inp = {"samples": samples, "seed": seed}
    for _ in range(samples):
        n = rng.randint(2, 6)
        u = _uniform_vector(rng, n, -100.0, 100.0)
        if not (is_ordered_majorized(u, u).holds and is_ordered_minorized(u, u).holds):
            return _record(kind, inp, False, witness={"v": list(u)})
        # chain u <= v <= w pointwise, shuffled: ordered majorization must chain
        v = tuple(x + rng.uniform(0.0, 10.0) for x in u)
        w = tuple(x + rng.uniform(0.0, 10.0) for x in v)
        v = tuple(sorted(v, key=lambda _: rng.random()))
        w = tuple(sorted(w, key=lambda _: rng.random()))
        if not (is_ordered_majorized(u, v).holds and is_ordered_majorized(v, w).holds
                and is_ordered_majorized(u, w).holds):
            return _record(kind, inp, False,
                           witness={"u": list(u), "v": list(v), "w": list(w)})
    return _record(kind, inp, True)


def _vectors_permutation(samples: int, seed: int) -> dict:
    rng = _rng(seed, "permutation")
    kind = "vectors.permutation_characterization"
    inp = {"samples": samples, "seed": seed}
    for index in range(samples):
        n = rng.randint(1, 6)
        v = _uniform_vector(rng, n, -100.0, 100.0)
        if index % 2 == 0:
            w = list(v)
            rng.shuffle(w)
            w = tuple(w)
        else:
            w = _uniform_vector(rng, n, -100.0, 100.0)
        expected = sort_ascending(v) == sort_ascending(w)
        if is_embedded(v, w).embedded != expected:
            return _record(kind, inp, False, witness={"v": list(v), "w": list(w)})
    return _record(kind, inp, True)


_COMPARISON_OUTERS: tuple[OuterFn, ...] = (
    Sum(), Product(), PowerSum(2), QuasiAggregate(Generator("log")),
    MeanOuter(PowerMean(2)))


def _vectors_monotone_comparison(samples: int, seed: int) -> dict:
    rng = _rng(seed, "monotone-comparison")
    kind = "vectors.monotone_comparison"
    inp = {"samples": samples, "seed": seed}
    per_outer = max(1, samples // len(_COMPARISON_OUTERS))
    for outer in _COMPARISON_OUTERS:
        for _ in range(per_outer):
            n = rng.randint(2, 6)
            v, w = majorized_pair(rng, n, n)
            a, b = eval_outer(outer, v), eval_outer(outer, w)
            if a > b + 1e-9 * max(1.0, abs(b)):
                return _record(kind, inp, False, witness={
                    "outer": str(outer), "v": list(v), "w": list(w),
                    "value_v": a, "value_w": b})
    return _record(kind, inp, True)


_TRANSPORT_FUNCTIONS = (
    ("square", lambda x: x * x, True),
    ("log", math.log, True),
    ("negate", lambda x: -x, False),
    ("reciprocal", lambda x: 1.0 / x, False),
)


def _vectors_monotone_transport(samples: int, seed: int) -> dict:
    rng = _rng(seed, "monotone-transport")
    kind = "vectors.monotone_transport"
    inp = {"samples": samples, "seed": seed}
    per_fn = max(1, samples // len(_TRANSPORT_FUNCTIONS))
    for name, fn, nondecreasing in _TRANSPORT_FUNCTIONS:
        for _ in range(per_fn):
            m = rng.randint(1, 6)
            n = rng.randint(1, 6)
            v, w = majorized_pair(rng, m, n)
            fv, fw = map_vector(fn, v), map_vector(fn, w)
            ok = (is_ordered_majorized(fv, fw).holds if nondecreasing
                  else is_ordered_majorized(fw, fv).holds)
            if not ok:
                return _record(kind, inp, False, witness={
                    "function": name, "v": list(v), "w": list(w)})
            lo, hi = sorted((m, n))
            ev, ew = embedded_pair(rng, lo, hi)
            if not is_embedded(map_vector(fn, ev), map_vector(fn, ew)).embedded:
                return _record(kind, inp, False, witness={
                    "function": name, "v": list(ev), "w": list(ew),
                    "relation": "embedding"})
    return _record(kind, inp, True)


def _vectors_sorting(samples: int, seed: int) -> dict:
    rng = _rng(seed, "sorting")
    kind = "vectors.sort_permutation"
    inp = {"samples": samples, "seed": seed}
    for _ in range(samples):
        n = rng.randint(1, 8)
        v = tuple(rng.choice([rng.uniform(-5, 5), rng.randint(-3, 3)])
                  for _ in range(n))
        asc = sort_ascending(v)
        if sorted(v) != list(asc) or sort_descending(v) != tuple(reversed(asc)):
            return _record(kind, inp, False, witness={"v": list(v)})
    return _record(kind, inp, True)


# ---------------------------------------------------------------------------
# means suite
# ---------------------------------------------------------------------------

def _means_mean_property(samples: int, seed: int) -> dict:
    kind = "means.mean_property"
    inp = {"samples": samples, "seed": seed}
    for mean, arity in ((PowerMean(3), 2), (PowerMean(-2), 3), (BetaMean(), 3)):
        plan = SamplePlan(arity=arity, count=samples, seed=seed, lower=0.0, upper=10.0)
        report = check_mean_property(mean, plan)
        if not report.passed:
            return _record(kind, inp, False, witness=report.counterexample)
    # a non-mean must be caught
    pair_sum = DerivedMean(name="pair_sum", fn=lambda sv: sv[0] + sv[1], arity=2)
    caught = check_mean_property(pair_sum, SamplePlan(arity=2, count=samples, seed=seed,
                                                      lower=0.0, upper=10.0))
    if caught.passed:
        return _record(kind, inp, False,
                       witness={"detail": "sum of two entries passed as a mean"})
    return _record(kind, inp, True)


def _means_order_monotonicity(samples: int, seed: int) -> dict:
    rng = _rng(seed, "order-monotonicity")
    kind = "means.power_order_monotonicity"
    inp = {"samples": samples, "seed": seed}
    for _ in range(samples):
        s, t = sorted((rng.uniform(-6, 6), rng.uniform(-6, 6)))
        v = _uniform_vector(rng, rng.randint(2, 5), 0.01, 100.0)
        a, b = power_mean(s, v), power_mean(t, v)
        # noise model: rounding amplified by 1/|order| near the geometric cutoff
        noise = sum(2e-15 / max(abs(u), 1e-9) for u in (s, t))
        if a > b + (1e-12 + noise) * max(1.0, abs(b)):
            return _record(kind, inp, False, witness={
                "s": s, "t": t, "vector": list(v), "lower": a, "upper": b})
    return _record(kind, inp, True)


def _means_geometric_continuity(samples: int, seed: int) -> dict:
    rng = _rng(seed, "geometric-continuity")
    kind = "means.geometric_continuity"
    inp = {"samples": samples, "seed": seed}
    worst = 0.0
    for _ in range(samples):
        v = _uniform_vector(rng, rng.randint(2, 5), 0.01, 100.0)
        g = power_mean(0.0, v)
        for s in (1e-6, -1e-6):
            gap = abs(power_mean(s, v) - g) / abs(g)
            worst = max(worst, gap)
            if gap > 1e-4:
                return _record(kind, inp, False, residual=gap,
                               witness={"order": s, "vector": list(v)})
    return _record(kind, inp, True, residual=worst)


def _means_beta_harmonic(samples: int, seed: int) -> dict:
    rng = _rng(seed, "beta-harmonic")
    kind = "means.beta_harmonic_identity"
    inp = {"samples": samples, "seed": seed}
    worst = 0.0
    for _ in range(samples):
        v = _uniform_vector(rng, 2, 0.01, 100.0)
        b, h = beta_mean(v), power_mean(-1.0, v)
        gap = abs(b - h) / abs(h)
        worst = max(worst, gap)
        if gap > 1e-12:
            return _record(kind, inp, False, residual=gap, witness={"vector": list(v)})
    return _record(kind, inp, True, residual=worst)


def _means_outer_strictness(samples: int, seed: int) -> dict:
    rng = _rng(seed, "outer-strictness")
    kind = "means.outer_strict_monotonicity"
    inp = {"samples": samples, "seed": seed}
    per_outer = max(1, samples // len(_COMPARISON_OUTERS))
    for outer in _COMPARISON_OUTERS:
        for _ in range(per_outer):
            n = rng.randint(2, 5)
            v = list(_uniform_vector(rng, n, 0.5, 100.0))
            base = eval_outer(outer, v)
            i = rng.randrange(n)
            v[i] += max(1e-3, 1e-3 * v[i])
            if not eval_outer(outer, v) > base:
                return _record(kind, inp, False, witness={
                    "outer": str(outer), "vector": list(v), "coordinate": i})
    return _record(kind, inp, True)


def _means_symmetry(samples: int, seed: int) -> dict:
    rng = _rng(seed, "symmetry")
    kind = "means.permutation_symmetry"
    inp = {"samples": samples, "seed": seed}
    subjects = [PowerMean(2.5), PowerMean(-1.5), PowerMean(0), BetaMean()]
    for _ in range(samples):
        n = rng.randint(2, 6)
        v = _uniform_vector(rng, n, 0.01, 100.0)
        p = list(v)
        rng.shuffle(p)
        for mean in subjects:
            if eval_mean(mean, v) != eval_mean(mean, p):
                return _record(kind, inp, False, witness={
                    "mean": str(mean), "v": list(v), "permuted": p})
        for outer in _COMPARISON_OUTERS:
            if eval_outer(outer, v) != eval_outer(outer, p):
                return _record(kind, inp, False, witness={
                    "outer": str(outer), "v": list(v), "permuted": p})
    return _record(kind, inp, True)


# ---------------------------------------------------------------------------
# pexider suite (scalar solver and implicit means)
# ---------------------------------------------------------------------------

def _pexider_solver_contract(samples: int, seed: int) -> dict:
    kind = "pexider.solver_contract"
    inp = {"samples": samples, "seed": seed}
    worst = 0.0
    for outer, alpha, beta, v in solver_instances(seed, samples):
        if not power_mean_embedded(alpha, beta):
            return _record(kind, inp, False,
                           witness={"detail": "instance generator broke certification",
                                    "alpha": list(alpha), "beta": list(beta)})
        prefix = tuple(power_mean(a, v) for a in alpha)
        target = tuple(power_mean(b, v) for b in beta)
        result = solve_scalar(outer, prefix, target)
        goal = eval_outer(outer, target)
        rel = result.residual / max(1.0, abs(goal))
        worst = max(worst, rel)
        lo, hi = result.bracket
        if result.status != "converged" or not lo <= result.root <= hi or rel > 1e-10:
            return _record(kind, inp, False, residual=rel, witness={
                "outer": str(outer), "alpha": list(alpha), "beta": list(beta),
                "vector": list(v), "root": result.root, "bracket": [lo, hi],
                "status": result.status})
    return _record(kind, inp, True, residual=worst)


def _pexider_strict_separation(samples: int, seed: int) -> dict:
    kind = "pexider.root_strict_separation"
    inp = {"samples": samples, "seed": seed}
    for outer, alpha, beta, v in solver_instances(seed + 1, samples):
        prefix = tuple(power_mean(a, v) for a in alpha)
        target = tuple(power_mean(b, v) for b in beta)
        result = solve_scalar(outer, prefix, target)
        lo, hi = result.bracket
        delta = 10.0 * DEFAULT_TOL * max(abs(lo), abs(hi))
        if result.root - delta <= 0.0:
            continue  # probe would leave the positive domain
        fill = len(beta) - len(alpha)
        goal = eval_outer(outer, target)
        below = eval_outer(outer, prefix + (result.root - delta,) * fill)
        above = eval_outer(outer, prefix + (result.root + delta,) * fill)
        if not below < goal < above:
            return _record(kind, inp, False, witness={
                "outer": str(outer), "vector": list(v), "root": result.root,
                "below": below, "goal": goal, "above": above})
    return _record(kind, inp, True)


def _pexider_mean_property(samples: int, seed: int) -> dict:
    rng = _rng(seed, "implicit-mean-property")
    kind = "pexider.implicit_mean_property"
    inp = {"samples": samples, "seed": seed}
    for outer in (Sum(), Product()):
        derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, outer)
        plan = SamplePlan(arity=rng.choice((2, 3, 5)), count=max(1, samples // 2),
                          seed=seed)
        for v in sample_vectors(plan):
            value = eval_mean(derived, v)
            targets = [eval_mean(b, v) for b in EXAMPLE_BIG]
            if not min(targets) <= value <= max(targets):
                return _record(kind, inp, False, witness={
                    "outer": str(outer), "vector": list(v), "value": value,
                    "targets": targets})
    return _record(kind, inp, True)


def _pexider_symmetry(samples: int, seed: int) -> dict:
    rng = _rng(seed, "implicit-symmetry")
    kind = "pexider.implicit_symmetry"
    inp = {"samples": samples, "seed": seed}
    derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, Sum())
    for _ in range(max(1, samples // 2)):
        v = _uniform_vector(rng, rng.randint(2, 5), 0.5, 100.0)
        p = list(v)
        rng.shuffle(p)
        if eval_mean(derived, v) != eval_mean(derived, p):
            return _record(kind, inp, False, witness={"v": list(v), "permuted": p})
    return _record(kind, inp, True)


def _pexider_oracles(samples: int, seed: int) -> dict:
    kind = "pexider.closed_form_oracles"
    inp = {"samples": samples, "seed": seed}
    worst = 0.0
    cases = ((Sum(), closed_form_sum_mean), (Product(), closed_form_prod_mean))
    for arity in (2, 3, 5):
        plan = SamplePlan(arity=arity, count=max(1, samples // 3), seed=seed)
        for outer, oracle in cases:
            derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, outer)
            for v in sample_vectors(plan):
                got = eval_mean(derived, v)
                want = oracle(v)
                rel = abs(got - want) / abs(want)
                worst = max(worst, rel)
                if rel > 1e-9:
                    return _record(kind, inp, False, residual=rel, witness={
                        "outer": str(outer), "vector": list(v),
                        "solver": got, "oracle": want})
    return _record(kind, inp, True, residual=worst)


def _pexider_sandwich(samples: int, seed: int) -> dict:
    kind = "pexider.power_mean_sandwich"
    inp = {"samples": samples, "seed": seed}
    for outer in (Sum(), Product()):
        derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, outer)
        plan = SamplePlan(arity=3, count=max(1, samples // 2), seed=seed)
        for v in sample_vectors(plan):
            value = eval_mean(derived, v)
            lo, hi = power_mean(-2, v), power_mean(3, v)
            slack = 1e-12 * max(1.0, abs(hi))
            if not lo - slack <= value <= hi + slack:
                return _record(kind, inp, False, witness={
                    "outer": str(outer), "vector": list(v), "value": value,
                    "low": lo, "high": hi})
    return _record(kind, inp, True)


def _pexider_beta_identity(samples: int, seed: int) -> dict:
    kind = "pexider.beta_identity"
    inp = {"samples": samples, "seed": seed}
    outer = MeanOuter(PowerMean(0))
    worst = 0.0
    for arity in (2, 3, 4, 6):
        derived = generalized_beta_mean(PowerMean(1), outer, arity)
        plan = SamplePlan(arity=arity, count=max(1, samples // 4), seed=seed)
        for v in sample_vectors(plan):
            got = eval_mean(derived, v)
            want = beta_mean(v)
            rel = abs(got - want) / abs(want)
            worst = max(worst, rel)
            if rel > 1e-10:
                return _record(kind, inp, False, residual=rel,
                               witness={"arity": arity, "vector": list(v),
                                        "solver": got, "direct": want})
    return _record(kind, inp, True, residual=worst)


def _pexider_comparability(samples: int, seed: int) -> dict:
    rng = _rng(seed, "comparability")
    kind = "pexider.comparability"
    inp = {"samples": samples, "seed": seed}
    pairs = max(1, samples // 10)
    for _ in range(pairs):
        n = rng.randint(2, 4)
        m = rng.randint(1, n - 1)
        sigma, beta, sigma_star, beta_star = comparability_quadruple(rng, m, n)
        small = tuple(PowerMean(s) for s in sigma)
        big = tuple(PowerMean(b) for b in beta)
        small_star = tuple(PowerMean(s) for s in sigma_star)
        big_star = tuple(PowerMean(b) for b in beta_star)
        plan = SamplePlan(arity=rng.choice((2, 3)), count=5,
                          seed=rng.randrange(2 ** 32))
        for outer in (Sum(), Product()):
            report = compare_implicit_means(small, big, small_star, big_star,
                                            outer, plan)
            if not report.passed:
                return _record(kind, inp, False, witness={
                    "outer": str(outer), "sigma": list(sigma), "beta": list(beta),
                    "sigma_star": list(sigma_star), "beta_star": list(beta_star),
                    "counterexample": report.counterexample})
    return _record(kind, inp, True)


# ---------------------------------------------------------------------------
# invariance suite
# ---------------------------------------------------------------------------

def _invariance_geometric(samples: int, seed: int) -> dict:
    kind = "invariance.arithmetic_harmonic_geometric"
    inp = {"samples": samples, "seed": seed}
    compound = invariant_mean((PowerMean(1), PowerMean(-1)))
    plan = SamplePlan(arity=2, count=samples, seed=seed)
    worst = 0.0
    for v in sample_vectors(plan):
        got = eval_mean(compound, v)
        want = power_mean(0.0, v)
        rel = abs(got - want) / abs(want)
        worst = max(worst, rel)
        if rel > 1e-10:
            return _record(kind, inp, False, residual=rel,
                           witness={"vector": list(v), "limit": got, "geometric": want})
    return _record(kind, inp, True, residual=worst)


def _invariance_complementary(samples: int, seed: int) -> dict:
    rng = _rng(seed, "complementary")
    kind = "invariance.complementary_residual"
    inp = {"samples": samples, "seed": seed}
    families = 4
    per_family = max(1, samples // families)
    for _ in range(families):
        n = rng.randint(2, 3)
        family = tuple(PowerMean(round(rng.uniform(-3, 3), 3)) for _ in range(n))
        m = rng.randint(1, n - 1)
        asc = sorted(p.order for p in family)
        small = tuple(PowerMean(asc[i]) for i in sorted(rng.sample(range(n), m)))
        complement = complementary_mean(small, family)
        invariant = invariant_mean(family)
        extended = small + (complement,) * (n - m)
        plan = SamplePlan(arity=n, count=per_family, seed=rng.randrange(2 ** 32))
        report = verify_invariance(invariant, extended, plan, tol=1e-8)
        if not report.passed:
            return _record(kind, inp, False, residual=report.max_residual,
                           witness=report.counterexample)
    return _record(kind, inp, True)


def _invariance_limit_range(samples: int, seed: int) -> dict:
    rng = _rng(seed, "limit-range")
    kind = "invariance.limit_within_range"
    inp = {"samples": samples, "seed": seed}
    for _ in range(samples):
        n = rng.randint(2, 4)
        family = tuple(PowerMean(rng.uniform(-4, 4)) for _ in range(n))
        v = _uniform_vector(rng, n, 0.01, 100.0)
        trace = gauss_iterate(family, v)
        slack = 1e-12 * max(1.0, max(v))
        if not (trace.converged and min(v) - slack <= trace.limit <= max(v) + slack):
            return _record(kind, inp, False, witness={
                "family": [str(f) for f in family], "vector": list(v),
                "limit": trace.limit, "converged": trace.converged})
    return _record(kind, inp, True)


def _invariance_symmetry(samples: int, seed: int) -> dict:
    rng = _rng(seed, "iteration-symmetry")
    kind = "invariance.limit_symmetry"
    inp = {"samples": samples, "seed": seed}
    compound = invariant_mean((PowerMean(1), PowerMean(0)))
    for _ in range(samples):
        v = _uniform_vector(rng, 2, 0.01, 100.0)
        p = tuple(reversed(v))
        if eval_mean(compound, v) != eval_mean(compound, p):
            return _record(kind, inp, False, witness={"v": list(v)})
    return _record(kind, inp, True)


def _invariance_convergence(samples: int, seed: int) -> dict:
    rng = _rng(seed, "pair-convergence")
    kind = "invariance.power_pair_convergence"
    inp = {"samples": samples, "seed": seed}
    worst = 0
    for _ in range(samples):
        s, t = rng.uniform(-5, 5), rng.uniform(-5, 5)
        v = _uniform_vector(rng, 2, 0.01, 100.0)
        trace = gauss_iterate((PowerMean(s), PowerMean(t)), v)
        worst = max(worst, trace.iterations)
        if not trace.converged or trace.iterations > 200:
            return _record(kind, inp, False, witness={
                "orders": [s, t], "vector": list(v),
                "iterations": trace.iterations})
    return _record(kind, inp, True, residual=float(worst))


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------

_SUITES = {
    "vectors": (
        _vectors_duality,
        _vectors_reflexive_transitive,
        _vectors_permutation,
        _vectors_monotone_comparison,
        _vectors_monotone_transport,
        _vectors_sorting,
    ),
    "means": (
        _means_mean_property,
        _means_order_monotonicity,
        _means_geometric_continuity,
        _means_beta_harmonic,
        _means_outer_strictness,
        _means_symmetry,
    ),
    "pexider": (
        _pexider_solver_contract,
        _pexider_strict_separation,
        _pexider_mean_property,
        _pexider_symmetry,
        _pexider_oracles,
        _pexider_sandwich,
        _pexider_beta_identity,
        _pexider_comparability,
    ),
    "invariance": (
        _invariance_geometric,
        _invariance_complementary,
        _invariance_limit_range,
        _invariance_symmetry,
        _invariance_convergence,
    ),
}


def run_suite(suite: str, samples: int = 200, seed: int = 0) -> list[dict]:
    """Run one named suite (or ``all``); records come back in a fixed order."""
    if suite == "all":
        names = list(SUITE_NAMES)
    elif suite in _SUITES:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; "
                         f"choose from {', '.join(SUITE_NAMES)} or all")
    records = []
    for name in names:
        for prop in _SUITES[name]:
            records.append(prop(samples, seed))
    return records
