"""Evaluable mean expressions and outer aggregate functions.

A *mean* maps a vector to a value between its minimum and maximum and is
invariant under permutations of its arguments.  The concrete families here
are power means (geometric at order 0), the Beta-type mean
``(k*v1*...*vk / (v1+...+vk))**(1/(k-1))``, means defined implicitly by a
balance equation (``GeneralizedBetaMean``), and opaque derived means wrapping
a solver- or iteration-produced evaluator.

An *outer* function aggregates a vector symmetrically and strictly
increasingly in each coordinate: sums, products, power sums, quasi-arithmetic
aggregates ``sum(g(x_i))`` over a closed generator catalog, or a strict mean.
Strict per-coordinate growth is what makes the scalar balance equation in
:mod:`meanforge.implicit` uniquely solvable, so variants that would be
decreasing (power exponents <= 0) are rejected at construction.

Permutation invariance is bit-exact: aggregation uses ``math.fsum`` (exactly
rounded, hence order-independent) and any remaining order-sensitive path
sorts its input first.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from decimal import Decimal
from typing import Callable, Optional, Sequence, Union

from .errors import ArityError, DomainError
from .ordering import as_vector
from .sampling import CheckReport, SamplePlan, sample_vectors

__all__ = [
    "Interval",
    "POSITIVE_REALS",
    "PowerMean",
    "BetaMean",
    "GeneralizedBetaMean",
    "DerivedMean",
    "MeanExpr",
    "is_mean_expr",
    "Sum",
    "Product",
    "PowerSum",
    "Generator",
    "QuasiAggregate",
    "MeanOuter",
    "OuterFn",
    "power_mean",
    "beta_mean",
    "eval_mean",
    "eval_outer",
    "declared_arity",
    "assert_strict",
    "check_mean_property",
    "format_number",
]

# Orders below this evaluate through the geometric branch: the 1/s exponent
# amplifies rounding beyond the geometric-limit error.
GEOMETRIC_ORDER_CUTOFF = 1e-9

SYMMETRY_RTOL = 1e-12


def format_number(x: float) -> str:
    """Canonical decimal text for a float: no exponent, round-trips exactly."""
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return format(Decimal(repr(float(x))), "f")


@dataclass(frozen=True)
class Interval:
    """An interval of reals; endpoints may be infinite."""

    lower: float = 0.0
    upper: float = math.inf
    lower_open: bool = True
    upper_open: bool = True

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"empty interval: [{self.lower}, {self.upper}]")

    def contains(self, x: float) -> bool:
        if self.lower_open:
            if not x > self.lower:
                return False
        elif not x >= self.lower:
            return False
        if self.upper_open:
            return x < self.upper
        return x <= self.upper

    def __str__(self) -> str:
        left = "(" if self.lower_open else "["
        right = ")" if self.upper_open else "]"
        return f"{left}{self.lower},{self.upper}{right}"


POSITIVE_REALS = Interval(0.0, math.inf, True, True)


# ---------------------------------------------------------------------------
# mean expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerMean:
    """The power mean of a finite order; order 0 is the geometric mean."""

    order: float

    def __post_init__(self):
        if not math.isfinite(self.order):
            raise DomainError("power-mean order must be finite")

    def __str__(self) -> str:
        return f"P[{format_number(self.order)}]"


@dataclass(frozen=True)
class BetaMean:
    """The Beta-type mean (k*v1*...*vk / sum(v))**(1/(k-1)); needs k >= 2."""

    def __str__(self) -> str:
        return "B"


@dataclass(frozen=True)
class GeneralizedBetaMean:
    """The mean defined by balancing one inner-mean slot against the plain vector.

    Its value at ``v`` is the unique ``x`` with
    ``outer(base(v), x, ..., x) = outer(v)``; evaluation delegates to the
    scalar solver.  With ``base = P[1]`` and ``outer = mean[P[0]]`` this is
    exactly the Beta-type mean.
    """

    base: "MeanExpr"
    outer: "OuterFn"

    def __str__(self) -> str:
        return f"beta{{S={self.base}; mu={self.outer}}}"


@dataclass(frozen=True, eq=False)
class DerivedMean:
    """An opaque mean backed by a callable (solver- or iteration-produced).

    ``fn`` receives an already ascending-sorted tuple, which keeps evaluation
    bit-exactly permutation invariant.  ``strict`` is a caller assertion that
    the mean is strictly increasing in each variable; it gates use as an
    outer function and in mean-type iterations and is never verified.
    Identity equality on purpose: two separately built evaluators are
    distinct objects even if they agree pointwise.
    """

    name: str
    fn: Callable[[tuple[float, ...]], float]
    domain: Interval = POSITIVE_REALS
    arity: Optional[int] = None
    strict: bool = False

    def __str__(self) -> str:
        return self.name


MeanExpr = Union[PowerMean, BetaMean, GeneralizedBetaMean, DerivedMean]

_MEAN_TYPES = (PowerMean, BetaMean, GeneralizedBetaMean, DerivedMean)


def is_mean_expr(obj) -> bool:
    return isinstance(obj, _MEAN_TYPES)


# ---------------------------------------------------------------------------
# outer aggregate functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sum:
    def __str__(self) -> str:
        return "sum"


@dataclass(frozen=True)
class Product:
    """Product of the entries; strictly increasing only on positive values."""

    def __str__(self) -> str:
        return "prod"


@dataclass(frozen=True)
class PowerSum:
    """``sum(x_i**p)`` with p > 0 (p <= 0 would not be strictly increasing)."""

    exponent: float

    def __post_init__(self):
        if not math.isfinite(self.exponent) or self.exponent == 0.0:
            raise DomainError("power-sum exponent must be finite and nonzero")
        if self.exponent < 0.0:
            raise DomainError(
                "power-sum exponent must be positive: a negative exponent is "
                "strictly decreasing in each variable")

    def __str__(self) -> str:
        return f"powsum[{format_number(self.exponent)}]"


_GENERATOR_KINDS = ("log", "exp", "pow", "id")


@dataclass(frozen=True)
class Generator:
    """A named strictly increasing generator from the closed catalog."""

    kind: str
    exponent: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _GENERATOR_KINDS:
            raise DomainError(f"unknown generator {self.kind!r}; "
                              f"expected one of {', '.join(_GENERATOR_KINDS)}")
        if self.kind == "pow":
            if self.exponent is None or not math.isfinite(self.exponent):
                raise DomainError("pow generator needs a finite exponent")
            if self.exponent <= 0.0:
                raise DomainError("pow generator exponent must be positive "
                                  "(nonpositive powers are not increasing)")
        elif self.exponent is not None:
            raise DomainError(f"generator {self.kind!r} takes no exponent")

    def apply(self, x: float) -> float:
        if self.kind == "log":
            if x <= 0.0:
                raise DomainError(f"log generator needs positive input, got {x!r}")
            return math.log(x)
        if self.kind == "exp":
            return math.exp(x)
        if self.kind == "pow":
            if x <= 0.0:
                raise DomainError(f"pow generator needs positive input, got {x!r}")
            return x ** self.exponent
        return x

    def __str__(self) -> str:
        if self.kind == "pow":
            return f"pow[{format_number(self.exponent)}]"
        return self.kind


@dataclass(frozen=True)
class QuasiAggregate:
    """``sum(g(x_i))`` for a catalog generator g."""

    generator: Generator

    def __str__(self) -> str:
        return f"qa[{self.generator}]"


@dataclass(frozen=True)
class MeanOuter:
    """A strict mean used as the outer aggregate.

    Admitted: any finite-order power mean (strictly increasing per coordinate
    on the positive axis) and derived means explicitly asserted strict (e.g.
    invariant means).  Everything else is rejected here because strict
    per-coordinate growth cannot be established for it.
    """

    mean: MeanExpr

    def __post_init__(self):
        ok = isinstance(self.mean, PowerMean) or (
            isinstance(self.mean, DerivedMean) and self.mean.strict)
        if not ok:
            raise DomainError(
                f"{self.mean} is not admissible as an outer function: only "
                "power means and derived means asserted strict are accepted")

    def __str__(self) -> str:
        return f"mean[{self.mean}]"


OuterFn = Union[Sum, Product, PowerSum, QuasiAggregate, MeanOuter]


def declared_arity(outer: OuterFn) -> Optional[int]:
    """The arity an outer function is pinned to, or None when variadic."""
    if isinstance(outer, MeanOuter) and isinstance(outer.mean, DerivedMean):
        return outer.mean.arity
    return None


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _positive(v: tuple[float, ...], what: str) -> tuple[float, ...]:
    for x in v:
        if x <= 0.0:
            raise DomainError(f"{what} needs positive entries, got {x!r}")
    return v


def power_mean(order: float, entries: Sequence[float]) -> float:
    """((x1**s + ... + xn**s)/n)**(1/s); geometric mean when s ~ 0.

    Entries are normalized by max(v) for positive orders and min(v) for
    negative ones so every power stays in [0, 1] and cannot overflow.
    """
    if not math.isfinite(order):
        raise DomainError("power-mean order must be finite")
    v = _positive(as_vector(entries), "power mean")
    lo, hi = min(v), max(v)
    if lo == hi:
        return lo
    if abs(order) < GEOMETRIC_ORDER_CUTOFF:
        return math.exp(math.fsum(map(math.log, v)) / len(v))
    anchor = hi if order > 0.0 else lo
    mean_power = math.fsum((x / anchor) ** order for x in v) / len(v)
    return anchor * mean_power ** (1.0 / order)


def beta_mean(entries: Sequence[float]) -> float:
    """(k * v1*...*vk / (v1+...+vk))**(1/(k-1)) on positive entries, k >= 2."""
    v = _positive(as_vector(entries), "Beta-type mean")
    k = len(v)
    if k < 2:
        raise ArityError("Beta-type mean needs at least 2 entries "
                         "(the exponent 1/(k-1) is undefined for k=1)")
    sv = sorted(v)
    lo, hi = sv[0], sv[-1]
    if lo == hi:
        return lo
    total = math.fsum(sv)
    prod = math.prod(sv)
    if prod == 0.0 or math.isinf(prod):
        # product under/overflowed: same value through logarithms
        log_value = (math.log(k) + math.fsum(map(math.log, sv))
                     - math.log(total)) / (k - 1)
        return math.exp(log_value)
    return (k * prod / total) ** (1.0 / (k - 1))


def check_interval(domain: Interval, v: Sequence[float], what: str = "value") -> None:
    for x in v:
        if not domain.contains(x):
            raise DomainError(f"{what} {x!r} outside domain {domain}")


def eval_mean(mean: MeanExpr, entries: Sequence[float]) -> float:
    """Evaluate a mean expression at a vector."""
    v = as_vector(entries)
    if isinstance(mean, PowerMean):
        return power_mean(mean.order, v)
    if isinstance(mean, BetaMean):
        return beta_mean(v)
    if isinstance(mean, GeneralizedBetaMean):
        from . import implicit  # deferred: implicit builds on this module
        return implicit.generalized_beta_value(mean.base, mean.outer, v)
    if isinstance(mean, DerivedMean):
        if mean.arity is not None and len(v) != mean.arity:
            raise ArityError(f"{mean.name} takes {mean.arity} entries, got {len(v)}")
        check_interval(mean.domain, v, "entry")
        return mean.fn(tuple(sorted(v)))
    raise TypeError(f"not a mean expression: {mean!r}")


def eval_outer(outer: OuterFn, entries: Sequence[float]) -> float:
    """Evaluate an outer aggregate at a vector (bit-exactly symmetric)."""
    v = as_vector(entries)
    n = declared_arity(outer)
    if n is not None and len(v) != n:
        raise ArityError(f"{outer} takes {n} entries, got {len(v)}")
    sv = tuple(sorted(v))
    if isinstance(outer, Sum):
        return math.fsum(sv)
    if isinstance(outer, Product):
        _positive(sv, "product outer")
        return math.prod(sv)
    if isinstance(outer, PowerSum):
        _positive(sv, "power-sum outer")
        return math.fsum(x ** outer.exponent for x in sv)
    if isinstance(outer, QuasiAggregate):
        return math.fsum(outer.generator.apply(x) for x in sv)
    if isinstance(outer, MeanOuter):
        return eval_mean(outer.mean, sv)
    raise TypeError(f"not an outer function: {outer!r}")


def assert_strict(mean: MeanExpr, name: Optional[str] = None) -> MeanExpr:
    """Wrap a mean with the caller's assertion that it is strict.

    Power and Beta means pass through unchanged (strict by construction);
    anything else is wrapped into a :class:`DerivedMean` with ``strict=True``
    so it becomes admissible in mean-type iterations and as an outer mean.
    The assertion itself is not checked.
    """
    if isinstance(mean, (PowerMean, BetaMean)):
        return mean
    if isinstance(mean, DerivedMean) and mean.strict:
        return mean
    label = name if name is not None else str(mean)
    if isinstance(mean, DerivedMean):
        return DerivedMean(name=label, fn=mean.fn, domain=mean.domain,
                           arity=mean.arity, strict=True)
    return DerivedMean(name=label, fn=lambda sv, _m=mean: eval_mean(_m, sv),
                       strict=True)


def check_mean_property(mean: MeanExpr, plan: SamplePlan) -> CheckReport:
    """Sampled check that ``mean`` stays within [min, max] and is symmetric.

    Bounds are tested with 1e-12 relative slack (the evaluation itself can
    exceed an extreme entry by a few ulp on near-constant input); symmetry
    with 1e-12 relative tolerance, which built-in means beat bit-exactly.
    """
    perm_rng = random.Random(plan.seed ^ 0x5DEECE66D)
    worst = 0.0
    for index, v in enumerate(sample_vectors(plan)):
        value = eval_mean(mean, v)
        lo, hi = min(v), max(v)
        slack = SYMMETRY_RTOL * max(1.0, abs(lo), abs(hi))
        if not (lo - slack <= value <= hi + slack):
            return CheckReport(False, index + 1, counterexample={
                "vector": list(v), "value": value, "min": lo, "max": hi,
                "violated": "mean property"})
        shuffled = list(v)
        perm_rng.shuffle(shuffled)
        other = eval_mean(mean, shuffled)
        gap = abs(other - value)
        worst = max(worst, gap)
        if gap > SYMMETRY_RTOL * max(1.0, abs(value)):
            return CheckReport(False, index + 1, counterexample={
                "vector": list(v), "permuted": shuffled, "value": value,
                "permuted_value": other, "violated": "symmetry"})
    return CheckReport(True, plan.count, max_residual=worst)
