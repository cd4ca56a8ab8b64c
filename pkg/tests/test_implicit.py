import math
import random

import pytest

from meanforge import (
    ArityError,
    GeneralizedBetaMean,
    HypothesisViolation,
    MeanOuter,
    PowerMean,
    PowerSum,
    Product,
    SamplePlan,
    Sum,
    beta_mean,
    compare_implicit_means,
    eval_mean,
    eval_outer,
    generalized_beta_mean,
    implicit_mean,
    power_mean,
    power_mean_embedded,
    solve_scalar,
    verify_embedding,
)
from meanforge.checks import (
    EXAMPLE_BIG,
    EXAMPLE_SMALL,
    closed_form_prod_mean,
    closed_form_sum_mean,
    comparability_quadruple,
    solver_instances,
)

# frozen from the closed forms evaluated independently of the solver
M1_AT_1_4 = 1.8738824415736874
M2_AT_1_4 = 1.7330699451428968


class TestSolveScalar:
    def test_sum_cancellation(self):
        # sum outer with prefix (w1): x must equal w2
        result = solve_scalar(Sum(), (7.0,), (7.0, 3.0))
        assert result.status == "converged"
        assert result.root == pytest.approx(3.0, rel=1e-12)

    def test_constant_target(self):
        result = solve_scalar(Sum(), (5.0, 5.0), (5.0, 5.0, 5.0))
        assert result.status == "converged"
        assert result.root == 5.0
        assert result.iterations == 0

    def test_worked_example_sum(self):
        v = (1.0, 4.0)
        prefix = tuple(power_mean(s, v) for s in (0, 2))
        target = tuple(power_mean(s, v) for s in (-2, -1, 1, 3))
        result = solve_scalar(Sum(), prefix, target)
        assert result.root == pytest.approx(M1_AT_1_4, rel=1e-9)
        lo, hi = result.bracket
        assert lo <= result.root <= hi

    def test_worked_example_product(self):
        v = (1.0, 4.0)
        prefix = tuple(power_mean(s, v) for s in (0, 2))
        target = tuple(power_mean(s, v) for s in (-2, -1, 1, 3))
        result = solve_scalar(Product(), prefix, target)
        assert result.root == pytest.approx(M2_AT_1_4, rel=1e-9)

    def test_violated_embedding_raises(self):
        # prefix above max(target): no solution is guaranteed
        with pytest.raises(HypothesisViolation) as err:
            solve_scalar(Sum(), (10.0,), (1.0, 2.0))
        assert err.value.witness["majorized"] is False

    def test_prefix_must_be_shorter(self):
        with pytest.raises(ArityError):
            solve_scalar(Sum(), (1.0, 2.0), (1.0, 2.0))

    def test_residual_and_bracket_contract(self):
        worst = 0.0
        for outer, alpha, beta, v in solver_instances(seed=99, count=500):
            assert power_mean_embedded(alpha, beta)
            prefix = tuple(power_mean(a, v) for a in alpha)
            target = tuple(power_mean(b, v) for b in beta)
            result = solve_scalar(outer, prefix, target)
            assert result.status == "converged"
            lo, hi = result.bracket
            assert lo <= result.root <= hi
            goal = eval_outer(outer, target)
            worst = max(worst, result.residual / max(1.0, abs(goal)))
        assert worst <= 1e-10

    def test_strict_monotonicity_around_root(self):
        rng = random.Random(4)
        for outer in (Sum(), Product(), PowerSum(3)):
            for _ in range(50):
                v = tuple(rng.uniform(0.5, 100.0) for _ in range(3))
                prefix = (power_mean(0, v),)
                target = tuple(power_mean(s, v) for s in (-1, 1, 2))
                result = solve_scalar(outer, prefix, target)
                lo, hi = result.bracket
                delta = 10.0 * 1e-12 * max(abs(lo), abs(hi))
                goal = eval_outer(outer, target)
                below = eval_outer(outer, prefix + (result.root - delta,) * 2)
                above = eval_outer(outer, prefix + (result.root + delta,) * 2)
                assert below < goal < above

    def test_small_values_keep_relative_accuracy(self):
        # bracket spanning five orders of magnitude must still localize a
        # root sitting near its tiny end to relative precision
        v = (1e-3, 1e-3, 90.0)
        arithmetic = power_mean(1, v)
        result = solve_scalar(MeanOuter(PowerMean(0)), (arithmetic,), v)
        # geometric outer closed form: root = sqrt(prod(v) / arithmetic)
        exact = math.sqrt(v[0] * v[1] * v[2] / arithmetic)
        assert exact < 2e-3  # genuinely near the bottom of [1e-3, 90]
        assert result.root == pytest.approx(exact, rel=1e-10)


class TestImplicitMean:
    def test_matches_closed_forms(self):
        rng = random.Random(21)
        for outer, oracle in ((Sum(), closed_form_sum_mean),
                              (Product(), closed_form_prod_mean)):
            derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, outer)
            for k in (2, 3, 5):
                for _ in range(30):
                    v = tuple(rng.uniform(0.01, 100.0) for _ in range(k))
                    assert eval_mean(derived, v) == pytest.approx(oracle(v), rel=1e-9)

    def test_constant_vector(self):
        derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, Sum())
        assert eval_mean(derived, (3.0, 3.0, 3.0)) == 3.0

    def test_symmetric(self):
        derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, Product())
        assert eval_mean(derived, (1.0, 4.0, 9.0)) == eval_mean(derived, (9.0, 1.0, 4.0))

    def test_bounded_by_targets(self):
        derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, Sum())
        rng = random.Random(3)
        for _ in range(100):
            v = tuple(rng.uniform(0.01, 100.0) for _ in range(3))
            value = eval_mean(derived, v)
            targets = [eval_mean(b, v) for b in EXAMPLE_BIG]
            assert min(targets) <= value <= max(targets)

    def test_label_is_problem_text(self):
        derived = implicit_mean(EXAMPLE_SMALL, EXAMPLE_BIG, Sum())
        assert str(derived) == "T{mu=sum; S=[P[0],P[2]]; M=[P[-2],P[-1],P[1],P[3]]}"

    def test_size_validation(self):
        with pytest.raises(ArityError):
            implicit_mean(EXAMPLE_BIG, EXAMPLE_SMALL, Sum())


class TestGeneralizedBeta:
    def test_reproduces_beta_mean(self):
        outer = MeanOuter(PowerMean(0))
        rng = random.Random(8)
        for k in (2, 3, 4, 6):
            derived = generalized_beta_mean(PowerMean(1), outer, k)
            for _ in range(40):
                v = tuple(rng.uniform(0.01, 100.0) for _ in range(k))
                assert eval_mean(derived, v) == pytest.approx(beta_mean(v), rel=1e-10)

    def test_harmonic_case(self):
        derived = generalized_beta_mean(PowerMean(1), MeanOuter(PowerMean(0)), 2)
        assert eval_mean(derived, (2.0, 8.0)) == pytest.approx(3.2, rel=1e-12)

    def test_constant(self):
        derived = generalized_beta_mean(PowerMean(1), MeanOuter(PowerMean(0)), 3)
        assert eval_mean(derived, (5.0, 5.0, 5.0)) == 5.0

    def test_ast_node_agrees_with_handle(self):
        node = GeneralizedBetaMean(PowerMean(1), MeanOuter(PowerMean(0)))
        handle = generalized_beta_mean(PowerMean(1), MeanOuter(PowerMean(0)), 3)
        v = (1.0, 2.0, 5.0)
        assert eval_mean(node, v) == pytest.approx(eval_mean(handle, v), rel=1e-12)

    def test_arity_validation(self):
        with pytest.raises(ArityError):
            generalized_beta_mean(PowerMean(1), MeanOuter(PowerMean(0)), 1)


class TestExponentRule:
    def test_worked_exponents(self):
        assert power_mean_embedded((0, 2), (-2, -1, 1, 3))

    def test_equal_vectors(self):
        assert power_mean_embedded((-2, -1, 1, 3), (-2, -1, 1, 3))

    def test_exponent_above_range(self):
        assert not power_mean_embedded((5,), (-2, -1, 1, 3))


class TestVerifyEmbedding:
    def test_power_families_certified(self):
        report = verify_embedding(EXAMPLE_SMALL, EXAMPLE_BIG)
        assert report.mode == "certified"
        assert report.certificate["rule"] == "power-mean-exponents"
        assert report.certificate["embedded"] is True

    def test_subsequence_certified(self):
        report = verify_embedding(EXAMPLE_BIG[1:3], EXAMPLE_BIG)
        assert report.mode == "certified"
        assert report.certificate["rule"] == "sub-multiset"

    def test_identical_families_certified(self):
        report = verify_embedding(EXAMPLE_BIG, EXAMPLE_BIG)
        assert report.mode == "certified"

    def test_refuted_with_replayable_witness(self):
        report = verify_embedding((PowerMean(5),), EXAMPLE_BIG,
                                  plan=SamplePlan(arity=3, count=64, seed=0))
        assert report.mode == "refuted"
        witness = report.counterexample
        from meanforge import is_embedded
        small_values = [eval_mean(PowerMean(5), witness["vector"])]
        big_values = [eval_mean(b, witness["vector"]) for b in EXAMPLE_BIG]
        assert small_values == pytest.approx(witness["small_values"])
        assert not is_embedded(small_values, big_values).embedded

    def test_mixed_family_sampled_through_ties(self):
        # B at two entries equals the order -1 power mean up to rounding, so
        # the relaxed pointwise check must absorb the ties instead of refuting
        from meanforge import BetaMean
        report = verify_embedding((BetaMean(),), (PowerMean(-1), PowerMean(1)),
                                  plan=SamplePlan(arity=2, count=64, seed=1))
        assert report.mode == "sampled"
        assert report.samples_checked == 64

    def test_longer_prefix_refuted(self):
        report = verify_embedding(EXAMPLE_BIG, EXAMPLE_SMALL,
                                  plan=SamplePlan(arity=2, count=32, seed=2))
        assert report.mode == "refuted"


class TestComparability:
    def test_reflexive_case(self):
        plan = SamplePlan(arity=2, count=30, seed=5)
        report = compare_implicit_means(EXAMPLE_SMALL, EXAMPLE_BIG,
                                        EXAMPLE_SMALL, EXAMPLE_BIG, Sum(), plan)
        assert report.passed
        assert report.max_residual <= 1e-12

    def test_dropped_top_exponent(self):
        # lowering the top target exponent can only lower the implicit mean
        big = EXAMPLE_BIG
        big_star = (PowerMean(-2), PowerMean(-1), PowerMean(1), PowerMean(2))
        small = (PowerMean(0),)
        plan = SamplePlan(arity=3, count=50, seed=6)
        for outer in (Sum(), Product()):
            report = compare_implicit_means(small, big, small, big_star, outer, plan)
            assert report.passed

    def test_constructed_quadruples(self):
        rng = random.Random(17)
        for _ in range(20):
            n = rng.randint(2, 4)
            m = rng.randint(1, n - 1)
            sigma, beta, sigma_star, beta_star = comparability_quadruple(rng, m, n)
            plan = SamplePlan(arity=2, count=10, seed=rng.randrange(2 ** 31))
            report = compare_implicit_means(
                tuple(PowerMean(s) for s in sigma),
                tuple(PowerMean(b) for b in beta),
                tuple(PowerMean(s) for s in sigma_star),
                tuple(PowerMean(b) for b in beta_star),
                Sum(), plan)
            assert report.passed

    def test_violated_precondition_raises(self):
        small = (PowerMean(0),)
        big = EXAMPLE_BIG
        big_bigger = (PowerMean(-2), PowerMean(-1), PowerMean(1), PowerMean(4))
        plan = SamplePlan(arity=2, count=10, seed=7)
        with pytest.raises(HypothesisViolation):
            # claimed big* < big but the star family dominates
            compare_implicit_means(small, big, small, big_bigger, Sum(), plan)
