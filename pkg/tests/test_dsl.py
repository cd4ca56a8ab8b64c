import random

import pytest
from hypothesis import given, settings, strategies as st

from meanforge import (
    ArityError,
    BetaMean,
    DomainError,
    GeneralizedBetaMean,
    Generator,
    MeanForgeError,
    MeanOuter,
    ParseError,
    PowerMean,
    PowerSum,
    ProblemSpec,
    Product,
    QuasiAggregate,
    Sum,
    eval_mean,
    format_expr,
    invariant_mean,
    parse,
    parse_mean,
    parse_mean_list,
    parse_outer,
)
from meanforge.dsl import is_valid_name


class TestParsing:
    def test_power_mean(self):
        assert parse("P[2]") == PowerMean(2.0)
        assert parse(" P [ -2.5 ] ") == PowerMean(-2.5)

    def test_beta(self):
        assert parse("B") == BetaMean()

    def test_generalized_beta(self):
        node = parse("beta{S=P[1]; mu=mean[P[0]]}")
        assert node == GeneralizedBetaMean(PowerMean(1.0), MeanOuter(PowerMean(0.0)))

    def test_outers(self):
        assert parse("sum") == Sum()
        assert parse("prod") == Product()
        assert parse("powsum[3]") == PowerSum(3.0)
        assert parse("qa[log]") == QuasiAggregate(Generator("log"))
        assert parse("qa[pow[2.5]]") == QuasiAggregate(Generator("pow", 2.5))
        assert parse_outer("mean[P[2]]") == MeanOuter(PowerMean(2.0))

    def test_problem(self):
        spec = parse("T{mu=sum; S=[P[0],P[2]]; M=[P[-2],P[-1],P[1],P[3]]}")
        assert isinstance(spec, ProblemSpec)
        assert spec.outer == Sum()
        assert spec.small == (PowerMean(0.0), PowerMean(2.0))
        assert spec.big == (PowerMean(-2.0), PowerMean(-1.0),
                            PowerMean(1.0), PowerMean(3.0))

    def test_mean_list(self):
        assert parse_mean_list("[P[1], B]") == (PowerMean(1.0), BetaMean())

    def test_registry_idents(self):
        named = invariant_mean((PowerMean(1), PowerMean(-1)))
        registry = {"agh": named}
        assert parse("agh", registry) is named
        assert eval_mean(parse_mean("agh", registry), (2, 8)) == pytest.approx(4.0)

    def test_unknown_ident(self):
        with pytest.raises(ParseError, match="unknown mean name"):
            parse("mystery")


class TestErrorKinds:
    def test_syntax_error_has_position(self):
        with pytest.raises(ParseError) as err:
            parse("P[2")
        assert err.value.line == 1 and err.value.column == 4
        assert err.value.expected

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse("P[2] extra")

    def test_arity_mismatch_is_distinct(self):
        with pytest.raises(ArityError):
            parse("T{mu=sum; S=[P[0],P[2],P[5]]; M=[P[1],P[3]]}")

    def test_domain_violation_is_distinct(self):
        with pytest.raises(DomainError):
            parse("powsum[0]")
        with pytest.raises(DomainError):
            parse("qa[pow[-2]]")
        with pytest.raises(DomainError):
            parse("mean[B]")

    def test_unexpected_character(self):
        with pytest.raises(ParseError):
            parse("P[2]@")

    def test_number_needs_digits_after_dot(self):
        with pytest.raises(ParseError):
            parse("P[2.]")


# -- structural round-trip ----------------------------------------------------

nice_orders = st.one_of(
    st.integers(-9, 9).map(float),
    st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False),
)
positive_exponents = st.floats(min_value=0.1, max_value=20,
                               allow_nan=False, allow_infinity=False)

generators = st.one_of(
    st.sampled_from([Generator("log"), Generator("exp"), Generator("id")]),
    positive_exponents.map(lambda p: Generator("pow", p)),
)

base_means = st.one_of(nice_orders.map(PowerMean), st.just(BetaMean()))


def outer_strategy(means):
    return st.one_of(
        st.just(Sum()),
        st.just(Product()),
        positive_exponents.map(PowerSum),
        generators.map(QuasiAggregate),
        nice_orders.map(lambda s: MeanOuter(PowerMean(s))),
    )


mean_exprs = st.recursive(
    base_means,
    lambda children: st.builds(GeneralizedBetaMean, children, outer_strategy(children)),
    max_leaves=4,
)

problems = st.builds(
    lambda outer, means, split: ProblemSpec(
        outer=outer, small=tuple(means[:split]), big=tuple(means[split:])),
    outer_strategy(base_means),
    st.lists(base_means, min_size=3, max_size=8),
    st.integers(1, 1),
).filter(lambda p: len(p.small) < len(p.big))

expressions = st.one_of(mean_exprs, outer_strategy(base_means), problems)


class TestRoundTrip:
    @given(expressions)
    def test_parse_format_identity(self, expr):
        assert parse(format_expr(expr)) == expr

    def test_worked_example_round_trip(self):
        text = "T{mu=sum; S=[P[0],P[2]]; M=[P[-2],P[-1],P[1],P[3]]}"
        spec = parse(text)
        assert parse(format_expr(spec)) == spec
        assert format_expr(spec) == text

    def test_registered_name_round_trip(self):
        named = invariant_mean((PowerMean(1), PowerMean(0)))
        import dataclasses
        named = dataclasses.replace(named, name="agm")
        registry = {"agm": named}
        assert parse(format_expr(named), registry) is named


class TestTotality:
    @settings(max_examples=300)
    @given(st.binary(max_size=40))
    def test_random_bytes_never_crash(self, blob):
        text = blob.decode("utf-8", errors="replace")
        try:
            parse(text)
        except MeanForgeError:
            pass  # structured rejection is the contract

    def test_mutated_grammar_text(self):
        rng = random.Random(123)
        seed_text = "T{mu=sum; S=[P[0],P[2]]; M=[P[-2],P[-1],P[1],P[3]]}"
        alphabet = seed_text + "xz!9"
        for _ in range(2000):
            chars = list(seed_text)
            for _ in range(rng.randint(1, 5)):
                pos = rng.randrange(len(chars))
                chars[pos] = rng.choice(alphabet)
            try:
                parse("".join(chars))
            except MeanForgeError:
                pass


class TestNames:
    def test_valid_names(self):
        assert is_valid_name("agm2")
        assert is_valid_name("_k")

    def test_reserved_and_malformed(self):
        for bad in ("P", "beta", "sum", "mu", "2ab", "a-b", ""):
            assert not is_valid_name(bad)
