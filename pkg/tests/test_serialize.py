import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicdist.distalg import Distribution
from padicdist.groupmodel import GroupModel
from padicdist.mahler import FunctionSpec, mahler_coeffs
from padicdist.padic import NormValue, PadicScalar
from padicdist.serialize import (
    ParseError,
    format_normvalue,
    format_scalar,
    parse_distribution,
    parse_mahler,
    parse_normvalue,
    parse_scalar,
    serialize_distribution,
    serialize_mahler,
)

P = 5


class TestScalarFormat:
    @given(st.integers(-10**8, 10**8), st.integers(2, 20))
    def test_int_round_trip(self, x, prec):
        c = PadicScalar.from_int(P, x, prec)
        back = parse_scalar(P, format_scalar(c))
        assert back.same_value(c) and back.window == c.window

    @given(
        st.integers(-1000, 1000),
        st.integers(1, 1000).filter(lambda d: d % P != 0),
    )
    def test_fraction_round_trip(self, num, den):
        c = PadicScalar.from_fraction(P, Fraction(num, den), 14)
        back = parse_scalar(P, format_scalar(c))
        assert back.same_value(c)

    def test_zero_form(self):
        assert format_scalar(PadicScalar.zero(P, 9)) == "9:0:9"

    def test_negative_valuation(self):
        c = PadicScalar.from_fraction(P, Fraction(1, P * P), 10)
        text = format_scalar(c)
        assert text.startswith("-2:")
        assert parse_scalar(P, text).same_value(c)

    @pytest.mark.parametrize(
        "bad",
        ["", "1:2", "1:2:3:4", "a:b:c", "0:5:12", "12:0:3", "13:1:12", "1:0:2"],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_scalar(P, bad)


class TestNormValueFormat:
    def test_round_trips(self):
        for b in (NormValue(Fraction(3, 2)), NormValue(0), NormValue(-2),
                  NormValue.zero(), NormValue.unbounded()):
            assert parse_normvalue(format_normvalue(b)).exponent == b.exponent

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_normvalue("q^3")


def _random_distribution(rng):
    gid = rng.choice(["abelian:2:5", "heisenberg:5", "semidirect:5"])
    model = GroupModel.from_string(gid, prec=12, max_weight=Fraction(12))
    if rng.random() < 0.5:
        return Distribution.dirac(model.random_element(rng))
    alphas = [a for a, _ in model.alpha_iter(Fraction(4))]
    coeffs = {}
    for a in rng.sample(sorted(alphas), rng.randint(1, 3)):
        coeffs[a] = rng.randint(1, 5**6)
    return Distribution.from_coeffs(model, coeffs, model.max_weight)


class TestDistributionFiles:
    def test_round_trip_random(self):
        rng = random.Random(7)
        for _ in range(100):
            d = _random_distribution(rng)
            text = serialize_distribution(d)
            back = parse_distribution(text)
            assert serialize_distribution(back) == text

    def test_round_trip_dirac_h1_to_the_p(self):
        model = GroupModel.abelian(1, P, prec=12, max_weight=Fraction(8))
        d = Distribution.dirac(model.element([P]), T=Fraction(8))
        text = serialize_distribution(d)
        assert serialize_distribution(parse_distribution(text)) == text

    def test_header_fields(self):
        model = GroupModel.heisenberg(P, prec=12, max_weight=Fraction(12))
        text = serialize_distribution(Distribution.one(model))
        head = text.splitlines()[0]
        assert "group=heisenberg:5" in head and "exact=1" in head

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda t: "",
            lambda t: t.replace("group=", "grp="),
            lambda t: t.replace("exact=1", "exact=yes"),
            lambda t: t + "not a term line\n",
            lambda t: t + "0,0,0 : 0:1:15\n" + "0,0,0 : 0:1:15\n",
            lambda t: t + "1,2 : 0:1:15\n",
            lambda t: t.replace("p=5", "p=7"),
        ],
    )
    def test_rejects_malformed_files(self, mutate):
        model = GroupModel.heisenberg(P, prec=12, max_weight=Fraction(12))
        text = serialize_distribution(Distribution.one(model))
        with pytest.raises(ParseError):
            parse_distribution(mutate(text))

    def test_parse_error_carries_line(self):
        model = GroupModel.heisenberg(P, prec=12, max_weight=Fraction(12))
        text = serialize_distribution(Distribution.one(model)) + "oops\n"
        with pytest.raises(ParseError) as exc:
            parse_distribution(text)
        assert exc.value.line == 3


class TestMahlerFiles:
    def test_round_trip(self):
        for f in (
            FunctionSpec.power_series_1p(1, P, 0),
            FunctionSpec.monomial(2, P, (1, 2)),
        ):
            t = mahler_coeffs(f, 8, prec=12)
            text = serialize_mahler(t)
            assert serialize_mahler(parse_mahler(text)) == text

    def test_rejects_wrong_magic(self):
        with pytest.raises(ParseError):
            parse_mahler("distribution p=5\n")
