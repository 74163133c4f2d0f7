import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicdist.distalg import Distribution, lie_generator
from padicdist.groupmodel import GroupModel
from padicdist.mahler import (
    FunctionSpec,
    MahlerError,
    amice_report,
    finite_level_project,
    int_binom,
    mahler_coeffs,
    pair,
    pair_with_indicator_crosscheck,
)
from padicdist.padic import NormValue, PadicScalar, ppow

P = 5
N = 12


def ab(d):
    return GroupModel.abelian(d, P, prec=N, max_weight=Fraction(12))


def sc(x, prec=N):
    return PadicScalar.from_int(P, x, prec)


class TestIntBinom:
    @given(st.integers(-30, 30), st.integers(0, 10))
    def test_matches_generalized_binomial(self, m, k):
        want = math.comb(m, k) if m >= 0 else (-1) ** k * math.comb(k - m - 1, k)
        assert int_binom(m, k) == want


class TestMahlerCoeffs:
    def test_constant(self):
        t = mahler_coeffs(FunctionSpec.constant(1, P), 2 * P, prec=N)
        assert set(t.coeffs) == {(0,)}
        assert t.coeff((0,)).same_value(sc(1))
        assert t.complete

    def test_x_squared(self):
        # x^2 = binom(x,1) + 2*binom(x,2)
        t = mahler_coeffs(FunctionSpec.monomial(1, P, (2,)), 8, prec=N)
        assert t.coeff((1,)).same_value(sc(1))
        assert t.coeff((2,)).same_value(sc(2))
        assert all(sum(a) <= 2 for a in t.coeffs)

    def test_power1p(self):
        t = mahler_coeffs(FunctionSpec.power_series_1p(1, P, 0), 10, prec=16)
        for k in range(11):
            assert t.coeff((k,)).same_value(PadicScalar.from_int(P, ppow(P, k), 16))
        assert not t.complete

    def test_inverts_evaluation(self):
        # sum_alpha c_alpha binom(m, alpha) = f(m) at integer points
        for f in (
            FunctionSpec.monomial(2, P, (2, 1)),
            FunctionSpec.coordinate(2, P, 0),
            FunctionSpec.constant(2, P, 3),
        ):
            t = mahler_coeffs(f, 6, prec=N)
            for m in ((0, 0), (1, 3), (4, 2), (6, 6)):
                got = t.evaluate(m)
                want = PadicScalar.from_fraction(P, f.evaluate(m), got.window)
                assert got.same_value(want)

    def test_indicator_values(self):
        f = FunctionSpec.indicator(1, P, [2], 1)
        assert f.evaluate((2,)) == 1
        assert f.evaluate((2 + P,)) == 1
        assert f.evaluate((3,)) == 0


class TestFunctionSpecParse:
    def test_round_trips(self):
        for text in ("constant:1", "coordinate:0", "monomial:1,2", "power1p:0",
                      "indicator:1,2:1"):
            f = FunctionSpec.parse(2, P, text)
            assert FunctionSpec.parse(2, P, f.id).id == f.id

    def test_bad_ids(self):
        with pytest.raises((MahlerError, ValueError)):
            FunctionSpec.parse(1, P, "exp:1")


class TestAmice:
    def test_geometric_decay_rows(self):
        t = mahler_coeffs(FunctionSpec.power_series_1p(1, P, 0), 12, prec=20)
        rows = amice_report(t, [Fraction(1, 2)])[0]["rows"]
        for k in range(13):
            assert rows[k] == NormValue(k - Fraction(k, 2))

    def test_constant_rows_vanish(self):
        t = mahler_coeffs(FunctionSpec.constant(1, P), 2 * P, prec=N)
        rows = amice_report(t, [Fraction(1, 2)])[0]["rows"]
        assert all(rows[k].is_zero for k in range(1, 2 * P + 1))


class TestPairing:
    def test_dirac_evaluation(self):
        model = ab(1)
        t = mahler_coeffs(FunctionSpec.power_series_1p(1, P, 0), 20, prec=N)
        g = model.element([7])
        value, err = pair(Distribution.dirac(g), t)
        want = pow(1 + P, 7, ppow(P, value.window))
        diff = value - PadicScalar.from_int(P, want, value.window)
        assert diff.residue == 0 or diff.abs_val() <= err

    def test_monomial_pairs_to_coefficient(self):
        model = ab(1)
        t = mahler_coeffs(FunctionSpec.monomial(1, P, (3,)), 8, prec=N)
        for k in range(4):
            v, err = pair(Distribution.monomial(model, (k,)), t)
            assert err.is_zero and v.same_value(t.coeff((k,)))

    def test_identity_pairs_to_c0(self):
        model = ab(1)
        t = mahler_coeffs(FunctionSpec.power_series_1p(1, P, 0), 20, prec=N)
        v, _ = pair(Distribution.one(model), t)
        assert v.same_value(t.coeff((0,)))

    def test_linearity(self):
        model = ab(1)
        t = mahler_coeffs(FunctionSpec.monomial(1, P, (2,)), 8, prec=N)
        lam = Distribution.monomial(model, (1,))
        mu = Distribution.monomial(model, (2,))
        v1, _ = pair(lam, t)
        v2, _ = pair(mu, t)
        v3, _ = pair(lam.scale(3) + mu, t)
        assert v3.same_value(v1.mul_int(3) + v2)

    def test_refuses_uncertified_inexact(self):
        model = ab(1)
        lam = Distribution.dirac(model.element([-1]))  # inexact
        t = mahler_coeffs(FunctionSpec.indicator(1, P, [0], 1), 3 * P, prec=N)
        with pytest.raises(MahlerError):
            pair(lam, t)

    def test_derivative_of_lie_generator(self):
        model = ab(1)
        t = mahler_coeffs(FunctionSpec.coordinate(1, P, 0), 6, prec=N)
        v, err = pair(lie_generator(model, 0), t)
        assert err.is_zero and v.same_value(sc(1, v.prec))


class TestProjection:
    def test_dirac_projects_to_coset(self):
        model = ab(2)
        g = model.element([3, 7])
        e = finite_level_project(Distribution.dirac(g), 1)
        assert e.coeff((3, 2)).same_value(sc(1, e.coeff((3, 2)).prec))

    def test_b_projects_to_difference(self):
        model = ab(1)
        b = Distribution.monomial(model, (1,))
        e = finite_level_project(b, 1)
        one = sc(1, e.coeff((1,)).prec)
        assert e.coeff((1,)).same_value(one)
        assert e.coeff((0,)).same_value(-one)

    def test_multiplicative(self):
        model = GroupModel.heisenberg(P, prec=N, max_weight=Fraction(12))
        lam = Distribution.dirac_combination(
            model, [(1, model.element([1, 0, 2])), (3, model.element([0, 1, 0]))]
        )
        mu = Distribution.dirac(model.element([2, 2, 1]))
        for n in (1, 2):
            left = finite_level_project(lam * mu, n)
            right = finite_level_project(lam, n) * finite_level_project(mu, n)
            assert left == right

    def test_requires_witness(self):
        model = ab(1)
        lam = Distribution.from_coeffs(
            model, {}, Fraction(12), exact=False,
            tail_certs=[],
        )
        with pytest.raises(MahlerError):
            finite_level_project(lam, 1)


class TestCrosscheck:
    def test_dirac_in_coset(self):
        model = ab(2)
        g = model.element([2, 3])
        assert pair_with_indicator_crosscheck(Distribution.dirac(g), [2, 3], 1) == "true"

    def test_dirac_outside_coset(self):
        model = ab(2)
        g = model.element([2, 3])
        assert pair_with_indicator_crosscheck(Distribution.dirac(g), [0, 0], 1) == "true"

    def test_difference_combination(self):
        model = ab(2)
        lam = Distribution.dirac_combination(
            model,
            [(1, model.element([1, 0])), (-1, model.element([0, 1]))],
        )
        v = pair_with_indicator_crosscheck(lam, [1, 0], 1, A=3 * P)
        assert v in ("true", "inconclusive")
        assert v != "false"
