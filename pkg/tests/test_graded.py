from fractions import Fraction
from math import inf

import pytest
from hypothesis import given, settings, strategies as st

from padicdist.graded import (
    GradedAmbient,
    GradedError,
    GradedIdeal,
    GradedPoly,
    grade_cyclic,
    krull_dim,
    saturate,
)

P = 5


def amb(d, s=Fraction(1, 2)):
    return GradedAmbient(P, d, [1] * d, s)


def var(a, i):
    return GradedPoly.variable(a, i)


class TestPolyArithmetic:
    def test_parse_round_trip(self):
        a = amb(2)
        f = GradedPoly.parse(a, "2*e0^3*X1 + 4*X2^2")
        assert f == GradedPoly(a, {(1, 0, 3): 2, (0, 2, 0): 4})
        assert GradedPoly.parse(a, f.to_text()) == f

    def test_parse_negative_e0_display_only(self):
        a = amb(1)
        f = GradedPoly.parse(a, "1*e0^-1*X1^5")
        assert f.min_e0_exponent == -1
        with pytest.raises(GradedError):
            GradedIdeal(a, [f])

    def test_parse_rejects_negative_x(self):
        with pytest.raises(GradedError):
            GradedPoly.parse(amb(1), "1*X1^-2")

    def test_coefficients_mod_p(self):
        a = amb(1)
        x = var(a, 1)
        assert (x + x + x + x + x).is_zero

    def test_mul_commutes(self):
        a = amb(2)
        f = GradedPoly.parse(a, "1*X1 + 2*e0")
        g = GradedPoly.parse(a, "3*X2 + 1*X1^2")
        assert f * g == g * f

    def test_shift_e0_unit(self):
        a = amb(1)
        f = GradedPoly.parse(a, "1*e0^2*X1")
        assert f.shift_e0(-2).shift_e0(2) == f

    def test_homogeneous_degrees(self):
        a = amb(2, s=Fraction(1, 2))
        f = GradedPoly.parse(a, "1*X1 + 1*X2")
        assert f.is_homogeneous() and f.degrees() == {Fraction(1, 2)}
        g = GradedPoly.parse(a, "1*e0 + 1*X1^2")
        assert g.is_homogeneous()  # deg e0 = 1 = 2s

    @given(st.integers(1, 4), st.integers(1, 4))
    @settings(max_examples=20, deadline=None)
    def test_distributivity_sampled(self, i, j):
        a = amb(2)
        import random

        rng = random.Random(i * 17 + j)

        def rnd():
            return GradedPoly(
                a,
                {
                    (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 2)): rng.randint(1, P - 1)
                    for _ in range(3)
                },
            )

        f, g, h = rnd(), rnd(), rnd()
        assert f * (g + h) == f * g + f * h


class TestGroebner:
    def test_hand_oracle(self):
        # <X1^2, X1X2 - e0^2>: the S-polynomial reduces to e0^2*X1
        a = amb(2)
        x1, x2, e0 = var(a, 1), var(a, 2), var(a, 0)
        ideal = GradedIdeal(a, [x1 * x1, x1 * x2 - e0 * e0])
        gb = ideal.groebner()
        assert gb.contains(e0 * e0 * x1)
        assert any(g == e0 * e0 * x1 for g in gb.gens)

    def test_groebner_idempotent(self):
        a = amb(2)
        x1, x2, e0 = var(a, 1), var(a, 2), var(a, 0)
        gb = GradedIdeal(a, [x1 * x1, x1 * x2 - e0 * e0]).groebner()
        assert gb.groebner().same_ideal(gb)

    def test_contains_generators_and_combinations(self):
        a = amb(3)
        gens = [var(a, 1) * var(a, 2), var(a, 2) * var(a, 3) - var(a, 0)]
        ideal = GradedIdeal(a, gens)
        for g in gens:
            assert ideal.contains(g)
        assert ideal.contains(gens[0] * var(a, 3) + gens[1] * var(a, 1))
        assert not ideal.contains(var(a, 1))

    def test_reduce_certificate(self):
        a = amb(2)
        x1, x2 = var(a, 1), var(a, 2)
        ideal = GradedIdeal(a, [x1 * x1 - x2, x2 * x2])
        probe = x1 * x1 * x1 + x2
        rem, cof = ideal.reduce(probe)
        recon = rem
        for c, b in zip(cof, ideal.basis_polys()):
            recon = recon + c * b
        assert recon == probe

    def test_zero_ideal(self):
        a = amb(2)
        ideal = GradedIdeal(a, [])
        assert not ideal.contains(var(a, 1))
        assert ideal.contains(GradedPoly.zero_poly(a))


class TestSaturation:
    def test_e0x1_saturates_to_x1(self):
        a = amb(2)
        sat = saturate(GradedIdeal(a, [var(a, 0) * var(a, 1)]))
        assert sat.same_ideal(GradedIdeal(a, [var(a, 1)]).groebner())

    def test_e0_power_saturates_to_unit(self):
        a = amb(2)
        sat = saturate(GradedIdeal(a, [var(a, 0) * var(a, 0)]))
        assert sat.contains(GradedPoly.constant(a, 1))

    def test_saturation_is_stable(self):
        a = amb(2)
        ideal = GradedIdeal(a, [var(a, 1) * var(a, 2)])
        sat = saturate(ideal)
        assert saturate(sat).same_ideal(sat)

    def test_mixed_generator(self):
        # <e0*X1, X2>: saturation adds X1
        a = amb(2)
        sat = saturate(GradedIdeal(a, [var(a, 0) * var(a, 1), var(a, 2)]))
        assert sat.contains(var(a, 1)) and sat.contains(var(a, 2))


class TestDimensionAndGrade:
    def test_krull_table(self):
        a2, a3 = amb(2), amb(3)
        assert krull_dim(GradedIdeal(a2, [])) == 3
        assert krull_dim(GradedIdeal(a2, [var(a2, 1)])) == 2
        assert krull_dim(GradedIdeal(a3, [var(a3, i) for i in (1, 2, 3)])) == 1
        assert krull_dim(GradedIdeal(a2, [GradedPoly.constant(a2, 1)])) == -1

    def test_grade_table(self):
        a2, a3 = amb(2), amb(3)
        assert grade_cyclic(GradedIdeal(a2, []), 2) == 0
        assert grade_cyclic(GradedIdeal(a2, [var(a2, 1)]), 2) == 1
        assert grade_cyclic(GradedIdeal(a3, [var(a3, i) for i in (1, 2, 3)]), 3) == 3
        assert grade_cyclic(GradedIdeal(a2, [var(a2, 0)]), 2) == inf

    def test_grade_ignores_e0_torsion(self):
        # e0*X1 and X1 generate the same module support after inverting e0
        a = amb(2)
        g1 = grade_cyclic(GradedIdeal(a, [var(a, 0) * var(a, 1)]), 2)
        g2 = grade_cyclic(GradedIdeal(a, [var(a, 1)]), 2)
        assert g1 == g2 == 1


class TestAmbientDiscipline:
    def test_mismatched_ambients_rejected(self):
        f = var(amb(2), 1)
        g = var(amb(2, s=Fraction(1, 4)), 1)
        with pytest.raises(GradedError):
            f + g
