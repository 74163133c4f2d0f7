"""Group law checks against an independent 3x3 matrix realization.

The heisenberg model chart (x, y, z) corresponds to the upper-triangular
matrix I + p*x*E12 + p*y*E23 + (p*z + p^2*x*y)*E13, whose multiplication
gives the closed-form law used by the chart."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicdist.groupmodel import (
    GroupModel,
    ModelError,
    coords_in_basis,
    validate_basis,
)
from padicdist.padic import ppow

P = 5


def heis(prec=12):
    return GroupModel.heisenberg(P, prec=prec, max_weight=Fraction(12))


def mat_of(model, g):
    m = ppow(P, model.elem_prec + 2)
    x, y, z = (c.canonical() for c in g.coords)
    assert all(c.shift == 0 for c in (x, y, z))
    return (
        (1, P * x.residue % m, (P * z.residue + P * P * x.residue * y.residue) % m),
        (0, 1, P * y.residue % m),
        (0, 0, 1),
    )


def mat_mul(a, b, m):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) % m for j in range(3))
        for i in range(3)
    )


coords_st = st.lists(st.integers(0, ppow(P, 6) - 1), min_size=3, max_size=3)


class TestHeisenbergLaw:
    @given(coords_st, coords_st)
    @settings(max_examples=60, deadline=None)
    def test_gmul_matches_matrix_product(self, a, b):
        model = heis()
        m = ppow(P, model.elem_prec + 2)
        g, h = model.element(a), model.element(b)
        # the matrix entries only determine the chart mod p^elem_prec
        want = mat_mul(mat_of(model, g), mat_of(model, h), m)
        got = mat_of(model, model.gmul(g, h))
        mm = ppow(P, model.elem_prec)
        assert all(
            (want[i][j] - got[i][j]) % (P * mm) == 0 for i in range(3) for j in range(3)
        )

    @given(coords_st)
    @settings(max_examples=30, deadline=None)
    def test_inverse(self, a):
        model = heis()
        g = model.element(a)
        assert model.gmul(g, model.ginv(g)).is_identity_in_window

    @given(coords_st, coords_st, coords_st)
    @settings(max_examples=30, deadline=None)
    def test_associativity(self, a, b, c):
        model = heis()
        g, h, k = (model.element(x) for x in (a, b, c))
        left = model.gmul(model.gmul(g, h), k)
        right = model.gmul(g, model.gmul(h, k))
        assert left.key() == right.key()

    @given(coords_st, st.integers(0, 3000))
    @settings(max_examples=30, deadline=None)
    def test_gpow_matches_iterated_product(self, a, t):
        model = heis()
        g = model.element(a)
        fast = model.gpow(g, t)
        slow = model.identity()
        for _ in range(t % 40):
            slow = model.gmul(slow, g)
        if t % 40 == t:
            assert fast.key() == slow.key()

    def test_commutator_is_central(self):
        model = heis()
        g = model.element([1, 0, 0])
        h = model.element([0, 1, 0])
        c = model.commutator(g, h)
        assert c.coords[0].residue == 0 and c.coords[1].residue == 0
        z = c.coords[2].canonical()
        # [h1, h2] = h3^(+-p): omega = 2 = omega(h1) + omega(h2)
        assert z.valuation == 1
        v, exact = model.omega(c)
        assert exact and v == 2


class TestOmega:
    def test_identity_is_infinite(self):
        model = heis()
        v, exact = model.omega(model.identity())
        assert v == float("inf") or v is None or v > 100

    def test_basis_elements_have_omega_one(self):
        model = heis()
        for i in range(3):
            g = model.element([1 if j == i else 0 for j in range(3)])
            v, exact = model.omega(g)
            assert exact and v == 1

    @given(coords_st)
    @settings(max_examples=40, deadline=None)
    def test_p_power_raises_omega_by_one(self, a):
        model = heis()
        g = model.element(a)
        v, exact = model.omega(g)
        if not exact or v == float("inf"):
            return
        vp, exactp = model.omega(model.gpow(g, P))
        if exactp:
            assert vp == v + 1

    @given(coords_st, coords_st)
    @settings(max_examples=40, deadline=None)
    def test_omega_axioms(self, a, b):
        model = heis()
        g, h = model.element(a), model.element(b)
        vg, eg = model.omega(g)
        vh, eh = model.omega(h)
        vq, eq = model.omega(model.gmul(g, model.ginv(h)))
        if eg and eh and eq:
            assert vq >= min(vg, vh)
        vc, ec = model.omega(model.commutator(g, h))
        if eg and eh and ec:
            assert vc >= vg + vh


class TestModelRegistry:
    def test_from_string(self):
        assert GroupModel.from_string("abelian:2:5").d == 2
        assert GroupModel.from_string("heisenberg:5").kind == "heisenberg"
        assert GroupModel.from_string("semidirect:5").d == 1

    def test_unknown_id(self):
        with pytest.raises(ModelError):
            GroupModel.from_string("solvable:5")

    def test_composite_p_rejected(self):
        with pytest.raises(Exception):
            GroupModel.from_string("abelian:2:6")

    def test_id_round_trip(self):
        for gid in ("abelian:2:5", "heisenberg:5", "semidirect:5"):
            assert GroupModel.from_string(gid).id == gid

    def test_semidirect_sigma_inverts(self):
        model = GroupModel.from_string("semidirect:5")
        g = model.element([7])
        assert model.gmul(model.sigma_conj(g), g).is_identity_in_window


class TestAlphaIter:
    def test_abelian_count(self):
        model = GroupModel.from_string("abelian:2:5", max_weight=Fraction(3))
        alphas = [a for a, _ in model.alpha_iter(Fraction(3))]
        assert len(alphas) == 10  # C(3+2, 2)

    def test_weight_above(self):
        model = heis()
        assert model.weight_above(Fraction(6)) == 7
        assert model.weight_above(Fraction(13, 2)) == 7


class TestBasisChange:
    def test_validate_standard(self):
        model = heis()
        std = [model.element([1 if j == i else 0 for j in range(3)]) for i in range(3)]
        validate_basis(model, std)

    def test_validate_rejects_degenerate(self):
        model = heis()
        h1 = model.element([1, 0, 0])
        with pytest.raises(ModelError):
            validate_basis(model, [h1, h1, model.element([0, 0, 1])])

    def test_coords_reproduce_element(self):
        model = heis()
        h1 = model.element([1, 0, 0])
        h2 = model.element([0, 1, 0])
        h3 = model.element([0, 0, 1])
        basis = [model.gmul(h1, h3), h2, h3]
        validate_basis(model, basis)
        g = model.element([3, 4, 2])
        y = coords_in_basis(model, basis, g)
        rebuilt = model.identity()
        for yi, bi in zip(y, basis):
            rebuilt = model.gmul(rebuilt, model.gpow(bi, yi))
        assert model.gmul(model.ginv(rebuilt), g).is_identity_in_window
