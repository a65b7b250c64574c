import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from verlinde import checks
from verlinde.diagonal_bases import hamiltonian_basis
from verlinde.exact_series import FactorExpr, LinearForm
from verlinde.residue_engine import (
    ArrangementError,
    VerlindeInput,
    bernoulli_functional,
    iber,
    n_tilde,
    p_c,
    root_form,
    ver_residue,
    wallcross_full,
    wallcross_reduced,
)
from verlinde.symmetry import Permutation
from verlinde.verlinde_sum import ver_sum
from verlinde.weight_space import (
    IntegralWeight,
    Partition,
    Wall,
    WallError,
    WeightVector,
    admissible_weights,
    points_across_wall,
)

FAST = settings(max_examples=20, deadline=None)
A = WeightVector([F(2, 7), F(1, 7), F(-3, 7)])
C_UPPER = WeightVector([F(1, 10), F(1, 20), F(-3, 20)])


def random_integrand(draw_terms):
    exps, sinh = draw_terms
    return FactorExpr(1, [root_form(i, j, 3, F(s, 3)) for (i, j), s in exps], (),
                      [(root_form(i, j, 3, F(1, q)), m) for (i, j), q, m in sinh])


ROOTS3 = [(1, 2), (1, 3), (2, 3)]
integrand_terms = st.tuples(
    st.lists(st.tuples(st.sampled_from(ROOTS3), st.integers(-3, 3)), max_size=2),
    st.lists(st.tuples(st.sampled_from(ROOTS3), st.integers(1, 3), st.integers(1, 2)), min_size=1, max_size=2),
)


def contour_residue1(f, radius=0.5, n=128):
    total = 0j
    for j in range(n):
        y = radius * cmath.exp(2j * cmath.pi * j / n)
        total += f(y) * y
    return total / n


class TestIber:
    def test_constant_integrand(self):
        b = hamiltonian_basis(1, 2)[0]
        for a in (F(0), F(1, 3), F(-7, 2)):
            assert iber(b, FactorExpr(1), (a, -a)) == -1

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("a", [F(1, 3), F(3, 4), F(-5, 2)])
    def test_rank_two_against_contour(self, m, a):
        b = hamiltonian_basis(1, 2)[0]
        f = FactorExpr(1, (), (), [(root_form(1, 2, 2), m)])
        exact = iber(b, f, (a, -a))

        def g(y):
            return cmath.exp(float(a) * y) / ((1 - cmath.exp(y)) * (2 * cmath.sinh(y / 2)) ** m)

        assert abs(contour_residue1(g) - float(exact)) < 1e-9

    def test_non_arrangement_pole_rejected(self):
        b = hamiltonian_basis(1, 3)[0]
        f = FactorExpr(1, (), [LinearForm([1, 1, -2])], ())
        with pytest.raises(ArrangementError, match="non-arrangement pole"):
            iber(b, f, A)


class TestBernoulliFunctional:
    @FAST
    @given(integrand_terms)
    def test_basis_independence(self, terms):
        f = random_integrand(terms)
        values = {bernoulli_functional(d, f, A, C_UPPER) for d in checks.standard_basis_sets(3).values()}
        assert len(values) == 1

    @FAST
    @given(integrand_terms, st.permutations([1, 2, 3]))
    def test_permutation_equivariance(self, terms, images):
        f = random_integrand(terms)
        s = Permutation(images)
        pulled = f.map_forms(lambda l: LinearForm(s.inverse().act(tuple(l.coeffs))))
        d = hamiltonian_basis(1, 3)
        assert bernoulli_functional(d, f, s.act(A), s.act(C_UPPER)) == bernoulli_functional(d, pulled, A, C_UPPER)

    def test_wall_point_rejected(self):
        with pytest.raises(WallError):
            bernoulli_functional(hamiltonian_basis(1, 3), FactorExpr(1), A, WeightVector([F(1, 2), 0, F(-1, 2)]))


class TestVerlindeValues:
    def test_rank_two_genus_two(self):
        inp = VerlindeInput(2, 2, 1, (0, 0))
        assert ver_residue(inp) == ver_sum(2, 2, 1, (0, 0)).nearest_int == 4

    def test_rank_three_example(self):
        inp = VerlindeInput(3, 1, 3, (1, 0, -1))
        assert ver_residue(inp) == ver_sum(3, 1, 3, (1, 0, -1)).nearest_int

    def test_both_sides_agree_on_wall_points(self):
        for r, g, k in ((2, 2, 3), (3, 1, 2), (3, 2, 3)):
            for lam in admissible_weights(r, k):
                inp = VerlindeInput(r, g, k, lam)
                values = {ver_residue(inp, side=s, target=t) for s in (1, -1) for t in ("hat", "lam_over_k")}
                assert len(values) == 1

    def test_values_are_integers(self):
        for r, g, k in ((2, 3, 4), (3, 2, 2), (4, 1, 2)):
            for lam in admissible_weights(r, k):
                assert ver_residue(VerlindeInput(r, g, k, lam)).denominator == 1

    def test_normalisation_constant(self):
        assert n_tilde(2, 1, 3) == 2
        assert n_tilde(3, 2, 1) == -3 * 3 * 16
        assert n_tilde(3, 3, 1) == 3 * (3 * 16) ** 2

    def test_sign_flip_hook(self):
        inp = VerlindeInput(3, 1, 2, (1, 0, -1))
        assert ver_residue(inp, sign_flip=True) == -ver_residue(inp)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            VerlindeInput(3, 0, 2, (0, 0, 0))
        with pytest.raises(ValueError):
            VerlindeInput(3, 1, 2, (0, 0))


class TestWallCrossing:
    WALL = Wall(Partition((2,), (1, 3)), 0)

    def test_same_chamber_gives_zero(self):
        inp = VerlindeInput(3, 1, 2, (1, 0, -1))
        other = WeightVector([F(3, 10), F(1, 5), F(-1, 2)])
        assert wallcross_full(inp, C_UPPER, other) == 0

    def test_non_adjacent_rejected(self):
        inp = VerlindeInput(3, 1, 2, (1, 0, -1))
        far = WeightVector([F(13, 10), F(21, 20), F(-47, 20)])
        with pytest.raises(ValueError):
            wallcross_full(inp, C_UPPER, far)

    def test_routes_agree_rank_three(self):
        cp, cm = points_across_wall(self.WALL)
        for g in (1, 2):
            for k in (1, 2, 3):
                for lam in admissible_weights(3, k):
                    inp = VerlindeInput(3, g, k, lam)
                    assert wallcross_full(inp, cp, cm) == wallcross_reduced(inp, self.WALL, cp)

    def test_level_factor_normalisation(self):
        cp, cm = points_across_wall(self.WALL)
        inp = VerlindeInput(3, 1, 3, (1, 1, -2))
        full = wallcross_full(inp, cp, cm)
        assert full == -9
        assert wallcross_reduced(inp, self.WALL, cp, level_factor=True) == inp.k_hat * full

    def test_rank_four_wall(self):
        # this wall only touches the closed simplex, so the points are taken outside it
        wall = Wall(Partition((1, 2), (3, 4)), 0)
        cp, cm = points_across_wall(wall, inside=False)
        for lam in ((0, 0, 0, 0), (1, 0, 0, -1)):
            inp = VerlindeInput(4, 1, 2, lam)
            assert wallcross_full(inp, cp, cm) == wallcross_reduced(inp, wall, cp)

    def test_rank_two_wall(self):
        wall = Wall(Partition((1,), (2,)), 1)
        cp, cm = points_across_wall(wall, inside=False)
        for k in range(1, 5):
            for l in range(-3, 4):
                inp = VerlindeInput(2, 2, k, (l, -l))
                assert wallcross_full(inp, cp, cm) == wallcross_reduced(inp, wall, cp)

    def test_c_plus_must_be_upper(self):
        cp, cm = points_across_wall(self.WALL)
        with pytest.raises(ValueError):
            wallcross_reduced(VerlindeInput(3, 1, 2, (1, 0, -1)), self.WALL, cm)


def test_p_c_checks_regularity():
    with pytest.raises(WallError):
        p_c(VerlindeInput(3, 1, 2, (1, 0, -1)), IntegralWeight([1, 0, -1]))
