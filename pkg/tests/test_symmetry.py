from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from verlinde.residue_engine import VerlindeInput, ver_residue
from verlinde.symmetry import (
    AffineWeylElement,
    LineBundleLabel,
    Permutation,
    affine_act,
    h_tilde,
    hecke_shift,
    rank2_verlinde,
    stabilizer_generators,
    theta_chambers,
    theta_points,
    two_point_difference,
)
from verlinde.weight_space import IntegralWeight, WeightVector, in_simplex, is_regular

FAST = settings(max_examples=50, deadline=None)


@st.composite
def labels(draw, r=None):
    r = r or draw(st.integers(2, 5))
    k = draw(st.integers(1, 6))
    d = draw(st.integers(-3, 3))
    head = draw(st.lists(st.integers(-8, 8), min_size=r - 1, max_size=r - 1))
    return LineBundleLabel(d, k, head + [k * d - sum(head)])


@st.composite
def affine_elements(draw, r):
    images = draw(st.permutations(list(range(1, r + 1))))
    head = draw(st.lists(st.integers(-2, 2), min_size=r - 1, max_size=r - 1))
    return AffineWeylElement(images, head + [-sum(head)])


def weights(r, bound=6):
    return st.lists(st.integers(-bound, bound), min_size=r - 1, max_size=r - 1).map(
        lambda h: IntegralWeight(h + [-sum(h)]))


class TestHecke:
    def test_zero_is_identity(self):
        lab = LineBundleLabel(0, 3, (2, 1, -3))
        assert hecke_shift(0, lab) == lab

    def test_full_turn_is_global_shift(self):
        lab = LineBundleLabel(1, 3, (3, 1, -1))
        assert hecke_shift(3, lab) == LineBundleLabel(-2, 3, (0, -2, -4))

    def test_single_step_rank_three(self):
        lab = LineBundleLabel(0, 5, (2, 1, -3))
        assert hecke_shift(1, lab) == LineBundleLabel(-1, 5, (1, -3, 2 - 5))

    def test_label_constraint(self):
        with pytest.raises(ValueError):
            LineBundleLabel(0, 3, (1, 0, 0))

    @FAST
    @given(labels(), st.integers(-7, 7), st.integers(-7, 7))
    def test_composition(self, lab, a, b):
        assert hecke_shift(a, hecke_shift(b, lab)) == hecke_shift(a + b, lab)

    @FAST
    @given(labels())
    def test_full_turn_property(self, lab):
        r = len(lab.lam)
        assert hecke_shift(r, lab) == LineBundleLabel(lab.d - r, lab.k, [x - lab.k for x in lab.lam])


class TestAffineAction:
    def test_identity(self):
        lam = IntegralWeight([2, 1, -3])
        assert affine_act(AffineWeylElement(Permutation.identity(3)), 4, lam) == lam

    def test_transposition(self):
        w = AffineWeylElement(Permutation.transposition(3, 1, 2))
        assert affine_act(w, 4, IntegralWeight([2, 1, -3])) == IntegralWeight([0, 3, -3])

    def test_translation(self):
        w = AffineWeylElement(Permutation.identity(3), (1, -1, 0))
        lam = IntegralWeight([2, 1, -3])
        assert affine_act(w, 4, lam) == lam + IntegralWeight([7, -7, 0])

    @FAST
    @given(st.integers(2, 4).flatmap(lambda r: st.tuples(affine_elements(r), affine_elements(r), weights(r))),
           st.integers(1, 6))
    def test_group_action(self, data, k):
        w1, w2, lam = data
        assert affine_act(w1, k, affine_act(w2, k, lam)) == affine_act(w1 * w2, k, lam)

    @FAST
    @given(st.integers(2, 5).flatmap(lambda r: st.permutations(list(range(1, r + 1)))))
    def test_sign_is_multiplicative(self, images):
        s = Permutation(images)
        t = Permutation(list(reversed(images)))
        assert s.compose(t).sign() == s.sign() * t.sign()


class TestTheta:
    def test_rank_three_formula(self):
        for k in range(1, 8):
            t1, _ = theta_points(3, k)
            want = WeightVector([F(k, 3), F(k, 3) + 1, F(-2 * k, 3) - 1])
            assert t1 == want

    def test_rank_three_level_six(self):
        assert theta_points(3, 6)[0] == WeightVector([2, 3, -5])

    def test_rank_two_points_coincide(self):
        for k in range(1, 6):
            a, b = theta_points(2, k)
            assert a == b

    def test_chamber_points_are_regular(self):
        for r in range(2, 6):
            for c in theta_chambers(r):
                assert is_regular(c) and not in_simplex(c)

    def test_rank_three_plus_generators(self):
        gens = stabilizer_generators(3, 2, 1)
        assert gens == [AffineWeylElement(Permutation.transposition(3, 1, 2)),
                        AffineWeylElement(Permutation.transposition(3, 2, 3), (0, 1, -1))]

    @pytest.mark.parametrize("r", [2, 3, 4, 5])
    @pytest.mark.parametrize("side", [1, -1])
    def test_generators_fix_centre(self, r, side):
        for k in range(1, 5):
            centre = theta_points(r, k)[0 if side == 1 else 1]
            for gen in stabilizer_generators(r, k, side):
                assert affine_act(gen, k, centre) == centre
                assert gen.sign() == -1

    def test_bad_side(self):
        with pytest.raises(ValueError):
            stabilizer_generators(3, 1, 0)


class TestTwoPoint:
    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_symmetries_and_difference(self, g):
        for k in range(1, 7):
            for lam in range(-k - 2, k + 3):
                for mu in range(-k - 2, k + 3):
                    hg, hl = h_tilde(k, lam, mu, g, "gt"), h_tilde(k, lam, mu, g, "lt")
                    assert hg == -h_tilde(k, lam, -mu - 1, g, "gt")
                    assert hg == -h_tilde(k, -lam + k + 1, mu, g, "gt")
                    assert hl == -h_tilde(k, -lam - 1, mu, g, "lt")
                    assert hl == -h_tilde(k, lam, -mu + k + 1, g, "lt")
                    assert hg - hl == two_point_difference(k, lam, mu, g)

    def test_zero_insertion_matches_rank_two(self):
        for g in (1, 2, 3):
            for k in range(1, 7):
                for lam in range(0, k // 2 + 1):
                    v = ver_residue(VerlindeInput(2, g, k, (lam, -lam)))
                    assert h_tilde(k, lam, 0, g, "gt") == rank2_verlinde(k, lam, g) == v

    def test_bad_side(self):
        with pytest.raises(ValueError):
            h_tilde(2, 0, 0, 1, "eq")
