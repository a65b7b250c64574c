from fractions import Fraction as F
from itertools import product

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from verlinde.residue_engine import VerlindeInput, ver_residue
from verlinde.verlinde_sum import PrecisionError, enumerate_lattice, ver_sum
from verlinde.weight_space import IntegralWeight, admissible_weights, rho


def brute_lattice(k, r):
    kh = k + r
    out = []
    for diffs in product(range(1, kh), repeat=r - 1):
        n = [0]
        for d in reversed(diffs):
            n.append(n[-1] + d)
        n = tuple(reversed(n))
        if all((n[i] - n[j]) % kh for i in range(r) for j in range(i + 1, r)):
            out.append(n)
    return sorted(out)


def summands(lam_hat, k, g):
    r = len(lam_hat)
    kh = k + r
    out = []
    for n in enumerate_lattice(k, r):
        phase = sum(F(a) * b for a, b in zip(lam_hat, n)) / kh
        den = mpmath.mpf(1)
        for i in range(r):
            for j in range(i + 1, r):
                den *= 2 * mpmath.sin(mpmath.pi * F(n[i] - n[j], kh))
        out.append(mpmath.expjpi(2 * phase) / den ** (2 * g - 1))
    return out


class TestLattice:
    @pytest.mark.parametrize("k", range(0, 7))
    def test_rank_two(self, k):
        pts = enumerate_lattice(k, 2)
        assert len(pts) == k + 1
        assert [n[0] for n in pts] == list(range(1, k + 2))

    @pytest.mark.parametrize("k", range(0, 8))
    def test_rank_three_closed_form(self, k):
        kh = k + 3
        assert len(enumerate_lattice(k, 3)) == (kh - 1) * (kh - 2)

    def test_rank_three_reference_counts(self):
        assert len(enumerate_lattice(6, 3)) == 56
        assert len(enumerate_lattice(0, 3)) == 2

    def test_box_points_with_vanishing_sine_are_excluded(self):
        # the box has (k+2)^2 points; those with n_1 = k+3 would divide by sin(pi) = 0
        k, kh = 6, 9
        box = [(a + b, b, 0) for b in range(1, kh) for a in range(1, kh)]
        assert len(box) == 64
        dropped = set(box) - set(enumerate_lattice(k, 3))
        assert dropped == {n for n in box if n[0] == kh}

    @pytest.mark.parametrize("r,k", [(2, 3), (3, 4), (4, 1), (4, 2), (4, 3)])
    def test_brute_force(self, r, k):
        assert enumerate_lattice(k, r) == brute_lattice(k, r)


class TestSum:
    def test_rank_two_genus_two(self):
        res = ver_sum(2, 2, 1, (0, 0))
        assert res.nearest_int == 4 and res.err_bound < 1e-60

    def test_rank_three_small_imaginary_part(self):
        res = ver_sum(3, 1, 2, (1, 0, -1), precision=256)
        assert res.nearest_int == 3
        assert max(abs(res.im.a), abs(res.im.b)) < mpmath.mpf(2) ** -128

    def test_precision_sweep(self):
        for r, g, k in ((2, 3, 5), (3, 2, 3), (4, 1, 2)):
            for lam in admissible_weights(r, k):
                lo, hi = ver_sum(r, g, k, lam, 128), ver_sum(r, g, k, lam, 256)
                assert lo.nearest_int == hi.nearest_int
                assert hi.err_bound <= lo.err_bound

    def test_insufficient_precision_reported(self):
        with pytest.raises(PrecisionError, match="insufficient precision"):
            ver_sum(3, 2, 4, (1, 0, -1), precision=64, max_error=1e-40)

    def test_outside_simplex_rejected(self):
        with pytest.raises(ValueError):
            ver_sum(2, 1, 1, (2, -2))

    def test_tuple_interface(self):
        value, nearest, err = ver_sum(2, 1, 2, (1, -1))
        assert nearest == ver_residue(VerlindeInput(2, 1, 2, (1, -1))) == 1
        assert abs(value - 1) < 1e-12 and err < 1e-30

    @settings(max_examples=10, deadline=None)
    @given(st.sampled_from([(2, g, k) for g in (1, 2, 3) for k in range(1, 7)] + [(3, 1, k) for k in range(1, 5)]))
    def test_agrees_with_residue_route(self, rgk):
        r, g, k = rgk
        for lam in admissible_weights(r, k):
            assert ver_sum(r, g, k, lam).nearest_int == ver_residue(VerlindeInput(r, g, k, lam))


class TestSummandSymmetries:
    @pytest.mark.parametrize("r,k,lam", [(2, 3, (1, -1)), (3, 2, (1, 0, -1)), (3, 4, (2, 1, -3))])
    def test_negated_shift_conjugates_termwise(self, r, k, lam):
        lam_hat = IntegralWeight(lam) + rho(r)
        for a, b in zip(summands(lam_hat, k, 2), summands(-lam_hat, k, 2)):
            assert abs(a - mpmath.conj(b)) < mpmath.mpf(10) ** -12

    @pytest.mark.parametrize("r,k,lam,gamma", [(2, 3, (1, -1), (1, -1)), (3, 2, (1, 0, -1), (2, -1, -1))])
    def test_level_periodicity(self, r, k, lam, gamma):
        lam_hat = IntegralWeight(lam) + rho(r)
        shifted = lam_hat + IntegralWeight(gamma).scale(k + r)
        for a, b in zip(summands(lam_hat, k, 1), summands(shifted, k, 1)):
            assert abs(a - b) < mpmath.mpf(10) ** -12
