"""The finite trigonometric sum for parabolic Verlinde numbers.

The sum is evaluated in interval arithmetic, so the returned enclosure is a
rigorous bound on the exact value; the error bound reported is its radius.
"""

from fractions import Fraction
from math import comb

from mpmath import iv, mpf, nint

from .weight_space import IntegralWeight, in_closed_simplex, rho

__all__ = ["enumerate_lattice", "ver_sum", "SumResult", "PrecisionError", "n_prefactor"]

DEFAULT_PRECISION = 256


class PrecisionError(ArithmeticError):
    """The enclosure is too wide to identify an integer."""


class SumResult:
    __slots__ = ("re", "im", "nearest_int", "err_bound", "precision")

    def __init__(self, re, im, nearest_int, err_bound, precision):
        self.re, self.im = re, im
        self.nearest_int = nearest_int
        self.err_bound = err_bound
        self.precision = precision

    @property
    def value(self):
        return complex(float(self.re.mid), float(self.im.mid))

    def __iter__(self):
        yield self.value
        yield self.nearest_int
        yield self.err_bound

    def __repr__(self):
        return "SumResult(nearest_int=%d, err_bound=%.3g, precision=%d)" % (
            self.nearest_int, self.err_bound, self.precision)


def enumerate_lattice(k, r):
    """Integer vectors n with n_r = 0, 0 < n_i - n_{i+1} < k+r, n_i - n_j != 0 mod k+r.

    The congruence condition is imposed for every pair i < j <= r; pairs
    involving the last coordinate matter from r = 3 on, where n_1 = k+r
    would otherwise make a sine factor of the denominator vanish.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    kh = k + r
    out = []

    def rec(prefix):
        # prefix lists n_{r-1}, n_{r-2}, ... built upward from n_r = 0
        if len(prefix) == r:
            n = tuple(reversed(prefix))
            for i in range(r - 1):
                for j in range(i + 1, r):
                    if (n[i] - n[j]) % kh == 0:
                        return
            out.append(n)
            return
        last = prefix[-1]
        for step in range(1, kh):
            rec(prefix + [last + step])

    rec([0])
    out.sort()
    return out


def n_prefactor(r, g, k):
    """r (r (k+r)^{r-1})^{g-1}."""
    return r * (r * (k + r) ** (r - 1)) ** (g - 1)


def _ival(q):
    q = Fraction(q)
    return iv.mpf(q.numerator) / q.denominator


def ver_sum(r, g, k, lam, precision=DEFAULT_PRECISION, max_error=Fraction(1, 4)):
    """Evaluate the sum with a rigorous enclosure.

    Returns a SumResult whose ``err_bound`` is the largest distance from the
    chosen integer to any point of the real enclosure, or the imaginary
    enclosure's magnitude if that is larger.
    """
    lam = IntegralWeight(lam)
    if len(lam) != r:
        raise ValueError("weight length must equal r")
    if not in_closed_simplex(lam.scale(Fraction(1, k))):
        raise ValueError("lambda/k outside the closed simplex")
    kh = k + r
    lam_hat = lam + rho(r)
    m = 2 * g - 1
    # (-i)^{C(r,2)}
    unit = [(1, 0), (0, -1), (-1, 0), (0, 1)][comb(r, 2) % 4]
    old = iv.prec
    iv.prec = precision
    try:
        two_pi = 2 * iv.pi
        re_total = iv.mpf(0)
        im_total = iv.mpf(0)
        for n in enumerate_lattice(k, r):
            phase = sum((lh * ni for lh, ni in zip(lam_hat, n)), Fraction(0)) / kh
            # reduce the phase mod 1 exactly before going to floats
            phase -= phase.numerator // phase.denominator
            ang = two_pi * _ival(phase)
            cr, ci = iv.cos(ang), iv.sin(ang)
            den = iv.mpf(1)
            for i in range(r):
                for j in range(i + 1, r):
                    den *= 2 * iv.sin(iv.pi * _ival(Fraction(n[i] - n[j], kh)))
            den = den ** m
            re_total += (unit[0] * cr - unit[1] * ci) / den
            im_total += (unit[0] * ci + unit[1] * cr) / den
        pref = n_prefactor(r, g, k)
        re_total *= pref
        im_total *= pref
        lo, hi = re_total.a, re_total.b
        nearest = int(nint(mpf(re_total.mid)))
        err = max(abs(mpf(hi) - nearest), abs(mpf(lo) - nearest),
                  abs(mpf(im_total.a)), abs(mpf(im_total.b)))
    finally:
        iv.prec = old
    err = float(err)
    if err > max_error:
        raise PrecisionError(
            "insufficient precision: error bound %.3g at %d bits; try %d bits"
            % (err, precision, 2 * precision))
    return SumResult(re_total, im_total, nearest, err, precision)
