"""Iterated Bernoulli functionals and the residue form of the Verlinde numbers.

For an ordered basis B = (b_1, ..., b_{r-1}) put y_j = <b_j, x>.  The
functional

    iber(B, f, a) = Res_{y_1} ... Res_{y_{r-1}}  f(x) e^{<a, x>} / prod_j (1 - e^{y_j})

is a polynomial in the basis coordinates of a.  It is computed once per
(B, f) as that polynomial and then evaluated, which makes sweeps over many
weights cheap.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .diagonal_bases import (
    block_nbc_basis,
    compose_wall_basis,
    hamiltonian_basis,
    link_first_order,
)
from .exact_series import (
    FactorExpr,
    LinearForm,
    evaluate_polynomial,
    expand_factor,
    residue_polynomial,
)
from .weight_space import (
    IntegralWeight,
    Partition,
    Root,
    Wall,
    WallError,
    WeightVector,
    chamber_signature,
    coords_in_basis,
    in_simplex,
    integer_part,
    is_regular,
    proper_subsets,
    resolve_chamber,
    rho,
    subset_sum,
)

__all__ = [
    "VerlindeInput",
    "ArrangementError",
    "weyl_factor",
    "n_tilde",
    "iber",
    "iber_polynomial",
    "bernoulli_functional",
    "p_c",
    "ver_residue",
    "wallcross_full",
    "wallcross_reduced",
    "check_chamber",
    "wall_between",
]


class ArrangementError(ValueError):
    """A pole of the integrand is not a root hyperplane."""


class VerlindeInput:
    """Rank r, genus g, level k and an integral weight lam."""

    __slots__ = ("r", "g", "k", "lam")

    def __init__(self, r, g, k, lam):
        lam = IntegralWeight(lam)
        if r < 2 or len(lam) != r:
            raise ValueError("weight length must equal r >= 2")
        if g < 1:
            raise ValueError("genus must be at least 1")
        if k < 1:
            raise ValueError("level must be positive")
        self.r, self.g, self.k, self.lam = int(r), int(g), int(k), lam

    @property
    def k_hat(self):
        return self.k + self.r

    @property
    def lam_hat(self):
        return self.lam + rho(self.r)

    @property
    def point(self):
        """(lam + rho) / (k + r)."""
        return self.lam_hat.scale(Fraction(1, self.k_hat))

    def with_lam(self, lam):
        return VerlindeInput(self.r, self.g, self.k, lam)

    def __repr__(self):
        return "VerlindeInput(r=%d, g=%d, k=%d, lam=%s)" % (
            self.r, self.g, self.k, list(self.lam.ints()))


def root_form(i, j, r, scale=1):
    v = [Fraction(0)] * r
    v[i - 1] = Fraction(scale)
    v[j - 1] = -Fraction(scale)
    return LinearForm(v)


def weyl_factor(r, g, k_hat):
    """w(x / k_hat)^(1 - 2g) with w = prod_{i<j} 2 sinh((x_i - x_j)/2)."""
    m = 2 * g - 1
    sinh = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            sinh.append((root_form(i, j, r, Fraction(1, k_hat)), m))
    return FactorExpr(1, (), (), sinh)


def n_tilde(r, g, k):
    """(-1)^{C(r,2)(g-1)} r (r (k+r)^{r-1})^{g-1}."""
    sign = -1 if (comb(r, 2) * (g - 1)) % 2 else 1
    return sign * r * (r * (k + r) ** (r - 1)) ** (g - 1)


def _to_basis(form, basis):
    coeffs = form.coeffs
    if sum(coeffs) != 0:
        raise ArrangementError("linear form %r is not in V*" % (form,))
    return LinearForm(coords_in_basis(WeightVector(coeffs), basis))


def _check_pole(form):
    nz = [c for c in form.coeffs if c]
    if len(nz) != 2 or nz[0] != -nz[1]:
        raise ArrangementError("non-arrangement pole %r" % (form,))


@lru_cache(maxsize=None)
def iber_polynomial(basis, f, extra=0, skip=()):
    """The polynomial a_B -> iber(B, f, a), keyed by monomial exponent tuples.

    ``skip`` lists basis positions whose factor 1/(1 - e^{y_j}) is omitted.
    ``extra`` enlarges the exact box of the expansion beyond what the
    residue needs; the result must not depend on it.
    """
    for l in f.inv_one_minus_exp:
        _check_pole(l)
    for l, _ in f.inv_two_sinh_half:
        _check_pole(l)
    n = basis.r - 1
    g = f.map_forms(lambda l: _to_basis(l, basis))
    ber = []
    for j in range(n):
        if j in skip:
            continue
        e = [0] * n
        e[j] = 1
        ber.append(LinearForm(e))
    g = g * FactorExpr(1, (), ber, ())
    series = expand_factor(g, (extra - 1,) * n)
    return residue_polynomial(series)


def iber(basis, f, a, extra=0, skip=()):
    poly = iber_polynomial(basis, f, extra, tuple(skip))
    return evaluate_polynomial(poly, coords_in_basis(WeightVector(a), basis))


def bernoulli_functional(bases, f, a, c, extra=0):
    """sum over B of iber(B, f, a - [c]_B)."""
    c = WeightVector(c)
    if not is_regular(c):
        raise WallError("point on a wall")
    a = WeightVector(a)
    total = Fraction(0)
    for b in bases:
        total += iber(b, f, a - integer_part(c, b), extra)
    return total


def check_chamber(c):
    c = WeightVector(c)
    if not is_regular(c):
        raise WallError("chamber point %s is on a wall" % (list(c),))
    return c


def p_c(inp, c, bases=None, extra=0, sign_flip=False):
    """Chamber polynomial evaluated at (k, lam) for the chamber of c."""
    c = check_chamber(c)
    if bases is None:
        bases = hamiltonian_basis(1, inp.r)
    f = weyl_factor(inp.r, inp.g, inp.k_hat)
    value = n_tilde(inp.r, inp.g, inp.k) * bernoulli_functional(bases, f, inp.point, c, extra)
    return -value if sign_flip else value


def ver_residue(inp, bases=None, side=1, target="hat", extra=0, sign_flip=False):
    c = resolve_chamber(inp.k, inp.lam, target, side)
    return p_c(inp, c, bases, extra, sign_flip)


def wall_between(c_plus, c_minus):
    """The wall separating two adjacent chambers, c_plus on the upper side."""
    c_plus, c_minus = check_chamber(c_plus), check_chamber(c_minus)
    r = c_plus.r
    sp, sm = chamber_signature(c_plus), chamber_signature(c_minus)
    diffs = [(s, a, b) for s, a, b in zip(proper_subsets(r), sp, sm) if a != b]
    if len(diffs) != 1 or diffs[0][1] != diffs[0][2] + 1:
        raise ValueError("chambers are not adjacent across a single wall")
    s, level, _ = diffs[0]
    return Wall(Partition.from_prime(s, r), level)


def wallcross_full(inp, c_plus, c_minus, bases=None, extra=0):
    """p at c_plus minus p at c_minus, for chambers adjacent across one wall."""
    c_plus, c_minus = check_chamber(c_plus), check_chamber(c_minus)
    if chamber_signature(c_plus) == chamber_signature(c_minus):
        return Fraction(0)
    wall_between(c_plus, c_minus)
    return p_c(inp, c_plus, bases, extra) - p_c(inp, c_minus, bases, extra)


def default_block_bases(partition):
    order = link_first_order(partition)
    return block_nbc_basis(partition.prime, order), block_nbc_basis(partition.double_prime, order)


def wallcross_reduced(inp, wall, c_plus, dp=None, dpp=None, extra=0, level_factor=False):
    """Wall-crossing term as one iterated residue with the link factor removed.

    The sum runs over composed bases (link, B', B'') with link the root
    (max(prime), r); the outermost variable is the link coordinate and no
    Bernoulli factor is attached to it.  ``level_factor`` multiplies by
    k + r, an alternative normalisation kept for comparison.
    """
    c_plus = check_chamber(c_plus)
    part = wall.partition
    if subset_sum(c_plus, part.prime) // 1 != wall.level:
        raise ValueError("c_plus is not on the upper side of the wall")
    if dp is None or dpp is None:
        ddp, ddpp = default_block_bases(part)
        dp = ddp if dp is None else dp
        dpp = ddpp if dpp is None else dpp
    link = Root(max(part.prime), part.r)
    bases = compose_wall_basis(link, dp, dpp)
    f = weyl_factor(inp.r, inp.g, inp.k_hat)
    a = inp.point
    total = Fraction(0)
    for b in bases:
        total += iber(b, f, a - integer_part(c_plus, b), extra, skip=(0,))
    total *= n_tilde(inp.r, inp.g, inp.k)
    if level_factor:
        total *= inp.k_hat
    return total
