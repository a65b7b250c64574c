"""Hecke index shifts, the affine Weyl group at level k, and rank-2 two-point sums."""

from fractions import Fraction
from functools import lru_cache

from .exact_series import FactorExpr, LinearForm, evaluate_polynomial, expand_factor, residue_polynomial
from .weight_space import IntegralWeight, WeightVector, rho

__all__ = [
    "LineBundleLabel",
    "hecke_shift",
    "Permutation",
    "AffineWeylElement",
    "affine_act",
    "theta_points",
    "theta_chambers",
    "stabilizer_generators",
    "h_tilde",
    "two_point_difference",
    "rank2_verlinde",
]


class LineBundleLabel:
    """Index data (d, k, lam) with sum(lam) = k d."""

    __slots__ = ("d", "k", "lam")

    def __init__(self, d, k, lam):
        lam = tuple(int(x) for x in lam)
        if sum(lam) != k * d:
            raise ValueError("sum of lam must equal k*d = %d, got %d" % (k * d, sum(lam)))
        self.d, self.k, self.lam = int(d), int(k), lam

    def _key(self):
        return (self.d, self.k, self.lam)

    def __eq__(self, other):
        return isinstance(other, LineBundleLabel) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "LineBundleLabel(d=%d, k=%d, lam=%s)" % (self.d, self.k, list(self.lam))


def hecke_shift(m, label):
    """Shift by m steps: lam'_i = lam_{i+m}, reading lam_{i+r} = lam_i - k.

    For m >= 0 this is (lam_{m+1}, ..., lam_r, lam_1 - k, ..., lam_m - k)
    with degree d - m; m = r subtracts k from every entry.  Negative m gives
    the inverse map.
    """
    r = len(label.lam)
    k = label.k
    out = []
    for i in range(r):
        q, j = divmod(i + m, r)
        out.append(label.lam[j] - q * k)
    return LineBundleLabel(label.d - m, k, out)


class Permutation(tuple):
    """A permutation of {1..r}, stored as the tuple of images."""

    def __new__(cls, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a permutation: %r" % (images,))
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, r):
        return cls(range(1, r + 1))

    @classmethod
    def transposition(cls, r, i, j):
        img = list(range(1, r + 1))
        img[i - 1], img[j - 1] = j, i
        return cls(img)

    def __call__(self, i):
        return self[i - 1]

    def compose(self, other):
        """self after other."""
        return Permutation(self[other[i] - 1] for i in range(len(self)))

    def inverse(self):
        inv = [0] * len(self)
        for i, s in enumerate(self):
            inv[s - 1] = i + 1
        return Permutation(inv)

    def sign(self):
        seen = [False] * len(self)
        sign = 1
        for start in range(len(self)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self[i] - 1
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def act(self, a):
        """Move entry i to position sigma(i)."""
        out = [None] * len(a)
        for i, x in enumerate(a):
            out[self[i] - 1] = x
        return type(a)(out) if isinstance(a, WeightVector) else tuple(out)


class AffineWeylElement:
    """The map lam -> sigma(lam + rho) - rho + (k + r) gamma."""

    __slots__ = ("sigma", "gamma")

    def __init__(self, sigma, gamma=None):
        self.sigma = Permutation(sigma)
        r = len(self.sigma)
        self.gamma = IntegralWeight(gamma if gamma is not None else [0] * r)
        if len(self.gamma) != r:
            raise ValueError("gamma has the wrong length")

    @property
    def r(self):
        return len(self.sigma)

    def __mul__(self, other):
        """Composition: (self * other) acts as self after other."""
        return AffineWeylElement(
            self.sigma.compose(other.sigma),
            IntegralWeight(a + b for a, b in zip(self.sigma.act(other.gamma), self.gamma)),
        )

    def sign(self):
        return self.sigma.sign()

    def __eq__(self, other):
        return (isinstance(other, AffineWeylElement)
                and self.sigma == other.sigma and self.gamma == other.gamma)

    def __hash__(self):
        return hash((self.sigma, self.gamma))

    def __repr__(self):
        return "AffineWeylElement(sigma=%s, gamma=%s)" % (list(self.sigma), list(self.gamma.ints()))


def affine_act(w, k, lam):
    """Level-k action on weights; integral input gives integral output."""
    r = w.r
    rh = rho(r)
    shifted = w.sigma.act(WeightVector(lam) + rh) - rh + w.gamma.scale(k + r)
    if all(x.denominator == 1 for x in shifted):
        return IntegralWeight(shifted)
    return shifted


def theta_points(r, k):
    """The two centres of the level-k action used for the anti-invariance."""
    kh = k + r
    rh = rho(r)
    ones = [Fraction(kh, r)] * r
    t1 = list(ones)
    t1[-1] -= kh
    tm = [-x for x in ones]
    tm[0] += kh
    return WeightVector(t1) - rh, WeightVector(tm) - rh


def theta_chambers(r):
    """Regular points (1/r)(1..1) - e_r and -(1/r)(1..1) + e_1."""
    plus = [Fraction(1, r)] * r
    plus[-1] -= 1
    minus = [-Fraction(1, r)] * r
    minus[0] += 1
    return WeightVector(plus), WeightVector(minus)


def _root(r, i, j):
    v = [0] * r
    v[i - 1] = 1
    v[j - 1] = -1
    return v


def stabilizer_generators(r, k, side):
    """Generators of the stabiliser of theta_{side}[k]; each is checked to fix it."""
    if r < 2:
        raise ValueError("r must be at least 2")
    t = Permutation.transposition
    if side == 1:
        gens = [AffineWeylElement(t(r, i, i + 1)) for i in range(1, r - 1)]
        gens.append(AffineWeylElement(t(r, r - 1, r), _root(r, r - 1, r)))
        centre = theta_points(r, k)[0]
    elif side == -1:
        gens = [AffineWeylElement(t(r, i, i + 1)) for i in range(2, r)]
        gens.append(AffineWeylElement(t(r, 1, 2), _root(r, 1, 2)))
        centre = theta_points(r, k)[1]
    else:
        raise ValueError("side must be +1 or -1")
    for gen in gens:
        if affine_act(gen, k, centre) != centre:
            raise AssertionError("generator %r does not fix the centre" % (gen,))
    return gens


@lru_cache(maxsize=None)
def _two_point_polynomial(k, g):
    """Res_u e^{a u} / ((2 sinh(u/2))^{2g} (1 - e^{u(k+2)})) as a polynomial in a."""
    u = LinearForm([1])
    f = FactorExpr(1, (), [u.scaled(k + 2)], [(u, 2 * g)])
    return residue_polynomial(expand_factor(f, -1))


@lru_cache(maxsize=None)
def _sinh_polynomial(g):
    u = LinearForm([1])
    f = FactorExpr(1, (), (), [(u, 2 * g)])
    return residue_polynomial(expand_factor(f, -1))


def _res(poly, a):
    return evaluate_polynomial(poly, [a])


def h_tilde(k, lam, mu, g, side):
    """Rank-2 two-point polynomial; ``side`` is 'gt' or 'lt'."""
    poly = _two_point_polynomial(k, g)
    pref = (-1) ** (g - 1) * (2 * k + 4) ** g
    first = _res(poly, lam + mu + 1)
    if side == "gt":
        second = _res(poly, lam - mu)
    elif side == "lt":
        second = _res(poly, lam - mu + k + 2)
    else:
        raise ValueError("side must be 'gt' or 'lt'")
    return pref * (first - second)


def two_point_difference(k, lam, mu, g):
    """(-1)^g (2k+4)^g Res e^{u(lam - mu)} / (2 sinh(u/2))^{2g}."""
    return (-1) ** g * (2 * k + 4) ** g * _res(_sinh_polynomial(g), lam - mu)


def rank2_verlinde(k, lam, g):
    """(-1)^{g-1}(2k+4)^g Res e^{u(lam + 1/2)} / ((2 sinh(u/2))^{2g-1}(1 - e^{u(k+2)}))."""
    u = LinearForm([1])
    f = FactorExpr(1, (), [u.scaled(k + 2)], [(u, 2 * g - 1)])
    poly = residue_polynomial(expand_factor(f, -1))
    return (-1) ** (g - 1) * (2 * k + 4) ** g * _res(poly, Fraction(2 * lam + 1, 2))
