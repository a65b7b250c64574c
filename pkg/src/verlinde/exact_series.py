"""Exact iterated Laurent series in variables y_1 >> y_2 >> ... >> y_n.

A series is expanded in the region |y_n| << ... << |y_1|, which is the
expansion used to evaluate iterated residues
Res_{y_1=0} ... Res_{y_n=0}: the innermost residue is taken in y_n with the
other variables held fixed.  Every factor the residue engine needs is a
function of a single linear form l = sum_j c_j y_j; such a factor is written
as a univariate Laurent series in l and each power l^d is expanded around the
lex-leading monomial of l.

Truncation is tracked per variable.  A series with ``trunc = T`` is exact on
the box {e : e_j <= T_j for all j}; ``floor`` holds per-variable lower bounds
on the exponents of the true series inside that box.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

__all__ = [
    "LinearForm",
    "FactorExpr",
    "IteratedLaurentSeries",
    "PoleError",
    "lex_sign",
    "bernoulli",
    "expand_factor",
    "iterated_residue",
    "residue_polynomial",
    "evaluate_polynomial",
]


class PoleError(ValueError):
    """An inverse factor vanishes identically."""


class LinearForm:
    """A linear form constant_multiplier * sum_j coeffs[j] * y_j.

    The multiplier is folded into the coefficients at construction, so two
    forms are equal exactly when their effective coefficients agree.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, constant_multiplier=1):
        q = Fraction(constant_multiplier)
        self.coeffs = tuple(Fraction(c) * q for c in coeffs)

    @property
    def constant_multiplier(self):
        return Fraction(1)

    @property
    def nvars(self):
        return len(self.coeffs)

    def leading(self):
        """Index and coefficient of the first nonzero coefficient, or None."""
        for j, c in enumerate(self.coeffs):
            if c:
                return j, c
        return None

    def is_zero(self):
        return not any(self.coeffs)

    def scaled(self, q):
        q = Fraction(q)
        return LinearForm(c * q for c in self.coeffs)

    def __neg__(self):
        return LinearForm(-c for c in self.coeffs)

    def __add__(self, other):
        return LinearForm(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return LinearForm(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "LinearForm(%s)" % ", ".join(str(c) for c in self.coeffs)


def lex_sign(form):
    """Sign of the lex-leading coefficient: 1, -1, or 0 for the zero form."""
    lead = form.leading()
    if lead is None:
        return 0
    return 1 if lead[1] > 0 else -1


class FactorExpr:
    """Product  scalar * prod exp(l) * prod 1/(1 - e^l) * prod (2 sinh(l/2))^(-m).

    The forms may live in any coordinate system; ``map_forms`` rewrites them.
    """

    __slots__ = ("scalar", "exp_factors", "inv_one_minus_exp", "inv_two_sinh_half")

    def __init__(self, scalar=1, exp_factors=(), inv_one_minus_exp=(), inv_two_sinh_half=()):
        self.scalar = Fraction(scalar)
        self.exp_factors = tuple(exp_factors)
        self.inv_one_minus_exp = tuple(inv_one_minus_exp)
        self.inv_two_sinh_half = tuple((l, int(m)) for l, m in inv_two_sinh_half)
        for l in self.inv_one_minus_exp:
            if l.is_zero():
                raise PoleError("pole on all of V")
        for l, m in self.inv_two_sinh_half:
            if m <= 0:
                raise ValueError("sinh multiplicity must be positive, got %d" % m)
            if l.is_zero():
                raise PoleError("pole on all of V")

    @property
    def pole_order(self):
        return len(self.inv_one_minus_exp) + sum(m for _, m in self.inv_two_sinh_half)

    def map_forms(self, fn):
        return FactorExpr(
            self.scalar,
            [fn(l) for l in self.exp_factors],
            [fn(l) for l in self.inv_one_minus_exp],
            [(fn(l), m) for l, m in self.inv_two_sinh_half],
        )

    def __mul__(self, other):
        return FactorExpr(
            self.scalar * other.scalar,
            self.exp_factors + other.exp_factors,
            self.inv_one_minus_exp + other.inv_one_minus_exp,
            self.inv_two_sinh_half + other.inv_two_sinh_half,
        )

    def _key(self):
        return (
            self.scalar,
            self.exp_factors,
            self.inv_one_minus_exp,
            self.inv_two_sinh_half,
        )

    def __eq__(self, other):
        return isinstance(other, FactorExpr) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "FactorExpr(scalar=%s, exp=%r, ber=%r, sinh=%r)" % self._key()


# ---------------------------------------------------------------------------
# univariate coefficient sequences
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n):
    """Bernoulli number B_n with B_1 = -1/2, i.e. t/(e^t - 1) = sum B_n t^n/n!."""
    if n < 0:
        raise ValueError("negative index")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    acc = Fraction(0)
    binom = 1
    for k in range(n):
        acc += binom * bernoulli(k)
        binom = binom * (n + 1 - k) // (k + 1)
    return -acc / (n + 1)


@lru_cache(maxsize=None)
def _sinh_unit_inverse_power(m, length):
    """First ``length`` coefficients of (t / (2 sinh(t/2)))^m."""
    # 2 sinh(t/2) / t = sum t^(2n) / (4^n (2n+1)!)
    base = [Fraction(0)] * length
    for n in range(0, (length + 1) // 2):
        base[2 * n] = Fraction(1, 4 ** n * factorial(2 * n + 1))
    inv = [Fraction(0)] * length
    inv[0] = Fraction(1)
    for i in range(1, length):
        inv[i] = -sum(base[k] * inv[i - k] for k in range(1, i + 1))
    result = [Fraction(0)] * length
    result[0] = Fraction(1)
    for _ in range(m):
        result = [sum(result[k] * inv[i - k] for k in range(i + 1)) for i in range(length)]
    return tuple(result)


def _laurent_coefficients(kind, mult, dmin, dmax):
    """Coefficients c_d, d in [dmin, dmax], of the univariate factor in t."""
    out = {}
    if kind == "exp":
        for d in range(max(dmin, 0), dmax + 1):
            out[d] = Fraction(1, factorial(d))
    elif kind == "ber":
        # 1/(1 - e^t) = -(1/t) * t/(e^t - 1)
        for d in range(max(dmin, -1), dmax + 1):
            out[d] = -bernoulli(d + 1) / factorial(d + 1)
    elif kind == "sinh":
        # (2 sinh(t/2))^(-m) = t^(-m) (t / 2 sinh(t/2))^m
        if dmax >= -mult:
            unit = _sinh_unit_inverse_power(mult, dmax + mult + 1)
            for d in range(max(dmin, -mult), dmax + 1):
                if unit[d + mult]:
                    out[d] = unit[d + mult]
    else:
        raise ValueError(kind)
    return {d: c for d, c in out.items() if c}


@lru_cache(maxsize=None)
def _gen_binom(d, s):
    """Generalised binomial coefficient C(d, s) for integer d, s >= 0."""
    num = 1
    for i in range(s):
        num *= d - i
    return num // factorial(s)


def _compositions(bounds, total):
    """Tuples k with 0 <= k_i <= bounds[i] and sum k = total."""
    if not bounds:
        if total == 0:
            yield ()
        return
    head, rest = bounds[0], bounds[1:]
    room = sum(rest)
    for k in range(max(0, total - room), min(head, total) + 1):
        for tail in _compositions(rest, total - k):
            yield (k,) + tail


# ---------------------------------------------------------------------------
# series type
# ---------------------------------------------------------------------------

class IteratedLaurentSeries:
    """Sparse iterated Laurent series with per-variable truncation."""

    __slots__ = ("terms", "trunc", "floor")

    def __init__(self, terms, trunc, floor=None):
        self.trunc = tuple(trunc)
        self.terms = {
            e: Fraction(c)
            for e, c in terms.items()
            if c and all(x <= t for x, t in zip(e, self.trunc))
        }
        if floor is None:
            floor = self._observed_floor()
        self.floor = tuple(floor)

    def _observed_floor(self):
        n = len(self.trunc)
        lows = [t + 1 for t in self.trunc]
        for e in self.terms:
            for j in range(n):
                if e[j] < lows[j]:
                    lows[j] = e[j]
        return lows

    @property
    def nvars(self):
        return len(self.trunc)

    @classmethod
    def one(cls, nvars, trunc):
        return cls({(0,) * nvars: 1}, trunc, (0,) * nvars)

    def coefficient(self, exps):
        exps = tuple(exps)
        if any(x > t for x, t in zip(exps, self.trunc)):
            raise ValueError("exponent %r outside the exact box %r" % (exps, self.trunc))
        return self.terms.get(exps, Fraction(0))

    def __add__(self, other):
        trunc = tuple(min(a, b) for a, b in zip(self.trunc, other.trunc))
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        floor = tuple(min(a, b) for a, b in zip(self.floor, other.floor))
        return IteratedLaurentSeries(terms, trunc, floor)

    def __neg__(self):
        return IteratedLaurentSeries({e: -c for e, c in self.terms.items()}, self.trunc, self.floor)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q):
        q = Fraction(q)
        return IteratedLaurentSeries({e: q * c for e, c in self.terms.items()}, self.trunc, self.floor)

    def __mul__(self, other):
        if not isinstance(other, IteratedLaurentSeries):
            return self.scale(other)
        trunc = tuple(
            min(ta + fb, tb + fa)
            for ta, tb, fa, fb in zip(self.trunc, other.trunc, self.floor, other.floor)
        )
        floor = tuple(a + b for a, b in zip(self.floor, other.floor))
        return IteratedLaurentSeries(_multiply(self.terms, other.terms, trunc), trunc, floor)

    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, IteratedLaurentSeries)
            and self.trunc == other.trunc
            and self.terms == other.terms
        )

    def restricted(self, trunc):
        """The same series viewed on a smaller box."""
        trunc = tuple(min(a, b) for a, b in zip(self.trunc, trunc))
        return IteratedLaurentSeries(self.terms, trunc, self.floor)

    def __repr__(self):
        body = " + ".join(
            "%s*y^%s" % (c, e) for e, c in sorted(self.terms.items(), reverse=True)
        )
        return "IteratedLaurentSeries(%s; trunc=%s)" % (body or "0", self.trunc)


def _multiply(a, b, trunc, prune=None):
    out = {}
    n = len(trunc)
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(ea[j] + eb[j] for j in range(n))
            if any(e[j] > trunc[j] for j in range(n)):
                continue
            if prune is not None and prune(e):
                continue
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# expansion of single factors
# ---------------------------------------------------------------------------

class _Elementary:
    """One factor F(l) = sum_d c_d l^d with pole order ``pole``."""

    __slots__ = ("kind", "form", "mult", "pole", "lead", "support")

    def __init__(self, kind, form, mult=1):
        self.kind = kind
        self.form = form
        self.mult = mult
        self.pole = {"exp": 0, "ber": 1, "sinh": mult}[kind]
        self.lead = form.leading()
        self.support = [j for j, c in enumerate(form.coeffs) if c]

    def floor_for(self, j, caps):
        """Lower bound on the y_j exponent given caps on later variables."""
        if self.lead is None or j != self.lead[0] or self.pole == 0:
            return 0
        return -self.pole - sum(caps[i] for i in self.support if i > j)

    def expand(self, caps, dmax):
        nvars = len(caps)
        if self.lead is None:
            # only exp(0) = 1 reaches here
            return IteratedLaurentSeries.one(nvars, caps)
        m, am = self.lead
        later = [i for i in self.support if i > m]
        ratios = [self.form.coeffs[i] / am for i in later]
        bounds = [caps[i] for i in later]
        if any(b < 0 for b in bounds):
            # every term has nonnegative exponents in these variables
            return IteratedLaurentSeries({}, caps, [c + 1 for c in caps])
        coeffs = _laurent_coefficients(self.kind, self.mult, -self.pole, dmax)
        terms = {}
        for s in range(sum(bounds) + 1):
            for ks in _compositions(bounds, s):
                mono = Fraction(factorial(s))
                for k, q in zip(ks, ratios):
                    mono *= q ** k / factorial(k)
                base = [0] * nvars
                for i, k in zip(later, ks):
                    base[i] = k
                for d, c in coeffs.items():
                    if d >= 0 and s > d:
                        continue
                    if d - s > caps[m]:
                        continue
                    e = list(base)
                    e[m] = d - s
                    e = tuple(e)
                    terms[e] = terms.get(e, 0) + c * am ** d * _gen_binom(d, s) * mono
        floor = [0] * nvars
        floor[m] = min([e[m] for e in terms] + [caps[m] + 1])
        return IteratedLaurentSeries(terms, caps, floor)


def _elementaries(f):
    items = []
    for l in f.exp_factors:
        items.append(_Elementary("exp", l))
    for l in f.inv_one_minus_exp:
        if lex_sign(l) < 0:
            # 1/(1 - e^l) = 1 - 1/(1 - e^(-l)); handled by the caller
            raise AssertionError("normalise signs first")
        items.append(_Elementary("ber", l))
    for l, m in f.inv_two_sinh_half:
        items.append(_Elementary("sinh", l, m))
    return items


def _normalised(f):
    """Split off lex-negative Bernoulli factors and sign-normalise sinh factors.

    Returns a list of (sign, FactorExpr) whose sum equals ``f`` and whose
    inverse factors all have lex-positive arguments.
    """
    scalar = f.scalar
    sinh = []
    for l, m in f.inv_two_sinh_half:
        if lex_sign(l) < 0:
            l = -l
            if m % 2:
                scalar = -scalar
        sinh.append((l, m))
    pieces = [(scalar, [])]
    for l in f.inv_one_minus_exp:
        if lex_sign(l) > 0:
            pieces = [(s, bers + [l]) for s, bers in pieces]
        else:
            # 1/(1 - e^l) = 1 - 1/(1 - e^{-l})
            pieces = [(s, bers) for s, bers in pieces] + [(-s, bers + [-l]) for s, bers in pieces]
    return [FactorExpr(s, f.exp_factors, bers, sinh) for s, bers in pieces]


def _plan_caps(items, target):
    """Per-factor caps making the product exact on the box e <= target."""
    n = len(target)
    caps = [[0] * n for _ in items]
    for j in reversed(range(n)):
        floors = [it.floor_for(j, caps[i]) for i, it in enumerate(items)]
        total = sum(floors)
        for i in range(len(items)):
            caps[i][j] = target[j] - (total - floors[i])
    return caps


def _expand_product(items, target, nvars, scalar=1):
    target = tuple(target)
    if not items:
        return IteratedLaurentSeries.one(nvars, target).scale(scalar)
    caps = _plan_caps(items, target)
    poles = [it.pole for it in items]
    degree_room = sum(target) + sum(poles)
    series = [
        it.expand(tuple(caps[i]), degree_room - poles[i] + 0)
        for i, it in enumerate(items)
    ]
    # multiply the most singular factors last so pruning bites early
    order = sorted(range(len(series)), key=lambda i: (items[i].pole, len(series[i].terms)))
    series = [series[i] for i in order]
    rem_floor = [[0] * nvars for _ in range(len(series) + 1)]
    rem_pole = [0] * (len(series) + 1)
    for i in reversed(range(len(series))):
        rem_floor[i] = [a + b for a, b in zip(rem_floor[i + 1], series[i].floor)]
        rem_pole[i] = rem_pole[i + 1] + items[order[i]].pole
    wide = tuple(10 ** 9 for _ in range(nvars))
    acc = {(0,) * nvars: Fraction(scalar)}
    for i, s in enumerate(series):
        fl = rem_floor[i + 1]
        room = sum(target) + rem_pole[i + 1]

        def prune(e, fl=fl, room=room):
            if sum(e) > room:
                return True
            for j in range(nvars):
                if e[j] + fl[j] > target[j]:
                    return True
            return False

        acc = _multiply(acc, s.terms, wide, prune)
    return IteratedLaurentSeries(acc, target)


def expand_factor(f, trunc):
    """Expand a FactorExpr as an iterated Laurent series.

    ``trunc`` is an int (same bound for every variable) or a tuple of
    per-variable bounds; the result is exact for every monomial whose
    exponents are all at most the bound.
    """
    nvars = _nvars(f)
    if isinstance(trunc, int):
        trunc = (trunc,) * nvars
    total = None
    for piece in _normalised(f):
        s = _expand_product(_elementaries(piece), trunc, nvars, piece.scalar)
        total = s if total is None else total + s
    return total


def _nvars(f):
    for l in f.exp_factors + f.inv_one_minus_exp + tuple(l for l, _ in f.inv_two_sinh_half):
        return l.nvars
    raise ValueError("cannot infer the number of variables of a constant FactorExpr")


def iterated_residue(s):
    """Coefficient of y_1^-1 ... y_n^-1."""
    return s.coefficient((-1,) * s.nvars)


def residue_polynomial(s):
    """Iterated residue of s * exp(<a, y>) as a polynomial in a.

    Returns {m: coefficient of a^m}.  Requires s exact on the box e <= -1.
    """
    n = s.nvars
    if any(t < -1 for t in s.trunc):
        raise ValueError("series is not exact on the residue box")
    poly = {}
    for e, c in s.terms.items():
        if all(x <= -1 for x in e):
            m = tuple(-1 - x for x in e)
            denom = 1
            for k in m:
                denom *= factorial(k)
            poly[m] = poly.get(m, 0) + c / denom
    return {m: c for m, c in poly.items() if c}


def evaluate_polynomial(poly, point):
    point = [Fraction(p) for p in point]
    total = Fraction(0)
    powers = {}
    for m, c in poly.items():
        term = c
        for j, k in enumerate(m):
            if k:
                key = (j, k)
                if key not in powers:
                    powers[key] = point[j] ** k
                term *= powers[key]
        total += term
    return total
