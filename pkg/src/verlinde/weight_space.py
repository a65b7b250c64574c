"""The space V* of zero-sum r-vectors, its lattice, roots and chambers.

Weights are tuples of Fractions (``WeightVector``) or ints
(``IntegralWeight``).  Roots are directed pairs (i, j) standing for
x_i - x_j, with 1-based indices.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, floor, lcm

__all__ = [
    "WeightVector",
    "IntegralWeight",
    "Root",
    "OrderedBasis",
    "Partition",
    "Wall",
    "rho",
    "coords_in_basis",
    "integer_part",
    "fractional_part",
    "is_regular",
    "in_simplex",
    "in_closed_simplex",
    "same_chamber",
    "chamber_signature",
    "wall_set",
    "resolve_chamber",
    "subset_sum",
    "proper_subsets",
    "parse_weight",
    "admissible_weights",
    "WallError",
    "simplex_vertices",
    "wall_meets_simplex",
    "points_across_wall",
    "perturb_into_chamber",
]


class WallError(ValueError):
    """A point that was required to be regular lies on a wall."""


class WeightVector(tuple):
    """A point of V*: r rationals summing to zero."""

    def __new__(cls, entries):
        vals = tuple(Fraction(e) for e in entries)
        if len(vals) < 2:
            raise ValueError("need at least two entries")
        if sum(vals) != 0:
            raise ValueError("entries must sum to 0, got %s" % sum(vals))
        return super().__new__(cls, vals)

    @property
    def r(self):
        return len(self)

    def __add__(self, other):
        return WeightVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return WeightVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return WeightVector(-a for a in self)

    def scale(self, q):
        q = Fraction(q)
        return WeightVector(a * q for a in self)

    def is_integral(self):
        return all(a.denominator == 1 for a in self)

    def __repr__(self):
        return "WeightVector(%s)" % ", ".join(str(a) for a in self)


class IntegralWeight(WeightVector):
    """A point of the lattice: r integers summing to zero."""

    def __new__(cls, entries):
        vals = tuple(Fraction(e) for e in entries)
        if any(v.denominator != 1 for v in vals):
            raise ValueError("entries must be integers")
        return super().__new__(cls, vals)

    def ints(self):
        return tuple(int(a) for a in self)

    def __repr__(self):
        return "IntegralWeight(%s)" % ", ".join(str(a) for a in self)


class Root(tuple):
    """The root x_i - x_j, stored as the directed pair (i, j)."""

    def __new__(cls, i, j):
        i, j = int(i), int(j)
        if i == j or i < 1 or j < 1:
            raise ValueError("bad root indices (%d, %d)" % (i, j))
        return super().__new__(cls, (i, j))

    @property
    def i(self):
        return self[0]

    @property
    def j(self):
        return self[1]

    def vector(self, r):
        v = [Fraction(0)] * r
        v[self.i - 1] += 1
        v[self.j - 1] -= 1
        return WeightVector(v)

    def edge(self):
        return frozenset(self)

    def permuted(self, sigma):
        """Apply a permutation given as a dict or 1-based tuple of images."""
        return Root(_image(sigma, self.i), _image(sigma, self.j))

    def __neg__(self):
        return Root(self.j, self.i)

    def __repr__(self):
        return "a%d%d" % self if max(self) < 10 else "a(%d,%d)" % self


def _image(sigma, i):
    if isinstance(sigma, dict):
        return sigma.get(i, i)
    return sigma[i - 1]


class OrderedBasis(tuple):
    """An ordered sequence of r-1 roots forming a basis of V*.

    The roots form a basis exactly when the corresponding undirected edges
    form a spanning tree on {1..r}; that is checked on construction.
    """

    def __new__(cls, roots, r=None):
        roots = tuple(x if isinstance(x, Root) else Root(*x) for x in roots)
        if r is None:
            r = len(roots) + 1
        if len(roots) != r - 1:
            raise ValueError("a basis of V* for r=%d needs %d roots" % (r, r - 1))
        if any(max(x) > r for x in roots):
            raise ValueError("root index exceeds r=%d" % r)
        parent = list(range(r + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x in roots:
            a, b = find(x.i), find(x.j)
            if a == b:
                raise ValueError("roots %r are linearly dependent" % (roots,))
            parent[a] = b
        self = super().__new__(cls, roots)
        return self

    @property
    def r(self):
        return len(self) + 1

    def permuted(self, sigma):
        return OrderedBasis([x.permuted(sigma) for x in self], self.r)

    def to_json(self):
        return [[x.i, x.j] for x in self]

    def __repr__(self):
        return "OrderedBasis(%s)" % ", ".join(repr(x) for x in self)


class Partition:
    """A splitting {1..r} = prime | double_prime with r in double_prime."""

    __slots__ = ("prime", "double_prime")

    def __init__(self, prime, double_prime):
        p1 = tuple(sorted(set(prime)))
        p2 = tuple(sorted(set(double_prime)))
        if not p1 or not p2:
            raise ValueError("both blocks must be nonempty")
        if set(p1) & set(p2):
            raise ValueError("blocks must be disjoint")
        r = len(p1) + len(p2)
        if set(p1) | set(p2) != set(range(1, r + 1)):
            raise ValueError("blocks must cover 1..%d" % r)
        if r not in p2:
            raise ValueError("index r must lie in the second block")
        self.prime = p1
        self.double_prime = p2

    @classmethod
    def from_prime(cls, prime, r):
        rest = [i for i in range(1, r + 1) if i not in set(prime)]
        return cls(prime, rest)

    @property
    def r(self):
        return len(self.prime) + len(self.double_prime)

    def separates(self, root):
        return (root.i in self.prime) != (root.j in self.prime)

    def _key(self):
        return (self.prime, self.double_prime)

    def __eq__(self, other):
        return isinstance(other, Partition) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "Partition(%s, %s)" % (list(self.prime), list(self.double_prime))


class Wall:
    """The affine hyperplane S_{P,l}: sum of c_i over P.prime equals l."""

    __slots__ = ("partition", "level")

    def __init__(self, partition, level):
        self.partition = partition
        self.level = int(level)

    def value(self, c):
        return subset_sum(c, self.partition.prime)

    def contains(self, c):
        return self.value(c) == self.level

    def _key(self):
        return (self.partition._key(), self.level)

    def __eq__(self, other):
        return isinstance(other, Wall) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self._key() < other._key()

    def __repr__(self):
        return "Wall(%s, %s, %d)" % (list(self.partition.prime), list(self.partition.double_prime), self.level)


def rho(r):
    """(r-1, r-3, ..., 1-r) / 2."""
    if r < 2:
        raise ValueError("r must be at least 2")
    return WeightVector(Fraction(r + 1 - 2 * i, 2) for i in range(1, r + 1))


def subset_sum(c, subset):
    return sum((c[i - 1] for i in subset), Fraction(0))


@lru_cache(maxsize=None)
def proper_subsets(r):
    """Nonempty subsets of {1..r-1}, i.e. the first blocks of all partitions."""
    out = []
    for size in range(1, r):
        out.extend(combinations(range(1, r), size))
    return tuple(out)


@lru_cache(maxsize=4096)
def _inverse_matrix(basis):
    """Rows: linear functionals returning basis coordinates from entries 1..r-1."""
    r = basis.r
    n = r - 1
    # column j is the basis root, restricted to its first n entries
    mat = [[Fraction(0)] * n for _ in range(n)]
    for j, root in enumerate(basis):
        v = root.vector(r)
        for i in range(n):
            mat[i][j] = v[i]
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def coords_in_basis(a, basis):
    """Coordinates m with a = sum_j m_j basis[j]."""
    inv = _inverse_matrix(basis)
    head = [Fraction(x) for x in a[:-1]]
    return tuple(sum((row[i] * head[i] for i in range(len(head))), Fraction(0)) for row in inv)


def _combine(coeffs, basis):
    r = basis.r
    out = [Fraction(0)] * r
    for m, root in zip(coeffs, basis):
        out[root.i - 1] += m
        out[root.j - 1] -= m
    return out


def fractional_part(a, basis):
    """{a}_B: the point sum_j frac(m_j) basis[j]."""
    m = coords_in_basis(a, basis)
    return WeightVector(_combine([x - floor(x) for x in m], basis))


def integer_part(a, basis):
    """[a]_B = a - {a}_B, a lattice point."""
    m = coords_in_basis(a, basis)
    return IntegralWeight(_combine([floor(x) for x in m], basis))


def is_regular(c):
    """No nonempty proper subset of entries has an integral sum."""
    r = len(c)
    for s in proper_subsets(r):
        if subset_sum(c, s).denominator == 1:
            return False
    return True


def in_simplex(c):
    """Strictly decreasing entries with c_1 - c_r < 1."""
    return all(c[i] > c[i + 1] for i in range(len(c) - 1)) and c[0] - c[-1] < 1


def in_closed_simplex(c):
    return all(c[i] >= c[i + 1] for i in range(len(c) - 1)) and c[0] - c[-1] <= 1


def chamber_signature(c):
    """Floors of the subset sums over first blocks of all partitions."""
    return tuple(floor(subset_sum(c, s)) for s in proper_subsets(len(c)))


def same_chamber(a, b):
    if not is_regular(a) or not is_regular(b):
        raise WallError("point on a wall")
    return chamber_signature(a) == chamber_signature(b)


def _check_closure(k, lam):
    if k < 1:
        raise ValueError("level must be positive")
    if not in_closed_simplex(lam.scale(Fraction(1, k))):
        raise ValueError("lambda/k = %s is outside the closed simplex" % (list(lam.scale(Fraction(1, k))),))


def wall_set(k, lam):
    """Walls S_{P,l} with l between (lam/k)_P and (hat lam/hat k)_P, inclusive."""
    lam = IntegralWeight(lam)
    _check_closure(k, lam)
    r = lam.r
    a = lam.scale(Fraction(1, k))
    b = (lam + rho(r)).scale(Fraction(1, k + r))
    walls = set()
    for s in proper_subsets(r):
        lo, hi = sorted((subset_sum(a, s), subset_sum(b, s)))
        part = Partition.from_prime(s, r)
        for l in range(_ceil(lo), floor(hi) + 1):
            walls.add(Wall(part, l))
    return walls


def _ceil(q):
    return -floor(-q)


def _target_point(k, lam, target):
    r = lam.r
    if target == "lam_over_k":
        return lam.scale(Fraction(1, k))
    if target == "hat":
        return (lam + rho(r)).scale(Fraction(1, k + r))
    raise ValueError("target must be 'lam_over_k' or 'hat'")


def _tilt(r, base):
    w = [-Fraction(base) ** i for i in range(1, r + 1)]
    mean = sum(w) / r
    return [x - mean for x in w]


def perturb_into_chamber(t, side=1, scale=1):
    """A regular point of the open simplex whose chamber closure contains t.

    ``t`` must lie in the closed simplex.  The push goes toward the interior
    point rho/r, tilted by a fixed generic vector whose sign is ``side``.
    The step starts at ``scale`` and is halved until the result is regular,
    strictly inside the simplex, and has a floor signature compatible with t.
    """
    t = WeightVector(t)
    r = t.r
    if not in_closed_simplex(t):
        raise ValueError("point outside the closed simplex")
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    if is_regular(t) and in_simplex(t):
        return t
    centre = rho(r).scale(Fraction(1, r))
    on_boundary = not in_simplex(t)
    sums = [subset_sum(t, s) for s in proper_subsets(r)]
    for base in (3, 5, 7, 11):
        w = _tilt(r, base)
        if on_boundary:
            eta = Fraction(1, 2 * r * base ** r)
            v = [(ci - ti) + side * eta * wi for ci, ti, wi in zip(centre, t, w)]
        else:
            v = [side * wi for wi in w]
        eps = Fraction(scale)
        for _ in range(200):
            c = WeightVector(ti + eps * vi for ti, vi in zip(t, v))
            if is_regular(c) and in_simplex(c) and _compatible(sums, c):
                return c
            eps /= 2
    raise WallError("could not resolve a chamber near %s" % (list(t),))


def _compatible(sums, c):
    for ts, s in zip(sums, proper_subsets(c.r)):
        fc = floor(subset_sum(c, s))
        if ts.denominator == 1:
            if fc not in (ts - 1, ts):
                return False
        elif fc != floor(ts):
            return False
    return True


def resolve_chamber(k, lam, target="hat", side=1):
    """A regular point of the simplex in a chamber whose closure contains the target.

    ``target`` selects lam/k or (lam+rho)/(k+r).  Points already regular and
    strictly inside the simplex are returned unchanged.  ``side`` flips the
    tilt direction, giving the representative on the other side of any wall
    through the target.
    """
    lam = IntegralWeight(lam)
    _check_closure(k, lam)
    t = _target_point(k, lam, target)
    r = lam.r
    denom = 1
    for x in t:
        denom = lcm(denom, x.denominator)
    scale = Fraction(1, 2 * factorial(r) * (k + r) * denom)
    return perturb_into_chamber(t, side, scale)


def parse_weight(text, integral=True):
    """Parse '1,0,-1' (integers) or '1/3,1/3,-2/3' (rationals)."""
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    if not parts:
        raise ValueError("empty weight")
    vals = [Fraction(p) for p in parts]
    return IntegralWeight(vals) if integral else WeightVector(vals)


def admissible_weights(r, k):
    """All lattice points lam with lam/k in the closed simplex, lexicographic order."""
    out = []

    def rec(prefix, remaining):
        if remaining == 1:
            last = -sum(prefix)
            cand = prefix + [last]
            if cand[-2] >= last and cand[0] - last <= k:
                out.append(IntegralWeight(cand))
            return
        if not prefix:
            lo, hi = 0, k
        else:
            lo, hi = prefix[0] - k, prefix[-1]
        for x in range(lo, hi + 1):
            rec(prefix + [x], remaining - 1)

    rec([], r)
    out.sort(key=lambda w: tuple(w))
    return out


def simplex_vertices(r):
    """Vertices of the closed simplex: 0 and the points with j entries 1 - j/r."""
    out = []
    for j in range(r):
        hi = Fraction(r - j, r)
        lo = Fraction(-j, r)
        out.append(WeightVector([hi] * j + [lo] * (r - j)) if j else WeightVector([0] * r))
    return out


def wall_meets_simplex(wall):
    """True iff the wall passes through the open simplex."""
    vals = [wall.value(v) for v in simplex_vertices(wall.partition.r)]
    return min(vals) < wall.level < max(vals)


def _wall_normal(partition):
    r = partition.r
    share = Fraction(len(partition.prime), r)
    return [(1 if i in partition.prime else 0) - share for i in range(1, r + 1)]


def points_across_wall(wall, inside=True, attempt_limit=40):
    """Regular points (c_plus, c_minus) in adjacent chambers across the wall.

    c_plus lies on the side where the floor of the first-block sum equals
    the wall level.  With ``inside`` the points are taken in the open
    simplex, which requires the wall to meet it.
    """
    part = wall.partition
    r = part.r
    normal = _wall_normal(part)
    gain = Fraction(len(part.prime) * len(part.double_prime), r)
    if inside and not wall_meets_simplex(wall):
        raise ValueError("wall %r does not meet the open simplex" % (wall,))
    verts = simplex_vertices(r)
    for attempt in range(attempt_limit):
        if inside:
            weights = [Fraction(1, p) for p in _PRIMES[attempt: attempt + r]]
            total = sum(weights)
            base = WeightVector(sum((w * v[i] for w, v in zip(weights, verts)), Fraction(0)) / total
                                for i in range(r))
            bv = wall.value(base)
            if bv == wall.level:
                q = base
            else:
                if bv > wall.level:
                    far = min(verts, key=wall.value)
                else:
                    far = max(verts, key=wall.value)
                t = (bv - wall.level) / (bv - wall.value(far))
                q = base + (far - base).scale(t)
        else:
            base = WeightVector(
                [Fraction(1, p) for p in _PRIMES[attempt: attempt + r - 1]]
                + [-sum(Fraction(1, p) for p in _PRIMES[attempt: attempt + r - 1])])
            t = (wall.level - wall.value(base)) / gain
            q = base + WeightVector(normal).scale(t)
        eps = Fraction(1, 1000)
        for _ in range(30):
            cp = q + WeightVector(normal).scale(eps)
            cm = q - WeightVector(normal).scale(eps)
            if (is_regular(cp) and is_regular(cm)
                    and (not inside or (in_simplex(cp) and in_simplex(cm)))
                    and _single_step(cp, cm, part.prime, wall.level)):
                return cp, cm
            eps /= 3
    raise WallError("no generic crossing found for %r" % (wall,))


def _single_step(cp, cm, prime, level):
    subsets = proper_subsets(cp.r)
    for s, a, b in zip(subsets, chamber_signature(cp), chamber_signature(cm)):
        if s == prime:
            if a != level or b != level - 1:
                return False
        elif a != b:
            return False
    return True


_PRIMES = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
           179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257,
           263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349,
           353, 359, 367, 373, 379]
