"""Cross-check suites comparing independent routes and testing identities.

Every suite returns a SuiteResult; failures keep the first few
counterexamples so that a report can show them.
"""

import cmath
import random
from fractions import Fraction
from itertools import combinations
from math import factorial

from .diagonal_bases import (
    block_nbc_basis,
    compose_wall_basis,
    hamiltonian_basis,
    is_diagonal,
    link_first_order,
    nbc_basis,
    restrict_to_wall,
    wall_partitions,
)
from .residue_engine import (
    VerlindeInput,
    p_c,
    ver_residue,
    wallcross_full,
    wallcross_reduced,
)
from .symmetry import (
    affine_act,
    h_tilde,
    rank2_verlinde,
    stabilizer_generators,
    theta_chambers,
    two_point_difference,
)
from .verlinde_sum import DEFAULT_PRECISION, ver_sum
from .weight_space import (
    IntegralWeight,
    Partition,
    Wall,
    WeightVector,
    admissible_weights,
    in_simplex,
    is_regular,
    points_across_wall,
    resolve_chamber,
    wall_meets_simplex,
    wall_set,
)

__all__ = [
    "SuiteResult",
    "SUITES",
    "sum_vs_residue",
    "basis_independence",
    "chamber_independence",
    "wallcross_routes",
    "closed_forms",
    "anti_invariance",
    "two_point",
    "combinatorics",
    "truncation_stability",
    "run_suites",
    "criterion_one_grid",
]

MAX_COUNTEREXAMPLES = 5


class SuiteResult:
    def __init__(self, name):
        self.name = name
        self.checked = 0
        self.failures = []
        self.failure_count = 0
        self.notes = {}

    def record(self, ok, detail=None):
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_COUNTEREXAMPLES:
                self.failures.append(detail)

    @property
    def passed(self):
        return self.checked > 0 and self.failure_count == 0

    def as_dict(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failed": self.failure_count,
            "counterexamples": self.failures,
            "notes": self.notes,
        }

    def __repr__(self):
        return "SuiteResult(%s: %s, %d checked, %d failed)" % (
            self.name, "pass" if self.passed else "FAIL", self.checked, self.failure_count)


def _q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def criterion_one_grid():
    """(r, g, k) triples of the sum-versus-residue sweep."""
    grid = [(2, g, k) for g in (1, 2, 3) for k in range(1, 7)]
    grid += [(3, g, k) for g in (1, 2) for k in range(1, 5)]
    return grid


def sum_vs_residue(grid=None, precision=DEFAULT_PRECISION, tolerance=1e-10,
                   sign_flip=False, extra=0):
    res = SuiteResult("sum_vs_residue")
    worst = 0.0
    for r, g, k in grid if grid is not None else criterion_one_grid():
        for lam in admissible_weights(r, k):
            inp = VerlindeInput(r, g, k, lam)
            value = ver_residue(inp, extra=extra, sign_flip=sign_flip)
            s = ver_sum(r, g, k, lam, precision)
            worst = max(worst, s.err_bound)
            ok = value.denominator == 1 and value == s.nearest_int and s.err_bound < tolerance
            res.record(ok, {"r": r, "g": g, "k": k, "lam": list(lam.ints()),
                            "residue": _q(value), "sum": s.nearest_int, "err": s.err_bound})
    res.notes["max_error_bound"] = worst
    return res


def _random_regular_point(rng, r, inside=True):
    while True:
        if inside:
            cuts = sorted(Fraction(rng.randrange(1, 10 ** 6), 10 ** 6 + 1) for _ in range(r - 1))
            # differences of sorted cuts give decreasing steps with total span < 1
            c = [Fraction(0)]
            for cut in cuts:
                c.append(c[-1] - cut / r)
            mean = sum(c) / r
            c = WeightVector(x - mean for x in c)
            if in_simplex(c) and is_regular(c):
                return c
        else:
            head = [Fraction(rng.randrange(-10 ** 6, 10 ** 6), 10 ** 6 + 3) for _ in range(r - 1)]
            c = WeightVector(head + [-sum(head)])
            if is_regular(c):
                return c


def _random_weight(rng, r, k):
    pool = admissible_weights(r, k)
    if rng.random() < 0.5:
        return rng.choice(pool)
    head = [rng.randrange(-2 * k - 2, 2 * k + 3) for _ in range(r - 1)]
    return IntegralWeight(head + [-sum(head)])


def standard_basis_sets(r):
    """Hamiltonian bases at vertices 1 and 2 and nbc bases for two orders."""
    lex = list(combinations(range(1, r + 1), 2))
    rev = list(reversed(lex))
    sets = {
        "H1": hamiltonian_basis(1, r),
        "H2": hamiltonian_basis(min(2, r), r),
        "nbc_lex": nbc_basis(lex, r),
        "nbc_revlex": nbc_basis(rev, r),
    }
    return sets


def basis_independence(ranks=(2, 3, 4), samples=20, seed=20240601, genus_for=None, levels_for=None):
    res = SuiteResult("basis_independence")
    rng = random.Random(seed)
    genus_for = genus_for or {2: (1, 2, 3), 3: (1, 2), 4: (1,)}
    levels_for = levels_for or {2: range(1, 7), 3: range(1, 5), 4: range(1, 5)}
    for r in ranks:
        sets = standard_basis_sets(r)
        for _ in range(samples):
            g = rng.choice(list(genus_for[r]))
            k = rng.choice(list(levels_for[r]))
            lam = _random_weight(rng, r, k)
            c = _random_regular_point(rng, r, inside=rng.random() < 0.7)
            inp = VerlindeInput(r, g, k, lam)
            values = {name: p_c(inp, c, d) for name, d in sets.items()}
            ok = len(set(values.values())) == 1
            res.record(ok, {"r": r, "g": g, "k": k, "lam": list(lam.ints()),
                            "c": [_q(x) for x in c], "values": {n: _q(v) for n, v in values.items()}})
    return res


def chamber_independence(grid=None):
    """Equal values across every wall of the wall set that meets the simplex.

    Also compares the chamber next to lam/k with the chamber next to the
    shifted point, and both sides of any wall through either point.
    """
    res = SuiteResult("chamber_independence")
    vacuous = 0
    walls_checked = 0
    for r, g, k in grid if grid is not None else criterion_one_grid():
        for lam in admissible_weights(r, k):
            inp = VerlindeInput(r, g, k, lam)
            for wall in sorted(wall_set(k, lam)):
                if not wall_meets_simplex(wall):
                    vacuous += 1
                    continue
                cp, cm = points_across_wall(wall)
                a, b = p_c(inp, cp), p_c(inp, cm)
                walls_checked += 1
                res.record(a == b, {"r": r, "g": g, "k": k, "lam": list(lam.ints()),
                                    "wall": repr(wall), "plus": _q(a), "minus": _q(b)})
            anchors = []
            for target in ("lam_over_k", "hat"):
                for side in (1, -1):
                    anchors.append(p_c(inp, resolve_chamber(k, lam, target, side)))
            res.record(len(set(anchors)) == 1, {"r": r, "g": g, "k": k, "lam": list(lam.ints()),
                                                "anchored_values": [_q(x) for x in anchors]})
    res.notes["walls_checked"] = walls_checked
    res.notes["walls_outside_open_simplex"] = vacuous
    return res


R4_WALL_SAMPLES = [
    (1, (0, 0, 0, 0)),
    (2, (1, 0, 0, -1)),
    (2, (1, 1, -1, -1)),
    (3, (2, 1, -1, -2)),
    (4, (2, 1, -1, -2)),
]


def wallcross_routes(ranks=(3, 4), r3_levels=range(1, 5), r3_genera=(1, 2), r4_genus=1,
                     extra=0, level_factor=False):
    res = SuiteResult("wallcross_routes")
    if 3 in ranks:
        wall = Wall(Partition((2,), (1, 3)), 0)
        cp, cm = points_across_wall(wall)
        for g in r3_genera:
            for k in r3_levels:
                for lam in admissible_weights(3, k):
                    inp = VerlindeInput(3, g, k, lam)
                    a = wallcross_full(inp, cp, cm, extra=extra)
                    b = wallcross_reduced(inp, wall, cp, extra=extra, level_factor=level_factor)
                    res.record(a == b, {"r": 3, "g": g, "k": k, "lam": list(lam.ints()),
                                        "full": _q(a), "reduced": _q(b)})
    if 4 in ranks:
        for prime in ((1, 2), (2,)):
            for level in (-1, 0, 1):
                wall = Wall(Partition.from_prime(prime, 4), level)
                cp, cm = points_across_wall(wall, inside=False)
                for k, lam in R4_WALL_SAMPLES:
                    inp = VerlindeInput(4, r4_genus, k, lam)
                    a = wallcross_full(inp, cp, cm, extra=extra)
                    b = wallcross_reduced(inp, wall, cp, extra=extra, level_factor=level_factor)
                    res.record(a == b, {"r": 4, "g": r4_genus, "k": k, "lam": list(lam),
                                        "wall": repr(wall), "full": _q(a), "reduced": _q(b)})
    return res


def contour_residue2(f, inner=0.1, outer=0.5, n_inner=48, n_outer=160):
    """Res_{y=0} Res_{x=0} f(x, y) by nested trapezoid rules on circles.

    The inner circle |x| = inner sits well inside |y| = outer, matching the
    expansion region |x| << |y|.  The rule converges geometrically for
    integrands analytic on an annulus around each circle.
    """
    total = 0j
    for b in range(n_outer):
        y = outer * cmath.exp(2j * cmath.pi * b / n_outer)
        acc = 0j
        for a in range(n_inner):
            x = inner * cmath.exp(2j * cmath.pi * a / n_inner)
            acc += f(x, y) * x
        total += acc / n_inner * y
    return total / n_outer


def _w3(x, y):
    return 2 * cmath.sinh(x / 2) * 2 * cmath.sinh(y / 2) * 2 * cmath.sinh((x + y) / 2)


def rank3_closed_form(k, lam, g, side):
    """Contour evaluation of the explicit rank-3 residues; side '>', '<' or 'diff'."""
    l1, l2, l3 = (int(x) for x in lam)
    kh = k + 3
    m = 2 * g - 1

    if side == "diff":
        def f(x, y):
            return cmath.exp(l1 * x + (l1 + l3) * y + x) / ((1 - cmath.exp(x * kh)) * _w3(x, y) ** m)
        return (-3 * kh ** 2) ** g * contour_residue2(f)

    def f(x, y):
        first = cmath.exp(l1 * x + (l1 + l2) * y + x + y)
        if side == "<":
            second = cmath.exp(l1 * x + (l1 + l3) * y + x)
        else:
            second = cmath.exp(l1 * x + (l1 + l3) * y + x + y * kh)
        return (first - second) / ((1 - cmath.exp(x * kh)) * (1 - cmath.exp(y * kh)) * _w3(x, y) ** m)

    return (-1) ** (g - 1) * (3 * kh ** 2) ** g * contour_residue2(f)


def closed_forms(levels=range(1, 5), genera=(1, 2), tolerance=1e-6):
    """Engine values against numerical contour integrals of the rank-3 formulas.

    The quantities are Euler characteristics, hence integers; the oracle is
    accepted when it lies within ``tolerance`` of exactly the engine's value.
    """
    res = SuiteResult("closed_forms")
    wall = Wall(Partition((2,), (1, 3)), 0)
    cp, cm = points_across_wall(wall)
    for g in genera:
        for k in levels:
            weights = list(admissible_weights(3, k)) + [IntegralWeight((k, 1, -k - 1)),
                                                       IntegralWeight((-1, 2, -1))]
            for lam in weights:
                inp = VerlindeInput(3, g, k, lam)
                engine = {">": p_c(inp, cp), "<": p_c(inp, cm)}
                engine["diff"] = engine["<"] - engine[">"]
                for side, value in engine.items():
                    oracle = rank3_closed_form(k, lam, g, side)
                    # both sides are integers, so rounding the oracle makes the comparison exact
                    nearest = round(oracle.real)
                    gap = max(abs(oracle.real - nearest), abs(oracle.imag))
                    ok = value.denominator == 1 and value == nearest and gap < tolerance
                    res.record(ok, {"g": g, "k": k, "lam": list(lam.ints()), "side": side,
                                    "engine": _q(value), "oracle": [oracle.real, oracle.imag],
                                    "rounding_gap": gap})
    return res


def degree_bound(r, g):
    return (r * r - 1) * (g - 1) + r * (r - 1) // 2


def weight_grid(r, side):
    lo = -(side // 2)
    out = []
    for head in _product(range(lo, lo + side), r - 1):
        out.append(IntegralWeight(list(head) + [-sum(head)]))
    return out


def _product(values, n):
    if n == 0:
        yield ()
        return
    for v in values:
        for rest in _product(values, n - 1):
            yield (v,) + rest


def anti_invariance(cases=None, levels=(1, 2)):
    """p at theta chambers flips sign under each stabiliser generator.

    The grid side exceeds degree_bound + 1, so equality on the grid
    certifies the polynomial identity in lam at each level.
    """
    res = SuiteResult("anti_invariance")
    cases = cases or [(3, 1), (3, 2), (4, 1)]
    sizes = {}
    for r, g in cases:
        side_len = degree_bound(r, g) + 2
        sizes["r=%d,g=%d" % (r, g)] = side_len
        grid = weight_grid(r, side_len)
        plus, minus = theta_chambers(r)
        for k in levels:
            for sgn, c in ((1, plus), (-1, minus)):
                gens = stabilizer_generators(r, k, sgn)
                cache = {}

                def value(lam):
                    key = tuple(lam)
                    if key not in cache:
                        cache[key] = p_c(VerlindeInput(r, g, k, lam), c)
                    return cache[key]

                for lam in grid:
                    v = value(lam)
                    for gen in gens:
                        image = affine_act(gen, k, lam)
                        v2 = value(image)
                        res.record(v2 == -v, {"r": r, "g": g, "k": k, "side": sgn,
                                              "lam": list(lam.ints()), "generator": repr(gen),
                                              "value": _q(v), "image_value": _q(v2)})
    res.notes["grid_side"] = sizes
    return res


def two_point(levels=range(1, 7), genera=(1, 2, 3)):
    res = SuiteResult("two_point")
    for g in genera:
        for k in levels:
            span = range(-k - 2, k + 3)
            for lam in span:
                for mu in span:
                    hg = h_tilde(k, lam, mu, g, "gt")
                    hl = h_tilde(k, lam, mu, g, "lt")
                    checks = {
                        "gt_mu_reflection": hg == -h_tilde(k, lam, -mu - 1, g, "gt"),
                        "gt_lam_reflection": hg == -h_tilde(k, -lam + k + 1, mu, g, "gt"),
                        "lt_lam_reflection": hl == -h_tilde(k, -lam - 1, mu, g, "lt"),
                        "lt_mu_reflection": hl == -h_tilde(k, lam, -mu + k + 1, g, "lt"),
                        "difference": hg - hl == two_point_difference(k, lam, mu, g),
                    }
                    res.record(all(checks.values()), {"g": g, "k": k, "lam": lam, "mu": mu,
                                                      "failed": [n for n, v in checks.items() if not v]})
            for lam in range(0, k // 2 + 1):
                h0 = h_tilde(k, lam, 0, g, "gt")
                v = ver_residue(VerlindeInput(2, g, k, (lam, -lam)))
                s = ver_sum(2, g, k, (lam, -lam)).nearest_int
                res.record(h0 == v == s == rank2_verlinde(k, lam, g),
                           {"g": g, "k": k, "lam": lam, "h_mu0": _q(h0), "residue": _q(v), "sum": s})
    return res


def combinatorics(max_rank=5, seed=7):
    res = SuiteResult("combinatorics")
    rng = random.Random(seed)
    for r in range(2, max_rank + 1):
        expected = factorial(r - 1)
        for m in range(1, r + 1):
            h = hamiltonian_basis(m, r)
            res.record(len(h) == expected and is_diagonal(h), {"r": r, "kind": "H", "m": m})
        pairs = list(combinations(range(1, r + 1), 2))
        orders = [pairs, list(reversed(pairs))]
        for _ in range(3):
            shuffled = list(pairs)
            rng.shuffle(shuffled)
            orders.append(shuffled)
        for order in orders:
            d = nbc_basis(order, r)
            res.record(len(d) == expected and is_diagonal(d), {"r": r, "kind": "nbc", "order": order})
        for part in wall_partitions(r):
            order = link_first_order(part)
            d = nbc_basis(order, r)
            restricted = restrict_to_wall(d, part)
            r1, r2 = len(part.prime), len(part.double_prime)
            want = factorial(r1 - 1) * factorial(r2 - 1)
            link = restricted[0][1] if restricted else None
            composed = compose_wall_basis(
                link, block_nbc_basis(part.prime, order), block_nbc_basis(part.double_prime, order)
            ) if link is not None else []
            ok = (len(restricted) == want and is_diagonal(d)
                  and sorted(composed) == sorted(b for b, _ in restricted)
                  and all(l == link for _, l in restricted))
            res.record(ok, {"r": r, "partition": repr(part), "restricted": len(restricted), "want": want})
    return res


def truncation_stability(grid=None, r4_samples=None):
    """Residue values agree when every expansion keeps two more orders."""
    res = SuiteResult("truncation_stability")
    for r, g, k in grid if grid is not None else criterion_one_grid():
        for lam in admissible_weights(r, k):
            inp = VerlindeInput(r, g, k, lam)
            a, b = ver_residue(inp), ver_residue(inp, extra=2)
            res.record(a == b, {"r": r, "g": g, "k": k, "lam": list(lam.ints()),
                                "base": _q(a), "raised": _q(b)})
    for g, k, lam in r4_samples if r4_samples is not None else [(1, 2, (1, 0, 0, -1)), (1, 3, (1, 1, 0, -2))]:
        inp = VerlindeInput(4, g, k, lam)
        a, b = ver_residue(inp), ver_residue(inp, extra=2)
        res.record(a == b, {"r": 4, "g": g, "k": k, "lam": list(lam), "base": _q(a), "raised": _q(b)})
    wall = Wall(Partition((2,), (1, 3)), 0)
    cp, _ = points_across_wall(wall)
    for k in range(1, 5):
        for lam in admissible_weights(3, k):
            inp = VerlindeInput(3, 2, k, lam)
            a = wallcross_reduced(inp, wall, cp)
            b = wallcross_reduced(inp, wall, cp, extra=2)
            res.record(a == b, {"r": 3, "k": k, "lam": list(lam.ints()), "route": "reduced"})
    return res


SUITES = {
    "sum_vs_residue": sum_vs_residue,
    "basis_independence": basis_independence,
    "chamber_independence": chamber_independence,
    "wallcross": wallcross_routes,
    "closed_forms": closed_forms,
    "anti_invariance": anti_invariance,
    "two_point": two_point,
    "combinatorics": combinatorics,
    "truncation": truncation_stability,
}


def run_suites(names=None, **overrides):
    """Run the named suites (all by default); overrides go to every suite that accepts them."""
    import inspect

    out = []
    for name in names or list(SUITES):
        fn = SUITES[name]
        params = inspect.signature(fn).parameters
        kwargs = {k: v for k, v in overrides.items() if k in params and v is not None}
        out.append(fn(**kwargs))
    return out
