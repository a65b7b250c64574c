"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or ``python tests/test_acceptance.py``.
"""

import json
import time

from verlinde import checks
from verlinde.weight_space import admissible_weights, simplex_vertices, wall_meets_simplex, wall_set

RESULTS = []

# pinned tolerances
SUM_ERROR_TOLERANCE = 1e-10  # certified enclosure radius at 256 bits
SUM_PRECISION = 256
CONTOUR_TOLERANCE = 1e-6  # distance of the contour value from the engine's integer


def report(number, title, results, elapsed, extra=""):
    ok = all(r.passed for r in results)
    checked = sum(r.checked for r in results)
    failed = sum(r.failure_count for r in results)
    line = "%s criterion %d: %s (%d checks, %d failed, %.1fs)%s" % (
        "PASS" if ok else "FAIL", number, title, checked, failed, elapsed, extra)
    RESULTS.append(line)
    print(line)
    for r in results:
        for ce in r.failures:
            print("    counterexample [%s]: %s" % (r.name, json.dumps(ce, sort_keys=True)))
    return ok


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_criterion_1_sum_vs_residue():
    res, dt = timed(checks.sum_vs_residue, precision=SUM_PRECISION, tolerance=SUM_ERROR_TOLERANCE)
    extra = "; max certified error %.2e" % res.notes["max_error_bound"]
    assert report(1, "sum route equals residue route on the desk grid", [res], dt, extra)


def test_criterion_2_basis_independence():
    start = time.perf_counter()
    main = checks.basis_independence(ranks=(2, 3, 4), samples=20)
    higher_genus = checks.basis_independence(ranks=(4,), samples=3, seed=11,
                                             genus_for={4: (2,)}, levels_for={4: (1,)})
    dt = time.perf_counter() - start
    assert main.checked == 60
    assert report(2, "four diagonal basis sets give identical values", [main, higher_genus], dt)


def test_criterion_3_chamber_independence():
    res, dt = timed(checks.chamber_independence)
    # walls skipped as outside the open simplex must be supporting hyperplanes of it
    for r, g, k in checks.criterion_one_grid():
        for lam in admissible_weights(r, k):
            for wall in wall_set(k, lam):
                if not wall_meets_simplex(wall):
                    values = [wall.value(v) for v in simplex_vertices(r)]
                    assert wall.level in (min(values), max(values))
    extra = "; %d walls crossed inside the simplex, %d supporting walls have no second side in it" % (
        res.notes["walls_checked"], res.notes["walls_outside_open_simplex"])
    assert res.notes["walls_checked"] > 0
    assert report(3, "values agree across every wall through the simplex", [res], dt, extra)


def test_criterion_4_wallcross_routes():
    res, dt = timed(checks.wallcross_routes)
    assert report(4, "full and reduced wall-crossing routes agree", [res], dt)


def test_criterion_5_closed_forms():
    res, dt = timed(checks.closed_forms, tolerance=CONTOUR_TOLERANCE)
    assert report(5, "rank-3 closed forms match the engine", [res], dt)


def test_criterion_6_anti_invariance():
    res, dt = timed(checks.anti_invariance)
    extra = "; grid sides %s" % json.dumps(res.notes["grid_side"], sort_keys=True)
    for key, side in res.notes["grid_side"].items():
        r, g = (int(x.split("=")[1]) for x in key.split(","))
        assert side > checks.degree_bound(r, g) + 1
    assert report(6, "affine Weyl anti-invariance on certifying grids", [res], dt, extra)


def test_criterion_7_two_point():
    res, dt = timed(checks.two_point)
    assert report(7, "rank-2 two-point identities", [res], dt)


def test_criterion_8_combinatorics():
    res, dt = timed(checks.combinatorics)
    assert dt < 60
    assert report(8, "basis counts and diagonality up to rank 5", [res], dt)


def test_criterion_9_truncation():
    res, dt = timed(checks.truncation_stability)
    assert report(9, "values unchanged with two extra series orders", [res], dt)


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
