"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run under pytest (lines are printed even without ``-s``) or directly with
``python tests/test_acceptance.py``.
"""

import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from symsep.collection import enumerate_maximal, enumerate_maximal_symmetric, find_spine, max_size
from symsep.cyclic import CyclicSet, Handedness, handedness, is_admissible, admissible_by_pairs, is_weakly_separated, subsets
from symsep.plabic import dual_graph, face_labels, reducedness_report, trip_permutation
from symsep.positroid import Positroid, decorated_permutations, top_cell_perm, uniform_perm
from symsep.tiling import build_tiling
from symsep.verify import (
    verify_lemmas,
    verify_membership_corollary,
    verify_remark_counterexample,
    verify_symmetric_purity,
)

import properties


def _purity():
    out = {}
    for k, m, count, size in ((2, 4, 2, 5), (3, 6, 34, 10)):
        found = enumerate_maximal(Positroid.from_perm(uniform_perm(k, m)))
        sizes = {len(C) for C in found}
        out[(k, m)] = (len(found), sorted(sizes))
        if len(found) != count or sizes != {size} or size != k * (m - k) + 1:
            return False, f"(k,m)={(k, m)}: {len(found)} collections, sizes {sorted(sizes)}"
    return True, f"(2,4): 2 collections of 5; (3,6): 34 collections of 10"


def _symmetric_purity():
    notes = []
    for n in (2, 3):
        r = verify_symmetric_purity(n)
        if not r.passed:
            return False, f"n={n}: {r.counterexample}"
        notes.append(f"n={n}: {r.details['positroids']} positroids, {r.details['symmetric_collections']} collections")
    return True, "; ".join(notes)


_GRAPHS = {}


def _all_duals():
    """Every maximal collection of every positroid with m <= 6, with its dual."""
    if not _GRAPHS:
        for m in range(1, 7):
            for f in decorated_permutations(m):
                M = Positroid.from_perm(f)
                for C in enumerate_maximal(M):
                    _GRAPHS[C.mask_set, f] = (C, f, dual_graph(build_tiling(C)))
    return _GRAPHS.values()


def _round_trip():
    n = 0
    for C, f, G in _all_duals():
        n += 1
        if face_labels(G, check_reduced=False).label_set() != C.members or trip_permutation(G) != f:
            return False, f"collection {C.to_json()}"
    return True, f"{n} collections, m <= 6"


def _reduced():
    n = 0
    for C, _, G in _all_duals():
        n += 1
        report = reducedness_report(G)
        if not all(report.values()):
            return False, f"collection {C.to_json()}: {report}"
    return True, f"{n} duals pass criteria 1-4"


def _pos_tests():
    notes = []
    for n, want, r in ((2, 4, 3), (3, 7, 4)):
        M = Positroid.from_perm(top_cell_perm(n))
        for C in enumerate_maximal_symmetric(M):
            kept = sum(handedness(I) is not Handedness.RIGHT for I in C)
            spine = find_spine(C)
            if kept != want or want != (n * n + n + 2) // 2 or spine is None or len(spine) != r:
                return False, f"n={n}: count {kept}, spine {spine}"
        notes.append(f"n={n}: count {want}, spine {r}")
    return True, "; ".join(notes)


def _membership():
    notes = []
    for n in (2, 3):
        r = verify_membership_corollary(n)
        if not r.passed:
            return False, f"n={n}: {r.counterexample}"
        notes.append(f"n={n}: {r.details['members']} members")
    return True, "; ".join(notes)


def _remark():
    I, J, K = CyclicSet.of([1, 3, 6], 6), CyclicSet.of([1, 4, 6], 6), CyclicSet.of([2, 3, 5], 6)
    if not is_weakly_separated(I, J) or is_weakly_separated(K, J):
        return False, "weak separation values"
    r = verify_remark_counterexample()
    return r.passed, f"containing both: {r.details['containing_both']}"


def _lemmas():
    r = verify_lemmas(4)
    at4 = [I for I in subsets(8, 4)]
    if len(at4) != 70 or any(is_admissible(I) != admissible_by_pairs(I) for I in at4):
        return False, "admissibility at n=4"
    return r.passed, f"{r.details['sets']} sets (70 at n=4), {r.details['symmetric_tilings']} symmetric tilings"


def _properties():
    bad = []
    for name in properties.PROPERTIES:
        cases, examples, failures = properties.run(name)
        if cases < 10_000 or failures:
            bad.append(f"{name}: {failures} failures {examples[:1]}")
    if bad:
        return False, "; ".join(bad)
    return True, f"{len(properties.PROPERTIES)} properties x {properties.CASES} cases, 0 counterexamples"


CRITERIA = [
    (1, "purity type A", _purity, 1.0),
    (2, "symmetric purity", _symmetric_purity, 60.0),
    (3, "round trip", _round_trip, 60.0),
    (4, "reducedness", _reduced, None),
    (5, "positivity-test count", _pos_tests, 10.0),
    (6, "membership corollary", _membership, None),
    (7, "closing remark", _remark, 10.0),
    (8, "lemma suite", _lemmas, 10.0),
    (9, "randomized properties", _properties, None),
]


def evaluate(number):
    _, title, fn, limit = CRITERIA[number - 1]
    start = time.perf_counter()
    ok, note = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok, note = False, f"{note}; over the {limit:g}s limit"
    bound = f"< {limit:g}s" if limit is not None else "no limit"
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}  {title:<24} {elapsed:8.2f}s ({bound})  {note}"
    return ok, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(c[0]) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
