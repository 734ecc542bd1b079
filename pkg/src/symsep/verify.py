"""Exhaustive verification harness.

Each ``verify_*`` function runs one family of claims over every instance in
range and returns a :class:`CheckReport`.  A failing report carries the
first counterexample as plain JSON built from the public formats, so it can
be re-checked with the rest of the library.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Callable, Optional

from .collection import (
    WSCollection,
    addable_symmetric_pair,
    complete_to_maximal,
    enumerate_maximal,
    enumerate_maximal_bruteforce,
    enumerate_maximal_symmetric,
    find_spine,
    is_symmetric,
    max_size,
    maximal_cliques,
    necklace_collection,
)
from .config import DEFAULT, Budget
from .cyclic import (
    CyclicSet,
    Handedness,
    admissible_by_pairs,
    bar,
    handedness,
    is_admissible,
    is_pair_free,
    is_weakly_separated,
    subsets,
)
from .errors import BudgetError
from .plabic import (
    dual_graph,
    face_labels,
    is_reduced,
    is_symmetric_graph,
    midline_labels,
    trip_permutation,
)
from .positroid import (
    Positroid,
    decorated_permutations,
    is_alignment_closed,
    necklace_from_perm,
    top_cell_perm,
    type_c_permutations,
)
from .tiling import build_tiling, is_symmetric_tiling, mirror_x, pair_free_on_axis

GEOM_TOL = 1e-9


@dataclass
class CheckReport:
    name: str
    instance: str
    passed: bool
    counterexample: Optional[dict] = None
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{status}  {self.name:<28} {self.instance:<12} {self.wall_time:7.3f}s  {extra}"

    def to_json(self) -> dict:
        return asdict(self)


class _Check:
    """Collects the first failure of a run."""

    def __init__(self, name: str, instance: str):
        self.name = name
        self.instance = instance
        self.counterexample: Optional[dict] = None
        self.details: dict[str, Any] = {}
        self.t0 = time.perf_counter()

    def expect(self, ok: bool, claim: str, **payload) -> bool:
        if not ok and self.counterexample is None:
            self.counterexample = {"claim": claim, **payload}
        return ok

    def report(self) -> CheckReport:
        return CheckReport(self.name, self.instance, self.counterexample is None,
                           self.counterexample, round(time.perf_counter() - self.t0, 4), self.details)


def _cj(C: WSCollection) -> dict:
    return C.to_json()


def _require(limit_ok: bool, budget: Budget, what: str) -> None:
    if not limit_ok and not budget.allow_long:
        raise BudgetError(f"{what} is a long run; enable it with the long-running flag")


def _graph_roundtrip(chk: _Check, C: WSCollection) -> None:
    f = C.anchor.perm
    G = dual_graph(build_tiling(C))
    chk.expect(is_reduced(G), "dual graph is reduced", collection=_cj(C))
    chk.expect(face_labels(G, check_reduced=False).label_set() == C.members,
               "face labels of the dual reproduce the collection", collection=_cj(C))
    chk.expect(trip_permutation(G) == f, "trip permutation of the dual is the anchor", collection=_cj(C))


# -- type A -------------------------------------------------------------------------

def verify_purity(m: int, k: int, budget: Budget = DEFAULT) -> CheckReport:
    """Inclusion-maximal, size-maximal and face-label collections coincide
    for every positroid of type (k, m)."""
    _require(m <= 6, budget, f"purity at m = {m}")
    chk = _Check("purity", f"({k},{m})")
    positroids = collections = 0
    for f in decorated_permutations(m):
        N = necklace_from_perm(f)
        if N.k != k:
            continue
        M = Positroid(N, budget)
        positroids += 1
        by_moves = enumerate_maximal(M)
        by_cliques = enumerate_maximal_bruteforce(M)
        chk.expect({c.mask_set for c in by_moves} == {c.mask_set for c in by_cliques},
                   "square-move closure equals brute-force maximal cliques", anchor=f.to_json())
        size = max_size(M)
        for C in by_cliques:
            collections += 1
            chk.expect(len(C) == size, "inclusion-maximal implies size-maximal", collection=_cj(C))
            _graph_roundtrip(chk, C)
        if f == _uniform(k, m):
            chk.details["top_cell_size"] = size
            chk.expect(size == k * (m - k) + 1, "top cell has k(m-k)+1 members", size=size)
    chk.details.update(positroids=positroids, collections=collections)
    return chk.report()


def _uniform(k: int, m: int):
    from .positroid import uniform_perm
    return uniform_perm(k, m)


# -- type C -------------------------------------------------------------------------

def verify_symmetric_purity(n: int, budget: Budget = DEFAULT) -> CheckReport:
    _require(n <= 3, budget, f"symmetric purity at n = {n}")
    chk = _Check("symmetric_purity", f"n={n}")
    positroids = sym_total = 0
    for f in type_c_permutations(n, fixed_point_free=True):
        M = Positroid.from_perm(f, budget)
        positroids += 1
        size = max_size(M)
        S_spine = None
        sym = enumerate_maximal_symmetric(M)
        sym_total += len(sym)
        for C in sym:
            chk.expect(len(C) == size, "symmetric inclusion-maximal is size-maximal", collection=_cj(C))
            spine = find_spine(C)
            chk.expect(spine is not None, "symmetric maximal collection contains a spine", collection=_cj(C))
            G = dual_graph(build_tiling(C))
            chk.expect(is_symmetric_graph(G), "dual of a symmetric maximal collection is symmetric",
                       collection=_cj(C))
            _graph_roundtrip(chk, C)
            if spine is not None:
                S_spine = len(spine)
                chk.expect(midline_labels(G) == sorted(spine.chain, key=lambda I: I.mask),
                           "faces on the midline are the spine", collection=_cj(C))
        if n <= 3:
            every = enumerate_maximal(M)
            sym_sets = {C.mask_set for C in sym}
            chk.expect({C.mask_set for C in every if is_symmetric(C)} == sym_sets,
                       "symmetric maximal-by-size collections are exactly the symmetric maximal ones",
                       anchor=f.to_json())
            for C in every:
                G = dual_graph(build_tiling(C))
                chk.expect(is_symmetric_graph(G) == is_symmetric(C),
                           "dual is a symmetric graph iff labels are bar-closed", collection=_cj(C))
        if f == top_cell_perm(n):
            chk.details.update(top_cell_collections=len(sym), top_cell_size=size, spine_length=S_spine)
    # harness self-test: the bare necklace of the top cell is not maximal
    M = Positroid.from_perm(top_cell_perm(n), budget)
    witness = addable_symmetric_pair(necklace_collection(M))
    chk.expect(n == 1 or witness is not None, "bare necklace is reported non-maximal with a witness")
    if witness is not None:
        chk.details["self_test_witness"] = str(witness[0])
    chk.details.update(positroids=positroids, symmetric_collections=sym_total)
    return chk.report()


def verify_membership_corollary(n: int, budget: Budget = DEFAULT) -> CheckReport:
    """[alignment-closed and admissible] iff [label in some symmetric maximal collection]."""
    _require(n <= 3, budget, f"membership corollary at n = {n}")
    chk = _Check("membership_corollary", f"n={n}")
    positroids = members = 0
    for f in type_c_permutations(n):
        M = Positroid.from_perm(f, budget)
        positroids += 1
        realized = set()
        for C in enumerate_maximal_symmetric(M):
            realized |= C.mask_set
        for J in M.members():
            members += 1
            lhs = is_alignment_closed(f, J) and is_admissible(J)
            chk.expect(lhs == (J.mask in realized), "membership criterion",
                       anchor=f.to_json(), member=list(J.members), predicted=lhs)
    chk.details.update(positroids=positroids, members=members)
    return chk.report()


def left_or_free(C: WSCollection) -> list[CyclicSet]:
    return [I for I in C.sorted_members() if handedness(I) in (Handedness.LEFT, Handedness.ON_AXIS)]


def positivity_test_families(n: int) -> list[frozenset[int]]:
    """Families of admissible, left-handed-or-pair-free n-subsets of [2n]
    with ``I`` weakly separated from ``J`` and ``bar J``, maximal by inclusion."""
    m = 2 * n
    verts = [I for I in subsets(m, n)
             if is_admissible(I) and handedness(I) is not Handedness.RIGHT]
    ok = [[is_weakly_separated(I, J) and is_weakly_separated(I, bar(J)) for J in verts] for I in verts]
    adj = {i: sum(1 << j for j in range(len(verts)) if j != i and ok[i][j] and ok[j][i])
           for i in range(len(verts))}
    out = []
    for clique in maximal_cliques(adj, (1 << len(verts)) - 1):
        out.append(frozenset(verts[i].mask for i in range(len(verts)) if clique >> i & 1))
    return sorted(out, key=sorted)


def verify_pos_test_structure(n: int, budget: Budget = DEFAULT) -> CheckReport:
    _require(n <= 3, budget, f"positivity-test structure at n = {n}")
    chk = _Check("pos_test_structure", f"n={n}")
    m = 2 * n
    target = (n * n + n + 2) // 2
    M = Positroid.from_perm(top_cell_perm(n), budget)
    families = positivity_test_families(n)
    sizes = sorted({len(F) for F in families})
    chk.details.update(families=len(families), sizes=sizes, expected=target)
    chk.expect(sizes == [target], "maximal families have (n^2+n+2)/2 members", sizes=sizes)
    fam_set = set(families)
    for F in families:
        for x in F:
            smaller = F - {x}
            chk.expect(smaller not in fam_set and len(smaller) != target,
                       "removing a member breaks maximality", family=sorted(F))
    r = n + 1
    side = (n * n + 1 - r) // 2
    halves = set()
    for C in enumerate_maximal_symmetric(M):
        kinds = [handedness(I) for I in C.sorted_members()]
        counts = (kinds.count(Handedness.ON_AXIS), kinds.count(Handedness.LEFT), kinds.count(Handedness.RIGHT))
        chk.expect(counts == (r, side, side), "decomposition r + left + right", collection=_cj(C),
                   counts=counts)
        half = frozenset(I.mask for I in left_or_free(C))
        chk.expect(len(half) == target, "left-handed plus pair-free count", collection=_cj(C))
        halves.add(half)
    chk.expect(halves == fam_set, "families are the left halves of symmetric maximal collections")
    chk.details["decomposition"] = f"{r}+{side}+{side}"
    return chk.report()


def verify_remark_counterexample(budget: Budget = DEFAULT) -> CheckReport:
    chk = _Check("remark_counterexample", "n=3")
    I = CyclicSet.of([1, 3, 6], 6)
    J = CyclicSet.of([1, 4, 6], 6)
    chk.expect(is_admissible(I) and is_admissible(J), "both sets admissible")
    chk.expect(handedness(I) is Handedness.LEFT and handedness(J) is Handedness.LEFT, "both left-handed")
    chk.expect(is_weakly_separated(I, J), "I and J weakly separated")
    chk.expect(bar(I) == CyclicSet.of([2, 3, 5], 6), "bar I = {2,3,5}")
    chk.expect(not is_weakly_separated(bar(I), J), "bar I not weakly separated from J")
    M = Positroid.from_perm(top_cell_perm(3), budget)
    both = [C for C in enumerate_maximal_symmetric(M) if I in C and J in C]
    chk.expect(not both, "no symmetric maximal collection contains both",
               collection=_cj(both[0]) if both else None)
    chk.details["containing_both"] = len(both)
    return chk.report()


# -- lemmas ---------------------------------------------------------------------------

def verify_lemmas(n: int, budget: Budget = DEFAULT) -> CheckReport:
    """Bar involution, bar-invariance of weak separation, the pair criterion
    for admissibility, and the reflection lemmas on symmetric tilings."""
    chk = _Check("lemmas", f"n<={n}")
    sets_checked = 0
    for k in range(1, n + 1):
        m = 2 * k
        U = subsets(m, k)
        for I in U:
            sets_checked += 1
            chk.expect(bar(bar(I)) == I, "bar is an involution", set=list(I.members))
            chk.expect(is_pair_free(I) == (bar(I) == I), "pair-free iff bar-fixed", set=list(I.members))
            chk.expect(is_admissible(I) == admissible_by_pairs(I), "admissibility by pairs",
                       set=list(I.members))
        if k <= 4:
            for I, J in combinations(U, 2):
                chk.expect(is_weakly_separated(I, J) == is_weakly_separated(bar(I), bar(J)),
                           "weak separation is bar-invariant", sets=[list(I.members), list(J.members)])
    chk.details["sets"] = sets_checked
    tilings = 0
    for k in range(1, min(n, 3) + 1):
        for f in type_c_permutations(k):
            M = Positroid.from_perm(f, budget)
            for C in enumerate_maximal_symmetric(M):
                T = build_tiling(C)
                tilings += 1
                chk.expect(is_symmetric_tiling(T), "bar swaps white and black cliques", collection=_cj(C))
                chk.expect(pair_free_on_axis(T), "pair-free labels lie on the axis", collection=_cj(C))
                for I, p in T.positions.items():
                    q = T.positions[bar(I)]
                    mx = mirror_x(p)
                    chk.expect(abs(mx[0] - q[0]) <= GEOM_TOL and abs(mx[1] - q[1]) <= GEOM_TOL,
                               "v_bar(I) mirrors v_I", collection=_cj(C), set=list(I.members))
                    hand = handedness(I)
                    chk.expect((hand is Handedness.LEFT) == (p[0] < -GEOM_TOL),
                               "left-handed iff left of the axis", set=list(I.members))
    chk.details["symmetric_tilings"] = tilings
    return chk.report()


def verify_pairless(n: int, budget: Budget = DEFAULT) -> CheckReport:
    """Parts (1)-(3) of the pair-free lemma on every symmetric maximal collection."""
    _require(n <= 3, budget, f"pair-free lemma at n = {n}")
    chk = _Check("pairless", f"n={n}")
    top = (1 << n) - 1
    for f in type_c_permutations(n):
        M = Positroid.from_perm(f, budget)
        for C in enumerate_maximal_symmetric(M):
            free = [I for I in C.sorted_members() if is_pair_free(I)]
            for I in free:
                for a in range(1, n + 1):
                    b = f.inv(a)
                    if b <= n and b > a:
                        chk.expect(a in I, "part (1)", collection=_cj(C), set=list(I.members), a=a)
                    if b <= n and b < a:
                        chk.expect(2 * n - a + 1 in I, "part (2)", collection=_cj(C),
                                   set=list(I.members), a=a)
            for I, J in combinations(free, 2):
                x, y = I.mask & top, J.mask & top
                chk.expect(x & y in (x, y), "part (3) nested tops", collection=_cj(C))
    return chk.report()


# -- suites -----------------------------------------------------------------------------

SUITES = ("purity", "symmetric", "corollaries", "lemmas", "all")


def _purity_suite(n: int, budget: Budget) -> list[CheckReport]:
    out = []
    for m in range(1, 2 * n + 1):
        for k in range(0, m + 1):
            out.append(verify_purity(m, k, budget))
    return out


def run_suite(name: str, n: int, budget: Budget = DEFAULT) -> list[CheckReport]:
    jobs: list[Callable[[], list[CheckReport]]] = []
    if name in ("purity", "all"):
        jobs.append(lambda: _purity_suite(n, budget))
    if name in ("symmetric", "all"):
        jobs.append(lambda: [verify_symmetric_purity(n, budget), verify_pairless(n, budget)])
    if name in ("corollaries", "all"):
        jobs.append(lambda: [verify_membership_corollary(n, budget), verify_pos_test_structure(n, budget)]
                    + ([verify_remark_counterexample(budget)] if n >= 3 else []))
    if name in ("lemmas", "all"):
        jobs.append(lambda: [verify_lemmas(n, budget)])
    if not jobs:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    reports = [r for job in jobs for r in job()]
    return sorted(reports, key=lambda r: (r.name, r.instance))


def format_text(reports: list[CheckReport]) -> str:
    lines = [r.line() for r in reports]
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports) - failed}/{len(reports)} checks passed")
    for r in reports:
        if not r.passed:
            lines.append(f"counterexample for {r.name} {r.instance}: {json.dumps(r.counterexample)}")
    return "\n".join(lines) + "\n"


def format_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=1, sort_keys=True)
