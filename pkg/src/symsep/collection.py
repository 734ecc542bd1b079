"""Weakly separated collections, maximality, spines, square moves and enumeration.

Enumerators work on integer masks; a collection is a frozenset of masks in
the inner loops and is wrapped into :class:`WSCollection` on the way out.
Canonical order everywhere is ascending mask value.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .config import DEFAULT, Budget
from .cyclic import CyclicSet, bar_mask, masks_of_size, ws_mask
from .errors import BudgetError, DomainError
from .positroid import DecoratedPermutation, Positroid, spine_data


@dataclass(frozen=True)
class WSCollection:
    m: int
    k: int
    members: frozenset[CyclicSet]
    anchor: Optional[Positroid] = None

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for I in self.members:
            if I.m != self.m:
                raise DomainError(f"member {I} lives in [{I.m}], collection in [{self.m}]")
            if len(I) != self.k:
                raise DomainError(f"member {I} has size {len(I)}, collection has k = {self.k}")
        if self.anchor is not None and (self.anchor.m, self.anchor.k) != (self.m, self.k):
            raise DomainError("anchor positroid has a different type (k, m)")

    @classmethod
    def of(cls, sets: Iterable, m: int | None = None, anchor: Positroid | None = None,
           k: int | None = None) -> "WSCollection":
        """Build from CyclicSets or plain iterables of ints."""
        if anchor is not None:
            m = anchor.m if m is None else m
            k = anchor.k if k is None else k
        if m is None:
            raise DomainError("ambient size m must be given explicitly")
        members = [s if isinstance(s, CyclicSet) else CyclicSet.of(s, m) for s in sets]
        if k is None:
            if not members:
                raise DomainError("cannot infer k for an empty unanchored collection")
            k = len(members[0])
        return cls(m, k, frozenset(members), anchor)

    @classmethod
    def from_masks(cls, masks: Iterable[int], m: int, k: int, anchor: Positroid | None = None):
        return cls(m, k, frozenset(CyclicSet(m, x) for x in masks), anchor)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sorted(I.mask for I in self.members))

    @property
    def mask_set(self) -> frozenset[int]:
        return frozenset(I.mask for I in self.members)

    def sorted_members(self) -> list[CyclicSet]:
        return sorted(self.members, key=lambda I: I.mask)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted_members())

    def __contains__(self, I) -> bool:
        return I in self.members

    def with_masks(self, masks: Iterable[int]) -> "WSCollection":
        return WSCollection.from_masks(masks, self.m, self.k, self.anchor)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.sorted_members())) + "}"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "members": [list(I.members) for I in self.sorted_members()],
            "anchor": None if self.anchor is None else self.anchor.perm.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict | str, budget: Budget = DEFAULT) -> "WSCollection":
        if isinstance(obj, str):
            obj = json.loads(obj)
        anchor = None
        if obj.get("anchor") is not None:
            anchor = Positroid.from_perm(DecoratedPermutation.from_json(obj["anchor"]), budget)
        return cls.of(obj["members"], m=obj["m"], k=obj["k"], anchor=anchor)


@dataclass(frozen=True)
class Spine:
    chain: tuple[CyclicSet, ...]

    def __len__(self) -> int:
        return len(self.chain)


# -- predicates --------------------------------------------------------------

def _pairwise_ws(masks, m: int) -> bool:
    masks = list(masks)
    return all(ws_mask(a, b, m) for a, b in combinations(masks, 2))


def validate(C: WSCollection) -> bool:
    if not _pairwise_ws(C.masks, C.m):
        return False
    if C.anchor is not None:
        necklace = set(C.anchor.necklace.masks)
        if not necklace <= C.mask_set:
            return False
        if not all(I in C.anchor for I in C.members):
            return False
    return True


def _half(m: int) -> int:
    if m % 2:
        raise DomainError(f"symmetric collections need even m, got {m}")
    return m // 2


def is_symmetric(C: WSCollection) -> bool:
    _half(C.m)
    ms = C.mask_set
    return all(bar_mask(x, C.m) in ms for x in ms)


def _require_anchor(C: WSCollection) -> Positroid:
    if C.anchor is None:
        raise DomainError("operation needs a collection anchored to a positroid")
    return C.anchor


def _addable(masks: frozenset[int], candidates: Iterable[int], m: int) -> Iterator[int]:
    for x in candidates:
        if x not in masks and all(ws_mask(x, y, m) for y in masks):
            yield x


def is_max_by_inclusion(C: WSCollection) -> bool:
    M = _require_anchor(C)
    return next(_addable(C.mask_set, M.member_masks, C.m), None) is None


def addable_symmetric_pair(C: WSCollection) -> Optional[tuple[CyclicSet, CyclicSet]]:
    """An admissible ``J`` in the positroid with ``C + {J, bar J}`` still
    weakly separated, or None."""
    M = _require_anchor(C)
    if not is_symmetric(C):
        raise DomainError("collection is not symmetric")
    m = C.m
    ms = C.mask_set
    for x in M.member_masks:
        if x in ms:
            continue
        bx = bar_mask(x, m)
        if not ws_mask(x, bx, m):
            continue
        if all(ws_mask(x, y, m) and ws_mask(bx, y, m) for y in ms):
            return CyclicSet(m, x), CyclicSet(m, bx)
    return None


def is_max_symmetric_by_inclusion(C: WSCollection) -> bool:
    return addable_symmetric_pair(C) is None


def find_spine(C: WSCollection) -> Optional[Spine]:
    M = _require_anchor(C)
    if not M.is_type_c:
        raise DomainError("spines need a type-C anchor")
    f = M.perm
    m = C.m
    n = m // 2
    S, r = spine_data(f)
    top = (1 << n) - 1
    free = [x for x in C.masks if bar_mask(x, m) == x]
    if len(free) != r:
        return None
    free.sort(key=lambda x: -(x & top).bit_count())
    if free[0] != M.necklace[1].mask or free[-1] != M.necklace[n + 1].mask:
        return None
    for a, b in zip(free, free[1:]):
        lost = a & ~b
        if lost.bit_count() != 1 or not lost & S.mask & top:
            return None
        e = lost.bit_length()
        if b != (a & ~lost) | (1 << (m - e)):
            return None
    return Spine(tuple(CyclicSet(m, x) for x in free))


# -- square moves ------------------------------------------------------------

def _moves(masks: frozenset[int], m: int) -> list[tuple[int, int]]:
    out = []
    for old in sorted(masks):
        elems = [e for e in range(m) if old >> e & 1]
        outside = [e for e in range(m) if not old >> e & 1]
        for a, c in combinations(elems, 2):
            base = old & ~(1 << a) & ~(1 << c)
            for b in outside:
                if not a < b < c:
                    continue
                for d in outside:
                    if a < d < c:
                        continue
                    # a < b < c < d cyclically, new = S + {b, d}
                    side = [base | 1 << a | 1 << b, base | 1 << b | 1 << c,
                            base | 1 << c | 1 << d, base | 1 << a | 1 << d]
                    new = base | 1 << b | 1 << d
                    if new not in masks and all(s in masks for s in side):
                        out.append((old, new))
    return out


def _check_maximal(C: WSCollection) -> None:
    if C.anchor is not None:
        ok = is_max_by_inclusion(C)
    else:
        ok = next(_addable(C.mask_set, masks_of_size(C.m, C.k), C.m), None) is None
    if not ok:
        raise DomainError("square moves need a maximal collection")


def square_move_candidates(C: WSCollection) -> list[tuple[CyclicSet, CyclicSet]]:
    _check_maximal(C)
    return [(CyclicSet(C.m, a), CyclicSet(C.m, b)) for a, b in _moves(C.mask_set, C.m)]


def mutate(C: WSCollection, old: CyclicSet, new: CyclicSet) -> WSCollection:
    if (old.mask, new.mask) not in _moves(C.mask_set, C.m):
        raise DomainError(f"({old}, {new}) is not a square move of this collection")
    return C.with_masks((C.mask_set - {old.mask}) | {new.mask})


# -- completion and enumeration ----------------------------------------------

def complete_to_maximal(C: WSCollection, symmetric: bool = False) -> WSCollection:
    """Greedy completion in ascending mask order.

    With ``symmetric=True`` candidates are added as atomic ``{J, bar J}``
    pairs and only admissible ``J`` are considered.
    """
    M = _require_anchor(C)
    if symmetric and not is_symmetric(C):
        raise DomainError("symmetric completion needs a bar-closed starting collection")
    m = C.m
    ms = set(C.mask_set)
    for x in M.member_masks:
        if x in ms or not all(ws_mask(x, y, m) for y in ms):
            continue
        if symmetric:
            bx = bar_mask(x, m)
            if not ws_mask(x, bx, m) or not all(ws_mask(bx, y, m) for y in ms):
                continue
            ms.add(bx)
        ms.add(x)
    return C.with_masks(ms)


def necklace_collection(M: Positroid) -> WSCollection:
    return WSCollection.from_masks(set(M.necklace.masks), M.m, M.k, M)


def max_size(M: Positroid) -> int:
    """Size of a maximal collection, read off the greedy completion."""
    return len(complete_to_maximal(necklace_collection(M)))


def enumerate_maximal(M: Positroid, budget: Budget | None = None) -> list[WSCollection]:
    """All maximal collections in ``M``: breadth-first closure of the
    square-move graph from the greedy seed."""
    budget = budget or M.budget
    seed = complete_to_maximal(necklace_collection(M)).mask_set
    seen = {seed}
    queue = deque([seed])
    while queue:
        cur = queue.popleft()
        for old, new in _moves(cur, M.m):
            nxt = (cur - {old}) | {new}
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > budget.max_collections:
                    raise BudgetError(f"more than {budget.max_collections} maximal collections")
                queue.append(nxt)
    return _wrap_sorted(seen, M)


def _wrap_sorted(sets: Iterable[frozenset[int]], M: Positroid) -> list[WSCollection]:
    return [WSCollection.from_masks(s, M.m, M.k, M) for s in sorted(sets, key=sorted)]


def maximal_cliques(adj: dict[int, int], nodes: int) -> Iterator[int]:
    """Bron-Kerbosch with pivoting over bitsets.

    ``adj[v]`` is the neighbour bitset of vertex ``v`` (no self loops);
    ``nodes`` the bitset of vertices to use.  Yields clique bitsets.
    """
    def expand(r, p, x):
        if not p and not x:
            yield r
            return
        pivot_pool = p | x
        u = max(_bits(pivot_pool), key=lambda v: (p & adj[v]).bit_count())
        for v in _bits(p & ~adj[u]):
            bit = 1 << v
            yield from expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    yield from expand(0, nodes, 0)


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def enumerate_maximal_bruteforce(M: Positroid, budget: Budget | None = None) -> list[WSCollection]:
    """Maximal cliques of the weak-separation graph on the members of ``M``
    compatible with every necklace entry."""
    budget = budget or M.budget
    m = M.m
    necklace = set(M.necklace.masks)
    verts = [x for x in M.member_masks if all(ws_mask(x, y, m) for y in necklace)]
    adj = {i: sum(1 << j for j, y in enumerate(verts) if j != i and ws_mask(x, y, m))
           for i, x in enumerate(verts)}
    out = set()
    for clique in maximal_cliques(adj, (1 << len(verts)) - 1):
        out.add(frozenset(verts[i] for i in _bits(clique)))
        if len(out) > budget.max_collections:
            raise BudgetError(f"more than {budget.max_collections} maximal collections")
    return _wrap_sorted(out, M)


def symmetric_orbits(M: Positroid) -> list[frozenset[int]]:
    """Orbits ``{J, bar J}`` of admissible members weakly separated from the necklace."""
    m = M.m
    necklace = set(M.necklace.masks)
    orbits = set()
    for x in M.member_masks:
        bx = bar_mask(x, m)
        if not ws_mask(x, bx, m):
            continue
        if all(ws_mask(x, y, m) and ws_mask(bx, y, m) for y in necklace):
            orbits.add(frozenset((x, bx)))
    return sorted(orbits, key=lambda o: min(o))


def enumerate_maximal_symmetric(M: Positroid, budget: Budget | None = None) -> list[WSCollection]:
    """All symmetric collections in ``M`` maximal among symmetric ones.

    Brute force: maximal cliques in the compatibility graph on bar-orbits.
    """
    budget = budget or M.budget
    if not M.is_type_c:
        raise DomainError("symmetric enumeration needs a type-C positroid")
    m = M.m
    orbits = symmetric_orbits(M)

    def compatible(o1, o2):
        return all(ws_mask(x, y, m) for x in o1 for y in o2)

    adj = {i: sum(1 << j for j, o2 in enumerate(orbits) if j != i and compatible(o1, o2))
           for i, o1 in enumerate(orbits)}
    out = set()
    for clique in maximal_cliques(adj, (1 << len(orbits)) - 1):
        out.add(frozenset().union(*(orbits[i] for i in _bits(clique))))
        if len(out) > budget.max_collections:
            raise BudgetError(f"more than {budget.max_collections} symmetric collections")
    return _wrap_sorted(out, M)
