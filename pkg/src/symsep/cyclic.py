"""Subsets of the cyclically ordered ground set [m] = {1, ..., m}.

A :class:`CyclicSet` is stored as an ``m``-bit mask (element ``e`` at bit
``e - 1``).  The module-level ``*_mask`` helpers work on bare integers and
are what the enumerators use in their inner loops; the public functions
take and return :class:`CyclicSet` values and validate their arguments.

Type-C notation: for ``m = 2n`` the *prime* of ``i`` is ``2n - i + 1`` and the
bar map sends ``I`` to ``[2n] minus {i' : i in I}``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError

MAX_AMBIENT = 64


class PairType(enum.Enum):
    FULL = "Full"
    HALF = "Half"
    EMPTY = "Empty"


class Handedness(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"
    ON_AXIS = "OnAxis"


@dataclass(frozen=True, order=True)
class CyclicSet:
    """A subset of ``[m]``, compared by ``(m, mask)``."""

    m: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.m <= MAX_AMBIENT:
            raise DomainError(f"ambient size {self.m} outside [0, {MAX_AMBIENT}]")
        if self.mask < 0 or self.mask >> self.m:
            raise DomainError(f"mask {self.mask:#x} has bits outside [1, {self.m}]")

    @classmethod
    def of(cls, members: Iterable[int], m: int) -> "CyclicSet":
        mask = 0
        for e in members:
            if not 1 <= e <= m:
                raise DomainError(f"element {e} outside [1, {m}]")
            mask |= 1 << (e - 1)
        return cls(m, mask)

    @classmethod
    def parse(cls, text: str, m: int) -> "CyclicSet":
        """Read the brace form ``{1,3,6}``; elements must be strictly increasing."""
        body = text.strip()
        if not re.fullmatch(r"\{\s*(\d+\s*(,\s*\d+\s*)*)?\}", body):
            raise DomainError(f"cannot parse set literal {text!r}")
        items = [int(t) for t in re.findall(r"\d+", body)]
        if any(a >= b for a, b in zip(items, items[1:])):
            raise DomainError(f"set literal {text!r} is not strictly increasing")
        return cls.of(items, m)

    @property
    def members(self) -> tuple[int, ...]:
        return mask_members(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, e: object) -> bool:
        return isinstance(e, int) and 1 <= e <= self.m and bool(self.mask >> (e - 1) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"

    def __repr__(self) -> str:
        return f"CyclicSet({self}, m={self.m})"

    def _same_ambient(self, other: "CyclicSet") -> None:
        if self.m != other.m:
            raise DomainError(f"ambient mismatch: {self.m} vs {other.m}")

    def __or__(self, other: "CyclicSet") -> "CyclicSet":
        self._same_ambient(other)
        return CyclicSet(self.m, self.mask | other.mask)

    def __and__(self, other: "CyclicSet") -> "CyclicSet":
        self._same_ambient(other)
        return CyclicSet(self.m, self.mask & other.mask)

    def __sub__(self, other: "CyclicSet") -> "CyclicSet":
        self._same_ambient(other)
        return CyclicSet(self.m, self.mask & ~other.mask)


# -- bare-mask helpers -------------------------------------------------------

@lru_cache(maxsize=None)
def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def full_mask(m: int) -> int:
    return (1 << m) - 1


@lru_cache(maxsize=None)
def masks_of_size(m: int, k: int) -> tuple[int, ...]:
    """All k-subsets of [m] as masks, ascending."""
    if not 0 <= k <= m:
        return ()
    return tuple(sorted(sum(1 << i for i in c) for c in combinations(range(m), k)))


def ws_mask(a: int, b: int, m: int) -> bool:
    """Weak separation on masks: the symmetric difference, read once around
    the circle, changes between ``a - b`` and ``b - a`` at most twice."""
    only_a = a & ~b
    if not only_a:
        return True
    diff = only_a | (b & ~a)
    changes = 0
    first = last = -1
    for e in range(m):
        if diff >> e & 1:
            side = only_a >> e & 1
            if first < 0:
                first = side
            elif side != last:
                changes += 1
                if changes > 2:
                    return False
            last = side
    if last != first:
        changes += 1
    return changes <= 2


def bar_mask(mask: int, m: int) -> int:
    # bit i-1 of the reversed mask is set iff i' is in the original
    rev = int(format(mask, f"0{m}b")[::-1], 2) if m else 0
    return full_mask(m) & ~rev


def ws_table(masks: Iterable[int], m: int) -> dict[int, int]:
    """For each mask, the bitset (over positions in ``masks``) of masks it is
    weakly separated from."""
    masks = list(masks)
    table = {}
    for i, a in enumerate(masks):
        row = 0
        for j, b in enumerate(masks):
            if ws_mask(a, b, m):
                row |= 1 << j
        table[a] = row
    return table


# -- public operations -------------------------------------------------------

def _check_element(e: int, m: int) -> None:
    if not 1 <= e <= m:
        raise DomainError(f"element {e} outside [1, {m}]")


def _half(m: int) -> int:
    if m % 2:
        raise DomainError(f"type-C operations need even ambient size, got {m}")
    return m // 2


def prime(i: int, m: int) -> int:
    """The mirror element ``i' = m - i + 1``."""
    _check_element(i, m)
    return m - i + 1


def cyclic_rank(a: int, i: int, m: int) -> int:
    """Position of ``i`` in the order ``a < a+1 < ... < m < 1 < ... < a-1``."""
    return (i - a) % m


def cyclic_leq(a: int, i: int, j: int, m: int) -> bool:
    for e in (a, i, j):
        _check_element(e, m)
    return cyclic_rank(a, i, m) <= cyclic_rank(a, j, m)


def gale_leq(a: int, I: CyclicSet, J: CyclicSet) -> bool:
    """Componentwise comparison after sorting both sets by ``<=_a``."""
    I._same_ambient(J)
    _check_element(a, I.m)
    if len(I) != len(J):
        raise DomainError(f"Gale order needs equal sizes, got {len(I)} and {len(J)}")
    return gale_leq_mask(a, I.mask, J.mask, I.m)


def gale_leq_mask(a: int, i_mask: int, j_mask: int, m: int) -> bool:
    # rotate so that a sits at bit 0; then compare sorted positions
    s = a - 1
    full = full_mask(m)
    ri = ((i_mask >> s) | (i_mask << (m - s))) & full
    rj = ((j_mask >> s) | (j_mask << (m - s))) & full
    # I <= J componentwise iff every prefix [0, t] holds at least as many of I as of J
    ci = cj = 0
    for t in range(m):
        ci += ri >> t & 1
        cj += rj >> t & 1
        if ci < cj:
            return False
    return True


def cyclic_interval(a: int, b: int, m: int) -> CyclicSet:
    _check_element(a, m)
    _check_element(b, m)
    if a <= b:
        return CyclicSet.of(range(a, b + 1), m)
    return CyclicSet.of(list(range(a, m + 1)) + list(range(1, b + 1)), m)


def is_weakly_separated(I: CyclicSet, J: CyclicSet) -> bool:
    I._same_ambient(J)
    if len(I) != len(J):
        raise DomainError("weak separation is only defined here for equal sizes")
    return ws_mask(I.mask, J.mask, I.m)


def bar(I: CyclicSet) -> CyclicSet:
    _half(I.m)
    return CyclicSet(I.m, bar_mask(I.mask, I.m))


def pair_type(I: CyclicSet, a: int) -> PairType:
    n = _half(I.m)
    if not 1 <= a <= n:
        raise DomainError(f"pair index {a} outside [1, {n}]")
    count = (a in I) + (I.m - a + 1 in I)
    return (PairType.EMPTY, PairType.HALF, PairType.FULL)[count]


def pair_types(I: CyclicSet) -> list[PairType]:
    """Pair types at ``a = 1, ..., n`` (top to bottom)."""
    return [pair_type(I, a) for a in range(1, _half(I.m) + 1)]


def is_pair_free(I: CyclicSet) -> bool:
    return all(t is PairType.HALF for t in pair_types(I))


def _check_half_size(I: CyclicSet) -> int:
    n = _half(I.m)
    if len(I) != n:
        raise DomainError(f"admissibility needs |I| = n = {n}, got {len(I)}")
    return n


def is_admissible(I: CyclicSet) -> bool:
    _check_half_size(I)
    return ws_mask(I.mask, bar_mask(I.mask, I.m), I.m)


def admissible_by_pairs(I: CyclicSet) -> bool:
    """No full pair sandwiched between empty pairs, and vice versa."""
    _check_half_size(I)
    seq = [t for t in pair_types(I) if t is not PairType.HALF]
    for mid in range(1, len(seq) - 1):
        other = PairType.EMPTY if seq[mid] is PairType.FULL else PairType.FULL
        if other in seq[:mid] and other in seq[mid + 1:]:
            return False
    return True


def handedness(I: CyclicSet) -> Handedness:
    if not is_admissible(I):
        raise DomainError(f"{I} is not admissible")
    for t in pair_types(I):
        if t is PairType.FULL:
            return Handedness.LEFT
        if t is PairType.EMPTY:
            return Handedness.RIGHT
    return Handedness.ON_AXIS


def subsets(m: int, k: int) -> list[CyclicSet]:
    """``C([m], k)`` in canonical (ascending mask) order."""
    return [CyclicSet(m, x) for x in masks_of_size(m, k)]
