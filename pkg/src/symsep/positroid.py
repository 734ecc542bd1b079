"""Decorated permutations, Grassmann necklaces and positroids.

The necklace of a decorated permutation ``f`` is

    I_a = {i : i <_a f^{-1}(i)}  together with the white fixed points,

and the positroid of a necklace is ``{J : J >=_i I_i for all i}`` in the
cyclically shifted Gale orders.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from math import comb
from typing import Iterator

from .config import DEFAULT, Budget
from .cyclic import (
    CyclicSet,
    bar_mask,
    cyclic_rank,
    full_mask,
    gale_leq_mask,
    masks_of_size,
)
from .errors import BudgetError, DomainError


class Color(enum.Enum):
    WHITE = "white"
    BLACK = "black"

    def flip(self) -> "Color":
        return Color.BLACK if self is Color.WHITE else Color.WHITE


@dataclass(frozen=True)
class DecoratedPermutation:
    """A permutation of ``[m]`` (one-line ``image``) with colored fixed points."""

    image: tuple[int, ...]
    white: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        object.__setattr__(self, "white", frozenset(self.white))
        m = len(self.image)
        if sorted(self.image) != list(range(1, m + 1)):
            raise DomainError(f"{self.image} is not a permutation of [1, {m}]")
        stray = [i for i in self.white if not (1 <= i <= m and self.image[i - 1] == i)]
        if stray:
            raise DomainError(f"white points {sorted(stray)} are not fixed points")

    @classmethod
    def from_colors(cls, image, colors: dict[int, Color]) -> "DecoratedPermutation":
        fixed = {i for i, x in enumerate(image, 1) if x == i}
        if set(colors) != fixed:
            raise DomainError("fixed_colors must cover exactly the fixed points")
        return cls(tuple(image), frozenset(i for i, c in colors.items() if c is Color.WHITE))

    @property
    def m(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.m
        for i, x in enumerate(self.image, 1):
            inv[x - 1] = i
        return tuple(inv)

    def inv(self, i: int) -> int:
        return self.inverse[i - 1]

    @property
    def fixed_points(self) -> list[int]:
        return [i for i in range(1, self.m + 1) if self(i) == i]

    @property
    def fixed_colors(self) -> dict[int, Color]:
        return {i: Color.WHITE if i in self.white else Color.BLACK for i in self.fixed_points}

    @property
    def black(self) -> frozenset[int]:
        return frozenset(self.fixed_points) - self.white

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "image": list(self.image),
            "white_fixed": sorted(self.white),
            "black_fixed": sorted(self.black),
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "DecoratedPermutation":
        if isinstance(obj, str):
            obj = json.loads(obj)
        image = tuple(obj["image"])
        if obj.get("m", len(image)) != len(image):
            raise DomainError(f"m = {obj['m']} disagrees with image length {len(image)}")
        white = frozenset(obj.get("white_fixed", ()))
        black = frozenset(obj.get("black_fixed", ()))
        fixed = {i for i, x in enumerate(image, 1) if x == i}
        if white & black or (white | black) != fixed:
            raise DomainError("white_fixed and black_fixed must partition the fixed points")
        return cls(image, white)

    def __str__(self) -> str:
        parts = []
        for i, x in enumerate(self.image, 1):
            tag = ""
            if x == i:
                tag = "w" if i in self.white else "b"
            parts.append(f"{x}{tag}")
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class GrassmannNecklace:
    entries: tuple[CyclicSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        m = len(self.entries)
        if m == 0:
            raise DomainError("a necklace needs at least one entry")
        if any(e.m != m for e in self.entries):
            raise DomainError("necklace entries must live in [m] with m = number of entries")
        k = len(self.entries[0])
        if any(len(e) != k for e in self.entries):
            raise DomainError("necklace entries must share one cardinality")
        for i in range(1, m + 1):
            cur, nxt = self[i].mask, self[i + 1].mask
            bit = 1 << (i - 1)
            if (cur & ~bit) & ~nxt:
                raise DomainError(f"I_{i + 1} does not contain I_{i} minus {{{i}}}")
            if not cur & bit and cur != nxt:
                raise DomainError(f"{i} not in I_{i} but I_{i + 1} != I_{i}")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, i: int) -> CyclicSet:
        """1-based, indices taken mod m."""
        return self.entries[(i - 1) % self.m]

    def __iter__(self):
        return iter(self.entries)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(e.mask for e in self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.entries)) + ")"

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k, "entries": [list(e.members) for e in self.entries]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "GrassmannNecklace":
        if isinstance(obj, str):
            obj = json.loads(obj)
        m = obj["m"]
        entries = [CyclicSet.of(e, m) for e in obj["entries"]]
        if len(entries) != m:
            raise DomainError(f"expected {m} necklace entries, got {len(entries)}")
        return cls(tuple(entries))


def necklace_from_perm(f: DecoratedPermutation) -> GrassmannNecklace:
    m = f.m
    entries = []
    for a in range(1, m + 1):
        mask = 0
        for i in range(1, m + 1):
            j = f.inv(i)
            if (j != i and cyclic_rank(a, i, m) < cyclic_rank(a, j, m)) or i in f.white:
                mask |= 1 << (i - 1)
        entries.append(CyclicSet(m, mask))
    return GrassmannNecklace(tuple(entries))


def perm_from_necklace(N: GrassmannNecklace) -> DecoratedPermutation:
    """Invert :func:`necklace_from_perm`.

    Reading consecutive entries, ``I_{i+1} = (I_i - {i}) + {f(i)}`` when
    ``i`` is in ``I_i``; otherwise ``i`` is a black fixed point.  The result
    is checked by recomputing its necklace.
    """
    m = N.m
    image = [0] * m
    white = set()
    for i in range(1, m + 1):
        cur, nxt = N[i].mask, N[i + 1].mask
        bit = 1 << (i - 1)
        if not cur & bit:
            image[i - 1] = i
            continue
        added = nxt & ~(cur & ~bit)
        if added.bit_count() != 1:
            raise DomainError(f"entries I_{i}, I_{i + 1} do not differ by a single exchange")
        j = added.bit_length()
        image[i - 1] = j
        if j == i:
            white.add(i)
    try:
        f = DecoratedPermutation(tuple(image), frozenset(white))
    except DomainError as exc:
        raise DomainError(f"necklace does not come from a decorated permutation: {exc}") from None
    if necklace_from_perm(f) != N:
        raise DomainError("necklace does not round-trip through a decorated permutation")
    return f


def positroid_contains(N: GrassmannNecklace, J: CyclicSet) -> bool:
    if J.m != N.m:
        raise DomainError(f"ambient mismatch: {J.m} vs {N.m}")
    if len(J) != N.k:
        raise DomainError(f"|J| = {len(J)} but the positroid has rank {N.k}")
    return _contains_mask(N.masks, J.mask, N.m)


def _contains_mask(necklace_masks, j_mask: int, m: int) -> bool:
    return all(gale_leq_mask(a, ia, j_mask, m) for a, ia in enumerate(necklace_masks, 1))


def positroid_members(N: GrassmannNecklace, budget: Budget = DEFAULT) -> list[CyclicSet]:
    return [CyclicSet(N.m, x) for x in _member_masks(N, budget)]


def _member_masks(N: GrassmannNecklace, budget: Budget) -> tuple[int, ...]:
    if comb(N.m, N.k) > budget.max_members:
        raise BudgetError(f"C({N.m},{N.k}) = {comb(N.m, N.k)} exceeds member budget {budget.max_members}")
    nm = N.masks
    return tuple(x for x in masks_of_size(N.m, N.k) if _contains_mask(nm, x, N.m))


@dataclass(frozen=True, eq=False)
class Positroid:
    """A positroid, held through its necklace, with lazily cached members."""

    necklace: GrassmannNecklace
    budget: Budget = field(default=DEFAULT, compare=False)

    @classmethod
    def from_perm(cls, f: DecoratedPermutation, budget: Budget = DEFAULT) -> "Positroid":
        return cls(necklace_from_perm(f), budget)

    def __eq__(self, other):
        return isinstance(other, Positroid) and self.necklace == other.necklace

    def __hash__(self):
        return hash(self.necklace)

    @property
    def m(self) -> int:
        return self.necklace.m

    @property
    def k(self) -> int:
        return self.necklace.k

    @cached_property
    def perm(self) -> DecoratedPermutation:
        return perm_from_necklace(self.necklace)

    @cached_property
    def member_masks(self) -> tuple[int, ...]:
        return _member_masks(self.necklace, self.budget)

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.member_masks)

    def members(self) -> list[CyclicSet]:
        return [CyclicSet(self.m, x) for x in self.member_masks]

    def __contains__(self, J: CyclicSet) -> bool:
        return J.m == self.m and J.mask in self._member_set

    @property
    def is_type_c(self) -> bool:
        return self.m % 2 == 0 and self.k == self.m // 2 and is_type_c_necklace(self.necklace)


def alignments(f: DecoratedPermutation) -> list[tuple[int, int]]:
    """Ordered pairs ``(i, j)`` with ``i, f(i), f(j), j`` distinct and in cyclic order."""
    m = f.m
    out = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            pts = (i, f(i), f(j), j)
            if len(set(pts)) < 4:
                continue
            ranks = [cyclic_rank(i, p, m) for p in pts]
            if ranks == sorted(ranks):
                out.append((i, j))
    return out


def is_alignment_closed(f: DecoratedPermutation, I: CyclicSet) -> bool:
    """For every alignment ``(i, j)``: ``f(i)`` in ``I`` implies ``f(j)`` in ``I``."""
    return all(f(j) in I for i, j in alignments(f) if f(i) in I)


def _half(m: int) -> int:
    if m % 2:
        raise DomainError(f"type C needs even m, got {m}")
    return m // 2


def is_type_c_perm(f: DecoratedPermutation) -> bool:
    """``f(i') = f(i)'`` for all i, with mirrored fixed points oppositely colored."""
    m = f.m
    _half(m)
    for i in range(1, m + 1):
        ip = m - i + 1
        if f(ip) != m - f(i) + 1:
            return False
        if f(i) == i and (i in f.white) == (ip in f.white):
            return False
    return True


def is_type_c_necklace(N: GrassmannNecklace) -> bool:
    n = _half(N.m)
    if N.k != n:
        raise DomainError(f"type C needs k = n = {n}, got k = {N.k}")
    m = N.m
    return all(N[m - i + 1].mask == bar_mask(N[i + 1].mask, m) for i in range(1, m + 1))


def spine_data(f: DecoratedPermutation) -> tuple[CyclicSet, int]:
    """``S = {a in [n] : f^{-1}(a) > n}`` and ``r = |S| + 1``."""
    if f.m % 2 or not is_type_c_perm(f):
        raise DomainError(f"{f} is not a type-C decorated permutation")
    n = f.m // 2
    S = CyclicSet.of([a for a in range(1, n + 1) if f.inv(a) > n], f.m)
    return S, len(S) + 1


def top_cell_perm(n: int) -> DecoratedPermutation:
    if n < 1:
        raise DomainError("n must be positive")
    m = 2 * n
    return DecoratedPermutation(tuple((i + n - 1) % m + 1 for i in range(1, m + 1)))


def top_cell_necklace(n: int) -> GrassmannNecklace:
    return necklace_from_perm(top_cell_perm(n))


def uniform_perm(k: int, m: int) -> DecoratedPermutation:
    """Decorated permutation of the top cell of ``Gr(k, m)``: ``i -> i + k``."""
    if not 0 <= k <= m:
        raise DomainError(f"need 0 <= k <= m, got k={k}, m={m}")
    image = tuple((i + k - 1) % m + 1 for i in range(1, m + 1))
    white = frozenset(range(1, m + 1)) if k == m and m else frozenset()
    return DecoratedPermutation(image, white)


def decorated_permutations(m: int) -> Iterator[DecoratedPermutation]:
    """Every decorated permutation of ``[m]``, deterministic order."""
    for image in permutations(range(1, m + 1)):
        fixed = [i for i, x in enumerate(image, 1) if x == i]
        for colors in product((False, True), repeat=len(fixed)):
            yield DecoratedPermutation(image, frozenset(p for p, w in zip(fixed, colors) if w))


def type_c_permutations(n: int, fixed_point_free: bool = False) -> Iterator[DecoratedPermutation]:
    for f in decorated_permutations(2 * n):
        if fixed_point_free and f.fixed_points:
            continue
        if is_type_c_perm(f):
            yield f


def full_set(m: int) -> CyclicSet:
    return CyclicSet(m, full_mask(m))
