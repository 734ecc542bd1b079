"""Plabic tilings of maximal weakly separated collections.

Boundary points sit on the unit circle at angles
``180 - (2i - 1) * 180 / m`` degrees, so ``v_1`` is just above the negative
x-axis, the points run clockwise, and for even ``m`` the horizontal
reflection swaps ``v_i`` with ``v_{i'}``.  A set ``I`` is drawn at
``v_I = sum of v_i``; for admissible ``I`` the mirror image of ``v_I`` in
the vertical axis is ``v_{bar I}``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from xml.sax.saxutils import escape

from .collection import WSCollection, is_max_by_inclusion
from .cyclic import CyclicSet, bar, bar_mask, is_pair_free
from .errors import DomainError, StructuralError
from .positroid import Color

TOL = 1e-9

Point = tuple[float, float]


def embed_points(m: int) -> list[Point]:
    if m < 1:
        raise DomainError(f"need at least one boundary point, got m = {m}")
    step = math.pi / m
    return [(math.cos(math.pi - (2 * i - 1) * step), math.sin(math.pi - (2 * i - 1) * step))
            for i in range(1, m + 1)]


def position(I: CyclicSet, points: list[Point] | None = None) -> Point:
    points = points or embed_points(I.m)
    x = y = 0.0
    for i in I.members:
        x += points[i - 1][0]
        y += points[i - 1][1]
    return (x, y)


def axis_coefficients(I: CyclicSet) -> tuple[int, ...]:
    """Exact x-coordinate of ``v_I`` as integer coefficients of
    ``cos(theta_a)`` for ``a = 1 .. floor(n/2)``.

    Uses ``x_{a'} = x_a``, ``x_{n+1-a} = -x_a`` and ``x_{(n+1)/2} = 0``; the
    x-coordinate is zero whenever all coefficients vanish.
    """
    m = I.m
    if m % 2:
        raise DomainError("axis coefficients need even m")
    n = m // 2
    coeff = [0] * (n // 2)
    for i in I.members:
        a = min(i, m - i + 1)
        b = n + 1 - a
        if a == b:
            continue
        if a <= n // 2:
            coeff[a - 1] += 1
        else:
            coeff[b - 1] -= 1
    return tuple(coeff)


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def polygon_area(pts: list[Point]) -> float:
    s = 0.0
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        s += x1 * y2 - x2 * y1
    return s / 2


def is_strictly_convex(pts: list[Point], tol: float = TOL) -> bool:
    """Counterclockwise with every turn strictly left."""
    d = len(pts)
    return d >= 3 and all(_cross(pts[i], pts[(i + 1) % d], pts[(i + 2) % d]) > tol for i in range(d))


def interiors_overlap(p: list[Point], q: list[Point], tol: float = TOL) -> bool:
    """Separating-axis test for two convex polygons."""
    for poly in (p, q):
        for a, b in zip(poly, poly[1:] + poly[:1]):
            nx, ny = a[1] - b[1], b[0] - a[0]
            proj_p = [nx * x + ny * y for x, y in p]
            proj_q = [nx * x + ny * y for x, y in q]
            if max(proj_p) <= min(proj_q) + tol or max(proj_q) <= min(proj_p) + tol:
                return False
    return True


@dataclass(frozen=True)
class TilingCell:
    color: Color
    witness: CyclicSet  # (k-1)-set K for white cells, (k+1)-set L for black ones
    vertices: tuple[CyclicSet, ...]  # counterclockwise

    def sides(self) -> list[tuple[CyclicSet, CyclicSet]]:
        vs = self.vertices
        return list(zip(vs, vs[1:] + vs[:1]))


def edge_key(I: CyclicSet, J: CyclicSet) -> tuple[CyclicSet, CyclicSet]:
    return (I, J) if I.mask < J.mask else (J, I)


@dataclass(frozen=True)
class PlabicTiling:
    collection: WSCollection
    cells: tuple[TilingCell, ...]
    edges: tuple[tuple[CyclicSet, CyclicSet], ...]
    boundary: tuple[CyclicSet, ...]  # necklace I_1 .. I_m

    @property
    def m(self) -> int:
        return self.collection.m

    @cached_property
    def points(self) -> list[Point]:
        return embed_points(self.m)

    @cached_property
    def positions(self) -> dict[CyclicSet, Point]:
        return {I: position(I, self.points) for I in self.collection.sorted_members()}

    def polygon(self, cell: TilingCell) -> list[Point]:
        return [self.positions[I] for I in cell.vertices]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.collection.k,
            "vertices": [{"label": list(I.members), "position": list(self.positions[I])}
                         for I in self.collection.sorted_members()],
            "cells": [{"color": c.color.value, "witness": list(c.witness.members),
                       "vertices": [list(I.members) for I in c.vertices]} for c in self.cells],
            "edges": [[list(I.members), list(J.members)] for I, J in self.edges],
            "boundary": [list(I.members) for I in self.boundary],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _order_ccw(labels: list[CyclicSet], pos: dict[CyclicSet, Point]) -> tuple[CyclicSet, ...]:
    cx = sum(pos[I][0] for I in labels) / len(labels)
    cy = sum(pos[I][1] for I in labels) / len(labels)
    return tuple(sorted(labels, key=lambda I: (math.atan2(pos[I][1] - cy, pos[I][0] - cx), I.mask)))


def cliques(C: WSCollection) -> list[TilingCell]:
    """All non-trivial white and black cliques, white first, each in canonical order."""
    m, k = C.m, C.k
    ms = C.mask_set
    white: dict[int, list[int]] = {}
    black: dict[int, list[int]] = {}
    for x in ms:
        for e in range(m):
            bit = 1 << e
            if x & bit:
                white.setdefault(x & ~bit, []).append(x)
            else:
                black.setdefault(x | bit, []).append(x)
    pos = {I: position(I) for I in C.members} if m else {}
    out = []
    for color, groups in ((Color.WHITE, white), (Color.BLACK, black)):
        for key in sorted(groups):
            labels = [CyclicSet(m, x) for x in groups[key]]
            if len(labels) >= 3:
                out.append(TilingCell(color, CyclicSet(m, key), _order_ccw(labels, pos)))
    return out


def build_tiling(C: WSCollection) -> PlabicTiling:
    if C.anchor is None or not is_max_by_inclusion(C):
        raise DomainError("tilings are built from maximal anchored collections")
    cells = cliques(C)
    edges = set()
    for cell in cells:
        for I, J in cell.sides():
            edges.add(edge_key(I, J))
    ms = C.mask_set
    for x, y in combinations(sorted(ms), 2):
        if (x ^ y).bit_count() != 2:
            continue
        meet, join = x & y, x | y
        white = [z for z in ms if z & meet == meet and (z & ~meet).bit_count() == 1]
        black = [z for z in ms if z | join == join and (join & ~z).bit_count() == 1]
        if len(white) == 2 and len(black) == 2:
            edges.add(edge_key(CyclicSet(C.m, x), CyclicSet(C.m, y)))
    boundary = tuple(C.anchor.necklace.entries)
    for i in range(C.m):
        P, Q = boundary[i], boundary[(i + 1) % C.m]
        if P != Q and edge_key(P, Q) not in edges:
            raise StructuralError(f"boundary step {P} -> {Q} is not an edge of the tiling")
    return PlabicTiling(C, tuple(cells), tuple(sorted(edges, key=lambda e: (e[0].mask, e[1].mask))), boundary)


def is_symmetric_tiling(T: PlabicTiling) -> bool:
    """Labels are bar-closed and bar turns each white cell of ``K`` into the
    black cell of ``bar K`` (with the same vertex labels), and vice versa."""
    m = T.m
    if m % 2:
        raise DomainError("symmetric tilings need even m")
    ms = T.collection.mask_set
    if any(bar_mask(x, m) not in ms for x in ms):
        return False
    cells = {(c.color, c.witness): frozenset(c.vertices) for c in T.cells}
    for cell in T.cells:
        color, witness, verts = bar_cell(cell)
        if cells.get((color, witness)) != verts:
            return False
    return True


def pair_free_on_axis(T: PlabicTiling, tol: float = TOL) -> bool:
    if T.m % 2:
        raise DomainError("the vertical axis is only meaningful for even m")
    return all((abs(p[0]) <= tol) == is_pair_free(I) for I, p in T.positions.items())


def mirror_x(p: Point) -> Point:
    return (-p[0], p[1])


def total_area(T: PlabicTiling) -> float:
    return sum(polygon_area(T.polygon(c)) for c in T.cells)


# -- rendering ---------------------------------------------------------------

def _fmt(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def render_svg(T: PlabicTiling, scale: float = 80.0) -> bytes:
    """Deterministic SVG 1.1 drawing of the tiling (y axis pointing up)."""
    pts = list(T.positions.values()) or [(0.0, 0.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = 0.6
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad

    def sx(x):
        return _fmt((x - x0) * scale)

    def sy(y):
        return _fmt((y1 - y) * scale)

    width, height = _fmt((x1 - x0) * scale), _fmt((y1 - y0) * scale)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if T.m % 2 == 0:
        out.append(f'<line class="midline" x1="{sx(0)}" y1="{sy(y1)}" x2="{sx(0)}" y2="{sy(y0)}" '
                   'stroke="#888888" stroke-dasharray="4,4"/>')
    for cell in T.cells:
        fill = "#ffffff" if cell.color is Color.WHITE else "#404040"
        pts_attr = " ".join(f"{sx(x)},{sy(y)}" for x, y in T.polygon(cell))
        out.append(f'<polygon points="{pts_attr}" fill="{fill}" stroke="#000000" stroke-width="1.5"/>')
    cell_sides = {edge_key(I, J) for c in T.cells for I, J in c.sides()}
    for I, J in T.edges:
        if (I, J) in cell_sides:
            continue
        (ax, ay), (bx, by) = T.positions[I], T.positions[J]
        out.append(f'<line x1="{sx(ax)}" y1="{sy(ay)}" x2="{sx(bx)}" y2="{sy(by)}" '
                   'stroke="#000000" stroke-width="1.5"/>')
    for I, (x, y) in T.positions.items():
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="3" fill="#c03030"/>')
        label = escape("".join(map(str, I.members)) if T.m < 10 else str(I))
        out.append(f'<text x="{sx(x)}" y="{sy(y)}" dx="5" dy="-5" font-size="12" '
                   f'font-family="sans-serif">{label}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def bar_cell(cell: TilingCell) -> tuple[Color, CyclicSet, frozenset[CyclicSet]]:
    """Image of a cell under the bar map: flipped color, mirrored witness and vertices."""
    m = cell.witness.m
    full = (1 << m) - 1
    rev = int(format(cell.witness.mask, f"0{m}b")[::-1], 2)
    return cell.color.flip(), CyclicSet(m, full & ~rev), frozenset(bar(I) for I in cell.vertices)
