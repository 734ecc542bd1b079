"""Plabic graphs stored as half-edge structures.

Vertices ``0 .. m-1`` are the boundary vertices ``1 .. m`` (clockwise);
internal vertices follow and carry a color.  Edge ``e = (u, v)`` owns the
half-edges ``2e`` (u -> v) and ``2e + 1`` (v -> u), so ``twin(h) = h ^ 1``.
``rotation[v]`` lists the half-edges leaving ``v`` counterclockwise.

Faces are computed on an extended structure that closes the disk with
boundary arcs ``i -> i+1``; the orbit of those arcs is the exterior and is
discarded.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .cyclic import CyclicSet
from .errors import DomainError, StructuralError
from .positroid import Color, DecoratedPermutation
from .tiling import PlabicTiling, edge_key

Point = tuple[float, float]


@dataclass(frozen=True)
class Trip:
    start: int
    steps: tuple[int, ...]  # half-edges in order
    end: int


@dataclass(frozen=True)
class FaceLabeling:
    labels: dict[int, CyclicSet]  # face id -> label
    boundary_faces: tuple[int, ...]  # face between legs i-1 and i, for i = 1..m

    def label_set(self) -> frozenset[CyclicSet]:
        return frozenset(self.labels.values())

    def boundary_labels(self) -> tuple[CyclicSet, ...]:
        return tuple(self.labels[f] for f in self.boundary_faces)


@dataclass(frozen=True, eq=False)
class PlabicGraph:
    m: int
    colors: tuple[Optional[Color], ...]  # None for boundary vertices
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    positions: Optional[tuple[Point, ...]] = None
    # tiling label on the left of each half-edge, when built as a dual
    left_hints: Optional[tuple[CyclicSet, ...]] = field(default=None, repr=False)

    def __post_init__(self):
        nv = len(self.colors)
        if nv < self.m or any(c is not None for c in self.colors[:self.m]):
            raise StructuralError("vertices 0..m-1 must be the uncolored boundary vertices")
        if any(c is None for c in self.colors[self.m:]):
            raise StructuralError("internal vertices need a color")
        if len(self.rotation) != nv:
            raise StructuralError("one rotation list per vertex is required")
        seen = set()
        for v, rot in enumerate(self.rotation):
            for h in rot:
                if not 0 <= h < 2 * len(self.edges) or self.origin(h) != v or h in seen:
                    raise StructuralError(f"half-edge {h} misplaced in the rotation of vertex {v}")
                seen.add(h)
        if len(seen) != 2 * len(self.edges):
            raise StructuralError("rotation system does not cover every half-edge")
        for b in range(self.m):
            if len(self.rotation[b]) != 1:
                raise StructuralError(f"boundary vertex {b + 1} must have degree one")

    # -- half-edge plumbing --------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.colors)

    def origin(self, h: int) -> int:
        return self.edges[h >> 1][h & 1]

    def target(self, h: int) -> int:
        return self.edges[h >> 1][1 - (h & 1)]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def leg(self, i: int) -> int:
        """Half-edge leaving boundary vertex ``i`` (1-based)."""
        return self.rotation[i - 1][0]

    @cached_property
    def _slot(self) -> dict[int, int]:
        return {h: idx for rot in self.rotation for idx, h in enumerate(rot)}

    def rot_next(self, h: int, step: int = 1) -> int:
        rot = self.rotation[self.origin(h)]
        return rot[(self._slot[h] + step) % len(rot)]

    # -- faces ---------------------------------------------------------------

    @cached_property
    def _faces(self) -> tuple[list[int], list[list[int]], tuple[int, ...]]:
        """(face id per extended half-edge, half-edges per face, boundary faces)."""
        m, H = self.m, 2 * len(self.edges)
        if m == 0:
            return [], [[]], ()

        def arc_out(i):  # boundary i -> i+1, exterior on the left
            return H + 2 * (i - 1)

        def arc_back(i):  # boundary i -> i-1
            return H + 2 * ((i - 2) % m) + 1

        ext_rot = {}
        origin = {}
        for v, rot in enumerate(self.rotation):
            if v < m:
                i = v + 1
                ext_rot[v] = [arc_out(i), arc_back(i), rot[0]]
            else:
                ext_rot[v] = list(rot)
            for h in ext_rot[v]:
                origin[h] = v
        slot = {h: idx for rot in ext_rot.values() for idx, h in enumerate(rot)}

        def nxt(h):
            t = h ^ 1
            rot = ext_rot[origin[t]]
            return rot[(slot[t] - 1) % len(rot)]

        face_of = [-1] * (H + 2 * m)
        faces: list[list[int]] = []
        exterior = None
        for h0 in range(H + 2 * m):
            if face_of[h0] >= 0:
                continue
            orbit = []
            h = h0
            while face_of[h] < 0:
                face_of[h] = len(faces)
                orbit.append(h)
                h = nxt(h)
            if h0 == arc_out(1):
                exterior = len(faces)
            faces.append(orbit)
        # renumber so the exterior disappears
        keep = [f for f in range(len(faces)) if f != exterior]
        renum = {f: idx for idx, f in enumerate(keep)}
        face_of = [renum.get(f, -1) for f in face_of]
        faces = [faces[f] for f in keep]
        boundary = tuple(face_of[arc_back(i)] for i in range(1, m + 1))
        return face_of, faces, boundary

    @property
    def num_faces(self) -> int:
        return len(self._faces[1])

    def face_left(self, h: int) -> int:
        return self._faces[0][h]

    def boundary_face(self, i: int) -> int:
        """Face between leg ``i - 1`` and leg ``i``."""
        return self._faces[2][i - 1]

    def euler_ok(self) -> bool:
        """``V - E + F = 1`` for the closed disk, boundary arcs counted as edges."""
        if self.m == 0:
            return True
        return self.num_vertices - (len(self.edges) + self.m) + self.num_faces == 1

    # -- export --------------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "vertices": [{"id": v, "boundary": v + 1 if v < self.m else None,
                          "color": None if c is None else c.value}
                         for v, c in enumerate(self.colors)],
            "edges": [list(e) for e in self.edges],
            "rotation": [list(r) for r in self.rotation],
        }
        if self.positions is not None:
            out["positions"] = [list(p) for p in self.positions]
        return out

    @classmethod
    def from_json(cls, obj: dict | str) -> "PlabicGraph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        colors = tuple(None if v["color"] is None else Color(v["color"]) for v in obj["vertices"])
        positions = obj.get("positions")
        return cls(
            m=obj["m"],
            colors=colors,
            edges=tuple(tuple(e) for e in obj["edges"]),
            rotation=tuple(tuple(r) for r in obj["rotation"]),
            positions=None if positions is None else tuple(tuple(p) for p in positions),
        )

    def to_dot(self) -> str:
        lines = ["graph plabic {", "  node [fontname=\"sans-serif\"];"]
        for v, c in enumerate(self.colors):
            pos = ""
            if self.positions is not None:
                x, y = self.positions[v]
                pos = f', pos="{x:.4f},{y:.4f}!"'
            if c is None:
                lines.append(f'  b{v + 1} [shape=plaintext, label="{v + 1}"{pos}];')
            else:
                lines.append(f'  v{v} [shape=circle, style=filled, fillcolor={c.value}, '
                             f'label=""{pos}];')
        for u, w in self.edges:
            lines.append(f"  {self._dot_name(u)} -- {self._dot_name(w)};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def _dot_name(self, v: int) -> str:
        return f"b{v + 1}" if v < self.m else f"v{v}"


# -- trips ---------------------------------------------------------------------

def _walk(G: PlabicGraph, start: int) -> Trip:
    h = G.leg(start)
    steps = [h]
    limit = 2 * len(G.edges) + 1
    while True:
        v = G.target(h)
        if v < G.m:
            return Trip(start, tuple(steps), v + 1)
        # turn maximally left at white (clockwise neighbour of the way back),
        # maximally right at black
        step = -1 if G.colors[v] is Color.WHITE else 1
        h = G.rot_next(h ^ 1, step)
        steps.append(h)
        if len(steps) > limit:
            raise StructuralError(f"trip from {start} does not terminate")


def trips(G: PlabicGraph) -> list[Trip]:
    return [_walk(G, i) for i in range(1, G.m + 1)]


def _leaf_color(G: PlabicGraph, i: int) -> Optional[Color]:
    v = G.target(G.leg(i))
    if v >= G.m and G.degree(v) == 1:
        return G.colors[v]
    return None


def trip_permutation(G: PlabicGraph) -> DecoratedPermutation:
    image = []
    white = set()
    for t in trips(G):
        image.append(t.end)
        if t.end == t.start:
            color = _leaf_color(G, t.start)
            if color is None:
                raise StructuralError(f"fixed point {t.start} is not a boundary leaf")
            if color is Color.WHITE:
                white.add(t.start)
    return DecoratedPermutation(tuple(image), frozenset(white))


def reducedness_report(G: PlabicGraph) -> dict[int, bool]:
    """Truth value of each of the four trip criteria."""
    try:
        ts = trips(G)
    except StructuralError:
        return {1: False, 2: False, 3: False, 4: False}
    uses = [0] * (2 * len(G.edges))
    for t in ts:
        for h in t.steps:
            uses[h] += 1
    crit1 = all(u == 1 for u in uses)
    crit2 = all(
        G.degree(v) != 1 or G.target(G.rotation[v][0]) < G.m
        for v in range(G.m, G.num_vertices)
    )
    crit3 = True
    for t in ts:
        es = [h >> 1 for h in t.steps]
        if len(set(es)) < len(es):
            leafy = t.start == t.end and _leaf_color(G, t.start) is not None
            if not leafy:
                crit3 = False
    crit4 = True
    orders = []
    for t in ts:
        pos = {}
        for idx, h in enumerate(t.steps):
            pos.setdefault(h >> 1, idx)
        orders.append(pos)
    for a in range(len(ts)):
        for b in range(a + 1, len(ts)):
            shared = [e for e in orders[a] if e in orders[b]]
            for x in range(len(shared)):
                for y in range(x + 1, len(shared)):
                    e1, e2 = shared[x], shared[y]
                    if (orders[a][e1] < orders[a][e2]) == (orders[b][e1] < orders[b][e2]):
                        crit4 = False
                        break
                if not crit4:
                    break
            if not crit4:
                break
        if not crit4:
            break
    return {1: crit1, 2: crit2, 3: crit3, 4: crit4}


def is_reduced(G: PlabicGraph) -> bool:
    return all(reducedness_report(G).values())


# -- face labels ----------------------------------------------------------------

def face_labels(G: PlabicGraph, check_reduced: bool = True) -> FaceLabeling:
    """Face ``F`` receives ``i`` when it lies left of the trip ending at ``i``.

    The left region of a trip is flood-filled from the faces on the left of
    its half-edges, never crossing an edge the trip uses.
    """
    if check_reduced and not is_reduced(G):
        raise DomainError("face labels need a reduced plabic graph")
    m = G.m
    if m == 0:
        return FaceLabeling({0: CyclicSet(0, 0)}, ())
    nf = G.num_faces
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(nf)]
    for e in range(len(G.edges)):
        f1, f2 = G.face_left(2 * e), G.face_left(2 * e + 1)
        if f1 != f2:
            adjacency[f1].append((f2, e))
            adjacency[f2].append((f1, e))
    masks = [0] * nf
    for t in trips(G):
        bit = 1 << (t.end - 1)
        if t.start == t.end and _leaf_color(G, t.start) is not None:
            if _leaf_color(G, t.start) is Color.WHITE:
                masks = [x | bit for x in masks]
            continue
        blocked = {h >> 1 for h in t.steps}
        left = {G.face_left(h) for h in t.steps}
        right = {G.face_left(h ^ 1) for h in t.steps}
        queue = deque(left)
        while queue:
            f = queue.popleft()
            for g, e in adjacency[f]:
                if e not in blocked and g not in left:
                    left.add(g)
                    queue.append(g)
        if left & right:
            raise StructuralError(f"trip ending at {t.end} does not separate the disk")
        for f in left:
            masks[f] |= bit
    labels = {f: CyclicSet(m, x) for f, x in enumerate(masks)}
    if len({len(L) for L in labels.values()}) > 1:
        raise StructuralError("face labels have different sizes")
    return FaceLabeling(labels, tuple(G.boundary_face(i) for i in range(1, m + 1)))


def hinted_labels(G: PlabicGraph) -> dict[int, CyclicSet]:
    """Face -> tiling label from the geometric hints stored by :func:`dual_graph`."""
    if G.left_hints is None:
        raise DomainError("graph carries no tiling hints")
    out: dict[int, CyclicSet] = {}
    for h, label in enumerate(G.left_hints):
        f = G.face_left(h)
        if out.setdefault(f, label) != label:
            raise StructuralError(f"face {f} is dual to two tiling vertices")
    return out


# -- symmetry ---------------------------------------------------------------------

def mirror_map(G: PlabicGraph) -> Optional[dict[int, int]]:
    """A color-reversing isomorphism onto the mirror image, as a half-edge map.

    The mirror reverses every cyclic order and relabels boundary ``i`` as
    ``i'``; propagation is seeded by sending each leg ``i`` to leg ``i'``.
    """
    m = G.m
    if m % 2:
        raise DomainError("symmetric plabic graphs need an even number of boundary vertices")
    hmap: dict[int, int] = {}
    vmap: dict[int, int] = {}
    queue = deque()

    def assign(h, g):
        if h in hmap:
            return hmap[h] == g
        u, w = G.origin(h), G.origin(g)
        if vmap.get(u, w) != w:
            return False
        if u < m or w < m:
            if not (u < m and w < m and w == m - 1 - u):
                return False
        elif G.colors[u] is G.colors[w] or G.degree(u) != G.degree(w):
            return False
        vmap[u] = w
        hmap[h] = g
        queue.append(h)
        return True

    for i in range(1, m + 1):
        if not assign(G.leg(i), G.leg(m - i + 1)):
            return None
    while queue:
        h = queue.popleft()
        g = hmap[h]
        if not assign(h ^ 1, g ^ 1) or not assign(G.rot_next(h, 1), G.rot_next(g, -1)):
            return None
    if len(hmap) != 2 * len(G.edges) or len(set(vmap.values())) != len(vmap):
        return None
    return hmap


def is_symmetric_graph(G: PlabicGraph) -> bool:
    return mirror_map(G) is not None


def mirror_faces(G: PlabicGraph) -> Optional[dict[int, int]]:
    """Face permutation induced by :func:`mirror_map`."""
    hmap = mirror_map(G)
    if hmap is None:
        return None
    out = {}
    for h, g in hmap.items():
        out[G.face_left(h)] = G.face_left(g ^ 1)
    return out


def midline_labels(G: PlabicGraph) -> Optional[list[CyclicSet]]:
    """Labels of the faces fixed by the mirror, i.e. the faces the axis meets."""
    fmap = mirror_faces(G)
    if fmap is None:
        return None
    labels = face_labels(G).labels
    return sorted((labels[f] for f, g in fmap.items() if f == g), key=lambda I: I.mask)


# -- boundary leaves ----------------------------------------------------------------

@dataclass(frozen=True)
class LeafRecord:
    m: int  # original number of boundary vertices
    kept: tuple[int, ...]  # original indices of the surviving boundary vertices, in order
    white: frozenset[int]
    black: frozenset[int]

    def lift(self, label: CyclicSet) -> CyclicSet:
        mask = 0
        for new, old in enumerate(self.kept, 1):
            if new in label:
                mask |= 1 << (old - 1)
        for old in self.white:
            mask |= 1 << (old - 1)
        return CyclicSet(self.m, mask)


def _rebuild(G: PlabicGraph, drop: set[int], boundary_order: list[int],
             extra: list[tuple[int, Color, int]] = ()) -> PlabicGraph:
    """Copy ``G`` without the vertices in ``drop``.

    ``boundary_order`` lists old vertex ids (or ``("new", slot)`` markers for
    inserted leaves) for the new boundary ``1..m'``.
    """
    old_internal = [v for v in range(G.m, G.num_vertices) if v not in drop]
    new_m = len(boundary_order)
    vid: dict = {}
    for idx, b in enumerate(boundary_order):
        vid[b] = idx
    next_id = new_m
    for v in old_internal:
        vid[v] = next_id
        next_id += 1
    colors: list[Optional[Color]] = [None] * new_m + [G.colors[v] for v in old_internal]
    edges = []
    hmap = {}
    for e, (u, w) in enumerate(G.edges):
        if u in drop or w in drop:
            continue
        hmap[2 * e] = 2 * len(edges)
        hmap[2 * e + 1] = 2 * len(edges) + 1
        edges.append((vid[u], vid[w]))
    rotation: list[list[int]] = [[] for _ in range(new_m + len(old_internal))]
    for v, rot in enumerate(G.rotation):
        if v in drop:
            continue
        rotation[vid[v]] = [hmap[h] for h in rot if h in hmap]
    # inserted leaves: (boundary marker, color, _)
    for marker, color, _ in extra:
        leaf = len(colors)
        colors.append(color)
        rotation.append([])
        b = vid[marker]
        e = len(edges)
        edges.append((b, leaf))
        rotation[b] = [2 * e]
        rotation[leaf] = [2 * e + 1]
    return PlabicGraph(new_m, tuple(colors), tuple(edges), tuple(tuple(r) for r in rotation))


def strip_boundary_leaves(G: PlabicGraph) -> tuple[PlabicGraph, LeafRecord]:
    drop = set()
    white, black = set(), set()
    for i in range(1, G.m + 1):
        color = _leaf_color(G, i)
        if color is not None:
            drop.add(i - 1)
            drop.add(G.target(G.leg(i)))
            (white if color is Color.WHITE else black).add(i)
    if not drop:
        return G, LeafRecord(G.m, tuple(range(1, G.m + 1)), frozenset(), frozenset())
    kept = [i for i in range(1, G.m + 1) if i - 1 not in drop]
    H = _rebuild(G, drop, [i - 1 for i in kept])
    return H, LeafRecord(G.m, tuple(kept), frozenset(white), frozenset(black))


def attach_boundary_leaves(G: PlabicGraph, record: LeafRecord) -> PlabicGraph:
    """Inverse of :func:`strip_boundary_leaves`."""
    if len(record.kept) != G.m:
        raise DomainError("leaf record does not match the graph")
    order: list = []
    extra = []
    old_to_new = {old: new for new, old in enumerate(record.kept)}
    for i in range(1, record.m + 1):
        if i in old_to_new:
            order.append(old_to_new[i])
        else:
            marker = ("leaf", i)
            order.append(marker)
            extra.append((marker, Color.WHITE if i in record.white else Color.BLACK, i))
    return _rebuild(G, set(), order, extra)


# -- planar dual of a tiling ---------------------------------------------------

def dual_graph(T: PlabicTiling, offset: float = 0.25) -> PlabicGraph:
    """One internal vertex per cell, one edge per tiling edge, one leg per
    boundary step; fixed points of the boundary walk become boundary leaves."""
    m = T.m
    pos = T.positions if m else {}
    boundary = T.boundary
    cells = T.cells
    colors: list[Optional[Color]] = [None] * m + [c.color for c in cells]
    positions: list[Point] = [(0.0, 0.0)] * m
    for c in cells:
        poly = T.polygon(c)
        positions.append((sum(p[0] for p in poly) / len(poly), sum(p[1] for p in poly) / len(poly)))

    # each tiling edge collects its two sides: ("cell", idx, slot) or ("bnd", i)
    sides: dict[tuple, list] = {}
    for idx, c in enumerate(cells):
        for slot, (I, J) in enumerate(c.sides()):
            sides.setdefault(edge_key(I, J), []).append(("cell", idx, slot))
    leaves = []
    for i in range(1, m + 1):
        P, Q = boundary[i - 1], boundary[i % m]
        if P == Q:
            leaves.append(i)
            continue
        sides.setdefault(edge_key(P, Q), []).append(("bnd", i))
        (px, py), (qx, qy) = pos[P], pos[Q]
        mx, my = (px + qx) / 2, (py + qy) / 2
        dx, dy = qx - px, qy - py
        norm = math.hypot(dx, dy)
        # the necklace runs clockwise, so the exterior is on its left
        positions[i - 1] = (mx - dy / norm * offset, my + dx / norm * offset)
    for key in T.edges:
        if len(sides.get(key, ())) != 2:
            raise StructuralError(f"tiling edge {key[0]}-{key[1]} does not have two sides")

    def vertex_of(side):
        return m + side[1] if side[0] == "cell" else side[1] - 1

    edges: list[tuple[int, int]] = []
    hints: list[CyclicSet] = []
    cell_slots: dict[int, dict[int, int]] = {idx: {} for idx in range(len(cells))}
    legs: dict[int, int] = {}
    for key in T.edges:
        s1, s2 = sides[key]
        u, w = vertex_of(s1), vertex_of(s2)
        e = len(edges)
        edges.append((u, w))
        P, Q = key
        mid = ((pos[P][0] + pos[Q][0]) / 2, (pos[P][1] + pos[Q][1]) / 2)
        pu = positions[u]
        dx, dy = mid[0] - pu[0], mid[1] - pu[1]
        cross = dx * (pos[P][1] - mid[1]) - dy * (pos[P][0] - mid[0])
        left_uw = P if cross > 0 else Q
        hints.extend([left_uw, Q if left_uw == P else P])
        for side, h in ((s1, 2 * e), (s2, 2 * e + 1)):
            if side[0] == "cell":
                cell_slots[side[1]][side[2]] = h
            else:
                legs[side[1]] = h
    for i in leaves:
        I = boundary[i - 1]
        v = len(colors)
        colors.append(Color.WHITE if i in I else Color.BLACK)
        p = pos[I] if m else (0.0, 0.0)
        positions.append(p)
        positions[i - 1] = (p[0] * 1.1 + 0.05, p[1] * 1.1 + 0.05)
        e = len(edges)
        edges.append((i - 1, v))
        hints.extend([I, I])
        legs[i] = 2 * e
    rotation: list[tuple[int, ...]] = [(legs[i],) for i in range(1, m + 1)]
    for idx, c in enumerate(cells):
        rotation.append(tuple(cell_slots[idx][s] for s in range(len(c.vertices))))
    for i in leaves:
        rotation.append((legs[i] ^ 1,))
    return PlabicGraph(m, tuple(colors), tuple(edges), tuple(rotation), tuple(positions), tuple(hints))
