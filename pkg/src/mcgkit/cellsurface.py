"""Combinatorial model of compact oriented surfaces with punctures and boundary.

A surface is a collection of polygonal faces together with an
orientation-reversing pairing ("gluing") on their directed edge slots.
Slots left unpaired form the boundary.  Punctures are marked vertices in
the interior; they are never removed from the surface, so the Euler
characteristic only sees genus and boundary.

Conventions, fixed once and used by every other module:

* every face is a cyclic tuple of slot ids, read counterclockwise;
* a slot is a directed edge of its face; ``next_slot`` walks the face
  boundary counterclockwise;
* two glued slots traverse their common edge in opposite directions,
  which is exactly the orientation-reversing identification that makes
  the glued surface oriented;
* the corner at the tail of slot ``s`` is the canonical name of that
  corner, and vertices are equivalence classes of corners.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class SurfaceSpec:
    """Genus, boundary-circle count and puncture count of a surface."""

    genus: int
    boundary: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0 or self.punctures < 0:
            raise ValueError("genus, boundary and punctures must be nonnegative")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def complexity(self) -> int:
        """Number of curves in a pants decomposition, when one exists."""
        return 3 * self.genus - 3 + self.boundary + self.punctures

    @property
    def piece_count(self) -> int:
        """Number of pieces in a pants decomposition, when one exists."""
        return 2 * self.genus - 2 + self.boundary + self.punctures

    def as_tuple(self):
        return (self.genus, self.boundary, self.punctures)


class InvalidSurface(ValueError):
    pass


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class CellSurface:
    """A compact connected oriented surface given by glued polygons.

    ``faces`` is a sequence of cyclic slot tuples; slot ids must be exactly
    ``0 .. n-1``.  ``gluing`` maps interior slots to their partners (a
    fixed-point-free involution on a subset of slots).  ``punctures`` is a
    set of vertex ids, where a vertex id is the smallest corner id of its
    equivalence class and the corner at the tail of slot ``s`` has id ``s``.

    Instances are immutable; all derived data is cached.
    """

    def __init__(self, faces, gluing, punctures=(), check=True):
        self.faces = tuple(tuple(f) for f in faces)
        g = {}
        for s, t in (gluing.items() if isinstance(gluing, dict) else gluing):
            g[s] = t
            g[t] = s
        self.gluing = g
        self.punctures = frozenset(punctures)
        self._face_of = {}
        self._pos_of = {}
        for fi, face in enumerate(self.faces):
            if not face:
                raise InvalidSurface("empty face")
            for k, s in enumerate(face):
                if s in self._face_of:
                    raise InvalidSurface(f"slot {s} appears twice")
                self._face_of[s] = fi
                self._pos_of[s] = k
        if check:
            self._validate()

    def _validate(self):
        n = self.n_slots
        if sorted(self._face_of) != list(range(n)):
            raise InvalidSurface("slot ids must be 0..n-1")
        for s, t in self.gluing.items():
            if s == t:
                raise InvalidSurface(f"slot {s} glued to itself")
            if t not in self._face_of:
                raise InvalidSurface(f"gluing references unknown slot {t}")
        if not self._connected():
            raise InvalidSurface("surface is not connected")
        bad = self.punctures - set(self.vertices)
        if bad:
            raise InvalidSurface(f"punctures are not vertex ids: {sorted(bad)}")
        on_boundary = self.punctures & self.boundary_vertices
        if on_boundary:
            raise InvalidSurface(f"punctures on boundary: {sorted(on_boundary)}")

    # -- basic navigation ------------------------------------------------

    @property
    def n_slots(self):
        return len(self._face_of)

    def face_of(self, s):
        return self._face_of[s]

    def next_slot(self, s):
        face = self.faces[self._face_of[s]]
        return face[(self._pos_of[s] + 1) % len(face)]

    def prev_slot(self, s):
        face = self.faces[self._face_of[s]]
        return face[(self._pos_of[s] - 1) % len(face)]

    def is_boundary_slot(self, s):
        return s not in self.gluing

    def opposite(self, s):
        return self.gluing[s]

    # -- vertices ----------------------------------------------------------

    @cached_property
    def _corner_class(self):
        # corner(s) := corner at the tail of slot s; head corner of s is
        # corner(next(s)); gluing s<->t identifies tail(s) with head(t).
        uf = _UnionFind(self.n_slots)
        for s, t in self.gluing.items():
            uf.union(s, self.next_slot(t))
        return tuple(uf.find(s) for s in range(self.n_slots))

    def vertex_at_tail(self, s):
        """Vertex id of the corner at the tail of slot ``s``."""
        return self._corner_class[s]

    def vertex_at_head(self, s):
        return self._corner_class[self.next_slot(s)]

    @cached_property
    def vertices(self):
        return tuple(sorted(set(self._corner_class)))

    @cached_property
    def boundary_slots(self):
        return tuple(s for s in range(self.n_slots) if s not in self.gluing)

    @cached_property
    def boundary_vertices(self):
        out = set()
        for s in self.boundary_slots:
            out.add(self.vertex_at_tail(s))
            out.add(self.vertex_at_head(s))
        return frozenset(out)

    # -- edges -------------------------------------------------------------

    def edge_of(self, s):
        """Canonical edge id of the edge under slot ``s``."""
        t = self.gluing.get(s)
        return s if t is None else min(s, t)

    @cached_property
    def edges(self):
        return tuple(sorted({self.edge_of(s) for s in range(self.n_slots)}))

    @cached_property
    def interior_edges(self):
        return tuple(e for e in self.edges if e in self.gluing)

    # -- global invariants ---------------------------------------------------

    def euler_characteristic(self):
        v = len(self.vertices)
        e = len(self.edges)
        f = len(self.faces)
        return v - e + f

    def _connected(self):
        if not self.faces:
            return False
        seen = {0}
        stack = [0]
        while stack:
            fi = stack.pop()
            for s in self.faces[fi]:
                t = self.gluing.get(s)
                if t is not None:
                    fj = self._face_of[t]
                    if fj not in seen:
                        seen.add(fj)
                        stack.append(fj)
        return len(seen) == len(self.faces)

    @cached_property
    def boundary_circles(self):
        """Boundary circles as tuples of boundary slots, in traversal order."""
        circles = []
        seen = set()
        for s0 in self.boundary_slots:
            if s0 in seen:
                continue
            circle = []
            s = s0
            while True:
                circle.append(s)
                seen.add(s)
                t = self.next_slot(s)
                while t in self.gluing:
                    t = self.next_slot(self.gluing[t])
                s = t
                if s == s0:
                    break
            circles.append(tuple(circle))
        return tuple(circles)

    def spec(self) -> SurfaceSpec:
        """Genus, boundary and puncture count derived from the cellulation."""
        q = len(self.boundary_circles)
        chi = self.euler_characteristic()
        g2 = 2 - q - chi
        if g2 % 2:
            raise InvalidSurface("odd 2-genus: surface is not orientable-consistent")
        return SurfaceSpec(g2 // 2, q, len(self.punctures))

    # -- serialization -------------------------------------------------------

    def to_json(self):
        pairs = sorted({tuple(sorted((s, t))) for s, t in self.gluing.items()})
        return {
            "faces": [list(f) for f in self.faces],
            "gluing": [list(p) for p in pairs],
            "punctures": sorted(self.punctures),
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["faces"], [tuple(p) for p in data["gluing"]],
                   data.get("punctures", ()))

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other):
        return (isinstance(other, CellSurface)
                and self.faces == other.faces
                and self.gluing == other.gluing
                and self.punctures == other.punctures)

    def __hash__(self):
        return hash((self.faces, tuple(sorted(self.gluing.items())),
                     self.punctures))

    def __repr__(self):
        g, q, m = self.spec().as_tuple()
        return f"CellSurface(genus={g}, boundary={q}, punctures={m}, faces={len(self.faces)})"


# -- canonical models ---------------------------------------------------------


def _closed_base(genus):
    if genus == 0:
        # two triangles glued along their three edges
        return CellSurface([[0, 1, 2], [3, 4, 5]], [(0, 5), (1, 4), (2, 3)])
    # 4g-gon with the standard a b a^-1 b^-1 pattern per handle
    n = 4 * genus
    gl = []
    for k in range(genus):
        gl.append((4 * k, 4 * k + 2))
        gl.append((4 * k + 1, 4 * k + 3))
    return CellSurface([list(range(n))], gl)


def _pillow(m):
    """Sphere made of two m-gons; all m vertices are punctures."""
    front = list(range(m))
    back = list(range(m, 2 * m))
    # side i of the front pairs with side m-1-i of the back, so the two
    # polygons are mirror images and every corner pair closes up.
    gl = [(i, 2 * m - 1 - i) for i in range(m)]
    s = CellSurface([front, back], gl)
    return CellSurface([front, back], gl, punctures=s.vertices)


def subdivide_edge(surface, edge, mark=False):
    """Split an interior edge in two, optionally marking the new vertex."""
    if edge not in surface.gluing:
        raise InvalidSurface("can only subdivide an interior edge")
    s, t = edge, surface.gluing[edge]
    n = surface.n_slots
    new_s, new_t = n, n + 1
    faces = []
    for face in surface.faces:
        out = []
        for x in face:
            out.append(x)
            if x == s:
                out.append(new_s)
            elif x == t:
                out.append(new_t)
        faces.append(out)
    gl = [(a, b) for a, b in surface.gluing.items() if a < b and a != s]
    gl += [(s, new_t), (new_s, t)]
    tmp = CellSurface(faces, gl, check=False)
    punct = set(surface.punctures)
    if mark:
        punct.add(tmp.vertex_at_tail(new_s))
    # re-canonicalize puncture ids against the new corner classes
    punct = {tmp._corner_class[p] for p in punct}
    return CellSurface(faces, gl, punct)


def cut_slit(surface, face_index):
    """Open a hole in a face, adding one boundary circle of length 1."""
    n = surface.n_slots
    c, h, cbar = n, n + 1, n + 2
    faces = [list(f) for f in surface.faces]
    faces[face_index] = faces[face_index] + [c, h, cbar]
    gl = [(a, b) for a, b in surface.gluing.items() if a < b] + [(c, cbar)]
    tmp = CellSurface(faces, gl, check=False)
    punct = {tmp._corner_class[p] for p in surface.punctures}
    return CellSurface(faces, gl, punct)


def make_surface(spec: SurfaceSpec) -> CellSurface:
    """Canonical cellulation of the requested surface.

    Closed unpunctured surfaces are the 4g-gon (two triangles for the
    sphere).  Punctured spheres are a two-polygon pillow whose corners are
    the punctures.  Other punctures mark the base vertex and then subdivide
    the handle edges ``a_1, a_2, ...`` in order.  Boundary circles are cut
    as slits into the first face, one after another.  The construction is
    deterministic in all parameters.
    """
    if not isinstance(spec, SurfaceSpec):
        spec = SurfaceSpec(*spec)
    g, q, m = spec.genus, spec.boundary, spec.punctures
    if g == 0 and m > 0:
        s = _pillow(m)
    else:
        s = _closed_base(g)
        if m > 0:
            s = CellSurface(s.faces, s.gluing, punctures={s.vertices[0]})
            # extra punctures go on midpoints of the handle edges a_1, a_2, ...
            extra = m - 1
            k = 0
            while extra > 0:
                # interior edge list grows as we subdivide; always pick the
                # k-th original handle edge's current canonical id
                edge = s.edge_of(4 * (k % g))
                s = subdivide_edge(s, edge, mark=True)
                extra -= 1
                k += 1
    for _ in range(q):
        s = cut_slit(s, 0)
    got = s.spec()
    assert got == SurfaceSpec(g, q, m), (got, spec)
    return s


def euler_characteristic(surface: CellSurface) -> int:
    return surface.euler_characteristic()


def glue_boundary_circles(surface, circle_a, circle_b):
    """Glue two distinct boundary circles of equal length to each other.

    ``circle_a`` and ``circle_b`` are tuples of boundary slots as produced
    by :attr:`CellSurface.boundary_circles`.  Slot ``circle_a[i]`` is glued
    to ``circle_b[-i]`` so the identification reverses the boundary
    orientation, which keeps the result oriented.
    """
    if len(circle_a) != len(circle_b):
        raise InvalidSurface("boundary circles have different lengths")
    if set(circle_a) & set(circle_b):
        raise InvalidSurface("circles share slots")
    gl = [(a, b) for a, b in surface.gluing.items() if a < b]
    k = len(circle_a)
    for i in range(k):
        gl.append((circle_a[i], circle_b[-i % k]))
    tmp = CellSurface(surface.faces, gl, check=False)
    punct = {tmp._corner_class[p] for p in surface.punctures}
    return CellSurface(surface.faces, gl, punct)


def disjoint_union_faces(surfaces):
    """Face/gluing/puncture data of several surfaces with slots renumbered.

    Returns ``(faces, gluing_pairs, punctures, offsets)`` where
    ``offsets[i]`` must be added to slot ids of ``surfaces[i]``.
    """
    faces, gl, punct, offsets = [], [], set(), []
    off = 0
    for s in surfaces:
        offsets.append(off)
        faces.extend([x + off for x in f] for f in s.faces)
        gl.extend((a + off, b + off) for a, b in s.gluing.items() if a < b)
        punct.update(p + off for p in s.punctures)
        off += s.n_slots
    return faces, gl, punct, offsets


def hat_extend(surface: CellSurface) -> CellSurface:
    """Cap every boundary circle with a one-holed torus.

    The result is closed, with genus raised by the number of boundary
    circles and the same punctures.  Slot ids of the original surface are
    preserved, so curves and their edge data remain valid on the extension.
    A closed surface is returned unchanged.
    """
    circles = surface.boundary_circles
    if not circles:
        return surface
    faces = [list(f) for f in surface.faces]
    gl = [(a, b) for a, b in surface.gluing.items() if a < b]
    n = surface.n_slots
    for circle in circles:
        k = len(circle)
        # one-face torus-minus-disk: a b a^-1 b^-1 h_1 .. h_k
        a, b, abar, bbar = n, n + 1, n + 2, n + 3
        hs = list(range(n + 4, n + 4 + k))
        faces.append([a, b, abar, bbar] + hs)
        gl += [(a, abar), (b, bbar)]
        for i in range(k):
            gl.append((circle[i], hs[-i % k]))
        n += 4 + k
    tmp = CellSurface(faces, gl, check=False)
    punct = {tmp._corner_class[p] for p in surface.punctures}
    out = CellSurface(faces, gl, punct)
    old = surface.spec()
    assert out.spec() == SurfaceSpec(old.genus + old.boundary, 0, old.punctures)
    return out
