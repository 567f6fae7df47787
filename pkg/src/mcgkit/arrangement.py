"""Overlay of a system of curves on a cellulated surface.

Curves are transversal to the cellulation: inside every face a curve is a
family of chords with endpoints on the face's slots.  Two chords cross
exactly when their endpoint pairs interleave in the cyclic boundary order
of the face, so the whole intersection pattern is determined by integer
data.  To realize the pattern concretely (orders of crossings along each
chord, the subdivision of the face) the boundary nodes of each face are
placed on a convex curve with exact rational coordinates and straight
segments are intersected.  Degenerate placements (three concurrent chords)
are detected exactly and resolved by a deterministic perturbation.

The overlay is the refinement of the cellulation by the curves.  It is a
:class:`~mcgkit.cellsurface.CellSurface` in its own right, with every
refined slot tagged as a piece of an original slot or a piece of a curve.
Complement components of the curve system ("regions") are computed from it
and are again ``CellSurface`` instances; cutting along a multicurve, bigon
detection and essentiality tests all consume them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from .cellsurface import CellSurface


class InvalidCurve(ValueError):
    pass


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _dir_cmp(u, v):
    """Counterclockwise comparison of nonzero direction vectors."""
    (ux, uy), (vx, vy) = u, v
    hu = 0 if (uy > 0 or (uy == 0 and ux > 0)) else 1
    hv = 0 if (vy > 0 or (vy == 0 and vx > 0)) else 1
    if hu != hv:
        return -1 if hu < hv else 1
    c = _cross(ux, uy, vx, vy)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


class _FaceChart:
    """Arrangement of the curve chords inside a single face.

    Nodes are the face's corners and the curve points on its slots, in
    cyclic boundary order; chords run between point nodes.  After the
    build, ``subfaces`` lists the cells of the subdivision as dart cycles,
    ``crossings`` the chord crossings, and ``per_chord`` the crossings in
    order along each chord.
    """

    def __init__(self, surface, face_index, nodes, chords):
        # nodes: ('v', slot) corner at the tail of slot, or
        #        ('p', slot, ci, wi) point of curve ci seen on slot.
        # chords: (u_key, v_key, ci, j) with the curve running u -> v; this
        #        is the chord between word crossings j and j+1 of curve ci.
        self.surface = surface
        self.face_index = face_index
        self.nodes = nodes
        self.chords = chords
        self.index = {k: i for i, k in enumerate(nodes)}
        self._build()

    def _coords(self, attempt):
        n = len(self.nodes)
        xs = []
        for i in range(n):
            if attempt == 0:
                d = Fraction(0)
            else:
                seed = (1103515245 * (attempt * 7919 + i) + 12345) % (1 << 20)
                d = Fraction(seed, 1 << 21)  # strictly below 1/2
            x = Fraction(i) + d
            xs.append((x, x * x))
        return xs

    def _build(self):
        n = len(self.nodes)
        cpos = [(self.index[u], self.index[v]) for (u, v, _, _) in self.chords]
        pairs = []
        for a in range(len(self.chords)):
            ia, ja = cpos[a]
            for b in range(a + 1, len(self.chords)):
                ib, jb = cpos[b]
                if self._interleave(ia, ja, ib, jb):
                    if self.chords[a][2] == self.chords[b][2]:
                        raise InvalidCurve(
                            f"curve {self.chords[a][2]} crosses itself in "
                            f"face {self.face_index}")
                    pairs.append((a, b))
        for attempt in range(64):
            if self._try_build(pairs, attempt):
                return
        raise RuntimeError("no generic chord placement found")

    @staticmethod
    def _interleave(a, b, c, d):
        def between(x, lo, hi):
            if lo < hi:
                return lo < x < hi
            return x > lo or x < hi

        return between(c, a, b) != between(d, a, b)

    def _try_build(self, pairs, attempt):
        coords = self._coords(attempt)
        cpt = [(coords[self.index[u]], coords[self.index[v]])
               for (u, v, _, _) in self.chords]
        per_chord = [[] for _ in self.chords]
        xdata = []
        for xid, (a, b) in enumerate(pairs):
            (ax, ay), (bx, by) = cpt[a]
            (cx, cy), (dx, dy) = cpt[b]
            rx, ry = bx - ax, by - ay
            sx, sy = dx - cx, dy - cy
            den = _cross(rx, ry, sx, sy)
            t = _cross(cx - ax, cy - ay, sx, sy) / den
            u = _cross(cx - ax, cy - ay, rx, ry) / den
            px, py = ax + t * rx, ay + t * ry
            other_enters_left_of_a = _cross(rx, ry, cx - ax, cy - ay) > 0
            other_enters_left_of_b = _cross(sx, sy, ax - cx, ay - cy) > 0
            per_chord[a].append((t, xid))
            per_chord[b].append((u, xid))
            xdata.append(((px, py), t, u,
                          other_enters_left_of_a, other_enters_left_of_b))
        for lst in per_chord:
            lst.sort()
            for i in range(1, len(lst)):
                if lst[i][0] == lst[i - 1][0]:
                    return False  # concurrent chords: perturb and retry
        self._assemble(coords, per_chord, xdata, pairs)
        return True

    def _assemble(self, coords, per_chord, xdata, pairs):
        n = len(self.nodes)
        point = dict(enumerate(coords))
        for xid, rec in enumerate(xdata):
            point[n + xid] = rec[0]

        self.crossings = []
        for xid, (a, b) in enumerate(pairs):
            _, t, u, el_a, el_b = xdata[xid]
            ca, cb = self.chords[a], self.chords[b]
            self.crossings.append(((ca[2], ca[3], t, el_a),
                                   (cb[2], cb[3], u, el_b)))

        # segments (node, node, tag); tag ('arc', slot, idx) runs along the
        # boundary, tag ('chord', ci, j, piece) is oriented with the curve.
        segs = []
        vpos = [i for i, k in enumerate(self.nodes) if k[0] == "v"]
        for vi, start in enumerate(vpos):
            end = vpos[(vi + 1) % len(vpos)]
            slot = self.nodes[start][1]
            j, idx = start, 0
            while True:
                nxt = (j + 1) % n
                segs.append((j, nxt, ("arc", slot, idx)))
                idx += 1
                j = nxt
                if j == end:
                    break

        for c, (u, v, ci, j) in enumerate(self.chords):
            chain = ([self.index[u]] + [n + xid for _, xid in per_chord[c]]
                     + [self.index[v]])
            for piece in range(len(chain) - 1):
                segs.append((chain[piece], chain[piece + 1],
                             ("chord", ci, j, piece)))

        incident = {}
        for si, (a, b, _tag) in enumerate(segs):
            incident.setdefault(a, []).append((si, 1))
            incident.setdefault(b, []).append((si, -1))

        def tail(dart):
            si, d = dart
            return segs[si][0] if d == 1 else segs[si][1]

        def head(dart):
            si, d = dart
            return segs[si][1] if d == 1 else segs[si][0]

        def direction(dart):
            t_, h_ = point[tail(dart)], point[head(dart)]
            return (h_[0] - t_[0], h_[1] - t_[1])

        rot = {}
        for _node, darts in incident.items():
            darts = sorted(darts, key=cmp_to_key(
                lambda p, q: _dir_cmp(direction(p), direction(q))))
            for i, d in enumerate(darts):
                rot[d] = darts[(i + 1) % len(darts)]
        rot_inv = {v: k for k, v in rot.items()}

        def next_in_face(dart):
            si, d = dart
            return rot_inv[(si, -d)]

        outer = {(si, -1) for si, (_a, _b, tag) in enumerate(segs)
                 if tag[0] == "arc"}
        seen = set()
        faces = []
        for si in range(len(segs)):
            for d in (1, -1):
                dart = (si, d)
                if dart in seen or dart in outer:
                    continue
                orbit = []
                cur = dart
                while True:
                    orbit.append(cur)
                    seen.add(cur)
                    cur = next_in_face(cur)
                    if cur == dart:
                        break
                assert not any(x in outer for x in orbit), \
                    "outer face leaked into an interior orbit"
                faces.append(orbit)
        self.segs = segs
        self.subfaces = faces
        self.per_chord = per_chord


class Overlay:
    """Refinement of a surface by a transversal curve system."""

    def __init__(self, layout):
        self.layout = layout
        self.surface = layout.surface
        self._build()

    def _build(self):
        surf = self.surface
        lay = self.layout
        charts = []
        for fi, face in enumerate(surf.faces):
            nodes = []
            for s in face:
                nodes.append(("v", s))
                nodes.extend(("p", s, ci, wi)
                             for (ci, wi) in lay.points_on_slot(s))
            chords = []
            for ci, word in enumerate(lay.words):
                L = len(word)
                for j in range(L):
                    d_in = surf.opposite(word[j])
                    if surf.face_of(d_in) != fi:
                        continue
                    d_out = word[(j + 1) % L]
                    if surf.face_of(d_out) != fi:
                        raise InvalidCurve(
                            f"word of curve {ci} is not face-consecutive")
                    chords.append((("p", d_in, ci, j),
                                   ("p", d_out, ci, (j + 1) % L), ci, j))
            charts.append(_FaceChart(surf, fi, nodes, chords))
        self.charts = charts

        slot_tag = []
        faces = []
        face_tag = []
        dart_id = {}
        for fi, ch in enumerate(charts):
            for sub_idx, orbit in enumerate(ch.subfaces):
                ids = []
                for dart in orbit:
                    si, d = dart
                    tag = ch.segs[si][2]
                    gid = len(slot_tag)
                    dart_id[(fi, si, d)] = gid
                    if tag[0] == "arc":
                        slot_tag.append(("arc", tag[1], tag[2]))
                    else:
                        _, ci, j, piece = tag
                        slot_tag.append(("chord", ci, j, piece, d == 1))
                    ids.append(gid)
                faces.append(ids)
                face_tag.append((fi, sub_idx))

        gl = []
        for fi, ch in enumerate(charts):
            for si, (_a, _b, tag) in enumerate(ch.segs):
                if tag[0] == "chord":
                    gl.append((dart_id[(fi, si, 1)], dart_id[(fi, si, -1)]))
        arcs = {}
        for fi, ch in enumerate(charts):
            for si, (_a, _b, tag) in enumerate(ch.segs):
                if tag[0] == "arc":
                    arcs[(tag[1], tag[2])] = (fi, si)
        for s, t in surf.gluing.items():
            if s > t:
                continue
            r = len(lay.points_on_slot(s))
            for i in range(r + 1):
                fs, sis = arcs[(s, i)]
                ft, sit = arcs[(t, r - i)]
                gl.append((dart_id[(fs, sis, 1)], dart_id[(ft, sit, 1)]))

        self.refined = CellSurface(faces, gl, check=False)
        self.slot_tag = tuple(slot_tag)
        self.face_tag = tuple(face_tag)
        self.dart_id = dart_id
        self.arcs = arcs

        # original vertices -> refined vertices (curves avoid vertices, so
        # every original vertex survives as a corner of some arc piece)
        vmap = {}
        for fi, ch in enumerate(charts):
            for si, (a, b, tag) in enumerate(ch.segs):
                if tag[0] != "arc":
                    continue
                gid = dart_id[(fi, si, 1)]
                ka = ch.nodes[a] if a < len(ch.nodes) else None
                kb = ch.nodes[b] if b < len(ch.nodes) else None
                if ka is not None and ka[0] == "v":
                    vmap.setdefault(surf.vertex_at_tail(ka[1]),
                                    self.refined.vertex_at_tail(gid))
                if kb is not None and kb[0] == "v":
                    vmap.setdefault(surf.vertex_at_tail(kb[1]),
                                    self.refined.vertex_at_head(gid))
        self.vertex_map = vmap
        self.marked_refined = {vmap[p] for p in surf.punctures}

    # ------------------------------------------------------------------
    def crossings(self):
        out = []
        for ch in self.charts:
            out.extend(ch.crossings)
        return out

    def crossing_count(self, ci=None, cj=None):
        k = 0
        for (a, *_), (b, *_) in self.crossings():
            if ci is None or {a, b} == {ci, cj}:
                k += 1
        return k

    def regions(self):
        """Complement components of the curve system."""
        ref = self.refined
        nf = len(ref.faces)
        parent = list(range(nf))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        face_of_slot = {}
        for fi, f in enumerate(ref.faces):
            for s in f:
                face_of_slot[s] = fi
        for s, t in ref.gluing.items():
            if s > t or self.slot_tag[s][0] == "chord":
                continue
            a, b = find(face_of_slot[s]), find(face_of_slot[t])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups = {}
        for fi in range(nf):
            groups.setdefault(find(fi), []).append(fi)
        return [Region(self, fs) for _r, fs in sorted(groups.items())]


class Region:
    """One complement component of the curve system.

    ``surface`` is the component as a stand-alone cell surface: curve
    pieces and pieces of the ambient boundary are left unglued, so the
    component's boundary circles are exactly the cut walls plus the old
    boundary.
    """

    def __init__(self, overlay, face_ids):
        self.overlay = overlay
        self.face_ids = sorted(face_ids)
        ref = overlay.refined
        to_local = {}
        faces = []
        for fi in self.face_ids:
            face = []
            for s in ref.faces[fi]:
                to_local[s] = len(to_local)
                face.append(to_local[s])
            faces.append(face)
        self.to_local = to_local
        self.to_global = {v: k for k, v in to_local.items()}
        gl = []
        for s, t in ref.gluing.items():
            if s > t or s not in to_local or t not in to_local:
                continue
            if overlay.slot_tag[s][0] == "chord":
                continue
            gl.append((to_local[s], to_local[t]))
        tmp = CellSurface(faces, gl, check=False)
        marked = set()
        inside = set()
        for s_loc, s_gl in self.to_global.items():
            rv = ref.vertex_at_tail(s_gl)
            if rv in overlay.marked_refined:
                marked.add(tmp.vertex_at_tail(s_loc))
                inside.add(rv)
        self.surface = CellSurface(faces, gl, marked, check=False)
        inv = {v: k for k, v in overlay.vertex_map.items()}
        self.punctures_inside = frozenset(inv[rv] for rv in inside)

    def euler_characteristic(self):
        return self.surface.euler_characteristic()

    def wall_label(self, local_slot):
        """Label of an unglued slot of the region surface.

        ``('curve', ci, side)`` for a curve piece with the region on side
        ``'L'``/``'R'`` of the oriented curve, ``('bdry',)`` for a piece of
        the ambient boundary.
        """
        tag = self.overlay.slot_tag[self.to_global[local_slot]]
        if tag[0] == "chord":
            _, ci, _j, _piece, forward = tag
            return ("curve", ci, "L" if forward else "R")
        return ("bdry",)

    def wall_chord(self, local_slot):
        """(ci, chord_j, piece, forward) for a curve wall slot, else None."""
        tag = self.overlay.slot_tag[self.to_global[local_slot]]
        return tag[1:] if tag[0] == "chord" else None

    def circle_labels(self):
        """For each boundary circle: list of wall labels in order."""
        return [[self.wall_label(s) for s in circle]
                for circle in self.surface.boundary_circles]

    def circle_summary(self):
        """Condensed per-circle structure for classification logic.

        Each entry: (labels_set, corner_count, circle) where corner_count
        counts transitions between distinct labels around the circle.
        """
        out = []
        for circle in self.surface.boundary_circles:
            labels = [self.wall_label(s) for s in circle]
            L = len(labels)
            corners = sum(1 for i in range(L)
                          if labels[i] != labels[(i + 1) % L])
            out.append((set(labels), corners, circle))
        return out

    def meets_ambient_boundary(self):
        return any(("bdry",) in s for s, _c, _circ in self.circle_summary())
