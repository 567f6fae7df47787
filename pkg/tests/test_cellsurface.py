"""Cellulation-level invariants of the canonical surface models."""

import pytest

from mcgkit.cellsurface import (
    CellSurface,
    InvalidSurface,
    SurfaceSpec,
    cut_slit,
    glue_boundary_circles,
    hat_extend,
    make_surface,
    subdivide_edge,
)


def test_sphere_two_faces():
    s = make_surface(SurfaceSpec(0, 0, 0))
    assert len(s.faces) == 2
    assert s.euler_characteristic() == 2
    assert s.spec() == SurfaceSpec(0, 0, 0)


def test_torus_square():
    s = make_surface(SurfaceSpec(1, 0, 0))
    assert len(s.faces) == 1
    assert len(s.faces[0]) == 4
    assert s.euler_characteristic() == 0
    assert len(s.vertices) == 1


def test_genus2_octagon():
    s = make_surface(SurfaceSpec(2, 0, 0))
    assert len(s.faces[0]) == 8
    assert s.euler_characteristic() == -2
    assert len(s.vertices) == 1


@pytest.mark.parametrize("g", range(4))
@pytest.mark.parametrize("q", range(4))
@pytest.mark.parametrize("m", range(5))
def test_make_surface_spec_roundtrip(g, q, m):
    spec = SurfaceSpec(g, q, m)
    s = make_surface(spec)
    assert s.spec() == spec
    assert s.euler_characteristic() == 2 - 2 * g - q
    assert len(s.punctures) == m
    assert len(s.boundary_circles) == q


def test_make_surface_deterministic():
    a = make_surface(SurfaceSpec(2, 1, 3))
    b = make_surface(SurfaceSpec(2, 1, 3))
    assert a == b
    assert a.dumps() == b.dumps()


def test_pillow_punctures_are_all_vertices():
    s = make_surface(SurfaceSpec(0, 0, 4))
    assert set(s.punctures) == set(s.vertices)
    assert len(s.vertices) == 4


def test_punctures_never_on_boundary():
    s = make_surface(SurfaceSpec(1, 2, 2))
    assert not (s.punctures & s.boundary_vertices)


def test_json_roundtrip():
    s = make_surface(SurfaceSpec(1, 1, 2))
    t = CellSurface.from_json(s.to_json())
    assert s == t
    assert s.dumps() == t.dumps()


def test_subdivide_edge_preserves_spec():
    s = make_surface(SurfaceSpec(1, 0, 0))
    t = subdivide_edge(s, s.interior_edges[0])
    assert t.spec() == SurfaceSpec(1, 0, 0)
    assert t.euler_characteristic() == 0


def test_cut_slit_drops_euler_by_one():
    s = make_surface(SurfaceSpec(0, 0, 0))
    t = cut_slit(s, 0)
    assert t.euler_characteristic() == 1
    assert t.spec() == SurfaceSpec(0, 1, 0)


@pytest.mark.parametrize("g,q,m", [(0, 1, 2), (1, 2, 0), (0, 3, 0), (2, 2, 1)])
def test_hat_extend_caps_every_boundary(g, q, m):
    s = make_surface(SurfaceSpec(g, q, m))
    shat = hat_extend(s)
    assert shat.spec() == SurfaceSpec(g + q, 0, m)
    # euler characteristic drops by one per capped boundary circle
    assert shat.euler_characteristic() == s.euler_characteristic() - q


def test_hat_extend_closed_is_identity():
    s = make_surface(SurfaceSpec(2, 0, 1))
    assert hat_extend(s) is s


def test_hat_extend_preserves_original_cells():
    s = make_surface(SurfaceSpec(1, 1, 0))
    shat = hat_extend(s)
    for fi, face in enumerate(s.faces):
        assert shat.faces[fi] == face
    for a, b in s.gluing.items():
        assert shat.gluing[a] == b


def test_glue_two_disks_gives_sphere():
    d = make_surface(SurfaceSpec(0, 1, 0))
    from mcgkit.cellsurface import disjoint_union_faces

    faces, gl, punct, offs = disjoint_union_faces([d, d])
    both = CellSurface(faces, gl, punct, check=False)
    c1, c2 = both.boundary_circles
    glued = glue_boundary_circles(both, c1, c2)
    assert glued.spec() == SurfaceSpec(0, 0, 0)


def test_disconnected_rejected():
    with pytest.raises(InvalidSurface):
        CellSurface([[0, 1, 2], [3, 4, 5]], [(0, 1), (3, 4)])


def test_invalid_self_gluing_rejected():
    with pytest.raises(InvalidSurface):
        CellSurface([[0, 1, 2]], [(0, 0)])
