from collections import Counter

import pytest

from trimono.catalog import builtin, flat_torus
from trimono.cover import (
    check_belyi_theorem,
    check_simplicial,
    cut_along_cycle,
    face_coloring,
    face_vertex_colored_cover,
    riemann_hurwitz,
    torus_colorability_cut,
    total_face_coloring,
    total_vertex_coloring,
    unfolding,
)
from trimono.errors import NotASimpleCycle, SurfaceError, TouchesBoundary
from trimono.monodromy import coloring_monodromy_image, is_proper_coloring, odd_vertices, vertex_coloring
from trimono.surface import are_isomorphic, boundary_cycles, build_surface, euler_characteristic, is_orientable


def test_unfolding_of_tetrahedron(tetra):
    c = unfolding(tetra)
    t = c.total
    assert (t.num_vertices, t.num_edges, t.num_triangles) == (12, 36, 24)
    assert euler_characteristic(t) == 0 and is_orientable(t) and t.is_connected
    assert c.degree == 6
    for v in tetra.vertices:
        pre = c.preimages(v)
        assert len(pre) == 3
        assert all(c.branch_indices[w] == 2 for w in pre)
    assert check_simplicial(c)


def test_unfolding_of_octahedron_is_trivial(octa):
    parts = unfolding(octa).components()
    assert len(parts) == 6
    for p in parts:
        assert p.degree == 1 and p.is_unbranched
        assert are_isomorphic(p.total, octa)


def test_unfolding_of_seven_vertex_torus(torus7):
    parts = unfolding(torus7).components()
    assert len(parts) == 2
    for p in parts:
        assert p.total.num_vertices == 21 and p.total.num_triangles == 42
        assert p.degree == 3 and p.is_unbranched
        assert vertex_coloring(p.total) is not None
    assert are_isomorphic(parts[0].total, parts[1].total)


def test_component_degree_is_monodromy_order():
    for name in ("tetrahedron", "octahedron", "7-vertex-torus", "icosahedron", "torus-two-odd"):
        s = builtin(name)
        image = coloring_monodromy_image(s)
        for p in unfolding(s).components():
            assert p.degree == len(image)


def test_unbranched_iff_even(spheres8):
    for s in spheres8:
        c = unfolding(s)
        assert c.is_unbranched == (not odd_vertices(s))


def test_stored_colorings_are_proper(tetra, torus7):
    for s in (tetra, torus7):
        c = unfolding(s)
        col = total_vertex_coloring(c)
        assert is_proper_coloring(c.total, col)


def test_riemann_hurwitz_on_components(spheres8):
    for s in spheres8[:12]:
        for p in unfolding(s).components():
            lhs, rhs = riemann_hurwitz(p)
            assert lhs == rhs


def test_components_are_pairwise_isomorphic():
    for name in ("octahedron", "7-vertex-torus", "bipyramid"):
        parts = unfolding(builtin(name)).components()
        assert all(are_isomorphic(parts[0].total, p.total) for p in parts[1:])


def test_face_coloring(octa, tetra, torus7):
    col = face_coloring(octa)
    assert col is not None
    for e in octa.edges:
        a, b = octa.edge_triangles(e)
        assert col[a] != col[b]
    assert face_coloring(tetra) is None
    assert face_coloring(torus7) is not None


def test_belyi_reports(octa, torus7):
    rep = check_belyi_theorem(octa)
    assert rep.vertex_colorable and rep.face_colorable and rep.ok
    rep = check_belyi_theorem(torus7)
    assert rep.even and rep.image == "C3" and rep.face_colorable


def test_belyi_on_nonorientable_vertex_colorable():
    # the 6-vertex projective plane is not vertex-colorable; its unfolding components are
    rp2 = builtin("6-vertex-projective-plane")
    for p in unfolding(rp2).components():
        rep = check_belyi_theorem(p.total)
        assert rep.vertex_colorable
        assert rep.face_colorable == rep.orientable


def test_face_vertex_cover_of_octahedron(octa):
    c = face_vertex_colored_cover(octa)
    parts = c.components()
    assert len(parts) == 12
    assert all(p.degree == 1 and are_isomorphic(p.total, octa) for p in parts)


def test_face_vertex_cover_of_tetrahedron(tetra):
    c = face_vertex_colored_cover(tetra)
    parts = c.components()
    # face color times the orientation induced by the vertex colors is preserved by
    # every gluing, so an orientable base splits the 12 sheets into two halves
    assert Counter(p.degree for p in parts) == Counter({6: 2})
    assert len(c.total.triangles) == 2 * 6 * 4
    for p in parts:
        assert face_coloring(p.total) is not None
        assert vertex_coloring(p.total) is not None
    faces = total_face_coloring(c)
    for e in c.total.edges:
        a, b = c.total.edge_triangles(e)
        assert faces[a] != faces[b]


def test_cut_torus_along_essential_cycle(torus7):
    cut = cut_along_cycle(torus7, (0, 1, 2, 3, 4))
    assert euler_characteristic(cut) == 0
    assert len(boundary_cycles(cut)) == 2


def test_cut_sphere_separates(octa):
    cut = cut_along_cycle(octa, (2, 3, 5, 4))
    assert len(cut.components()) == 2


def test_cut_errors(octa):
    with pytest.raises(NotASimpleCycle):
        cut_along_cycle(octa, (1, 2, 1, 3))
    disk = build_surface([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1)])
    with pytest.raises(TouchesBoundary):
        cut_along_cycle(disk, (0, 1, 2))


def test_torus_cut_witness(torus7):
    res = torus_colorability_cut(torus7)
    assert not res.already_colorable
    assert vertex_coloring(res.cut.components()[0]) is not None


@pytest.mark.parametrize("m, n", [(3, 3), (3, 4), (4, 5), (3, 6)])
def test_flat_tori(m, n):
    t = flat_torus(m, n)
    res = torus_colorability_cut(t)
    if vertex_coloring(t) is not None:
        assert res.already_colorable
    else:
        assert all(vertex_coloring(c) is not None for c in res.cut.components())


def test_flat_torus_sides():
    with pytest.raises(ValueError):
        flat_torus(2, 5)


def test_torus_cut_rejects_non_tori(octa):
    with pytest.raises(SurfaceError):
        torus_colorability_cut(octa)
