from collections import Counter
from itertools import combinations
from math import comb

import pytest

from trimono.catalog import builtin
from trimono.cover import unfolding
from trimono.errors import InvalidComplex
from trimono.highdim import (
    LabeledComplex,
    PureComplex,
    boundary_simplex,
    double_tetrahedron,
    is_even,
    link_pair_check,
    mod2_boundary,
    non_sphere_link_points,
    odd_subcomplex,
    parity_check,
    stellar_subdivide,
    suspension,
    three_sphere_fixtures,
    torus_link_points,
    unfolding_d,
    z2_nullhomologous_check,
)
from trimono.monodromy import coloring_monodromy_image
from trimono.surface import are_isomorphic, build_surface


def odd_faces_by_hand(facets, d):
    """Count facets through every (d-2)-face with plain loops."""
    count = Counter()
    for f in facets:
        for g in combinations(sorted(f), d - 1):
            count[g] += 1
    return {g for g, n in count.items() if n % 2}


@pytest.fixture(scope="module")
def fixtures3(spheres8):
    return three_sphere_fixtures(spheres8[:6])


def test_invalid_complexes():
    with pytest.raises(InvalidComplex):
        PureComplex([(0, 1, 2), (0, 1)])
    with pytest.raises(InvalidComplex):
        PureComplex([(0, 0, 1)])
    with pytest.raises(InvalidComplex):
        PureComplex([(0, 1, 2), (0, 1, 3), (0, 1, 4)])


def test_boundary_of_four_simplex():
    c = boundary_simplex(3)
    assert c.d == 3 and len(c.facets) == 5 and c.is_closed()
    assert c.euler_characteristic() == 0
    odd = odd_subcomplex(c)
    # every edge lies in three tetrahedra
    assert len(odd) == 10 and set(odd.incidence_counts.values()) == {3}
    assert z2_nullhomologous_check(c) and parity_check(c)


def test_odd_subcomplex_matches_hand_count(fixtures3, spheres8):
    for _, c in fixtures3:
        assert odd_subcomplex(c).faces == odd_faces_by_hand(c.facets, 3)
    for s in spheres8:
        c = PureComplex(s.triangles)
        assert odd_subcomplex(c).faces == odd_faces_by_hand(c.facets, 2)
        assert {v for (v,) in odd_subcomplex(c).faces} == {v for v in s.vertices if s.degree(v) % 2}


def test_mod2_boundary_of_a_boundary_is_empty():
    assert mod2_boundary(mod2_boundary(combinations(range(6), 3))) == frozenset()
    assert mod2_boundary([(0, 1, 2)]) == {(0, 1), (0, 2), (1, 2)}


def test_boundary_identity_on_closed_manifolds(fixtures3, spheres8):
    for _, c in fixtures3:
        assert z2_nullhomologous_check(c)
    for s in spheres8:
        assert z2_nullhomologous_check(PureComplex(s.triangles))
    for name in ("7-vertex-torus", "6-vertex-projective-plane", "torus-two-odd", "projective-plane-two-odd"):
        assert z2_nullhomologous_check(PureComplex(builtin(name).triangles))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_parity_law_by_dimension(d):
    c = boundary_simplex(d)
    n_odd = len(odd_subcomplex(c))
    assert n_odd % 2 == (comb(d + 1, 2) * len(c.facets)) % 2
    assert parity_check(c)
    sub = stellar_subdivide(c, c.facets[0])
    assert parity_check(sub)
    assert len(odd_subcomplex(sub)) % 2 == (comb(d + 1, 2) * len(sub.facets)) % 2


def test_parity_law_on_surfaces_and_three_spheres(fixtures3, spheres8):
    for s in spheres8:
        assert parity_check(PureComplex(s.triangles))
    assert parity_check(PureComplex(builtin("torus-two-odd").triangles))
    for _, c in fixtures3:
        assert parity_check(c)


def test_link_pair_check(fixtures3):
    exercised = 0
    for name, c in fixtures3:
        rep = link_pair_check(c)
        assert not rep.not_spheres
        if name == "boundary-4-simplex":
            assert rep.vacuous
        exercised += len(rep.checked)
    assert exercised > 0


def test_link_pair_check_needs_dimension_three(octa):
    with pytest.raises(InvalidComplex):
        link_pair_check(PureComplex(octa.triangles))


def test_suspension_and_links(octa):
    c = suspension(PureComplex(octa.triangles))
    assert c.d == 3 and c.is_closed() and c.euler_characteristic() == 0
    north = max(c.vertices) - 1
    assert sorted(c.link((north,)).facets) == sorted(octa.triangles)


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "7-vertex-torus", "bipyramid"])
def test_two_dimensional_unfolding_agrees_with_surface_unfolding(name):
    s = builtin(name)
    u = unfolding_d(PureComplex(s.triangles))
    mine = build_surface(u.as_pure_complex().facets)
    theirs = unfolding(s).total
    assert len(u.states) == len(theirs.triangles)
    assert u.components() == len(unfolding(s).components())
    assert are_isomorphic(mine, theirs)


def test_even_complex_unfolds_to_sheets_of_24(fixtures3):
    evens = [c for _, c in fixtures3 if is_even(c)]
    for c in evens:
        u = unfolding_d(c)
        assert len(u.states) == 24 * len(c.facets)
        assert 24 % (len(u.states) // u.components() // len(c.facets)) == 0


def test_torus_points_in_unfolding_of_four_simplex_boundary():
    u = unfolding_d(boundary_simplex(3))
    assert u.components() == 1
    links = u.vertex_link_euler()
    assert len(links) == 20
    assert torus_link_points(u) == sorted(links)


def test_double_tetrahedron_fixture():
    dt = double_tetrahedron()
    assert isinstance(dt, LabeledComplex)
    assert len(dt.facets) == 2 and len(dt.gluings) == 4
    u = unfolding_d(dt)
    assert len(u.states) == 48
    with pytest.raises(InvalidComplex):
        u.as_pure_complex()


def test_double_tetrahedron_unfolding_has_non_manifold_points():
    # claimed: the unfolding has points whose link is a torus
    u = unfolding_d(double_tetrahedron())
    assert non_sphere_link_points(u), "every vertex link of the unfolding has Euler characteristic 2"


def test_links_over_trivially_colored_base_links_are_spheres(fixtures3):
    checked = 0
    for _, c in fixtures3:
        u = unfolding_d(c)
        chis = u.vertex_link_euler()
        for w, x in u.vertex_projection.items():
            lk = build_surface(c.link((x,)).facets)
            if len(coloring_monodromy_image(lk)) == 1:
                assert chis[w] == 2
                checked += 1
    assert checked > 0
