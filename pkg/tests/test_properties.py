import math
import random

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from trimono.catalog import builtin
from trimono.cover import check_belyi_theorem, riemann_hurwitz, unfolding
from trimono.enumeration import TETRAHEDRON, canonical_form, vertex_splits
from trimono.geometry import Rotation, holonomy_around_vertex
from trimono.monodromy import coloring_monodromy_image, fisk_check, odd_vertices
from trimono.platonic import GermFlag, check_kvert, platonic_target, roll_step
from trimono.surface import build_surface, euler_characteristic, triangle_edges

SETTINGS = settings(max_examples=40, deadline=None)


def random_sphere(seed: int, n: int):
    """Grow a sphere from the tetrahedron by random vertex splits."""
    rng = random.Random(seed)
    s = build_surface(TETRAHEDRON)
    while s.num_vertices < n:
        s = rng.choice(list(vertex_splits(s)))
    return s


def random_relabel(s, seed):
    verts = sorted(s.vertices)
    image = random.Random(seed).sample(range(1000), len(verts))
    return s.relabel(dict(zip(verts, image)))


spheres = st.builds(random_sphere, st.integers(0, 10**6), st.integers(4, 11))


@SETTINGS
@given(spheres, st.integers(0, 10**6))
def test_canonical_form_ignores_labels(s, seed):
    assert canonical_form(random_relabel(s, seed)) == canonical_form(s)


@SETTINGS
@given(spheres)
def test_random_spheres_are_spheres(s):
    assert euler_characteristic(s) == 2 and s.is_closed and s.is_connected
    assert sum(s.degree(v) for v in s.vertices) == 6 * s.num_vertices - 12


@SETTINGS
@given(spheres)
def test_riemann_hurwitz_for_unfoldings(s):
    for part in unfolding(s).components():
        lhs, rhs = riemann_hurwitz(part)
        assert lhs == rhs


@SETTINGS
@given(spheres)
def test_monodromy_is_trivial_exactly_for_even_spheres(s):
    assert (len(coloring_monodromy_image(s)) == 1) == (not odd_vertices(s))


@SETTINGS
@given(spheres)
def test_two_odd_vertices_are_never_adjacent(s):
    rep = fisk_check(s)
    assert rep.ok
    if rep.applies:
        assert not s.has_edge(*rep.odd)


@SETTINGS
@given(spheres)
def test_colorability_criterion(s):
    assert check_belyi_theorem(s).ok


@SETTINGS
@given(spheres, st.sampled_from([3, 4, 5]))
def test_two_exceptional_vertices_give_a_cyclic_image(s, k):
    rep = check_kvert(s, k)
    assert rep.theorem_ok
    if rep.applies:
        assert rep.image_cyclic


@SETTINGS
@given(spheres, st.sampled_from([3, 4, 5]))
def test_holonomy_is_trivial_iff_k_divides_degree(s, k):
    for v in sorted(s.vertices)[:4]:
        assert holonomy_around_vertex(s, k, v).is_identity(1e-9) == (s.degree(v) % k == 0)


@SETTINGS
@given(st.integers(0, 10**6), st.sampled_from([3, 4, 5]))
def test_roll_step_is_an_involution(seed, k):
    rng = random.Random(seed)
    s = builtin("icosahedron")
    t = platonic_target(k).target
    sigma = rng.choice(s.triangles)
    flag = GermFlag.make(dict(zip(sigma, rng.sample(rng.choice(t.triangles), 3))))
    e = rng.choice(triangle_edges(sigma))
    assert roll_step(s, k, roll_step(s, k, flag, e), e) == flag


quaternions = st.lists(st.floats(-1, 1, allow_nan=False), min_size=4, max_size=4).filter(
    lambda q: sum(x * x for x in q) > 1e-3
)


@SETTINGS
@given(quaternions, quaternions, quaternions)
def test_rotation_composition_is_associative(a, b, c):
    ra, rb, rc = Rotation(a), Rotation(b), Rotation(c)
    left = ra.compose(rb).compose(rc).as_matrix()
    right = ra.compose(rb.compose(rc)).as_matrix()
    assert np.abs(left - right).max() < 1e-12


@SETTINGS
@given(quaternions, st.lists(st.floats(-5, 5, allow_nan=False), min_size=3, max_size=3))
def test_rotation_preserves_length_and_inverts(q, x):
    r = Rotation(q)
    x = np.array(x)
    y = r.apply(x)
    assert math.isclose(np.linalg.norm(y), np.linalg.norm(x), abs_tol=1e-12)
    assert np.abs(r.inverse().apply(y) - x).max() < 1e-12
    assert r.compose(r.inverse()).is_identity(1e-12)
