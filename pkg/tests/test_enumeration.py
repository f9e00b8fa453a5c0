import random
from collections import Counter

import networkx as nx
import pytest

from trimono.catalog import builtin
from trimono.enumeration import (
    brute_force_spheres,
    canonical_form,
    from_canonical,
    load_corpus,
    save_corpus,
    skeleton_graph,
    sphere_corpus,
    verify_corpus,
    verify_sphere,
    vertex_splits,
)
from trimono.surface import are_isomorphic, euler_characteristic, is_orientable

KNOWN_COUNTS = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14, 9: 50, 10: 233}


def shuffled(s, seed):
    verts = sorted(s.vertices)
    image = list(range(100, 100 + len(verts)))
    random.Random(seed).shuffle(image)
    return s.relabel(dict(zip(verts, image)))


def test_counts(spheres10):
    assert Counter(s.num_vertices for s in spheres10) == KNOWN_COUNTS


@pytest.mark.parametrize("n", [4, 5, 6])
def test_generator_matches_brute_force(n, spheres8):
    mine = [skeleton_graph(s) for s in spheres8 if s.num_vertices == n]
    oracle = brute_force_spheres(n)
    assert len(mine) == len(oracle)
    for g in mine:
        assert sum(nx.is_isomorphic(g, h) for h in oracle) == 1


def test_every_sphere_is_a_sphere(spheres10):
    for s in spheres10:
        assert s.is_closed and s.is_connected
        assert euler_characteristic(s) == 2 and is_orientable(s)
        assert s.num_edges == 3 * s.num_vertices - 6


def test_canonical_form_is_invariant(spheres8):
    for i, s in enumerate(spheres8):
        code = canonical_form(s)
        assert canonical_form(shuffled(s, i)) == code
        assert canonical_form(from_canonical(code)) == code
        assert are_isomorphic(from_canonical(code), s)


def test_canonical_forms_are_distinct(spheres10):
    codes = [canonical_form(s) for s in spheres10]
    assert len(set(codes)) == len(codes)


def test_canonical_form_separates_non_isomorphic(spheres8):
    by_n: dict = {}
    for s in spheres8:
        by_n.setdefault(s.num_vertices, []).append(s)
    for group in by_n.values():
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                assert not are_isomorphic(a, b)


def test_vertex_splits_add_one_vertex(octa):
    kids = list(vertex_splits(octa))
    assert kids
    for t in kids:
        assert t.num_vertices == 7 and euler_characteristic(t) == 2
    assert {canonical_form(t) for t in kids} <= {canonical_form(s) for _, s in sphere_corpus(7)}


def test_octahedron_is_in_the_corpus(spheres10):
    assert canonical_form(builtin("octahedron")) in {canonical_form(s) for s in spheres10}


def test_cache_round_trip(tmp_path):
    first = sphere_corpus(7, tmp_path)
    assert (tmp_path / "spheres-n7-v1.jsonl").exists()
    again = sphere_corpus(7, tmp_path)
    assert [c for c, _ in first] == [c for c, _ in again]
    assert all(are_isomorphic(a, b) for (_, a), (_, b) in zip(first, again))
    path = tmp_path / "copy.jsonl"
    save_corpus(path, first)
    assert [c for c, _ in load_corpus(path)] == [c for c, _ in first]


def test_rejects_tiny_corpus():
    with pytest.raises(ValueError):
        sphere_corpus(3)


def test_verify_corpus_up_to_eight(corpus_cache):
    rep = verify_corpus(8, cache_dir=corpus_cache)
    assert rep.ok and not rep.theorem_violations
    assert rep.census == {n: KNOWN_COUNTS[n] for n in range(4, 9)}
    assert sum(v for k, v in rep.configurations.items() if k.startswith("odd=")) == sum(rep.census.values())
    assert rep.to_json()["ok"] is True


def test_verify_sphere_alone(octa):
    rep = verify_sphere(octa)
    assert rep.ok and rep.configurations["odd=0,adjacent_pairs=0"] == 1
