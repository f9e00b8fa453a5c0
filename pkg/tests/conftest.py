import pytest

from trimono import cover as cover_module
from trimono.catalog import builtin
from trimono.cover import riemann_hurwitz
from trimono.enumeration import sphere_corpus

# every BranchedCover built during the session, checked for Riemann-Hurwitz at the end
COVERS: list = []
_original_post_init = cover_module.BranchedCover.__post_init__


def _recording_post_init(self):
    _original_post_init(self)
    COVERS.append(self)


cover_module.BranchedCover.__post_init__ = _recording_post_init


@pytest.fixture(scope="session", autouse=True)
def riemann_hurwitz_everywhere():
    yield
    bad = []
    for c in list(COVERS):
        lhs, rhs = riemann_hurwitz(c)
        if lhs != rhs:
            bad.append((c.total.num_triangles, lhs, rhs))
    assert not bad, f"Riemann-Hurwitz fails for covers built in this session: {bad[:5]}"


@pytest.fixture(scope="session")
def corpus_cache(tmp_path_factory):
    return tmp_path_factory.mktemp("corpus")


@pytest.fixture(scope="session")
def spheres8(corpus_cache):
    return [s for _, s in sphere_corpus(8, corpus_cache)]


@pytest.fixture(scope="session")
def spheres10(corpus_cache):
    return [s for _, s in sphere_corpus(10, corpus_cache)]


@pytest.fixture
def tetra():
    return builtin("tetrahedron")


@pytest.fixture
def octa():
    return builtin("octahedron")


@pytest.fixture
def icosa():
    return builtin("icosahedron")


@pytest.fixture
def torus7():
    return builtin("7-vertex-torus")
