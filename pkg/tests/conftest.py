import pytest

from app.config import Caps, reset_settings
from app.core.graph import build_graph, classify
from app.lab import enumeration, families


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """Every test starts from default settings."""
    monkeypatch.setenv("DIMFORCE_CAPS", "")
    monkeypatch.setenv("DIMFORCE_WORKERS", "1")
    monkeypatch.setenv("DIMFORCE_LOG_LEVEL", "info")
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def small_caps():
    return Caps(brute_force=8, path_cover=8, enumeration=5, enumeration_big=8, labeled_enumeration=5)


@pytest.fixture
def k23():
    return families.complete_bipartite(2, 3)


@pytest.fixture
def spider222():
    return families.spider(2, 2, 2)


@pytest.fixture
def double_spider():
    return families.double_spider()


@pytest.fixture
def sharp_tree():
    """Path 0..4, vertex 5 on 1 with leaves 6 and 7; joining 3-5 gives dim = Z + 1."""
    return build_graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (5, 7)])


@pytest.fixture(scope="session")
def connected_upto_6():
    return [g for n in range(2, 7) for g in enumeration.all_connected(n, caps=Caps())]


@pytest.fixture(scope="session")
def unicyclic_upto_7():
    graphs = [g for n in range(3, 8) for g in enumeration.all_connected(n, caps=Caps())]
    return [g for g in graphs if classify(g).kind == "unicyclic"]
