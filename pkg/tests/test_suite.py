import pytest

from app.config import Caps
from app.core.resolvability import metric_dimension_bruteforce
from app.lab import families, suite
from app.lab.suite import Fixture, verify_paper_suite


def _tiny_caps():
    return Caps(brute_force=6, path_cover=6, enumeration=5, enumeration_big=8, labeled_enumeration=5)


def _corrupted(caps):
    dim, _ = metric_dimension_bruteforce(families.complete(3))
    if dim != 1:
        return "fail", f"K3: dim={dim}, fixture expects 1"
    return "pass", None


def test_suite_passes_at_small_caps():
    result = verify_paper_suite(_tiny_caps())
    failing = [f for f in result.fixtures if f.status == "fail"]
    assert failing == []
    assert result.passed
    assert set(result.sweeps) == {"trees", "trees_path_cover", "t_plus_e", "connected_small", "connected"}
    assert all(s.theorem_failures == 0 for s in result.sweeps.values())
    # below eight vertices a missing sharpness witness is skipped, never failed
    sharpness = [f.status for f in result.fixtures if f.name.startswith("sharpness:")]
    assert len(sharpness) == 3
    assert "fail" not in sharpness


def test_corrupted_fixture_fails_the_suite():
    fixtures = [Fixture("corrupted_extremal", "dim(K3) = 1", _corrupted)]
    result = verify_paper_suite(Caps(brute_force=4, path_cover=4, enumeration=4), fixtures=fixtures)
    assert not result.passed
    assert result.fixtures[0].status == "fail"
    assert "K3" in result.fixtures[0].detail


def test_crashing_fixture_is_a_failure():
    def boom(caps):
        raise RuntimeError("broken fixture")

    caps = Caps(brute_force=4, path_cover=4, enumeration=4)
    result = verify_paper_suite(caps, fixtures=[Fixture("boom", "x", boom)])
    assert not result.passed
    assert "RuntimeError" in result.fixtures[0].detail


@pytest.mark.parametrize("fixture", suite.FIXTURES, ids=lambda f: f.name)
def test_each_fixture_at_default_caps(fixture):
    status, detail = fixture.run(Caps(brute_force=16, path_cover=12, enumeration=6))
    assert status != "fail", detail


@pytest.mark.slow
def test_full_suite_with_sharpness_witnesses():
    caps = Caps(brute_force=9, path_cover=9, enumeration=6)
    result = verify_paper_suite(caps, workers=2)
    assert result.passed, [f for f in result.fixtures if f.status == "fail"]
    sharpness = {f.name: f.status for f in result.fixtures if f.name.startswith("sharpness:")}
    assert set(sharpness.values()) == {"pass"}
