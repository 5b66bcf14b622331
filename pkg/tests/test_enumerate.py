import pytest

from skein.diagram import dodecahedron, rotate
from skein.enumerate import (EnvelopeError, brute_basis, enumerate_basis, find_feature,
                             find_features, max_vertices, membership, noncrossing_matchings)
from skein.reproduce import closed_graphs


@pytest.mark.parametrize("n, k, variant, size", [
    (0, 0, "plain", 1), (2, 0, "plain", 1), (3, 0, "plain", 1),
    (4, 0, "plain", 4), (4, 1, "plain", 5), (5, 0, "plain", 10), (5, 1, "square", 11),
    (6, 0, "plain", 34), (6, 1, "square", 41), (6, 2, "square", 44),
    (6, 1, "plain", 68), (6, 2, "plain", 164), (7, 0, "plain", 112), (7, 1, "square", 155)])
def test_basis_sizes(n, k, variant, size):
    assert len(enumerate_basis(n, k, variant)) == size


@pytest.mark.parametrize("variant", ["plain", "square"])
@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("k", range(3))
def test_growth_matches_brute_force(n, k, variant):
    grown = enumerate_basis(n, k, variant)
    assert grown.keys == [d.key for d in brute_basis(n, k, variant)]


@pytest.mark.parametrize("n, k, variant", [(6, 2, "plain"), (7, 1, "square")])
def test_members_satisfy_definition(n, k, variant):
    basis = enumerate_basis(n, k, variant)
    pred = membership(variant, k)
    assert all(pred(d) for d in basis)
    assert len({d.key for d in basis}) == len(basis)
    assert all(d.V <= max_vertices(n, k) for d in basis)


def test_closed_under_rotation():
    keys = set(enumerate_basis(6, 1, "plain").keys)
    for d in enumerate_basis(6, 1, "plain"):
        assert rotate(d, 1).key in keys


def test_empty_and_envelope():
    assert len(enumerate_basis(1, 0)) == 0
    with pytest.raises(EnvelopeError):
        enumerate_basis(9, 0)
    with pytest.raises(ValueError):
        enumerate_basis(4, 0, "triangle")


def test_matchings_are_catalan():
    assert [len(noncrossing_matchings(2 * i)) for i in range(7)] == [1, 1, 2, 5, 14, 42, 132]


def test_closed_graphs_have_a_reducible_feature():
    graphs = closed_graphs(8) + [dodecahedron()]
    assert len(graphs) == 227
    for g in graphs:
        if g.V:
            assert find_feature(g).tag in ("very_small_face", "small_face", "pentapent",
                                           "hexapent")


def test_open_diagrams_have_a_feature():
    for n in range(2, 8):
        for d in enumerate_basis(n, 2, "plain"):
            if d.V and d.is_connected:
                assert find_features(d)
                find_feature(d)
