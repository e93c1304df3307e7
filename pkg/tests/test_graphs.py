import numpy as np
import pytest

from pgfr.errors import InvalidParameter
from pgfr.graphs import (
    Graph,
    double_star_labels,
    laplacian,
    make_double_star,
    make_path,
    random_connected_graph,
)


def test_small_paths():
    assert make_path(1).edges == frozenset()
    assert make_path(2).sorted_edges() == [(1, 2)]
    assert make_path(4).sorted_edges() == [(1, 2), (2, 3), (3, 4)]


def test_path_rejects_zero():
    with pytest.raises(InvalidParameter):
        make_path(0)


def test_double_star_rejects_zero():
    with pytest.raises(InvalidParameter):
        make_double_star(0, 3)
    with pytest.raises(InvalidParameter):
        make_double_star(2, 0)


def test_s11_is_p4():
    assert make_double_star(1, 1).sorted_edges() == make_path(4).sorted_edges()


def test_double_star_sizes_and_degrees():
    g = make_double_star(2, 2)
    assert g.n == 6 and len(g.edges) == 5
    g = make_double_star(3, 2)
    lab = double_star_labels(3, 2)
    assert g.n == 7
    assert sorted([g.degree(lab["first_center"]), g.degree(lab["second_center"])]) == [3, 4]
    for m in range(1, 8):
        for n in range(1, 8):
            assert len(make_double_star(m, n).edges) == m + n + 1


def test_small_laplacians():
    assert laplacian(make_path(2)).entries == ((1, -1), (-1, 1))
    assert laplacian(make_path(3)).entries == ((1, -1, 0), (-1, 2, -1), (0, -1, 1))


@pytest.mark.parametrize("m", [1, 2, 3, 6])
def test_pendant_pair_layout(m):
    # Pendant pair first, then the degree-3 center, the other center, its pendants.
    expected = np.zeros((m + 4, m + 4), dtype=int)
    expected[0, [0, 2]] = [1, -1]
    expected[1, [1, 2]] = [1, -1]
    expected[2, :4] = [-1, -1, 3, -1]
    expected[3, 2:4] = [-1, m + 1]
    expected[3, 4:] = -1
    for k in range(4, m + 4):
        expected[k, 3], expected[k, k] = -1, 1
    assert np.array_equal(np.array(laplacian(make_double_star(m, 2)).entries), expected)


def test_laplacian_invariants():
    rng = np.random.default_rng(7)
    graphs = [make_path(n) for n in range(1, 12)] + [make_double_star(m, n) for m in range(1, 5) for n in range(1, 5)]
    graphs += [random_connected_graph(int(rng.integers(2, 13)), rng) for _ in range(20)]
    for g in graphs:
        L = np.array(laplacian(g).entries)
        assert not L.sum(axis=1).any()
        assert np.array_equal(L, L.T)
        assert all(L[v - 1, v - 1] == g.degree(v) for v in range(1, g.n + 1))
        off = L[~np.eye(g.n, dtype=bool)]
        assert set(off.tolist()) <= {0, -1}
        assert np.linalg.eigvalsh(L.astype(float)).min() > -1e-9


def test_random_graphs_connected():
    rng = np.random.default_rng(1)
    for _ in range(30):
        assert random_connected_graph(int(rng.integers(1, 13)), rng).is_connected()
    assert not Graph.from_edges(3, [(1, 2)]).is_connected()


def test_rejects_loops_and_duplicates():
    with pytest.raises(InvalidParameter):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(InvalidParameter):
        Graph.from_edges(3, [(1, 2), (2, 1)])
    with pytest.raises(InvalidParameter):
        Graph.from_edges(3, [(1, 4)])


def test_json_roundtrip():
    g = make_double_star(3, 2)
    text = g.to_json()
    assert Graph.from_json(text) == g
    assert Graph.from_json(text).to_json() == text
    with pytest.raises(InvalidParameter):
        Graph.from_json('{"n": 3}')
