from collections import Counter

import networkx as nx
import pytest

from ratweyl.atlas import (
    BudgetExceeded,
    build_atlas,
    check_z2_symmetry,
    count_rational,
    coxeter_report,
    path_to_w0,
    python_sweep,
    rational_codes,
    w0_neighbors,
)
from ratweyl.rationality import is_rational
from ratweyl.roots import build_root_system
from ratweyl.weyl import from_word, longest_element, special_d_element

KERNEL_ORACLE_TYPES = [("A", r) for r in range(1, 6)] + [("B", 2), ("B", 3), ("B", 4), ("C", 3),
                                                        ("C", 4), ("D", 4), ("D", 5), ("G", 2),
                                                        ("F", 4), ("E", 6)]


@pytest.mark.parametrize("key", KERNEL_ORACLE_TYPES)
def test_compiled_sweep_matches_reference(key):
    rs = build_root_system(*key)
    total, codes = python_sweep(rs, collect=True)
    assert rational_codes(rs) == codes
    assert count_rational(rs) == total


@pytest.mark.parametrize("key,expected", [(("A", 4), 25), (("D", 5), 31), (("E", 6), 397),
                                          (("A", 6), 379), (("E", 7), 1)])
def test_count_examples(key, expected):
    assert count_rational(build_root_system(*key)) == expected


@pytest.mark.parametrize("key", [("A", 5), ("D", 5), ("F", 4)])
def test_count_independent_of_workers(key):
    rs = build_root_system(*key)
    base = count_rational(rs)
    assert count_rational(rs, workers=2) == base
    assert count_rational(rs, workers=3) == base
    assert rational_codes(rs, workers=2) == rational_codes(rs)


def test_workers_must_be_positive():
    with pytest.raises(ValueError):
        count_rational(build_root_system("A", 2), workers=0)


def test_budget_refusal_names_required_budget():
    rs = build_root_system("E", 8)
    with pytest.raises(BudgetExceeded) as err:
        build_atlas(rs)
    assert err.value.required == 696729600
    assert "696729600" in str(err.value)
    with pytest.raises(BudgetExceeded):
        count_rational(build_root_system("A", 5), budget=100)


MULTI = {("A", 2), ("A", 3), ("A", 4), ("A", 5), ("D", 5)}
SINGLE = {("A", 1), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("D", 4), ("F", 4), ("G", 2)}


@pytest.mark.parametrize("key", sorted(MULTI | SINGLE))
def test_more_than_one_vertex_iff_nontrivial_epsilon(key):
    rs = build_root_system(*key)
    atlas = build_atlas(rs)
    assert (atlas.count > 1) == (key in MULTI)
    if key in SINGLE:
        assert atlas.vertices == [longest_element(rs)]


@pytest.fixture(scope="module")
def atlases():
    cache = {}

    def get(key, side="left"):
        if (key, side) not in cache:
            cache[key, side] = build_atlas(build_root_system(*key), edge_side=side)
        return cache[key, side]

    return get


@pytest.mark.parametrize("key", [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("D", 5), ("E", 6)])
def test_atlas_connected_and_symmetric(key, atlases):
    atlas = atlases(key)
    g = nx.Graph()
    g.add_nodes_from(range(atlas.count))
    g.add_edges_from((i, j) for i, j, _ in atlas.edges)
    assert nx.is_connected(g)
    assert atlas.connected and len(atlas.components) == 1
    assert check_z2_symmetry(atlas)


@pytest.mark.parametrize("key", [("A", 3), ("D", 5), ("E", 6)])
def test_atlas_edges_are_labelled_left_multiplications(key, atlases):
    atlas = atlases(key)
    rs = atlas.rs
    for i, j, lab in atlas.edges:
        assert i < j
        assert atlas.vertices[j] == from_word(rs, [lab]) * atlas.vertices[i]
    assert all(is_rational(rs, v) for v in atlas.vertices)
    assert [v.length for v in atlas.vertices] == sorted(v.length for v in atlas.vertices)


def test_atlas_examples(atlases):
    a3 = atlases(("A", 3))
    assert a3.count == 7
    assert sorted(a3.valencies) == [1, 1, 2, 2, 2, 2, 2]
    rs = a3.rs
    ones = {v for v, d in zip(a3.vertices, a3.valencies) if d == 1}
    c = from_word(rs, [1, 2, 3])
    assert ones == {c, c.inverse()}
    assert check_z2_symmetry(atlases(("B", 2)))
    d5 = atlases(("D", 5))
    assert d5.count == 31
    assert d5.valencies.count(1) == 2


def test_e6_has_no_valency_one_vertices(atlases):
    counts = Counter(atlases(("E", 6)).valencies)
    assert counts[1] == 0
    assert counts[2] == 4


@pytest.mark.parametrize("key", [("A", 2), ("A", 4), ("D", 5), ("E", 6)])
def test_w0_neighbors(key, atlases):
    atlas = atlases(key)
    rs = atlas.rs
    w0 = longest_element(rs)
    got = sorted(lab for _, lab in atlas.neighbors(w0))
    assert got == w0_neighbors(rs)
    for v, lab in atlas.neighbors(w0):
        assert v == from_word(rs, [lab]) * w0


def test_special_d5_neighbours(atlases):
    atlas = atlases(("D", 5))
    rs = atlas.rs
    c = special_d_element(rs)
    assert atlas.neighbors(c) == [(from_word(rs, [4]) * c, 4)]
    ci = c.inverse()
    assert atlas.neighbors(ci) == [(from_word(rs, [5]) * ci, 5)]
    assert atlas.valency(c) == atlas.valency(ci) == 1


def test_right_edges_disconnect(atlases):
    assert not atlases(("A", 3), "right").connected
    assert atlases(("A", 2), "right").connected
    assert atlases(("A", 3), "right").count == 7


def test_path_to_w0_examples(atlases):
    a2 = atlases(("A", 2))
    rs = a2.rs
    assert path_to_w0(a2, longest_element(rs)) == []
    assert path_to_w0(a2, from_word(rs, [1, 2])) == [2]
    d5 = atlases(("D", 5))
    c = special_d_element(d5.rs)
    assert len(path_to_w0(d5, c)) == 20 - 13
    with pytest.raises(ValueError):
        path_to_w0(a2, from_word(rs, [1]))


@pytest.mark.parametrize("key", [("A", 4), ("D", 5), ("E", 6)])
def test_path_to_w0_for_every_vertex(key, atlases):
    atlas = atlases(key)
    rs = atlas.rs
    w0 = longest_element(rs)
    for u in atlas.vertices:
        path = path_to_w0(atlas, u)
        assert len(path) == rs.npos - u.length
        v = u
        for a in path:
            k = a - 1  # index of alpha_a
            assert v.inverse().action[k] < rs.npos and v.action[k] >= rs.npos
            v = from_word(rs, [a]) * v
            assert v in atlas.index
        assert v == w0


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_rational_coxeter_in_type_a(r, atlases):
    rs = build_root_system("A", r)
    rep = coxeter_report(rs)
    c = from_word(rs, range(1, r + 1))
    assert set(rep["rational_coxeter"]) == {c, c.inverse()}
    assert rep["valencies"] == [1, 1]
    atlas = atlases(("A", r))
    assert atlas.valency(c) == 1
    assert atlas.neighbors(c) == [(from_word(rs, [r]) * c, r)]


@pytest.mark.parametrize("key", [("D", 4), ("D", 5), ("E", 6)])
def test_no_rational_coxeter(key):
    rep = coxeter_report(build_root_system(*key))
    assert rep["rational_coxeter"] == []
    assert rep["coxeter_count"] == 2 ** (key[1] - 1)


@pytest.mark.parametrize("r", [5, 7])
def test_type_d_counts(r):
    assert count_rational(build_root_system("D", r)) == 2 ** r - 1


@pytest.mark.slow
def test_a10_count_with_workers():
    assert count_rational(build_root_system("A", 10), workers=4) == 236099


@pytest.mark.slow
def test_d9_count():
    assert count_rational(build_root_system("D", 9), workers=4) == 511
