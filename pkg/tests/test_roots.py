from itertools import combinations

import pytest

from ratweyl.roots import ConfigurationError, LieType, adj, build_root_system, leq

POSITIVE_COUNTS = {
    ("A", 1): 1, ("A", 2): 3, ("A", 5): 15, ("B", 2): 4, ("B", 4): 16, ("C", 3): 9,
    ("C", 5): 25, ("D", 4): 12, ("D", 5): 20, ("D", 7): 42, ("E", 6): 36, ("E", 7): 63,
    ("E", 8): 120, ("F", 4): 24, ("G", 2): 6,
}


def euclidean_positive_roots(fam, r):
    """Independent model of the positive roots as vectors (not via reflections)."""
    def e(i, dim):
        v = [0] * dim
        v[i] = 1
        return v

    out = []
    if fam == "A":
        for i, j in combinations(range(r + 1), 2):
            v = [0] * (r + 1)
            v[i], v[j] = 1, -1
            out.append(tuple(v))
        return out
    for i, j in combinations(range(r), 2):
        for s in (1, -1):
            v = [0] * r
            v[i], v[j] = 1, s
            out.append(tuple(v))
    if fam == "B":
        out += [tuple(e(i, r)) for i in range(r)]
    if fam == "C":
        out += [tuple(2 * x for x in e(i, r)) for i in range(r)]
    return out


@pytest.mark.parametrize("key", sorted(POSITIVE_COUNTS))
def test_positive_root_counts(key):
    rs = build_root_system(*key)
    assert rs.npos == POSITIVE_COUNTS[key]
    assert rs.npos == len(set(rs.positive_roots))


@pytest.mark.parametrize("key", [("A", 4), ("B", 3), ("C", 4), ("D", 5)])
def test_roots_match_euclidean_model(key):
    rs = build_root_system(*key)
    model = {tuple(int(x) for x in v) for v in rs.euclid[: rs.npos]}
    assert model == set(euclidean_positive_roots(*key))


def test_a2_positive_roots():
    rs = build_root_system("A", 2)
    assert rs.positive_roots == [(1, 0), (0, 1), (1, 1)]
    assert rs.highest_root == (1, 1)


def test_b2_short_root_last():
    rs = build_root_system("B", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert rs.highest_root == (1, 2)
    # alpha_2 short: s_2(alpha_1) = alpha_1 + 2 alpha_2
    assert rs.reflect(1, (1, 0)) == (1, 2)


def test_c2_is_dual_of_b2():
    b = build_root_system("B", 2)
    c = build_root_system("C", 2)
    assert c.cartan == tuple(zip(*b.cartan))
    assert c.highest_root == (2, 1)


@pytest.mark.parametrize("key", sorted(POSITIVE_COUNTS))
def test_cartan_shape(key):
    rs = build_root_system(*key)
    for i in range(rs.rank):
        assert rs.cartan[i][i] == 2
        for j in range(rs.rank):
            if i != j:
                assert rs.cartan[i][j] <= 0
                assert (rs.cartan[i][j] == 0) == (rs.cartan[j][i] == 0)


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("D", 4), ("G", 2), ("F", 4), ("E", 6)])
def test_leq_is_partial_order(key):
    rs = build_root_system(*key)
    pos = rs.positive_roots
    for b in pos:
        assert leq(rs, b, b)
        for c in pos:
            if b != c and leq(rs, b, c):
                assert not leq(rs, c, b)
                for d in pos:
                    if leq(rs, c, d):
                        assert leq(rs, b, d)


@pytest.mark.parametrize("key", sorted(POSITIVE_COUNTS))
def test_highest_root_dominates(key):
    rs = build_root_system(*key)
    top = rs.highest_root
    for c in rs.positive_roots:
        assert leq(rs, c, top)
        assert all(x <= y for x, y in zip(c, top))


def test_leq_examples():
    b2 = build_root_system("B", 2)
    assert leq(b2, (0, 1), (1, 2))
    assert leq(b2, (1, 0), (1, 0))
    a2 = build_root_system("A", 2)
    assert not leq(a2, (1, 0), (0, 1))


def test_adj_examples():
    b2 = build_root_system("B", 2)
    top = b2.root_index((1, 2))
    assert adj(b2, {top}) == frozenset(range(b2.npos))
    assert adj(b2, set()) == frozenset()
    a2 = build_root_system("A", 2)
    assert adj(a2, {1}) == frozenset({1})


def test_adj_closure_properties(rng):
    rs = build_root_system("D", 5)
    for _ in range(200):
        s = {k for k in range(rs.npos) if rng.random() < 0.2}
        t = s | {k for k in range(rs.npos) if rng.random() < 0.1}
        a = adj(rs, s)
        assert s <= a
        assert adj(rs, a) == a
        assert a <= adj(rs, t)


@pytest.mark.parametrize("fam,rank", [("D", 3), ("B", 1), ("E", 5), ("F", 3), ("G", 3), ("X", 2), ("A", 0)])
def test_inadmissible_types(fam, rank):
    with pytest.raises(ConfigurationError):
        LieType(fam, rank)


def test_ordering_by_height_then_lex():
    rs = build_root_system("A", 3)
    heights = [sum(c) for c in rs.positive_roots]
    assert heights == sorted(heights)
    assert rs.simple_roots == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert rs.positive_roots[3:5] == [(1, 1, 0), (0, 1, 1)]


def test_root_system_pickles_to_cached_instance():
    import pickle

    rs = build_root_system("E", 6)
    assert pickle.loads(pickle.dumps(rs)) is rs
