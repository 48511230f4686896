import json
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ratweyl.matgroup import (
    NotGeneric,
    QMatrix,
    chevalley_x,
    chevalley_y,
    dot_s,
    gauss_decompose,
    is_unit_lower,
    is_upper_borel,
    lower_part,
    random_generic,
    random_unit_lower,
    random_upper_borel,
    representative,
    torus_h,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero = rationals.filter(lambda x: x != 0)


def I(n):
    return QMatrix.identity(n)


def test_gauss_examples():
    pair = gauss_decompose(I(3))
    assert pair.lower == I(3) and pair.upper == I(3)
    pair = gauss_decompose(QMatrix([[3, 4], [6, 13]]))
    assert pair.lower == QMatrix([[1, 0], [2, 1]])
    assert pair.upper == QMatrix([[3, 4], [0, 5]])
    with pytest.raises(NotGeneric) as err:
        gauss_decompose(QMatrix([[0, 1], [1, 0]]))
    assert err.value.index == 1


def test_not_generic_reports_first_failing_minor():
    with pytest.raises(NotGeneric) as err:
        gauss_decompose(QMatrix([[1, 2, 0], [2, 4, 1], [0, 1, 1]]))
    assert err.value.index == 2


def test_gauss_round_trip_many():
    rng = random.Random(7)
    for k in range(1000):
        n = 2 + k % 5
        g = random_generic(n, rng)
        pair = gauss_decompose(g)
        assert is_unit_lower(pair.lower)
        assert is_upper_borel(pair.upper)
        assert pair.lower @ pair.upper == g


def test_gauss_uniqueness():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(2, 6)
        low, up = random_unit_lower(n, rng), random_upper_borel(n, rng)
        pair = gauss_decompose(low @ up)
        assert pair.lower == low and pair.upper == up


def test_gauss_property_suite():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 5)
        g = random_generic(n, rng)
        nm = random_unit_lower(n, rng)
        b = random_upper_borel(n, rng)
        a = QMatrix.diag([rng.choice([-3, -2, -1, 1, 2, 3, 5]) for _ in range(n)])
        g_minus = lower_part(g)
        assert lower_part(nm @ g) == nm @ g_minus
        assert lower_part(g @ b) == g_minus
        assert lower_part(a @ g) == a @ g_minus @ a.inverse()


def test_chevalley_examples():
    assert chevalley_x(3, 1, 0) == I(3)
    x = chevalley_x(3, 1, 5)
    assert x[0, 1] == 5 and x - I(3) == QMatrix([[0, 5, 0], [0, 0, 0], [0, 0, 0]])
    assert chevalley_y(3, 2, 4)[2, 1] == 4
    assert torus_h(3, 2, 2) == QMatrix.diag([1, 2, Fraction(1, 2)])
    assert chevalley_x(3, 1, 1) @ chevalley_x(3, 2, 1) != chevalley_x(3, 2, 1) @ chevalley_x(3, 1, 1)
    with pytest.raises(ValueError):
        chevalley_x(3, 3, 1)
    with pytest.raises(ValueError):
        torus_h(3, 1, 0)


def _xy_relation_holds(n, i, t1, t2):
    d = 1 + t1 * t2
    left = chevalley_x(n, i, t1) @ chevalley_y(n, i, t2)
    right = chevalley_y(n, i, t2 / d) @ torus_h(n, i, d) @ chevalley_x(n, i, t1 / d)
    return left == right


def test_xy_relation_example():
    assert _xy_relation_holds(2, 1, Fraction(1), Fraction(2))


@settings(max_examples=200, deadline=None)
@given(t1=rationals, t2=rationals, n=st.integers(2, 5), data=st.data())
def test_xy_relation_random(t1, t2, n, data):
    assume(1 + t1 * t2 != 0)
    i = data.draw(st.integers(1, n - 1))
    assert _xy_relation_holds(n, i, t1, t2)


@settings(max_examples=100, deadline=None)
@given(t1=rationals, t2=rationals, t3=rationals)
def test_commutation_relations(t1, t2, t3):
    n = 5
    for i in range(1, n):
        for j in range(1, n):
            if i != j:
                assert chevalley_x(n, i, t1) @ chevalley_y(n, j, t2) == \
                    chevalley_y(n, j, t2) @ chevalley_x(n, i, t1)
            if abs(i - j) >= 2:
                assert chevalley_x(n, i, t1) @ chevalley_x(n, j, t2) == \
                    chevalley_x(n, j, t2) @ chevalley_x(n, i, t1)
                assert chevalley_y(n, i, t1) @ chevalley_y(n, j, t2) == \
                    chevalley_y(n, j, t2) @ chevalley_y(n, i, t1)
            if abs(i - j) == 1 and t1 + t3 != 0:
                s = t1 + t3
                for f in (chevalley_x, chevalley_y):
                    left = f(n, i, t1) @ f(n, j, t2) @ f(n, i, t3)
                    right = f(n, j, t2 * t3 / s) @ f(n, i, s) @ f(n, j, t1 * t2 / s)
                    assert left == right


@settings(max_examples=100, deadline=None)
@given(t=rationals, entries=st.lists(nonzero, min_size=4, max_size=4))
def test_torus_relations(t, entries):
    n = 4
    a = QMatrix.diag(entries)
    for i in range(1, n):
        a_alpha = entries[i - 1] / entries[i]
        assert a @ chevalley_x(n, i, t) == chevalley_x(n, i, a_alpha * t) @ a
        assert a @ chevalley_y(n, i, t) == chevalley_y(n, i, t / a_alpha) @ a


def test_representative_examples():
    assert representative(2, [1]) == QMatrix([[0, -1], [1, 0]])
    assert representative(3, [1, 2, 1]) == representative(3, [2, 1, 2])
    assert representative(2, []) == I(2)
    assert dot_s(4, 2) @ dot_s(4, 2) == QMatrix.diag([1, -1, -1, 1])
    with pytest.raises(ValueError):
        representative(3, [3])


def test_representative_braid_relations():
    n = 5
    for i in range(1, n):
        for j in range(i + 1, n):
            if j == i + 1:
                assert representative(n, [i, j, i]) == representative(n, [j, i, j])
            else:
                assert representative(n, [i, j]) == representative(n, [j, i])


def test_representative_moves_root_subgroups():
    """u y_j(t) u^{-1} lives in the root subgroup of -u(alpha_j)."""
    from ratweyl.roots import build_root_system
    from ratweyl.weyl import from_word

    rng = random.Random(3)
    n = 5
    rs = build_root_system("A", n - 1)
    for _ in range(60):
        word = [rng.randint(1, n - 1) for _ in range(rng.randint(0, 10))]
        u = from_word(rs, word)
        rep = representative(n, word)
        for j in range(1, n):
            t = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            conj = rep @ chevalley_y(n, j, t) @ rep.inverse() - I(n)
            nz = [(a, b) for a in range(n) for b in range(n) if conj[a, b] != 0]
            assert len(nz) == 1
            (a, b), = nz
            # E_{a,b} is the root vector of e_{a+1} - e_{b+1}
            root = tuple(1 if min(a, b) <= k < max(a, b) else 0 for k in range(n - 1))
            root = root if a < b else tuple(-x for x in root)
            image = u(rs.simple_roots[j - 1])
            assert root == tuple(-x for x in image)


def test_membership_predicates():
    assert is_upper_borel(I(3)) and is_unit_lower(I(3))
    assert is_unit_lower(QMatrix([[1, 0], [2, 1]]))
    assert not is_upper_borel(QMatrix([[2, 3], [0, 0]]))
    assert not is_unit_lower(QMatrix([[2, 0], [1, 1]]))


def test_json_round_trip():
    m = QMatrix([["1/2", 3], [-4, "7/3"]])
    assert QMatrix(json.loads(m.to_json())) == m
    assert m.to_json_obj() == [["1/2", "3"], ["-4", "7/3"]]
    with pytest.raises(TypeError):
        QMatrix([[0.5, 1], [1, 1]])
    with pytest.raises(ValueError):
        QMatrix([[1, 2, 3], [1, 2, 3]])


def test_inverse_and_det():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 5)
        g = QMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        if g.det() == 0:
            with pytest.raises(ZeroDivisionError):
                g.inverse()
        else:
            assert g @ g.inverse() == I(n)
