"""Exact rational matrices in GL_n.

Entries are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Provides the Gaussian decomposition ``g = g_- g_+``
with ``g_-`` unit lower triangular and ``g_+`` upper triangular, the
one-parameter subgroups ``x_i``, ``y_i``, the torus elements ``h_i`` and the
Weyl representatives ``s_i = x_i(-1) y_i(1) x_i(-1)``.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class NotGeneric(ArithmeticError):
    """A leading principal minor vanishes.

    ``index`` is the 1-based size of the first vanishing minor; solvers may
    attach the iteration step at which the failure happened.
    """

    def __init__(self, index: int, step: int | None = None, trace=None):
        self.index = index
        self.step = step
        self.trace = trace
        where = "" if step is None else f" at step {step}"
        super().__init__(f"leading principal minor {index} vanishes{where}")


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating-point entries are not accepted; use 'p/q' strings")
    return Fraction(x)


class QMatrix:
    """Square matrix with exact rational entries (value semantics)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_q(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("QMatrix needs a non-empty square array")
        self.n = n
        self.rows = rows

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> QMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_json(cls, text: str) -> QMatrix:
        return cls(json.loads(text))

    def to_json_obj(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    # access -------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"QMatrix([{body}])"

    # arithmetic ---------------------------------------------------------
    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.n != other.n:
            raise ValueError("size mismatch")
        cols = list(zip(*other.rows))
        return QMatrix._raw([[sum(a * b for a, b in zip(r, c) if a and b) for c in cols]
                             for r in self.rows])

    __mul__ = __matmul__

    def scale(self, c) -> QMatrix:
        c = _q(c)
        return QMatrix._raw([[c * x for x in r] for r in self.rows])

    def __sub__(self, other: QMatrix) -> QMatrix:
        return QMatrix._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __add__(self, other: QMatrix) -> QMatrix:
        return QMatrix._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    @classmethod
    def _raw(cls, rows) -> QMatrix:
        m = cls.__new__(cls)
        m.rows = tuple(tuple(Fraction(x) if not isinstance(x, Fraction) else x for x in r)
                       for r in rows)
        m.n = len(m.rows)
        return m

    def transpose(self) -> QMatrix:
        return QMatrix._raw(list(zip(*self.rows)))

    def det(self) -> Fraction:
        a = [list(r) for r in self.rows]
        n = self.n
        d = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return Fraction(0)
            if p != k:
                a[k], a[p] = a[p], a[k]
                d = -d
            d *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return d

    def inverse(self) -> QMatrix:
        """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
        n = self.n
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                raise ZeroDivisionError("matrix is singular")
            a[k], a[p] = a[p], a[k]
            piv = a[k][k]
            a[k] = [x / piv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return QMatrix._raw([r[n:] for r in a])

    def leading_minors(self) -> list[Fraction]:
        return [QMatrix._raw([r[:k] for r in self.rows[:k]]).det() for k in range(1, self.n + 1)]

    def max_bits(self) -> int:
        """Largest numerator/denominator bit length (a growth diagnostic)."""
        return max(max(x.numerator.bit_length(), x.denominator.bit_length())
                   for r in self.rows for x in r)


def as_qmatrix(obj) -> QMatrix:
    return obj if isinstance(obj, QMatrix) else QMatrix(obj)


# ------------------------------------------------------------------ Gaussian decomposition

@dataclass(frozen=True)
class GaussPair:
    lower: QMatrix  # unit lower triangular
    upper: QMatrix  # upper triangular, nonzero diagonal


def gauss_decompose(g: QMatrix) -> GaussPair:
    """``g = lower @ upper`` (Doolittle, no pivoting)."""
    n = g.n
    a = [list(r) for r in g.rows]
    low = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = a[k][k]
        if piv == 0:
            raise NotGeneric(k + 1)
        for i in range(k + 1, n):
            f = a[i][k] / piv
            low[i][k] = f
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
            a[i][k] = Fraction(0)
    return GaussPair(QMatrix._raw(low), QMatrix._raw(a))


def lower_part(g: QMatrix) -> QMatrix:
    """``g_-``."""
    return gauss_decompose(g).lower


def upper_part(g: QMatrix) -> QMatrix:
    """``g_+``."""
    return gauss_decompose(g).upper


def is_upper_borel(g: QMatrix) -> bool:
    return all(g.rows[i][j] == 0 for i in range(g.n) for j in range(i)) and all(
        g.rows[i][i] != 0 for i in range(g.n))


def is_unit_lower(g: QMatrix) -> bool:
    return all(g.rows[i][j] == 0 for i in range(g.n) for j in range(i + 1, g.n)) and all(
        g.rows[i][i] == 1 for i in range(g.n))


def is_identity(g: QMatrix) -> bool:
    return g == QMatrix.identity(g.n)


# ------------------------------------------------------------------ Chevalley generators

def _check(n: int, i: int):
    if not isinstance(i, int) or not 1 <= i <= n - 1:
        raise ValueError(f"simple index {i!r} out of range 1..{n - 1}")


def _elementary(n, i, j, t) -> QMatrix:
    rows = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    rows[i][j] += _q(t)
    return QMatrix._raw(rows)


def chevalley_x(n: int, i: int, t) -> QMatrix:
    """``I + t E_{i,i+1}``."""
    _check(n, i)
    return _elementary(n, i - 1, i, t)


def chevalley_y(n: int, i: int, t) -> QMatrix:
    """``I + t E_{i+1,i}``."""
    _check(n, i)
    return _elementary(n, i, i - 1, t)


def torus_h(n: int, i: int, t) -> QMatrix:
    """``diag(.., t, 1/t, ..)`` at positions ``i, i+1``."""
    _check(n, i)
    t = _q(t)
    if t == 0:
        raise ValueError("torus parameter must be nonzero")
    d = [Fraction(1)] * n
    d[i - 1], d[i] = t, 1 / t
    return QMatrix.diag(d)


def dot_s(n: int, i: int) -> QMatrix:
    """``x_i(-1) y_i(1) x_i(-1)``."""
    return chevalley_x(n, i, -1) @ chevalley_y(n, i, 1) @ chevalley_x(n, i, -1)


def representative(n: int, word: Sequence[int]) -> QMatrix:
    """Product of the ``dot_s`` matrices along ``word``, left to right."""
    out = QMatrix.identity(n)
    for i in word:
        out = out @ dot_s(n, i)
    return out


# ------------------------------------------------------------------ sampling

def random_matrix(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> QMatrix:
    return QMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def random_generic(n: int, rng: random.Random, extra: Sequence[QMatrix] = (),
                   lo: int = -9, hi: int = 9) -> QMatrix:
    """Random ``g`` with all leading minors of ``g`` and of ``g @ m`` (``m`` in
    ``extra``) nonzero; rejection sampling."""
    while True:
        g = random_matrix(n, rng, lo, hi)
        if all(x != 0 for x in g.leading_minors()) and all(
                all(x != 0 for x in (g @ m).leading_minors()) for m in extra):
            return g


def random_unit_lower(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> QMatrix:
    return QMatrix([[1 if i == j else (rng.randint(lo, hi) if j < i else 0) for j in range(n)]
                    for i in range(n)])


def random_upper_borel(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> QMatrix:
    def diag_entry():
        while True:
            v = rng.randint(lo, hi)
            if v:
                return v

    return QMatrix([[diag_entry() if i == j else (rng.randint(lo, hi) if j > i else 0)
                     for j in range(n)] for i in range(n)])
