"""Crystallographic root systems of types A-G.

Roots are integer coefficient tuples over the simple roots.  Every root
system indexes its roots once and for all: positive roots occupy indices
``0 .. npos-1`` (graded by height, ties in descending lexicographic order so
that simple root ``alpha_i`` has index ``i-1``) and the negative of root ``p``
sits at ``p + npos``.  Sets of positive roots are Python ints used as
bitmasks over that ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


class ConfigurationError(ValueError):
    """Raised for a Lie type that is not a supported indecomposable type."""


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        fam, r = self.family, self.rank
        if fam not in FAMILIES or not isinstance(r, int):
            raise ConfigurationError(f"unknown Lie type {fam}{r}")
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 4,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }[fam]
        if not ok:
            raise ConfigurationError(f"inadmissible rank for type {fam}: {r}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def group_order(self) -> int:
        fam, r = self.family, self.rank
        if fam == "A":
            return factorial(r + 1)
        if fam in "BC":
            return 2**r * factorial(r)
        if fam == "D":
            return 2 ** (r - 1) * factorial(r)
        return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                ("F", 4): 1152, ("G", 2): 12}[fam, r]


def _unit(dim, i, scale=1):
    v = [Fraction(0)] * dim
    v[i] = Fraction(scale)
    return v


def _combo(dim, terms):
    v = [Fraction(0)] * dim
    for coeff, i in terms:
        v[i] += Fraction(coeff)
    return tuple(v)


def euclidean_simple_roots(t: LieType) -> list[tuple[Fraction, ...]]:
    """Simple roots in the standard (Bourbaki) Euclidean models."""
    fam, r = t.family, t.rank
    if fam == "A":
        return [_combo(r + 1, [(1, i), (-1, i + 1)]) for i in range(r)]
    if fam in "BCD":
        simple = [_combo(r, [(1, i), (-1, i + 1)]) for i in range(r - 1)]
        if fam == "B":
            simple.append(_combo(r, [(1, r - 1)]))
        elif fam == "C":
            simple.append(_combo(r, [(2, r - 1)]))
        else:
            simple.append(_combo(r, [(1, r - 2), (1, r - 1)]))
        return simple
    if fam == "G":
        return [_combo(3, [(1, 0), (-1, 1)]), _combo(3, [(-2, 0), (1, 1), (1, 2)])]
    if fam == "F":
        h = Fraction(1, 2)
        return [
            _combo(4, [(1, 1), (-1, 2)]),
            _combo(4, [(1, 2), (-1, 3)]),
            _combo(4, [(1, 3)]),
            _combo(4, [(h, 0), (-h, 1), (-h, 2), (-h, 3)]),
        ]
    h = Fraction(1, 2)
    e8 = [
        _combo(8, [(h, 0), (h, 7)] + [(-h, k) for k in range(1, 7)]),
        _combo(8, [(1, 0), (1, 1)]),
    ] + [_combo(8, [(1, k), (-1, k - 1)]) for k in range(1, 7)]
    return e8[:r]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class RootSystem:
    """Immutable tables for one indecomposable root system.

    Attributes
    ----------
    lie_type : LieType
    rank : int
    cartan : tuple of tuples
        ``cartan[i][j] = <alpha_j, alpha_i^vee>`` so that
        ``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.
    positive_roots : list of Root
    roots : list of Root
        All roots; index ``p + npos`` is ``-positive_roots[p]``.
    leq_table : list of int
        Bitmask of the down-set of each positive root.
    highest_root : Root
    """

    def __init__(self, t: LieType):
        self.lie_type = t
        self.rank = r = t.rank
        self.euclid_simple = euclidean_simple_roots(t)
        es = self.euclid_simple
        self.cartan = tuple(
            tuple(int(2 * _dot(es[j], es[i]) / _dot(es[i], es[i])) for j in range(r))
            for i in range(r)
        )

        pos = _close_positive(self.cartan)
        pos.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
        self.positive_roots: list[Root] = pos
        self.npos = n = len(pos)
        self.roots: list[Root] = pos + [tuple(-x for x in c) for c in pos]
        self.index: dict[Root, int] = {c: k for k, c in enumerate(self.roots)}
        self.simple_roots: list[Root] = pos[:r]
        self.highest_root: Root = pos[-1]

        self.leq_table: list[int] = []
        for p, b in enumerate(pos):
            mask = 0
            for q, c in enumerate(pos):
                if all(x <= y for x, y in zip(c, b)):
                    mask |= 1 << q
            self.leq_table.append(mask)
        self.up_table: list[int] = [
            sum(1 << q for q in range(n) if self.leq_table[q] >> p & 1) for p in range(n)
        ]
        self.all_positive_mask = (1 << n) - 1

        self.euclid: list[tuple[Fraction, ...]] = [
            tuple(sum((Fraction(c[i]) * es[i][k] for i in range(r)), Fraction(0))
                  for k in range(len(es[0])))
            for c in self.roots
        ]
        self.euclid_index = {v: k for k, v in enumerate(self.euclid)}

        self.simple_reflections: list[tuple[int, ...]] = [
            tuple(self.index[self.reflect(i, c)] for c in self.roots) for i in range(r)
        ]

    def __repr__(self):
        return f"RootSystem({self.lie_type})"

    def __reduce__(self):
        return build_root_system, (self.lie_type,)

    @property
    def order(self) -> int:
        return self.lie_type.group_order

    def reflect(self, i: int, root: Root) -> Root:
        """Apply the simple reflection ``s_{i+1}`` (0-based ``i``) to ``root``."""
        pairing = sum(c * self.cartan[i][j] for j, c in enumerate(root))
        out = list(root)
        out[i] -= pairing
        return tuple(out)

    def neg(self, k: int) -> int:
        return k + self.npos if k < self.npos else k - self.npos

    def is_positive(self, k: int) -> bool:
        return k < self.npos

    def root_index(self, root: Iterable[int]) -> int:
        try:
            return self.index[tuple(root)]
        except KeyError:
            raise ValueError(f"{tuple(root)} is not a root of {self.lie_type}") from None

    def mask(self, indices: Iterable[int]) -> int:
        m = 0
        for k in indices:
            if not 0 <= k < self.npos:
                raise ValueError(f"{k} is not a positive-root index")
            m |= 1 << k
        return m

    def indices(self, mask: int) -> frozenset[int]:
        return frozenset(k for k in range(self.npos) if mask >> k & 1)

    def label(self, k: int) -> str:
        """Human-readable label such as ``a1+2a2`` or ``-a3``."""
        c = self.roots[k]
        sign = "-" if k >= self.npos else ""
        parts = []
        for i, x in enumerate(c):
            x = abs(x)
            if x:
                parts.append(f"{'' if x == 1 else x}a{i + 1}")
        return sign + "+".join(parts)


def _close_positive(cartan) -> list[Root]:
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(r):
                pairing = sum(x * cartan[i][j] for j, x in enumerate(c))
                d = list(c)
                d[i] -= pairing
                d = tuple(d)
                if all(x >= 0 for x in d) and any(d) and d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return list(seen)


@lru_cache(maxsize=None)
def _build(t: LieType) -> RootSystem:
    return RootSystem(t)


def build_root_system(t: LieType | str, rank: int | None = None) -> RootSystem:
    """Return the (cached) root system for ``t``.

    Accepts either a :class:`LieType` or a family letter plus rank.
    """
    if not isinstance(t, LieType):
        t = LieType(str(t).upper(), rank)
    return _build(t)


def leq(rs: RootSystem, b: Root, c: Root) -> bool:
    """Root-poset comparison ``b <= c`` for positive roots."""
    pb, pc = rs.root_index(b), rs.root_index(c)
    if pb >= rs.npos or pc >= rs.npos:
        raise ValueError("leq is defined on positive roots")
    return bool(rs.leq_table[pc] >> pb & 1)


def adj_mask(rs: RootSystem, mask: int) -> int:
    out = 0
    k = 0
    while mask:
        if mask & 1:
            out |= rs.leq_table[k]
        mask >>= 1
        k += 1
    return out


def adj(rs: RootSystem, s: Iterable[int]) -> frozenset[int]:
    """Downward closure of a set of positive-root indices."""
    return rs.indices(adj_mask(rs, rs.mask(s)))
