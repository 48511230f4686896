"""nu-sequences, rationality graphs and rationality predicates.

Sets of positive roots are bitmasks over the root ordering of
:class:`~ratweyl.roots.RootSystem`; the public dataclasses expose them as
frozensets of indices as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .roots import RootSystem, adj_mask
from .weyl import WeylElement, from_word, longest_element


def _image_mask(rs: RootSystem, u: WeylElement, mask: int) -> int:
    """``u(mask) ∩ Π₊`` as a mask."""
    n = rs.npos
    act = u.action
    out = 0
    k = 0
    while mask:
        if mask & 1:
            q = act[k]
            if q < n:
                out |= 1 << q
        mask >>= 1
        k += 1
    return out


def nu0_mask(rs: RootSystem, u: WeylElement) -> int:
    return _image_mask(rs, u, rs.all_positive_mask)


def nu_step(rs: RootSystem, u: WeylElement, mask: int) -> int:
    """One step ``A -> u(Adj A) ∩ Π₊``."""
    return _image_mask(rs, u, adj_mask(rs, mask))


@dataclass(frozen=True)
class NuSequence:
    rs: RootSystem = field(repr=False)
    masks: tuple[int, ...]

    @property
    def terms(self) -> list[frozenset[int]]:
        return [self.rs.indices(m) for m in self.masks]

    @property
    def limit_mask(self) -> int:
        return self.masks[-1]

    @property
    def limit(self) -> frozenset[int]:
        return self.rs.indices(self.masks[-1])


def nu_sequence(rs: RootSystem, u: WeylElement) -> NuSequence:
    """Terms ``nu^0, nu^1, ...`` up to the first term equal to its successor."""
    masks = [nu0_mask(rs, u)]
    while True:
        nxt = nu_step(rs, u, masks[-1])
        if nxt == masks[-1]:
            return NuSequence(rs, tuple(masks))
        masks.append(nxt)


def nu0_via_reduced_word(rs: RootSystem, v_word: Sequence[int]) -> frozenset[int]:
    """``nu^0(v w0)`` from a reduced word ``s_{i_1} ... s_{i_m}`` of ``v``.

    Returns ``{beta_k}`` with ``beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})``.
    """
    v_word = tuple(v_word)
    if from_word(rs, v_word).length != len(v_word):
        raise ValueError(f"word {v_word} is not reduced")
    out = set()
    prefix = from_word(rs, ())
    for i in v_word:
        out.add(prefix.action[i - 1])
        prefix = prefix * from_word(rs, (i,))
    if any(k >= rs.npos for k in out):
        raise AssertionError("reduced-word roots must be positive")
    return frozenset(out)


@dataclass(frozen=True)
class RelativeNu:
    rs: RootSystem = field(repr=False)
    masks: tuple[int, ...]
    empty_limit: bool
    cycle_start: int | None  # index of the term the sequence returns to

    @property
    def terms(self) -> list[frozenset[int]]:
        return [self.rs.indices(m) for m in self.masks]


def relative_nu(rs: RootSystem, u: WeylElement, v: WeylElement,
                max_terms: int | None = None) -> RelativeNu:
    """nu-sequence of ``u`` relative to ``v``.

    Stops at the first term that repeats an earlier one, or after
    ``max_terms`` terms (default ``2 * npos + 2``).
    """
    if max_terms is None:
        max_terms = 2 * rs.npos + 2
    w = u * v.inverse()
    n = rs.npos
    # uv^{-1}(Π₋) ∩ Π₊
    first = 0
    for k in range(n, 2 * n):
        q = w.action[k]
        if q < n:
            first |= 1 << q
    masks = [first]
    seen = {first: 0}
    cycle_start = None
    while len(masks) < max_terms:
        nxt = nu_step(rs, u, masks[-1])
        if nxt in seen:
            cycle_start = seen[nxt]
            break
        seen[nxt] = len(masks)
        masks.append(nxt)
    return RelativeNu(rs, tuple(masks), any(m == 0 for m in masks), cycle_start)


@dataclass(frozen=True)
class RatGraph:
    """The oriented graph Γ(u) on ``nu^0(u)``; loops allowed."""

    rs: RootSystem = field(repr=False)
    vertices: tuple[int, ...]
    succ: dict[int, int]  # vertex -> bitmask of successors

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.vertices for b in self.vertices
                if self.succ[a] >> b & 1]

    def find_cycle(self) -> list[int] | None:
        """A directed cycle as a vertex list (a loop is ``[a]``), or None."""
        color = dict.fromkeys(self.vertices, 0)
        stack_pos: dict[int, int] = {}
        path: list[int] = []

        for start in self.vertices:
            if color[start]:
                continue
            it_stack = [(start, iter(self._succ_list(start)))]
            color[start] = 1
            stack_pos[start] = 0
            path.append(start)
            while it_stack:
                node, it = it_stack[-1]
                for nxt in it:
                    if color[nxt] == 1:
                        return path[stack_pos[nxt]:]
                    if color[nxt] == 0:
                        color[nxt] = 1
                        stack_pos[nxt] = len(path)
                        path.append(nxt)
                        it_stack.append((nxt, iter(self._succ_list(nxt))))
                        break
                else:
                    it_stack.pop()
                    color[node] = 2
                    path.pop()
                    del stack_pos[node]
        return None

    def _succ_list(self, a):
        m = self.succ[a]
        return [b for b in self.vertices if m >> b & 1]


def gamma(rs: RootSystem, u: WeylElement) -> RatGraph:
    """Edge ``a -> b`` iff ``u^{-1}(a) <= b``."""
    n = rs.npos
    inv = u.inverse()
    vmask = nu0_mask(rs, u)
    verts = tuple(k for k in range(n) if vmask >> k & 1)
    succ = {}
    for a in verts:
        pre = inv.action[a]  # positive because a ∈ nu^0(u)
        succ[a] = rs.up_table[pre] & vmask
    return RatGraph(rs, verts, succ)


def is_rational(rs: RootSystem, u: WeylElement) -> bool:
    """True iff the nu-sequence of ``u`` reaches the empty set."""
    mask = nu0_mask(rs, u)
    while mask:
        nxt = nu_step(rs, u, mask)
        if nxt == mask:
            return False
        mask = nxt
    return True


@dataclass(frozen=True)
class Certificate:
    rational: bool
    nu: NuSequence
    cycle: list[int] | None  # a cycle of Γ(u) when not rational


def rationality_certificate(rs: RootSystem, u: WeylElement) -> Certificate:
    """Decide rationality both ways and insist that they agree."""
    seq = nu_sequence(rs, u)
    cycle = gamma(rs, u).find_cycle()
    rational = seq.limit_mask == 0
    if rational != (cycle is None):
        raise AssertionError(f"nu-limit and acyclicity disagree for {u!r}")
    return Certificate(rational, seq, cycle)


def has_loop(rs: RootSystem, u: WeylElement):
    """A positive root ``a`` with ``a <= u(a)``, or None."""
    n = rs.npos
    for k in range(n):
        q = u.action[k]
        if q < n and rs.leq_table[q] >> k & 1:
            return rs.roots[k]
    return None


def sn_cycle_obstruction(perm: Sequence[int]) -> bool:
    """Prefix cycle ``(1 2 .. k)``, k < n, or suffix cycle ``(k .. n)``, k > 1.

    ``perm`` is in one-line notation on ``1..n``.  A True answer rules out
    rationality of the corresponding type-A element; False says nothing.
    """
    n = len(perm)
    for k in range(1, n):
        if all(perm[i - 1] == i + 1 for i in range(1, k)) and perm[k - 1] == 1:
            return True
    for k in range(2, n + 1):
        if all(perm[i - 1] == i + 1 for i in range(k, n)) and perm[n - 1] == k:
            return True
    return False


def len_boundary_rational(rs: RootSystem, kind: str, i: int, j: int | None = None) -> bool:
    """Closed-form rationality of ``s_i w0`` or ``s_i s_j w0``."""
    w0 = longest_element(rs)
    n = rs.npos

    def w0_simple(k):  # index of w0(alpha_k)
        return w0.action[k - 1]

    def neg_simple(k):
        return k - 1 + n

    if kind == "siw0":
        return w0_simple(i) != neg_simple(i)
    if kind != "sisjw0":
        raise ValueError(f"unknown kind {kind!r}")
    if j is None or i == j:
        raise ValueError("need distinct i and j")
    if w0_simple(j) in (neg_simple(i), neg_simple(j)):
        return False
    if rs.cartan[i - 1][j - 1] == 0 and w0_simple(i) == neg_simple(i):
        return False
    return True


def boundary_element(rs: RootSystem, kind: str, i: int, j: int | None = None) -> WeylElement:
    word = (i,) if kind == "siw0" else (i, j)
    return from_word(rs, word) * longest_element(rs)
