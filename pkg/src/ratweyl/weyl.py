"""Weyl group elements as signed permutations of the root indices.

A :class:`WeylElement` stores its action on *all* roots as a permutation of
``range(2 * npos)`` (see :mod:`ratweyl.roots` for the indexing), so
composition is tuple indexing and negation-compatibility is automatic.

Classical types also have compact models used for enumeration:

* type A_r: one-line permutations of ``1..r+1``, ``u(e_a) = e_{code[a-1]}``;
* types B_r, C_r, D_r: signed permutations of ``1..r`` with
  ``u(e_a) = sign(code[a-1]) * e_{|code[a-1]|}`` (even number of minus signs
  in type D).

Exceptional types use the root action tuple itself as the compact code.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .roots import Root, RootSystem

CompactCode = tuple[int, ...]


class WeylElement:
    __slots__ = ("rs", "action", "_word")

    def __init__(self, rs: RootSystem, action: Sequence[int], word=None):
        self.rs = rs
        self.action = tuple(action)
        self._word = None if word is None else tuple(word)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.rs is other.rs and self.action == other.action

    def __hash__(self):
        return hash(self.action)

    def __repr__(self):
        word = " ".join(f"s{i}" for i in self.word) or "e"
        return f"WeylElement({self.rs.lie_type}: {word})"

    def __mul__(self, other: WeylElement) -> WeylElement:
        if self.rs is not other.rs:
            raise ValueError("elements live in different root systems")
        a = self.action
        return WeylElement(self.rs, [a[k] for k in other.action])

    def __call__(self, root: Root) -> Root:
        return self.rs.roots[self.action[self.rs.root_index(root)]]

    def __getstate__(self):
        return (self.rs.lie_type, self.action)

    def __setstate__(self, state):
        from .roots import build_root_system

        t, action = state
        self.rs = build_root_system(t)
        self.action = action
        self._word = None

    def inverse(self) -> WeylElement:
        inv = [0] * len(self.action)
        for k, v in enumerate(self.action):
            inv[v] = k
        return WeylElement(self.rs, inv)

    def image(self, k: int) -> int:
        """Index of ``u(root_k)``."""
        return self.action[k]

    @property
    def length(self) -> int:
        n = self.rs.npos
        return sum(1 for k in self.action[:n] if k >= n)

    @property
    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self.action))

    @property
    def word(self) -> tuple[int, ...]:
        """A reduced word (1-based simple indices), lexicographically first
        among those found by stripping right descents."""
        if self._word is None:
            rs = self.rs
            n = rs.npos
            act = list(self.action)
            out = []
            while True:
                for i in range(rs.rank):
                    if act[i] >= n:
                        break
                else:
                    break
                s = rs.simple_reflections[i]
                act = [act[k] for k in s]
                out.append(i + 1)
            self._word = tuple(reversed(out))
        return self._word

    def order(self) -> int:
        e = identity(self.rs)
        p, k = self, 1
        while p != e:
            p, k = p * self, k + 1
        return k


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, range(2 * rs.npos), word=())


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    _check_index(rs, i)
    return WeylElement(rs, rs.simple_reflections[i - 1], word=(i,))


def _check_index(rs, i):
    if not isinstance(i, int) or not 1 <= i <= rs.rank:
        raise ValueError(f"simple index {i!r} out of range 1..{rs.rank}")


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Product ``s_{w[0]} s_{w[1]} ...``; the rightmost factor acts first."""
    word = tuple(word)
    act = list(range(2 * rs.npos))
    for i in reversed(word):
        _check_index(rs, i)
        s = rs.simple_reflections[i - 1]
        act = [s[k] for k in act]
    u = WeylElement(rs, act)
    if u.length == len(word):
        u._word = word
    return u


def mul(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v


def inverse(u: WeylElement) -> WeylElement:
    return u.inverse()


def act(u: WeylElement, root: Root) -> Root:
    return u(root)


def length(u: WeylElement) -> int:
    return u.length


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem) -> WeylElement:
    """The element sending every positive root to a negative one.

    Built by right-multiplying by simple reflections while some simple root
    stays positive; each step raises the length by one.
    """
    n = rs.npos
    act = list(range(2 * n))
    while True:
        for i in range(rs.rank):
            if act[i] < n:
                break
        else:
            return WeylElement(rs, act)
        s = rs.simple_reflections[i]
        act = [act[k] for k in s]


@lru_cache(maxsize=None)
def diagram_automorphism(rs: RootSystem) -> tuple[int, ...]:
    """``eps`` as a tuple: ``w0(alpha_i) = -alpha_{eps[i-1]}`` (1-based)."""
    w0 = longest_element(rs)
    out = []
    for i in range(rs.rank):
        k = rs.neg(w0.action[i])
        if k >= rs.rank:
            raise AssertionError("w0 does not map simple roots to negative simple roots")
        out.append(k + 1)
    return tuple(out)


@lru_cache(maxsize=None)
def _epsilon_on_roots(rs: RootSystem) -> tuple[int, ...]:
    eps = diagram_automorphism(rs)
    perm = []
    for c in rs.roots:
        d = [0] * rs.rank
        for i, x in enumerate(c):
            d[eps[i] - 1] = x
        perm.append(rs.index[tuple(d)])
    return tuple(perm)


def epsilon(rs: RootSystem, u: WeylElement) -> WeylElement:
    """Apply the involution ``s_i -> s_{eps(i)}`` induced by ``w0``."""
    e = _epsilon_on_roots(rs)
    return WeylElement(rs, [e[u.action[e[k]]] for k in range(len(e))])


def coxeter_elements(rs: RootSystem) -> Iterator[WeylElement]:
    """Distinct products of all simple reflections, each used once."""
    seen = set()
    for order in permutations(range(1, rs.rank + 1)):
        c = from_word(rs, order)
        if c.action not in seen:
            seen.add(c.action)
            yield c


def special_d_code(r: int) -> CompactCode:
    """Signed-permutation code of the special element of D_r (r odd):
    ``e_1 -> -e_r``, ``e_i -> -e_i`` for ``1 < i < r``, ``e_r -> e_1``."""
    return (-r,) + tuple(-i for i in range(2, r)) + (1,)


def special_d_word(r: int) -> tuple[int, ...]:
    """Reduced word of the special D_r element, assembled block by block."""
    word = [r]
    for k in range(1, r - 1):
        if k >= 2:
            word += [r] + list(range(r - 2, r - k, -1))
        word += list(range(r - 1 - k, r))
    return tuple(word)


def special_d_element(rs: RootSystem) -> WeylElement:
    t = rs.lie_type
    if t.family != "D":
        raise ValueError("the special element is defined in type D only")
    if t.rank % 2 == 0:
        raise ValueError("the special element lies in W(D_r) only for odd r")
    return from_compact(rs, special_d_code(t.rank))


# ---------------------------------------------------------------- compact models

def compact_kind(rs: RootSystem) -> str:
    fam = rs.lie_type.family
    if fam == "A":
        return "perm"
    if fam in "BCD":
        return "signed"
    return "table"


def compact_dim(rs: RootSystem) -> int:
    fam = rs.lie_type.family
    return rs.rank + 1 if fam == "A" else rs.rank


def compact_identity(rs: RootSystem) -> CompactCode:
    if compact_kind(rs) == "table":
        return tuple(range(2 * rs.npos))
    return tuple(range(1, compact_dim(rs) + 1))


def compact_left_simple(rs: RootSystem, i: int, code: CompactCode) -> CompactCode:
    """Compact code of ``s_i * u`` given the code of ``u``."""
    kind = compact_kind(rs)
    if kind == "table":
        s = rs.simple_reflections[i - 1]
        return tuple(s[k] for k in code)
    fam, r = rs.lie_type.family, rs.rank
    if fam == "A" or i < r:
        swap = {i: i + 1, i + 1: i}
        return tuple((1 if v > 0 else -1) * swap.get(abs(v), abs(v)) for v in code)
    if fam in "BC":
        return tuple(-v if abs(v) == r else v for v in code)
    m = {r - 1: -r, r: -(r - 1), -(r - 1): r, -r: r - 1}
    return tuple(m.get(v, v) for v in code)


def _validate_code(rs, code):
    kind = compact_kind(rs)
    m = compact_dim(rs)
    if len(code) != m or sorted(abs(v) for v in code) != list(range(1, m + 1)):
        raise ValueError(f"{code!r} is not a compact code for {rs.lie_type}")
    if kind == "perm" and any(v < 0 for v in code):
        raise ValueError("type A codes are unsigned permutations")
    if rs.lie_type.family == "D" and sum(v < 0 for v in code) % 2:
        raise ValueError("type D codes need an even number of sign changes")


def from_compact(rs: RootSystem, code: CompactCode) -> WeylElement:
    code = tuple(code)
    if compact_kind(rs) == "table":
        if sorted(code) != list(range(2 * rs.npos)):
            raise ValueError("root action table is not a permutation")
        return WeylElement(rs, code)
    _validate_code(rs, code)
    act = []
    for vec in rs.euclid:
        img = [0] * len(vec)
        for a, x in enumerate(vec):
            if x:
                v = code[a]
                img[abs(v) - 1] = x if v > 0 else -x
        act.append(rs.euclid_index[tuple(img)])
    return WeylElement(rs, act)


def to_compact(u: WeylElement) -> CompactCode:
    rs = u.rs
    if compact_kind(rs) == "table":
        return u.action
    code = compact_identity(rs)
    for i in reversed(u.word):
        code = compact_left_simple(rs, i, code)
    return code


def leading_symbols(rs: RootSystem) -> list:
    """Ordered leading symbols used to split enumeration into sub-streams."""
    kind = compact_kind(rs)
    m = compact_dim(rs)
    if kind == "perm":
        return list(range(1, m + 1))
    if kind == "signed":
        return [s * v for v in range(1, m + 1) for s in (1, -1)]
    return []


def _stream_lead(rs: RootSystem, lead: int) -> Iterator[CompactCode]:
    m = compact_dim(rs)
    rest = [v for v in range(1, m + 1) if v != abs(lead)]
    if compact_kind(rs) == "perm":
        for p in permutations(rest):
            yield (lead,) + p
        return
    even = rs.lie_type.family == "D"
    lead_neg = lead < 0
    for p in permutations(rest):
        for signs in product((1, -1), repeat=m - 1):
            if even and (signs.count(-1) + lead_neg) % 2:
                continue
            yield (lead,) + tuple(s * v for s, v in zip(signs, p))


def _bfs_tables(rs: RootSystem) -> Iterator[CompactCode]:
    start = tuple(range(2 * rs.npos))
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        yield a
        for s in rs.simple_reflections:
            b = tuple(a[k] for k in s)
            if b not in seen:
                seen.add(b)
                queue.append(b)


def enumerate_group(rs: RootSystem, worker: int = 0, workers: int = 1) -> Iterator[CompactCode]:
    """Stream compact codes of W, each exactly once.

    With ``workers > 1`` only the sub-stream ``worker`` is produced; the
    sub-streams are disjoint and together cover W.
    """
    if workers < 1 or not 0 <= worker < workers:
        raise ValueError("need 0 <= worker < workers")
    if compact_kind(rs) == "table":
        for k, code in enumerate(_bfs_tables(rs)):
            if k % workers == worker:
                yield code
        return
    for k, lead in enumerate(leading_symbols(rs)):
        if k % workers == worker:
            yield from _stream_lead(rs, lead)

