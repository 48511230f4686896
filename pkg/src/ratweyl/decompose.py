"""The decomposition ``g = N(g) B(g) u N(g)^{-1}`` in GL_n over the rationals.

``w0_solution`` gives the base decomposition for the longest element.
``solve`` runs the parabolic-approximation iteration

    P_0 = B~(g) v u^{-1},    P_k = [P_{k-1}]_+ u [P_{k-1}]_- u^{-1}

from any base solution ``v`` until some ``P_m`` is upper triangular, then
sets ``B = P_m`` and ``N = N~(g) N~(P_m u)^{-1}``.  Every returned solution
is checked by exact multiplication.

The witness functions build ``n != 1`` in ``N_-`` with
``n^{-1} b u n u^{-1}`` upper triangular, which certifies that ``u`` has no
rational decomposition maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .matgroup import (
    NotGeneric,
    QMatrix,
    chevalley_y,
    gauss_decompose,
    is_identity,
    is_unit_lower,
    is_upper_borel,
    random_generic,
    representative,
)
from .roots import build_root_system
from .weyl import from_word, longest_element

DEFAULT_MAX_ITER = 64


class NotStabilized(RuntimeError):
    """The iteration hit ``max_iter`` without reaching an upper triangular term."""

    def __init__(self, max_iter: int, trace=None):
        self.max_iter = max_iter
        self.trace = trace
        super().__init__(f"NotStabilized({max_iter})")


class DegenerateWitness(ArithmeticError):
    """The closed-form witness is undefined or trivial for this ``b``."""


class PreconditionError(ValueError):
    """The Weyl element or root data do not satisfy a witness hypothesis."""


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Stabilized" | "NotStabilized" | "NotGeneric"
    value: int

    def __str__(self):
        return f"{self.kind}({self.value})"


@dataclass
class Solution:
    n_part: QMatrix
    b_part: QMatrix
    representative: QMatrix
    iterations: int = 0

    def product(self) -> QMatrix:
        n = self.n_part
        return n @ self.b_part @ self.representative @ n.inverse()


@dataclass
class IterationTrace:
    p_terms: list[QMatrix] = field(default_factory=list)
    n_terms: list[QMatrix] = field(default_factory=list)
    verdict: Verdict | None = None
    solution: Solution | None = None
    failed_minor: int | None = None  # set with a NotGeneric verdict


def _verify(g: QMatrix, sol: Solution) -> Solution:
    if not is_unit_lower(sol.n_part):
        raise AssertionError("N is not unit lower triangular")
    if not is_upper_borel(sol.b_part):
        raise AssertionError("B is not upper triangular")
    if sol.product() != g:
        raise AssertionError("N B u N^{-1} differs from g")
    return sol


def type_a_rank(n: int):
    if n < 2:
        raise ValueError("GL_n realizations need n >= 2")
    return build_root_system("A", n - 1)


def w0_word(n: int) -> tuple[int, ...]:
    return longest_element(type_a_rank(n)).word


def w0_representative(n: int) -> QMatrix:
    return representative(n, w0_word(n))


def sample_generic(n: int, rng, lo: int = -9, hi: int = 9) -> QMatrix:
    """Random integer matrix on which the base solution is defined: all
    leading minors of ``g`` and of ``g w0^{-1}`` are nonzero."""
    return random_generic(n, rng, extra=[w0_representative(n).inverse()], lo=lo, hi=hi)


# ------------------------------------------------------------------ base solution

def w0_solution(g: QMatrix, w0_rep: QMatrix | None = None) -> Solution:
    """``N = [g w0^{-1}]_-`` and ``B = [g w0^{-1}]_+ w0 [g w0^{-1}]_- w0^{-1}``."""
    if w0_rep is None:
        w0_rep = w0_representative(g.n)
    w0_inv = w0_rep.inverse()
    pair = gauss_decompose(g @ w0_inv)
    b = pair.upper @ w0_rep @ pair.lower @ w0_inv
    return _verify(g, Solution(pair.lower, b, w0_rep, 0))


BaseMap = Callable[[QMatrix], Solution]


def _base_map(n: int, v_word, base: BaseMap | None, max_iter: int) -> BaseMap:
    if base is not None:
        return base
    w0 = w0_word(n)
    if v_word is None or tuple(v_word) == w0:
        rep = w0_representative(n)
        return lambda h: w0_solution(h, rep)
    v = tuple(v_word)
    if from_word(type_a_rank(n), v) == from_word(type_a_rank(n), w0):
        rep = representative(n, v)
        return lambda h: w0_solution(h, rep)
    return solution_map(v, n, max_iter=max_iter)


def solution_map(u_word: Sequence[int], n: int, v_word=None, base: BaseMap | None = None,
                 max_iter: int = DEFAULT_MAX_ITER, u_rep: QMatrix | None = None) -> BaseMap:
    """``solve`` with fixed ``u`` as a reusable map ``g -> Solution``; such a
    map can serve as the base of another solve."""
    return lambda g: solve(g, u_word, v_word=v_word, base=base, max_iter=max_iter, u_rep=u_rep)


def iterate(g: QMatrix, u_word: Sequence[int], v_word=None, base: BaseMap | None = None,
            max_iter: int = DEFAULT_MAX_ITER, u_rep: QMatrix | None = None) -> IterationTrace:
    """Run the iteration and return the full trace (never raises for
    stalling or genericity failures; the verdict records them)."""
    n = g.n
    base_map = _base_map(n, v_word, base, max_iter)
    if u_rep is None:
        u_rep = representative(n, tuple(u_word))
    u_inv = u_rep.inverse()
    trace = IterationTrace()
    try:
        base_sol = base_map(g)
    except NotGeneric as e:
        trace.verdict, trace.failed_minor = Verdict("NotGeneric", 0), e.index
        return trace
    p = base_sol.b_part @ base_sol.representative @ u_inv
    trace.p_terms.append(p)
    for k in range(max_iter + 1):
        if is_upper_borel(p):
            try:
                inner = base_map(p @ u_rep)
            except NotGeneric as e:
                trace.verdict, trace.failed_minor = Verdict("NotGeneric", k), e.index
                return trace
            n_part = base_sol.n_part @ inner.n_part.inverse()
            trace.n_terms.append(n_part)
            sol = _verify(g, Solution(n_part, p, u_rep, k))
            trace.verdict = Verdict("Stabilized", k)
            trace.solution = sol
            return trace
        if k == max_iter:
            break
        try:
            pair = gauss_decompose(p)
        except NotGeneric as e:
            trace.verdict, trace.failed_minor = Verdict("NotGeneric", k), e.index
            return trace
        p = pair.upper @ u_rep @ pair.lower @ u_inv
        trace.p_terms.append(p)
    trace.verdict = Verdict("NotStabilized", max_iter)
    return trace


def solve(g: QMatrix, u_word: Sequence[int], v_word=None, base: BaseMap | None = None,
          max_iter: int = DEFAULT_MAX_ITER, u_rep: QMatrix | None = None) -> Solution:
    """Solution for ``u``; raises :class:`NotStabilized` or
    :class:`~ratweyl.matgroup.NotGeneric` (both carrying the trace)."""
    trace = iterate(g, u_word, v_word=v_word, base=base, max_iter=max_iter, u_rep=u_rep)
    v = trace.verdict
    if v.kind == "Stabilized":
        return trace.solution
    if v.kind == "NotStabilized":
        raise NotStabilized(v.value, trace)
    raise NotGeneric(trace.failed_minor, step=v.value, trace=trace)


def n_from_b(g: QMatrix, b_part: QMatrix, u_rep: QMatrix, w0_rep: QMatrix | None = None) -> QMatrix:
    """``N(g) = [g w0^{-1}]_- ([B(g) u w0^{-1}]_-)^{-1}``."""
    if w0_rep is None:
        w0_rep = w0_representative(g.n)
    w0_inv = w0_rep.inverse()
    first = gauss_decompose(g @ w0_inv).lower
    second = gauss_decompose(b_part @ u_rep @ w0_inv).lower
    return first @ second.inverse()


def conjugation_invariance_check(g: QMatrix, n: QMatrix, u_word: Sequence[int],
                                 max_iter: int = DEFAULT_MAX_ITER) -> bool:
    """``B(n g n^{-1}) = B(g)`` and ``N(n g n^{-1}) = n N(g)``."""
    if not is_unit_lower(n):
        raise ValueError("n must be unit lower triangular")
    s1 = solve(g, u_word, max_iter=max_iter)
    s2 = solve(n @ g @ n.inverse(), u_word, max_iter=max_iter)
    return s1.b_part == s2.b_part and s2.n_part == n @ s1.n_part


# ------------------------------------------------------------------ fiber witnesses

def check_fiber_collision(b: QMatrix, u_rep: QMatrix, n: QMatrix) -> bool:
    """True iff ``n != 1`` and ``n^{-1} b u n u^{-1}`` is upper triangular."""
    if is_identity(n):
        return False
    return is_upper_borel(n.inverse() @ b @ u_rep @ n @ u_rep.inverse())


def _elem_conj(u_rep: QMatrix, i: int) -> QMatrix:
    """``u E_{i+1,i} u^{-1}`` (1-based simple index ``i``)."""
    n = u_rep.n
    e = [[0] * n for _ in range(n)]
    e[i][i - 1] = 1
    return u_rep @ QMatrix(e) @ u_rep.inverse()


def _simple_coeffs(b: QMatrix, i: int):
    """``(t, a^alpha)`` with ``b = a x_i(t) n'``: ``t = b_{i,i+1}/b_{ii}`` and
    ``a^{alpha_i} = b_{ii}/b_{i+1,i+1}``."""
    bi, bj = b[i - 1, i - 1], b[i, i]
    return b[i - 1, i] / bi, bi / bj


def fixer_witness(b: QMatrix, u_word: Sequence[int], alpha_index: int,
                  u_rep: QMatrix | None = None) -> QMatrix:
    """``n = y_alpha(c)`` with ``c = (r a^{-alpha} - 1) / (r t)`` for ``u``
    fixing the simple root ``alpha``."""
    n = b.n
    rs = type_a_rank(n)
    if not is_upper_borel(b):
        raise ValueError("b must be upper triangular with nonzero diagonal")
    u = from_word(rs, u_word)
    i = alpha_index
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple index {i} out of range")
    if u.action[i - 1] != i - 1:
        raise PreconditionError(f"u does not fix alpha_{i}")
    if u_rep is None:
        u_rep = representative(n, tuple(u_word))
    conj = _elem_conj(u_rep, i)
    r = conj[i, i - 1]
    t, a_alpha = _simple_coeffs(b, i)
    if t == 0:
        raise DegenerateWitness("t = 0: b has no alpha component")
    c = (r / a_alpha - 1) / (r * t)
    if c == 0:
        raise DegenerateWitness("c = 0: witness is the identity")
    w = chevalley_y(n, i, c)
    if not check_fiber_collision(b, u_rep, w):
        raise AssertionError("fixer witness failed exact verification")
    return w


def ortho_cycle_witness(b: QMatrix, u_word: Sequence[int], cycle: Sequence[int],
                        u_rep: QMatrix | None = None) -> QMatrix:
    """Witness for a cycle of pairwise orthogonal simple roots.

    ``cycle = [i_0, ..., i_{m-1}]`` must satisfy ``u(alpha_{i_j}) =
    alpha_{i_{j-1}}`` (indices mod m).  Returns ``n = prod_j y_{i_j}(c_j)``.
    """
    n = b.n
    rs = type_a_rank(n)
    cyc = list(cycle)
    m = len(cyc)
    if m < 1 or len(set(cyc)) != m:
        raise PreconditionError("cycle must list distinct simple indices")
    for i in cyc:
        if not 1 <= i <= n - 1:
            raise ValueError(f"simple index {i} out of range")
    for x in cyc:
        for y in cyc:
            if x != y and rs.cartan[x - 1][y - 1] != 0:
                raise PreconditionError(f"alpha_{x} and alpha_{y} are not orthogonal")
    u = from_word(rs, u_word)
    for j in range(m):
        if u.action[cyc[j] - 1] != cyc[j - 1] - 1:
            raise PreconditionError(
                f"u(alpha_{cyc[j]}) is not alpha_{cyc[j - 1]}; not a cycle of the graph")
    if not is_upper_borel(b):
        raise ValueError("b must be upper triangular with nonzero diagonal")
    if u_rep is None:
        u_rep = representative(n, tuple(u_word))

    ts, avals, gs = [], [], []
    for j, i in enumerate(cyc):
        t, a_alpha = _simple_coeffs(b, i)
        ts.append(t)
        avals.append(a_alpha)
        prev = cyc[j - 1]
        gs.append(_elem_conj(u_rep, i)[prev, prev - 1])

    def prod(xs):
        out = Fraction(1)
        for x in xs:
            out *= x
        return out

    num = prod(gs) - prod(avals)
    if num == 0:
        raise DegenerateWitness("prod g = prod a: all c_j vanish")
    cs = []
    for j in range(m):
        d = Fraction(0)
        for s in range(m):
            idx = [(j + l) % m for l in range(s + 1)]
            term = ts[(j + s) % m] * prod(avals[(j + l) % m] for l in range(1, s + 1))
            term *= prod(gs[k] for k in range(m) if k not in idx)
            d += term
        if d == 0:
            raise DegenerateWitness(f"D_{j} vanishes")
        cs.append(num / (avals[j] * gs[j] * d))
    w = QMatrix.identity(n)
    for i, c in zip(cyc, cs):
        w = w @ chevalley_y(n, i, c)
    if not check_fiber_collision(b, u_rep, w):
        raise AssertionError("orthogonal-cycle witness failed exact verification")
    return w
