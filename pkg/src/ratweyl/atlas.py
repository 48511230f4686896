"""Whole-group sweeps and the rationality graph Γ(W).

Counting runs the compiled kernels of :mod:`ratweyl._kernels` over disjoint
sub-streams of W (split by the leading symbol of the compact code for
classical types, by the first branch of the descent tree for the
exceptional ones).  Workers only read the
root-system tables, so results do not depend on the number of workers.
"""
from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .rationality import is_rational
from .roots import LieType, RootSystem, build_root_system
from .weyl import (
    WeylElement,
    compact_dim,
    compact_kind,
    coxeter_elements,
    diagram_automorphism,
    enumerate_group,
    epsilon,
    from_compact,
    leading_symbols,
    longest_element,
    simple_reflection,
)

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    def __init__(self, lie_type, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"|W({lie_type})| = {required} exceeds the element budget {budget}; "
            f"pass a budget of at least {required} to proceed")


def check_budget(rs: RootSystem, budget: int | None):
    if budget is not None and rs.order > budget:
        raise BudgetExceeded(rs.lie_type, rs.order, budget)


# ------------------------------------------------------------------ sweeps

@lru_cache(maxsize=None)
def _tables(t: LieType):
    rs = build_root_system(t)
    n = rs.npos
    nw = _kernels.n_words(n)
    down = np.array([[(mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nw)]
                     for mask in rs.leq_table], dtype=np.uint64)
    refl = np.array(rs.simple_reflections, dtype=np.int64)
    out = {"down": down, "npos": n, "top": n - 1, "refl": refl}
    if compact_kind(rs) == "table":
        return out
    m = compact_dim(rs)
    ra = np.empty(n, np.int64)
    rsa = np.empty(n, np.int64)
    rb = np.empty(n, np.int64)
    rsb = np.empty(n, np.int64)
    lookup = np.full((m, 2, m + 1, 2), -1, np.int64)
    for k, vec in enumerate(rs.euclid):
        nz = [(a, 1 if x > 0 else -1) for a, x in enumerate(vec) if x]
        if len(nz) == 1:
            (a, sa), (b, sb) = nz[0], (m, 1)
        else:
            (a, sa), (b, sb) = nz
        lookup[a, int(sa < 0), b, int(sb < 0)] = k
        if k < n:
            ra[k], rsa[k], rb[k], rsb[k] = a, sa, b, sb
    sign_mode = {"A": 0, "B": 1, "C": 1, "D": 2}[t.family]
    out.update(m=m, ra=ra, rsa=rsa, rb=rb, rsb=rsb, lookup=lookup, sign_mode=sign_mode)
    return out


def _sweep_leads(t: LieType, leads, collect: bool):
    tb = _tables(t)
    m = tb["m"]
    total = 0
    codes = []
    for lead in leads:
        cap = 1 << 14 if collect else 0
        while True:
            out = np.zeros((cap, m), np.int64)
            cnt = _kernels.scan_signed(m, lead, tb["sign_mode"], tb["ra"], tb["rsa"], tb["rb"],
                                       tb["rsb"], tb["lookup"], tb["down"], tb["npos"], tb["top"], out)
            if cnt <= cap or not collect:
                break
            cap = cnt
        total += cnt
        if collect:
            codes.extend(tuple(int(x) for x in row) for row in out[:cnt])
    return total, codes


def _sweep_tree(t: LieType, firsts, collect: bool):
    tb = _tables(t)
    n = tb["npos"]
    total = 0
    codes = []
    for first in firsts:
        cap = 256 if collect else 0
        while True:
            out = np.zeros((cap, 2 * n), np.int64)
            cnt = _kernels.scan_tree(first, tb["refl"], tb["down"], n, tb["top"], out)
            if cnt <= cap or not collect:
                break
            cap = cnt
        total += cnt
        if collect:
            codes.extend(tuple(int(x) for x in row) for row in out[:cnt])
    return total, codes


def python_sweep(rs: RootSystem, collect: bool = False):
    """Reference sweep through :func:`is_rational` (slow; for cross-checks)."""
    total, codes = 0, []
    for code in enumerate_group(rs):
        if is_rational(rs, from_compact(rs, code)):
            total += 1
            if collect:
                codes.append(code)
    return total, sorted(codes)


def _sweep(rs: RootSystem, workers: int, collect: bool):
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t = rs.lie_type
    if compact_kind(rs) == "table":
        fn, items = _sweep_tree, [-1] + list(range(rs.rank))
    else:
        fn, items = _sweep_leads, leading_symbols(rs)
    parts = [items[w::workers] for w in range(workers)]
    if workers == 1:
        results = [fn(t, parts[0], collect)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, [t] * workers, parts, [collect] * workers))
    total = sum(r[0] for r in results)
    codes = sorted(c for r in results for c in r[1])
    return total, codes


def count_rational(rs: RootSystem, workers: int = 1, budget: int | None = DEFAULT_BUDGET) -> int:
    """Exact number of rational elements of W."""
    check_budget(rs, budget)
    return _sweep(rs, workers, collect=False)[0]


def rational_codes(rs: RootSystem, workers: int = 1, budget: int | None = DEFAULT_BUDGET):
    """Sorted compact codes of all rational elements."""
    check_budget(rs, budget)
    return _sweep(rs, workers, collect=True)[1]


# ------------------------------------------------------------------ Γ(W)

@dataclass
class Atlas:
    rs: RootSystem
    vertices: list[WeylElement]
    edges: list[tuple[int, int, int]]  # (i, j, label) with i < j
    edge_side: str = "left"
    index: dict = field(init=False, repr=False)
    components: list[list[int]] = field(init=False)
    valencies: list[int] = field(init=False)

    def __post_init__(self):
        self.index = {v: k for k, v in enumerate(self.vertices)}
        nbrs = [[] for _ in self.vertices]
        for i, j, _ in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        self.valencies = [len(x) for x in nbrs]
        seen = [False] * len(self.vertices)
        comps = []
        for s in range(len(self.vertices)):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                a = queue.popleft()
                comp.append(a)
                for b in nbrs[a]:
                    if not seen[b]:
                        seen[b] = True
                        queue.append(b)
            comps.append(sorted(comp))
        self.components = comps

    @property
    def lie_type(self) -> LieType:
        return self.rs.lie_type

    @property
    def count(self) -> int:
        return len(self.vertices)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def neighbors(self, u: WeylElement) -> list[tuple[WeylElement, int]]:
        k = self.index[u]
        out = []
        for i, j, lab in self.edges:
            if i == k:
                out.append((self.vertices[j], lab))
            elif j == k:
                out.append((self.vertices[i], lab))
        return out

    def valency(self, u: WeylElement) -> int:
        return self.valencies[self.index[u]]


def _vertex_key(u: WeylElement):
    return (u.length, u.word)


def build_atlas(rs: RootSystem, budget: int | None = DEFAULT_BUDGET, workers: int = 1,
                edge_side: str = "left") -> Atlas:
    """All rational elements with edges ``u -- s_i u`` (or ``u -- u s_i``)."""
    if edge_side not in ("left", "right"):
        raise ValueError("edge_side must be 'left' or 'right'")
    codes = rational_codes(rs, workers=workers, budget=budget)
    verts = sorted((from_compact(rs, c) for c in codes), key=_vertex_key)
    index = {v: k for k, v in enumerate(verts)}
    gens = [simple_reflection(rs, i) for i in range(1, rs.rank + 1)]
    edges = []
    for k, u in enumerate(verts):
        for i, s in enumerate(gens, start=1):
            v = s * u if edge_side == "left" else u * s
            j = index.get(v)
            if j is not None and k < j:
                edges.append((k, j, i))
    edges.sort()
    return Atlas(rs, verts, edges, edge_side)


def valency(rs: RootSystem, u: WeylElement) -> int:
    """Number of simple ``s`` with ``s u`` rational."""
    return sum(is_rational(rs, simple_reflection(rs, i) * u) for i in range(1, rs.rank + 1))


def path_to_w0(atlas: Atlas | RootSystem, u: WeylElement) -> list[int]:
    """Greedy path ``a_1, ..., a_k`` in Γ(W) with ``s_{a_k} ... s_{a_1} u = w0``.

    Each step uses the smallest simple index ``a`` with ``u^{-1}(alpha_a) > 0``
    and ``u(alpha_a) < 0``; every intermediate element is re-checked.
    """
    rs = atlas if isinstance(atlas, RootSystem) else atlas.rs
    if not is_rational(rs, u):
        raise ValueError(f"{u!r} is not rational")
    w0 = longest_element(rs)
    n = rs.npos
    path = []
    while u != w0:
        inv = u.inverse()
        for i in range(rs.rank):
            if inv.action[i] < n and u.action[i] >= n:
                break
        else:
            raise AssertionError(f"no admissible simple root for rational {u!r}")
        u = simple_reflection(rs, i + 1) * u
        if not is_rational(rs, u):
            raise AssertionError(f"step s{i + 1} left the rational set at {u!r}")
        path.append(i + 1)
    return path


def coxeter_report(rs: RootSystem) -> dict:
    """Rational Coxeter elements and their valencies in Γ(W)."""
    rational = []
    total = 0
    for c in coxeter_elements(rs):
        total += 1
        if is_rational(rs, c):
            rational.append(c)
    return {
        "coxeter_count": total,
        "rational_coxeter": rational,
        "valencies": [valency(rs, c) for c in rational],
    }


def check_z2_symmetry(atlas: Atlas) -> bool:
    """True iff eps permutes the vertices and maps edges to edges (label
    ``i`` to label ``eps(i)``)."""
    rs = atlas.rs
    eps = diagram_automorphism(rs)
    image = []
    for v in atlas.vertices:
        k = atlas.index.get(epsilon(rs, v))
        if k is None:
            return False
        image.append(k)
    edges = {(i, j, lab) for i, j, lab in atlas.edges}
    for i, j, lab in atlas.edges:
        a, b = sorted((image[i], image[j]))
        if (a, b, eps[lab - 1]) not in edges:
            return False
    return True


def w0_neighbors(rs: RootSystem) -> list[int]:
    """Simple indices ``i`` with ``eps(i) != i`` (predicted neighbours
    ``s_i w0`` of ``w0``)."""
    eps = diagram_automorphism(rs)
    return [i for i in range(1, rs.rank + 1) if eps[i - 1] != i]
