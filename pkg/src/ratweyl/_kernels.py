"""Compiled inner loops for whole-group rationality sweeps.

Positive-root sets are arrays of ``uint64`` words (``nw = ceil(npos / 64)``),
so every type fits, E8 included.  ``down[p]`` holds the down-set of positive
root ``p`` in that format.
"""
from __future__ import annotations

import numpy as np
from numba import njit

ONE = np.uint64(1)
ZERO = np.uint64(0)


def n_words(npos: int) -> int:
    return (npos + 63) // 64


@njit(cache=True, inline="always")
def _set(mask, q):
    mask[q >> 6] |= ONE << np.uint64(q & 63)


@njit(cache=True, inline="always")
def _get(mask, q):
    return (mask[q >> 6] >> np.uint64(q & 63)) & ONE


@njit(cache=True)
def rational_from_images(img, down, npos, top, nu, adj, nxt):
    """``img[p]`` is the full root index of ``u(alpha_p)``; ``top`` is the
    index of the highest root.  ``nu``, ``adj``, ``nxt`` are scratch words."""
    nw = nu.shape[0]
    for w in range(nw):
        nu[w] = ZERO
    empty = True
    for p in range(npos):
        q = img[p]
        if q < npos:
            _set(nu, q)
            empty = False
    # the highest root in nu^0 is a loop of the graph
    if _get(nu, top):
        return False
    while not empty:
        for w in range(nw):
            adj[w] = ZERO
            nxt[w] = ZERO
        for b in range(npos):
            if _get(nu, b):
                for w in range(nw):
                    adj[w] |= down[b, w]
        empty = True
        for p in range(npos):
            if _get(adj, p):
                q = img[p]
                if q < npos:
                    _set(nxt, q)
                    empty = False
        same = True
        for w in range(nw):
            if nxt[w] != nu[w]:
                same = False
            nu[w] = nxt[w]
        if same:
            return False
    return True


@njit(cache=True)
def scan_tree(first, refl, down, npos, top, out):
    """Walk the canonical descent tree of W and test every element.

    Every ``u != e`` has the parent ``s_i u`` with ``i`` its smallest left
    descent.  ``first = -1`` visits only the identity; ``first = j`` visits the
    subtree below ``s_{j+1}``.  Full root actions of rational elements go to
    rows of ``out``; the count is returned.
    """
    rank = refl.shape[0]
    n2 = 2 * npos
    nw = down.shape[1]
    nu = np.empty(nw, np.uint64)
    adj = np.empty(nw, np.uint64)
    nxt = np.empty(nw, np.uint64)
    depth_max = npos + 2
    act = np.empty((depth_max, n2), np.int64)
    inv = np.empty((depth_max, n2), np.int64)
    nextj = np.zeros(depth_max, np.int64)
    cnt = 0
    for x in range(n2):
        act[0, x] = x
        inv[0, x] = x
    if first < 0:
        if rational_from_images(act[0], down, npos, top, nu, adj, nxt):
            if cnt < out.shape[0]:
                out[cnt, :] = act[0]
            cnt += 1
        return cnt
    # depth 1: s_first
    for x in range(n2):
        act[1, x] = refl[first, x]
        inv[1, x] = refl[first, x]
    d = 1
    nextj[1] = -1  # -1: the node itself still has to be tested
    while d >= 1:
        if nextj[d] < 0:
            if rational_from_images(act[d], down, npos, top, nu, adj, nxt):
                if cnt < out.shape[0]:
                    out[cnt, :] = act[d]
                cnt += 1
            nextj[d] = 0
        j = nextj[d]
        if j >= rank:
            d -= 1
            continue
        nextj[d] = j + 1
        # child s_j u must be longer: u^{-1}(alpha_j) > 0
        if inv[d, j] >= npos:
            continue
        # and j must be its smallest left descent: (s_j u)^{-1}(alpha_i) > 0 for i < j
        ok = True
        for i in range(j):
            if inv[d, refl[j, i]] >= npos:
                ok = False
                break
        if not ok:
            continue
        for x in range(n2):
            act[d + 1, x] = refl[j, act[d, x]]
            inv[d + 1, x] = inv[d, refl[j, x]]
        d += 1
        nextj[d] = -1
    return cnt


@njit(cache=True)
def _next_perm(a, lo, hi):
    i = hi - 2
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = hi - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    lo2, hi2 = i + 1, hi - 1
    while lo2 < hi2:
        a[lo2], a[hi2] = a[hi2], a[lo2]
        lo2 += 1
        hi2 -= 1
    return True


@njit(cache=True)
def scan_signed(m, lead, sign_mode, ra, rsa, rb, rsb, lookup, down, npos, top, out):
    """Sweep all (signed) permutations with ``code[0] == lead``.

    ``sign_mode``: 0 no signs (type A), 1 all sign patterns (B, C),
    2 even number of minus signs (D).  Positive root ``p`` is
    ``rsa[p] e_{ra[p]} + rsb[p] e_{rb[p]}`` with ``rb[p] == m`` for roots
    supported on one coordinate; ``lookup[a, sa, b, sb]`` (``a < b``, sign
    bits 1 for minus) gives the full root index.  Codes of rational elements
    are written into rows of ``out``; the total count is returned.
    """
    nw = down.shape[1]
    nu = np.empty(nw, np.uint64)
    adj = np.empty(nw, np.uint64)
    nxt = np.empty(nw, np.uint64)
    perm = np.empty(m, np.int64)
    sign = np.ones(m, np.int64)
    img = np.empty(npos, np.int64)
    a0 = abs(lead) - 1
    perm[0] = a0
    sign[0] = 1 if lead > 0 else -1
    k = 1
    for v in range(m):
        if v != a0:
            perm[k] = v
            k += 1
    nsign = 1
    if sign_mode != 0:
        nsign = 1 << (m - 1)
    cnt = 0
    more = True
    while more:
        for smask in range(nsign):
            if sign_mode != 0:
                neg = 0 if lead > 0 else 1
                for t in range(1, m):
                    if (smask >> (t - 1)) & 1:
                        sign[t] = -1
                        neg += 1
                    else:
                        sign[t] = 1
                if sign_mode == 2 and neg % 2 == 1:
                    continue
            for p in range(npos):
                a = ra[p]
                b = rb[p]
                ca = perm[a]
                sa = rsa[p] * sign[a]
                if b == m:
                    img[p] = lookup[ca, 1 if sa < 0 else 0, m, 0]
                else:
                    cb = perm[b]
                    sb = rsb[p] * sign[b]
                    if ca < cb:
                        img[p] = lookup[ca, 1 if sa < 0 else 0, cb, 1 if sb < 0 else 0]
                    else:
                        img[p] = lookup[cb, 1 if sb < 0 else 0, ca, 1 if sa < 0 else 0]
            if rational_from_images(img, down, npos, top, nu, adj, nxt):
                if cnt < out.shape[0]:
                    for t in range(m):
                        out[cnt, t] = sign[t] * (perm[t] + 1)
                cnt += 1
        more = _next_perm(perm, 1, m)
    return cnt
