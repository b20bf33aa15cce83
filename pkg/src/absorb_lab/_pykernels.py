"""Pure-Python (numpy) implementations of the table-scanning kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Tables are ``int32`` arrays, membership masks are ``uint8`` arrays.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def first_violation(s, pp, pm, mul, act, ok_a, ok_b):
    """Index of the first premise ``(pp[i], pm[i])`` that ``s`` fails to rescue.

    A premise is rescued when ``s*pp[i]`` lies in ``ok_a`` or ``s.pm[i]``
    lies in ``ok_b``. Returns -1 when every premise is rescued.
    """
    if len(pp) == 0:
        return -1
    bad = (ok_a[mul[s, pp]] == 0) & (ok_b[act[s, pm]] == 0)
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else -1


def premise_pairs(scalars, mrange, act, nmask):
    """All ``(p, m)`` with ``p`` in scalars, ``m`` in mrange and ``p.m`` in N."""
    scalars = np.asarray(scalars, dtype=np.int32)
    mrange = np.asarray(mrange, dtype=np.int32)
    if scalars.size == 0 or mrange.size == 0:
        empty = np.zeros(0, dtype=np.int32)
        return empty, empty.copy()
    inside = nmask[act[np.ix_(scalars, mrange)]] != 0
    pi, mi = np.nonzero(inside)
    return scalars[pi].astype(np.int32), mrange[mi].astype(np.int32)


def span_mask(add, act, gens, zero):
    """Mask of the smallest submodule containing the masked generators."""
    n = add.shape[0]
    mask = np.zeros(n, dtype=np.uint8)
    members = set(np.flatnonzero(gens).tolist())
    members.add(int(zero))
    frontier = list(members)
    while frontier:
        fresh = set()
        for x in frontier:
            fresh.update(act[:, x].tolist())
            fresh.update(add[x, list(members | fresh)].tolist())
        fresh -= members
        members |= fresh
        frontier = list(fresh)
    mask[list(members)] = 1
    return mask


def sum_mask(add, a_idx, b_idx):
    n = add.shape[0]
    mask = np.zeros(n, dtype=np.uint8)
    mask[add[np.ix_(np.asarray(a_idx, dtype=np.intp), np.asarray(b_idx, dtype=np.intp))].ravel()] = 1
    return mask


def radical_mask(mul, imask):
    """Elements some power of which (exponent at most n) lands in the mask."""
    n = mul.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    power = np.arange(n, dtype=np.int32)
    base = np.arange(n, dtype=np.int32)
    for _ in range(n):
        out |= imask[power]
        power = mul[power, base]
    return out


def colon_ring_mask(act, nmask, l_idx):
    """Ring elements ``r`` with ``r.l`` in N for every ``l`` in l_idx."""
    l_idx = np.asarray(l_idx, dtype=np.intp)
    if l_idx.size == 0:
        return np.ones(act.shape[0], dtype=np.uint8)
    return nmask[act[:, l_idx]].all(axis=1).astype(np.uint8)


def colon_module_mask(act, nmask, r_idx):
    """Module elements ``m`` with ``r.m`` in N for every ``r`` in r_idx."""
    r_idx = np.asarray(r_idx, dtype=np.intp)
    if r_idx.size == 0:
        return np.ones(act.shape[1], dtype=np.uint8)
    return nmask[act[r_idx, :]].all(axis=0).astype(np.uint8)


def prime_test(act, pmask, colon):
    """True when ``r.m`` in P forces ``r`` in colon or ``m`` in P."""
    rows = np.flatnonzero(colon == 0)
    if rows.size == 0:
        return True
    inside = pmask[act[rows, :]] != 0
    return bool(np.all(~inside | (pmask[None, :] != 0)))


def two_abs_violation(s, mul, act, nmask, rad_colon):
    """First ``(a, b, m)`` with ``abm`` in N and no rescue by ``s``; else None."""
    inside = nmask[act[mul]] != 0  # [a, b, m]
    sa_m = nmask[act[mul[s, :]]] != 0  # [a, m]: s.a.m in N
    sab = rad_colon[mul[s, mul]] != 0  # [a, b]
    ok = sa_m[:, None, :] | sa_m[None, :, :] | sab[:, :, None]
    bad = inside & ~ok
    if not bad.any():
        return None
    a, b, m = np.argwhere(bad)[0]
    return int(a), int(b), int(m)


def saturation_mask(mul, smask):
    """Elements ``r`` with ``u(rx - s) = 0`` for some ``x`` and ``s, u`` in S."""
    n = mul.shape[0]
    s_idx = np.flatnonzero(smask)
    out = np.zeros(n, dtype=np.uint8)
    for u in s_idx:
        us = np.zeros(n, dtype=bool)
        us[mul[u, s_idx]] = True
        # u(rx - s) = 0  <=>  u*rx == u*s
        hit = us[mul[u, mul]]  # [r, x]
        out |= hit.any(axis=1).astype(np.uint8)
    return out
