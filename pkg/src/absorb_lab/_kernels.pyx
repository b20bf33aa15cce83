# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table-scanning kernels; same API as ``_pykernels``."""

import numpy as np

BACKEND = "cython"


def first_violation(int s, const int[::1] pp, const int[::1] pm,
                    const int[:, ::1] mul, const int[:, ::1] act,
                    const unsigned char[::1] ok_a, const unsigned char[::1] ok_b):
    cdef Py_ssize_t i, n = pp.shape[0]
    for i in range(n):
        if not ok_a[mul[s, pp[i]]] and not ok_b[act[s, pm[i]]]:
            return i
    return -1


def premise_pairs(scalars, mrange, const int[:, ::1] act, const unsigned char[::1] nmask):
    cdef int[::1] sc = np.ascontiguousarray(scalars, dtype=np.int32)
    cdef int[::1] mr = np.ascontiguousarray(mrange, dtype=np.int32)
    cdef Py_ssize_t i, j, k = 0
    cdef Py_ssize_t ns = sc.shape[0], nm = mr.shape[0]
    out_p = np.empty(ns * nm, dtype=np.int32)
    out_m = np.empty(ns * nm, dtype=np.int32)
    cdef int[::1] op = out_p
    cdef int[::1] om = out_m
    for i in range(ns):
        for j in range(nm):
            if nmask[act[sc[i], mr[j]]]:
                op[k] = sc[i]
                om[k] = mr[j]
                k += 1
    return out_p[:k].copy(), out_m[:k].copy()


def span_mask(const int[:, ::1] add, const int[:, ::1] act,
              const unsigned char[::1] gens, int zero):
    cdef Py_ssize_t n = add.shape[0], nr = act.shape[0]
    mask = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] mk = mask
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef int[::1] members = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 0, count = 0, i, r
    cdef int x, y, z
    mk[zero] = 1
    members[count] = zero
    count += 1
    queue[tail] = zero
    tail += 1
    for i in range(n):
        if gens[i] and not mk[i]:
            mk[i] = 1
            members[count] = <int>i
            count += 1
            queue[tail] = <int>i
            tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for r in range(nr):
            z = act[r, x]
            if not mk[z]:
                mk[z] = 1
                members[count] = z
                count += 1
                queue[tail] = z
                tail += 1
        i = 0
        while i < count:
            y = members[i]
            z = add[x, y]
            if not mk[z]:
                mk[z] = 1
                members[count] = z
                count += 1
                queue[tail] = z
                tail += 1
            i += 1
    return mask


def sum_mask(const int[:, ::1] add, a_idx, b_idx):
    cdef int[::1] a = np.ascontiguousarray(a_idx, dtype=np.int32)
    cdef int[::1] b = np.ascontiguousarray(b_idx, dtype=np.int32)
    mask = np.zeros(add.shape[0], dtype=np.uint8)
    cdef unsigned char[::1] mk = mask
    cdef Py_ssize_t i, j
    for i in range(a.shape[0]):
        for j in range(b.shape[0]):
            mk[add[a[i], b[j]]] = 1
    return mask


def radical_mask(const int[:, ::1] mul, const unsigned char[::1] imask):
    cdef Py_ssize_t n = mul.shape[0], a, k
    cdef int p
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    for a in range(n):
        p = <int>a
        for k in range(n):
            if imask[p]:
                o[a] = 1
                break
            p = mul[p, a]
    return out


def colon_ring_mask(const int[:, ::1] act, const unsigned char[::1] nmask, l_idx):
    cdef int[::1] l = np.ascontiguousarray(l_idx, dtype=np.int32)
    cdef Py_ssize_t nr = act.shape[0], r, j
    out = np.ones(nr, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    for r in range(nr):
        for j in range(l.shape[0]):
            if not nmask[act[r, l[j]]]:
                o[r] = 0
                break
    return out


def colon_module_mask(const int[:, ::1] act, const unsigned char[::1] nmask, r_idx):
    cdef int[::1] rr = np.ascontiguousarray(r_idx, dtype=np.int32)
    cdef Py_ssize_t nm = act.shape[1], m, j
    out = np.ones(nm, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    for m in range(nm):
        for j in range(rr.shape[0]):
            if not nmask[act[rr[j], m]]:
                o[m] = 0
                break
    return out


def prime_test(const int[:, ::1] act, const unsigned char[::1] pmask,
               const unsigned char[::1] colon):
    cdef Py_ssize_t nr = act.shape[0], nm = act.shape[1], r, m
    for r in range(nr):
        if colon[r]:
            continue
        for m in range(nm):
            if pmask[act[r, m]] and not pmask[m]:
                return False
    return True


def two_abs_violation(int s, const int[:, ::1] mul, const int[:, ::1] act,
                      const unsigned char[::1] nmask, const unsigned char[::1] rad_colon):
    cdef Py_ssize_t nr = mul.shape[0], nm = act.shape[1], a, b, m
    cdef int ab
    for a in range(nr):
        for b in range(nr):
            ab = mul[a, b]
            if rad_colon[mul[s, ab]]:
                continue
            for m in range(nm):
                if not nmask[act[ab, m]]:
                    continue
                if nmask[act[mul[s, a], m]] or nmask[act[mul[s, b], m]]:
                    continue
                return int(a), int(b), int(m)
    return None


def saturation_mask(const int[:, ::1] mul, const unsigned char[::1] smask):
    cdef Py_ssize_t n = mul.shape[0], r, x, u, t
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] o = out
    cdef unsigned char[::1] us = np.zeros(n, dtype=np.uint8)
    for u in range(n):
        if not smask[u]:
            continue
        us[:] = 0
        for t in range(n):
            if smask[t]:
                us[mul[u, t]] = 1
        for r in range(n):
            if o[r]:
                continue
            for x in range(n):
                if us[mul[u, mul[r, x]]]:
                    o[r] = 1
                    break
    return out
