"""Ring and module constructions compiled down to operation tables.

Every construction keeps an :class:`ElementCorrespondence` so that ideals,
submodules and multiplicative sets of the parts can be carried over.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Callable, Sequence

import numpy as np

from .module import FiniteModule, Submodule, ideal_times_module
from .ring import (
    ElementCorrespondence,
    FiniteRing,
    Ideal,
    InputError,
    MultiplicativeSet,
    RingHom,
    _check_ideal,
)


def _compile_tables(elements: list, add: Callable, mul: Callable):
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    a_tab = np.empty((n, n), dtype=np.int32)
    m_tab = np.empty((n, n), dtype=np.int32)
    for i, x in enumerate(elements):
        for j in range(i, n):
            y = elements[j]
            a_tab[i, j] = a_tab[j, i] = pos[add(x, y)]
            m_tab[i, j] = m_tab[j, i] = pos[mul(x, y)]
    return a_tab, m_tab, pos


def table_ring(add, mul, zero: int, one: int, label: str = "table") -> FiniteRing:
    return FiniteRing(add, mul, zero, one, label, recipe={"kind": "table"})


def build_f4() -> FiniteRing:
    """The field with four elements; ``a + b*x`` sits at ``a + 2b`` with ``x^2 = x + 1``."""
    def mul(p, q):
        a, b = p & 1, p >> 1
        c, d = q & 1, q >> 1
        # (a + bx)(c + dx) = ac + bd + (ad + bc + bd)x
        return ((a * c + b * d) % 2) | (((a * d + b * c + b * d) % 2) << 1)

    add = [[p ^ q for q in range(4)] for p in range(4)]
    mul_t = [[mul(p, q) for q in range(4)] for p in range(4)]
    recipe = {"kind": "table", "add": add, "mul": mul_t, "zero": 0, "one": 1, "label": "F4"}
    return FiniteRing(add, mul_t, 0, 1, "F4", recipe=recipe)


# -- products -----------------------------------------------------------------

def product_ring(factors: Sequence[FiniteRing]) -> FiniteRing:
    """``R1 x ... x Rk``; tuples are ordered lexicographically (mixed radix)."""
    factors = list(factors)
    if not factors:
        raise InputError("product of an empty list of rings")
    tuples = list(cartesian(*[range(f.size) for f in factors]))
    add, mul, pos = _compile_tables(
        tuples,
        lambda x, y: tuple(int(f.add[a, b]) for f, a, b in zip(factors, x, y)),
        lambda x, y: tuple(int(f.mul[a, b]) for f, a, b in zip(factors, x, y)),
    )
    zero = pos[tuple(f.zero for f in factors)]
    one = pos[tuple(f.one for f in factors)]
    return FiniteRing(add, mul, zero, one, " x ".join(f.label for f in factors), check=False,
                      correspondence=ElementCorrespondence("product", tuples, {"factors": factors}),
                      recipe={"kind": "product", "factors": [f.recipe for f in factors]})


def _factors(ring: FiniteRing):
    corr = ring.correspondence
    if corr is None or corr.kind != "product":
        raise InputError("ring is not a product ring")
    return corr.parts["factors"]


def product_ideal(ring: FiniteRing, parts: Sequence[Ideal]) -> Ideal:
    factors = _factors(ring)
    if len(parts) != len(factors) or any(p.ring is not f for p, f in zip(parts, factors)):
        raise InputError("ideal components do not match the factors")
    corr = ring.correspondence
    return Ideal(ring, [corr.encode(t) for t in cartesian(*[p.members for p in parts])])


def product_multset(ring: FiniteRing, parts: Sequence[MultiplicativeSet]) -> MultiplicativeSet:
    factors = _factors(ring)
    if len(parts) != len(factors) or any(p.ring is not f for p, f in zip(parts, factors)):
        raise InputError("multiplicative set components do not match the factors")
    corr = ring.correspondence
    return MultiplicativeSet(ring, [corr.encode(t) for t in cartesian(*[p.members for p in parts])])


# -- idealization ---------------------------------------------------------------

def idealization(ring: FiniteRing, module: FiniteModule) -> FiniteRing:
    """``R(+)M`` with ``(r, m)(r', m') = (rr', rm' + r'm)``; ``(r, m)`` sits at ``r*|M| + m``."""
    if module.ring is not ring:
        raise InputError("module is not over the given ring")
    nm = module.size
    n = ring.size * nm
    r = np.arange(n) // nm
    m = np.arange(n) % nm
    add = ring.add[r[:, None], r[None, :]] * nm + module.add[m[:, None], m[None, :]]
    cross = module.add[module.act[r[:, None], m[None, :]], module.act[r[None, :], m[:, None]]]
    mul = ring.mul[r[:, None], r[None, :]] * nm + cross
    pairs = list(zip(r.tolist(), m.tolist()))
    return FiniteRing(add, mul, ring.zero * nm + module.zero, ring.one * nm + module.zero,
                      f"{ring.label}(+){module.label}", check=False,
                      correspondence=ElementCorrespondence("idealization", pairs,
                                                           {"base": ring, "module": module}),
                      recipe={"kind": "idealization", "ring": ring.recipe, "module": module.recipe})


def _idealization_parts(t: FiniteRing):
    corr = t.correspondence
    if corr is None or corr.kind != "idealization":
        raise InputError("ring is not an idealization")
    return corr.parts["base"], corr.parts["module"]


def idealization_ideal(t: FiniteRing, i: Ideal, n: Submodule) -> Ideal:
    """``I(+)N``; requires ``IM`` inside ``N``."""
    base, module = _idealization_parts(t)
    if i.ring is not base or n.module is not module:
        raise InputError("components do not belong to the idealization")
    nset = set(n.members)
    for x in i.members:
        for m in module.elements:
            y = int(module.act[x, m])
            if y not in nset:
                raise InputError(f"IM is not inside N: {x} . {m} = {y}")
    nm = module.size
    return Ideal(t, [x * nm + y for x in i.members for y in n.members])


def idealization_multset(t: FiniteRing, s: MultiplicativeSet, mode: str) -> MultiplicativeSet:
    """``S(+)0`` for ``mode='zero'``, ``S(+)M`` for ``mode='full'``."""
    base, module = _idealization_parts(t)
    if s.ring is not base:
        raise InputError("multiplicative set is not over the base ring")
    nm = module.size
    if mode == "zero":
        return MultiplicativeSet(t, [x * nm + module.zero for x in s.members])
    if mode == "full":
        return MultiplicativeSet(t, [x * nm + y for x in s.members for y in module.elements])
    raise InputError(f"unknown idealization mode {mode!r}")


# -- amalgamation and duplication -------------------------------------------------

def amalgamation(a: FiniteRing, b: FiniteRing, f: RingHom, j: Ideal) -> FiniteRing:
    """``A ⋈^f J = {(x, f(x) + y) : x in A, y in J}`` inside ``A x B``."""
    if f.source is not a or f.target is not b:
        raise InputError("homomorphism does not go from A to B")
    if j.ring is not b:
        raise InputError("J must be an ideal of B")
    pairs = sorted({(x, int(b.add[f(x), y])) for x in a.elements for y in j.members})
    add, mul, pos = _compile_tables(
        pairs,
        lambda p, q: (int(a.add[p[0], q[0]]), int(b.add[p[1], q[1]])),
        lambda p, q: (int(a.mul[p[0], q[0]]), int(b.mul[p[1], q[1]])),
    )
    is_dup = a is b and np.array_equal(f.map, np.arange(a.size))
    label = f"{a.label}⋈{len(j)}" if is_dup else f"{a.label}⋈^f{b.label}"
    recipe = {"kind": "amalgamation", "A": a.recipe, "B": b.recipe,
              "f": f.map.tolist(), "J": list(j.members)}
    return FiniteRing(add, mul, pos[(a.zero, b.zero)], pos[(a.one, b.one)], label, check=False,
                      correspondence=ElementCorrespondence(
                          "amalgamation", pairs, {"A": a, "B": b, "f": f, "J": j}),
                      recipe=recipe)


def duplication_ring(ring: FiniteRing, i: Ideal) -> FiniteRing:
    """``R ⋈ I``: amalgamation along the identity."""
    t = amalgamation(ring, ring, RingHom(ring, ring, np.arange(ring.size), check=False), i)
    t.recipe = {"kind": "duplication_ring", "ring": ring.recipe, "I": list(i.members)}
    return t


def _amal_parts(t: FiniteRing):
    corr = t.correspondence
    if corr is None or corr.kind != "amalgamation":
        raise InputError("ring is not an amalgamation")
    return corr.parts["A"], corr.parts["B"], corr.parts["f"], corr.parts["J"]


def amalgamation_ideal(t: FiniteRing, i: Ideal) -> Ideal:
    """``I ⋈^f J = {(x, f(x) + y) : x in I, y in J}``."""
    a, b, f, j = _amal_parts(t)
    if i.ring is not a:
        raise InputError("I must be an ideal of A")
    corr = t.correspondence
    return Ideal(t, {corr.encode((x, int(b.add[f(x), y]))) for x in i.members for y in j.members})


def amalgamation_multset(t: FiniteRing, s: MultiplicativeSet) -> MultiplicativeSet:
    a, b, f, j = _amal_parts(t)
    if s.ring is not a:
        raise InputError("S must live in A")
    corr = t.correspondence
    return MultiplicativeSet(
        t, {corr.encode((x, int(b.add[f(x), y]))) for x in s.members for y in j.members})


def subring_fA_plus_J(b: FiniteRing, f: RingHom, j: Ideal) -> FiniteRing:
    """The subring ``f(A) + J`` of B; its elements correspond to B indices."""
    if f.target is not b or j.ring is not b:
        raise InputError("f and J must land in B")
    carrier = sorted({int(b.add[f(x), y]) for x in f.source.elements for y in j.members})
    add, mul, pos = _compile_tables(carrier, lambda x, y: int(b.add[x, y]),
                                    lambda x, y: int(b.mul[x, y]))
    return FiniteRing(add, mul, pos[b.zero], pos[b.one], f"f(A)+J in {b.label}", check=False,
                      correspondence=ElementCorrespondence("subring", carrier, {"parent": b}))


def _bar_members(t: FiniteRing, c: FiniteRing, members) -> list[int]:
    a, b, f, j = _amal_parts(t)
    corr = c.correspondence
    if corr is None or corr.kind != "subring" or corr.parts["parent"] is not b:
        raise InputError("bar constructions need the subring f(A)+J of B")
    inside = {corr.decode(x) for x in members}
    return [k for k, (_, y) in enumerate(t.correspondence.elements) if y in inside]


def bar_ideal(t: FiniteRing, c: FiniteRing, k: Ideal) -> Ideal:
    """``K̄^f = {(x, f(x) + y) : f(x) + y in K}`` for an ideal K of ``c = f(A)+J``."""
    if k.ring is not c:
        raise InputError("K must be an ideal of f(A)+J")
    _check_ideal(c, k.members)
    return Ideal(t, _bar_members(t, c, k.members))


def bar_multset(t: FiniteRing, c: FiniteRing, s2: MultiplicativeSet) -> MultiplicativeSet:
    if s2.ring is not c:
        raise InputError("S2 must live in f(A)+J")
    return MultiplicativeSet(t, _bar_members(t, c, s2.members))


def duplication_module(module: FiniteModule, i: Ideal, dup: FiniteRing | None = None) -> FiniteModule:
    """``M ⋈ I = {(m, m') : m - m' in IM}`` over ``R ⋈ I``.

    ``(r, r + i)(m, m') = (rm, (r + i)m')``.
    """
    ring = module.ring
    if i.ring is not ring:
        raise InputError("I must be an ideal of the base ring")
    if dup is None:
        dup = duplication_ring(ring, i)
    im = set(ideal_times_module(i, module).members)
    neg = module.neg
    pairs = [(x, y) for x in module.elements for y in module.elements
             if int(module.add[x, neg[y]]) in im]
    pos = {p: k for k, p in enumerate(pairs)}
    n = len(pairs)
    px = np.array([p[0] for p in pairs], dtype=np.intp)
    py = np.array([p[1] for p in pairs], dtype=np.intp)
    lookup = np.full((module.size, module.size), -1, dtype=np.int64)
    lookup[px, py] = np.arange(n)
    add = lookup[module.add[px[:, None], px[None, :]], module.add[py[:, None], py[None, :]]]
    tr = dup.correspondence.elements
    ra = np.array([e[0] for e in tr], dtype=np.intp)
    rb = np.array([e[1] for e in tr], dtype=np.intp)
    act = lookup[module.act[ra[:, None], px[None, :]], module.act[rb[:, None], py[None, :]]]
    if (add < 0).any() or (act < 0).any():
        raise InputError("duplication carrier is not closed")
    return FiniteModule(dup, add, act, pos[(module.zero, module.zero)],
                        label=f"{module.label}⋈{len(i)}", check=False,
                        correspondence=ElementCorrespondence(
                            "duplication_module", pairs, {"module": module, "I": i}),
                        recipe={"kind": "duplication_module", "module": module.recipe,
                                "I": list(i.members)})


def dup_submodule(d: FiniteModule, n: Submodule, variant: str = "bowtie") -> Submodule:
    """``N ⋈ I`` (first coordinate in N) or ``N̄`` (second coordinate in N)."""
    corr = d.correspondence
    if corr is None or corr.kind != "duplication_module" or n.module is not corr.parts["module"]:
        raise InputError("N must be a submodule of the duplicated module")
    if variant not in ("bowtie", "bar"):
        raise InputError(f"unknown variant {variant!r}")
    k = 0 if variant == "bowtie" else 1
    nset = set(n.members)
    return Submodule(d, [x for x, p in enumerate(corr.elements) if p[k] in nset])


def dup_multset(t: FiniteRing, s: MultiplicativeSet, variant: str = "bowtie") -> MultiplicativeSet:
    """``S ⋈ I = {(s, s + i)}`` or ``S̄ = {(s, s + i) : s + i in S}``."""
    a, _, _, _ = _amal_parts(t)
    if s.ring is not a:
        raise InputError("S must live in the base ring")
    if variant not in ("bowtie", "bar"):
        raise InputError(f"unknown variant {variant!r}")
    k = 0 if variant == "bowtie" else 1
    sset = set(s.members)
    return MultiplicativeSet(t, [x for x, p in enumerate(t.correspondence.elements) if p[k] in sset])


# -- quotients and localization ---------------------------------------------------

def quotient_ring(ring: FiniteRing, i: Ideal) -> tuple[FiniteRing, RingHom]:
    """``R/I`` with cosets represented by their smallest member."""
    if i.ring is not ring:
        raise InputError("ideal of a different ring")
    coset_of = np.full(ring.size, -1, dtype=np.int64)
    reps = []
    idx = np.asarray(i.members, dtype=np.intp)
    for x in ring.elements:
        if coset_of[x] < 0:
            coset_of[ring.add[x, idx]] = len(reps)
            reps.append(x)
    r = np.asarray(reps, dtype=np.intp)
    q = FiniteRing(coset_of[ring.add[np.ix_(r, r)]], coset_of[ring.mul[np.ix_(r, r)]],
                   int(coset_of[ring.zero]), int(coset_of[ring.one]),
                   f"{ring.label}/{len(i)}", check=False,
                   correspondence=ElementCorrespondence("quotient", reps, {"parent": ring, "ideal": i}),
                   recipe={"kind": "quotient", "ring": ring.recipe, "I": list(i.members)})
    return q, RingHom(ring, q, coset_of, check=False)


def _classes(pairs: list, same: Callable) -> tuple[list, np.ndarray]:
    """Group ``pairs`` by an equivalence; representatives are the smallest pair."""
    cls = np.full(len(pairs), -1, dtype=np.int64)
    reps = []
    for k, p in enumerate(pairs):
        if cls[k] >= 0:
            continue
        c = len(reps)
        reps.append(p)
        for q in range(k, len(pairs)):
            if cls[q] < 0 and same(p, pairs[q]):
                cls[q] = c
    return reps, cls


def localize(ring: FiniteRing, s: MultiplicativeSet) -> tuple[FiniteRing, RingHom]:
    """``S^-1 R`` on pairs ``(r, t)``; ``(r,t) ~ (r',t')`` iff ``u(rt' - r't) = 0`` for some u in S.

    The canonical map sends r to the class of ``(r s0, s0)`` with s0 the
    smallest element of S, which is ``r/1`` whether or not 1 lies in S.
    """
    if s.ring is not ring:
        raise InputError("multiplicative set of a different ring")
    S = list(s.members)
    mul, add, neg, z = ring.mul, ring.add, ring.neg, ring.zero
    pairs = sorted((r, t) for r in ring.elements for t in S)

    def same(p, q):
        d = int(add[mul[p[0], q[1]], neg[mul[q[0], p[1]]]])
        return any(int(mul[u, d]) == z for u in S)

    reps, cls = _classes(pairs, same)
    index = {p: int(c) for p, c in zip(pairs, cls)}
    n = len(reps)
    a_tab = np.empty((n, n), dtype=np.int32)
    m_tab = np.empty((n, n), dtype=np.int32)
    for i, (r1, t1) in enumerate(reps):
        for j, (r2, t2) in enumerate(reps):
            den = int(mul[t1, t2])
            a_tab[i, j] = index[(int(add[mul[r1, t2], mul[r2, t1]]), den)]
            m_tab[i, j] = index[(int(mul[r1, r2]), den)]
    s0 = S[0]
    loc = FiniteRing(a_tab, m_tab, index[(z, s0)], index[(s0, s0)],
                     f"S^-1 {ring.label}", check=False,
                     correspondence=ElementCorrespondence("localization", reps,
                                                          {"base": ring, "S": s, "index": index}),
                     recipe={"kind": "localization", "ring": ring.recipe, "S": S})
    hom = RingHom(ring, loc, [index[(int(mul[r, s0]), s0)] for r in ring.elements], check=False)
    return loc, hom


def localize_module(module: FiniteModule, s: MultiplicativeSet,
                    loc: FiniteRing | None = None) -> tuple[FiniteModule, Callable[[int], int]]:
    """``S^-1 M`` over ``S^-1 R``; returns the module and the map ``m -> m/1``."""
    ring = module.ring
    if s.ring is not ring:
        raise InputError("multiplicative set of a different ring")
    if loc is None:
        loc, _ = localize(ring, s)
    S = list(s.members)
    act, add, neg, z = module.act, module.add, module.neg, module.zero
    pairs = sorted((m, t) for m in module.elements for t in S)

    def same(p, q):
        d = int(add[act[q[1], p[0]], neg[act[p[1], q[0]]]])
        return any(int(act[u, d]) == z for u in S)

    reps, cls = _classes(pairs, same)
    index = {p: int(c) for p, c in zip(pairs, cls)}
    n = len(reps)
    a_tab = np.empty((n, n), dtype=np.int32)
    for i, (m1, t1) in enumerate(reps):
        for j, (m2, t2) in enumerate(reps):
            a_tab[i, j] = index[(int(add[act[t2, m1], act[t1, m2]]), int(ring.mul[t1, t2]))]
    act_tab = np.empty((loc.size, n), dtype=np.int32)
    for i, (r, u) in enumerate(loc.correspondence.elements):
        for j, (m, t) in enumerate(reps):
            act_tab[i, j] = index[(int(act[r, m]), int(ring.mul[u, t]))]
    s0 = S[0]
    lm = FiniteModule(loc, a_tab, act_tab, index[(z, s0)], label=f"S^-1 {module.label}",
                      check=False,
                      correspondence=ElementCorrespondence("localization", reps,
                                                           {"base": module, "S": s, "index": index}),
                      recipe={"kind": "localization", "module": module.recipe, "S": S})
    images = [index[(int(act[s0, m]), s0)] for m in module.elements]
    return lm, images.__getitem__


def localize_submodule(lm: FiniteModule, n: Submodule) -> Submodule:
    """``S^-1 N = {n/t : n in N, t in S}``."""
    corr = lm.correspondence
    if corr is None or corr.kind != "localization" or n.module is not corr.parts["base"]:
        raise InputError("N must be a submodule of the localized module")
    index = corr.parts["index"]
    return Submodule(lm, {index[(x, t)] for x in n.members for t in corr.parts["S"].members})


def localize_ideal(loc: FiniteRing, i: Ideal) -> Ideal:
    corr = loc.correspondence
    if corr is None or corr.kind != "localization" or i.ring is not corr.parts["base"]:
        raise InputError("I must be an ideal of the localized ring")
    index = corr.parts["index"]
    return Ideal(loc, {index[(x, t)] for x in i.members for t in corr.parts["S"].members})

