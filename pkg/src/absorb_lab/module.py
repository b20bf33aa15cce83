"""Finite unital modules over table-backed rings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Union

import numpy as np

from . import kernels
from .ring import ElementCorrespondence, ElementSet, FiniteRing, Ideal, InputError, _table


class FiniteModule:
    """Unital module over ``ring`` with carrier ``0..size-1``.

    ``act[r, m]`` is the scalar action ``r.m``. The submodule lattice, the
    prime submodules and M-radicals are computed once and cached.
    """

    def __init__(self, ring: FiniteRing, add, act, zero: int, label: str = "",
                 *, check: bool = True, regular: bool = False,
                 correspondence=None, recipe=None):
        n = len(add)
        self.ring = ring
        self.size = n
        self.add = _table(add, n, "add_table")
        act = np.ascontiguousarray(np.asarray(act, dtype=np.int32))
        if act.shape != (ring.size, n) or act.min() < 0 or act.max() >= n:
            raise InputError(f"action_table must be {ring.size}x{n} with entries in [0, {n})")
        act.setflags(write=False)
        self.act = act
        self.zero = int(zero)
        self.label = label
        self.regular = regular
        self.correspondence = correspondence
        self.recipe = recipe
        self._rad_cache: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._colon_cache: dict[tuple[int, ...], tuple[int, ...]] = {}
        self.pred_cache: dict = {}
        if check:
            self.check_axioms()

    def __repr__(self) -> str:
        return f"FiniteModule({self.label or '?'}, size={self.size}, over {self.ring.label})"

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1).astype(np.int32)

    def check_axioms(self) -> None:
        add, act, ring, n = self.add, self.act, self.ring, self.size
        idx = np.arange(n)
        if not np.array_equal(add, add.T):
            raise InputError("module addition is not commutative")
        if not np.array_equal(add[add[:, :, None], idx[None, None, :]],
                              add[idx[:, None, None], add[None, :, :]]):
            raise InputError("module addition is not associative")
        if not np.array_equal(add[self.zero], idx):
            raise InputError("zero is not an additive identity")
        if not (add == self.zero).any(axis=1).all():
            raise InputError("some module element has no additive inverse")
        # r(m + m') = rm + rm'
        lhs = act[:, add]
        rhs = add[act[:, :, None], act[:, None, :]]
        if not np.array_equal(lhs, rhs):
            r, m, k = np.argwhere(lhs != rhs)[0]
            raise InputError(f"r(m+m') != rm+rm' at r={r}, m={m}, m'={k}")
        # (r + r')m = rm + r'm
        lhs = act[ring.add]
        rhs = add[act[:, None, :], act[None, :, :]]
        if not np.array_equal(lhs, rhs):
            r, s, m = np.argwhere(lhs != rhs)[0]
            raise InputError(f"(r+r')m != rm+r'm at r={r}, r'={s}, m={m}")
        # (rr')m = r(r'm)
        lhs = act[ring.mul]
        rhs = act[np.arange(ring.size)[:, None, None], act[None, :, :]]
        if not np.array_equal(lhs, rhs):
            r, s, m = np.argwhere(lhs != rhs)[0]
            raise InputError(f"(rr')m != r(r'm) at r={r}, r'={s}, m={m}")
        if not np.array_equal(act[ring.one], idx):
            raise InputError("1.m != m")

    # -- lattice ---------------------------------------------------------

    def span(self, gens: Iterable[int]) -> "Submodule":
        mask = np.zeros(self.size, dtype=np.uint8)
        gens = [int(g) for g in gens]
        if gens:
            mask[gens] = 1
        return Submodule(self, np.flatnonzero(kernels.span_mask(self.add, self.act, mask, self.zero)))

    def submodule(self, members: Iterable[int]) -> "Submodule":
        return Submodule(self, members, check=True)

    def whole(self) -> "Submodule":
        return Submodule(self, range(self.size))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, (self.zero,))

    @cached_property
    def cyclic_submodules(self) -> list["Submodule"]:
        seen = {}
        for m in self.elements:
            c = self.span((m,))
            seen.setdefault(c.members, c)
        return sorted(seen.values(), key=_lattice_key)

    @cached_property
    def submodules(self) -> list["Submodule"]:
        """Every submodule, sorted by (cardinality, members)."""
        cyclic = self.cyclic_submodules
        found = {c.members: c for c in cyclic}
        frontier = list(found.values())
        while frontier:
            fresh = []
            for k in frontier:
                for c in cyclic:
                    if set(c.members) <= set(k.members):
                        continue
                    j = Submodule(self, np.flatnonzero(kernels.sum_mask(self.add, k.members, c.members)))
                    if j.members not in found:
                        found[j.members] = j
                        fresh.append(j)
            frontier = fresh
        return sorted(found.values(), key=_lattice_key)

    @cached_property
    def proper_submodules(self) -> list["Submodule"]:
        return [n for n in self.submodules if len(n) < self.size]

    @cached_property
    def prime_submodules(self) -> list["Submodule"]:
        return [p for p in self.proper_submodules if _is_prime(p)]

    def index(self, n: "Submodule") -> int:
        return [k.members for k in self.submodules].index(n.members)


def _lattice_key(n: ElementSet):
    return (len(n.members), n.members)


class Submodule(ElementSet):
    def __init__(self, module: FiniteModule, members: Iterable[int], *, check: bool = False):
        super().__init__(module, members)
        if check:
            _check_submodule(module, self.members)

    @property
    def module(self) -> FiniteModule:
        return self.owner

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.owner.size

    def __and__(self, other: "Submodule") -> "Submodule":
        if other.owner is not self.owner:
            raise InputError("submodules of different modules")
        return Submodule(self.module, set(self.members) & set(other.members))

    def __add__(self, other: "Submodule") -> "Submodule":
        if other.owner is not self.owner:
            raise InputError("submodules of different modules")
        mask = kernels.sum_mask(self.module.add, self.members, other.members)
        return Submodule(self.module, np.flatnonzero(mask))


def _check_submodule(module: FiniteModule, members) -> None:
    mset = set(members)
    if module.zero not in mset:
        raise InputError("submodule must contain zero")
    for x in members:
        for y in members:
            z = int(module.add[x, y])
            if z not in mset:
                raise InputError(f"not closed under addition: {x} + {y} = {z}")
        for r in module.ring.elements:
            z = int(module.act[r, x])
            if z not in mset:
                raise InputError(f"not closed under the action: {r} . {x} = {z}")


def as_submodule(i: Ideal) -> Submodule:
    return Submodule(i.ring.regular_module, i.members)


def as_ideal(n: Submodule) -> Ideal:
    if not n.module.regular:
        raise InputError("only submodules of the regular module are ideals")
    return Ideal(n.module.ring, n.members)


# -- colon and residual operators ------------------------------------------

def colon_ring(n: Submodule, divisor: Union[Submodule, Iterable[int], int, None] = None) -> Ideal:
    """``(N :_R L) = {r : rL in N}``; ``divisor`` may be a submodule, element set or element."""
    module = n.module
    if divisor is None:
        key = n.members
        if key not in module._colon_cache:
            mask = kernels.colon_ring_mask(module.act, n.mask, np.arange(module.size))
            module._colon_cache[key] = tuple(int(x) for x in np.flatnonzero(mask))
        return Ideal(module.ring, module._colon_cache[key])
    if isinstance(divisor, (int, np.integer)):
        elems = [int(divisor)]
    elif isinstance(divisor, ElementSet):
        elems = list(divisor.members)
    else:
        elems = [int(x) for x in divisor]
    mask = kernels.colon_ring_mask(module.act, n.mask, elems)
    return Ideal(module.ring, np.flatnonzero(mask))


def colon_module(n: Submodule, divisor: Union[Ideal, Iterable[int], int]) -> Submodule:
    """``(N :_M I) = {m : Im in N}``; ``divisor`` may be an ideal, element set or element."""
    module = n.module
    if isinstance(divisor, (int, np.integer)):
        elems = [int(divisor)]
    elif isinstance(divisor, ElementSet):
        elems = list(divisor.members)
    else:
        elems = [int(x) for x in divisor]
    mask = kernels.colon_module_mask(module.act, n.mask, elems)
    return Submodule(module, np.flatnonzero(mask))


def enumerate_submodules(module: FiniteModule) -> list[Submodule]:
    return list(module.submodules)


def _is_prime(n: Submodule) -> bool:
    colon = colon_ring(n)
    return kernels.prime_test(n.module.act, n.mask, colon.mask)


def is_prime_submodule(n: Submodule) -> bool:
    """``rm in N`` implies ``m in N`` or ``r in (N:M)``."""
    if not n.is_proper:
        raise InputError("prime submodules are proper")
    return _is_prime(n)


def m_radical(n: Submodule) -> Submodule:
    """Intersection of the prime submodules containing N; M if there are none."""
    module = n.module
    key = n.members
    hit = module._rad_cache.get(key)
    if hit is None:
        mask = np.ones(module.size, dtype=bool)
        nset = set(n.members)
        for p in module.prime_submodules:
            if nset <= set(p.members):
                mask &= p.mask.astype(bool)
        hit = tuple(int(x) for x in np.flatnonzero(mask))
        module._rad_cache[key] = hit
    return Submodule(module, hit)


def annihilator(module: FiniteModule) -> Ideal:
    return colon_ring(module.zero_submodule())


@dataclass(frozen=True)
class StructureFlags:
    multiplication: bool
    faithful: bool
    cyclic: bool
    um_set: tuple[int, ...]
    notes: str = "finite modules are finitely generated"


def ideal_times_module(i: Ideal | Iterable[int], module: FiniteModule) -> Submodule:
    """The submodule ``IM`` generated by ``{i.m}``."""
    elems = list(i.members) if isinstance(i, ElementSet) else list(i)
    gens = np.unique(module.act[np.asarray(elems, dtype=np.intp)].ravel())
    return module.span(gens.tolist())


def ideal_times_submodule(i: Ideal, n: Submodule) -> Submodule:
    module = n.module
    gens = np.unique(module.act[np.ix_(list(i.members), list(n.members))].ravel())
    return module.span(gens.tolist())


def is_multiplication(module: FiniteModule) -> bool:
    cached = getattr(module, "_is_mult", None)
    if cached is None:
        cached = all(ideal_times_module(colon_ring(n), module).members == n.members
                     for n in module.submodules)
        module._is_mult = cached
    return cached


def structure_flags(module: FiniteModule) -> StructureFlags:
    ring = module.ring
    um = tuple(r for r in ring.elements
               if len(set(module.act[r].tolist())) == module.size)
    cyclic = any(len(c) == module.size for c in module.cyclic_submodules)
    faithful = annihilator(module).members == (ring.zero,)
    return StructureFlags(multiplication=is_multiplication(module), faithful=faithful,
                          cyclic=cyclic, um_set=um)


def submodule_product(n1: Submodule, n2: Submodule) -> Submodule:
    """``(N1:M)(N2:M)M`` in a multiplication module."""
    from .ring import ideal_product

    module = n1.module
    if n2.module is not module:
        raise InputError("submodules of different modules")
    if not is_multiplication(module):
        raise InputError("submodule products need a multiplication module")
    return ideal_times_module(ideal_product(colon_ring(n1), colon_ring(n2)), module)


# -- homomorphisms, quotients, products --------------------------------------

class ModuleHom:
    """R-linear map between modules over the same ring."""

    def __init__(self, source: FiniteModule, target: FiniteModule, mapping, *, check: bool = True):
        if source.ring is not target.ring:
            raise InputError("module homomorphism between different rings")
        self.source = source
        self.target = target
        self.map = np.ascontiguousarray(np.asarray(mapping, dtype=np.int32))
        if check:
            f = self.map
            if f.shape != (source.size,) or f.min() < 0 or f.max() >= target.size:
                raise InputError("homomorphism map has the wrong shape")
            if not np.array_equal(f[source.add], target.add[f[:, None], f[None, :]]):
                raise InputError("map is not additive")
            if not np.array_equal(f[source.act], target.act[:, f]):
                raise InputError("map is not R-linear")

    def __call__(self, m: int) -> int:
        return int(self.map[m])

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map.tolist())) == self.target.size

    def kernel(self) -> Submodule:
        return Submodule(self.source, np.flatnonzero(self.map == self.target.zero))


def hom_image(f: ModuleHom, n: Submodule) -> Submodule:
    return Submodule(f.target, {int(f.map[x]) for x in n.members}, check=True)


def hom_preimage(f: ModuleHom, k: Submodule) -> Submodule:
    return Submodule(f.source, np.flatnonzero(k.mask[f.map]), check=True)


def quotient(module: FiniteModule, k: Submodule) -> tuple[FiniteModule, ModuleHom]:
    """``M/K`` with cosets represented by their smallest member."""
    coset_of = np.full(module.size, -1, dtype=np.int64)
    reps = []
    kidx = np.asarray(k.members, dtype=np.intp)
    for m in module.elements:
        if coset_of[m] >= 0:
            continue
        coset_of[module.add[m, kidx]] = len(reps)
        reps.append(m)
    reps_arr = np.asarray(reps, dtype=np.intp)
    add = coset_of[module.add[np.ix_(reps_arr, reps_arr)]]
    act = coset_of[module.act[:, reps_arr]]
    q = FiniteModule(module.ring, add, act, int(coset_of[module.zero]),
                     label=f"({module.label})/{len(k)}", check=False,
                     correspondence=ElementCorrespondence("quotient", reps,
                                                          {"parent": module, "kernel": k}))
    return q, ModuleHom(module, q, coset_of, check=False)


def submodule_as_module(k: Submodule) -> tuple[FiniteModule, ModuleHom]:
    """``K`` as a module in its own right, with the inclusion into M."""
    module = k.module
    members = list(k.members)
    pos = {m: i for i, m in enumerate(members)}
    add = [[pos[int(module.add[a, b])] for b in members] for a in members]
    act = [[pos[int(module.act[r, m])] for m in members] for r in module.ring.elements]
    sub = FiniteModule(module.ring, add, act, pos[module.zero], label=f"sub({module.label})",
                       check=False)
    return sub, ModuleHom(sub, module, members, check=False)


def product_module(m1: FiniteModule, m2: FiniteModule) -> FiniteModule:
    """``M1 x M2`` over a common ring; pair ``(x, y)`` sits at ``x*|M2| + y``."""
    if m1.ring is not m2.ring:
        raise InputError("direct sum needs a common ring")
    n1, n2 = m1.size, m2.size
    x = np.arange(n1 * n2) // n2
    y = np.arange(n1 * n2) % n2
    add = m1.add[x[:, None], x[None, :]] * n2 + m2.add[y[:, None], y[None, :]]
    act = m1.act[:, x] * n2 + m2.act[:, y]
    return FiniteModule(m1.ring, add, act, m1.zero * n2 + m2.zero,
                        label=f"{m1.label}+{m2.label}", check=False,
                        correspondence=ElementCorrespondence(
                            "direct_sum", list(zip(x.tolist(), y.tolist())), {"parts": [m1, m2]}))


def product_submodule(n1: Submodule, n2: Submodule, target: FiniteModule) -> Submodule:
    """``N1 x N2`` inside a product module built from the two owners."""
    n2size = n2.module.size
    return Submodule(target, [a * n2size + b for a, b in cartesian(n1.members, n2.members)])


def componentwise_module(ring: FiniteRing, parts: list[FiniteModule]) -> FiniteModule:
    """``M1 x ... x Mk`` over ``R1 x ... x Rk`` (``ring`` from ``product_ring``)."""
    corr = ring.correspondence
    if corr is None or corr.kind != "product" or len(corr.parts["factors"]) != len(parts):
        raise InputError("componentwise modules need a matching product ring")
    for f, m in zip(corr.parts["factors"], parts):
        if m.ring is not f:
            raise InputError("component module over the wrong factor")
    sizes = [m.size for m in parts]
    tuples = list(cartesian(*[range(s) for s in sizes]))
    pos = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)
    add = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(tuples):
        for j, b in enumerate(tuples):
            add[i, j] = pos[tuple(int(m.add[x, y]) for m, x, y in zip(parts, a, b))]
    act = np.empty((ring.size, n), dtype=np.int32)
    for r in ring.elements:
        rt = corr.decode(r)
        for j, b in enumerate(tuples):
            act[r, j] = pos[tuple(int(m.act[x, y]) for m, x, y in zip(parts, rt, b))]
    zero = pos[tuple(m.zero for m in parts)]
    return FiniteModule(ring, add, act, zero, label=" x ".join(m.label for m in parts),
                        check=False,
                        correspondence=ElementCorrespondence("componentwise", tuples,
                                                             {"parts": parts}))
