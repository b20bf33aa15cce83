"""Exact finite commutative rings given by dense operation tables."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class InputError(ValueError):
    """Raised for malformed structures or violated preconditions."""


class ElementCorrespondence:
    """Bijection between carrier indices and structured elements (tuples)."""

    def __init__(self, kind: str, elements, parts: dict | None = None):
        self.kind = kind
        self.elements = [tuple(e) if isinstance(e, (tuple, list)) else e for e in elements]
        self.parts = parts or {}
        self._index = {e: i for i, e in enumerate(self.elements)}

    def decode(self, i: int):
        return self.elements[int(i)]

    def encode(self, element) -> int:
        key = tuple(element) if isinstance(element, (tuple, list)) else element
        try:
            return self._index[key]
        except KeyError:
            raise InputError(f"{element!r} is not an element of this {self.kind}") from None

    def __contains__(self, element) -> bool:
        key = tuple(element) if isinstance(element, (tuple, list)) else element
        return key in self._index


def _table(rows, n: int, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(rows, dtype=np.int32))
    if arr.shape != (n, n) or (n and (arr.min() < 0 or arr.max() >= n)):
        raise InputError(f"{name} must be an {n}x{n} table of indices in [0, {n})")
    arr.setflags(write=False)
    return arr


class FiniteRing:
    """Commutative ring with unity on the carrier ``0..size-1``.

    ``correspondence`` is set by the constructions that build a ring out of
    other structures; it maps indices back to structured elements.
    """

    def __init__(self, add, mul, zero: int, one: int, label: str = "",
                 *, check: bool = True, correspondence=None, recipe=None):
        n = len(add)
        if n < 1:
            raise InputError("a ring needs at least one element")
        self.size = n
        self.add = _table(add, n, "add_table")
        self.mul = _table(mul, n, "mul_table")
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self.correspondence = correspondence
        self.recipe = recipe
        if check:
            self.check_axioms()

    def __repr__(self) -> str:
        return f"FiniteRing({self.label or '?'}, size={self.size})"

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def neg(self) -> np.ndarray:
        neg = np.argmax(self.add == self.zero, axis=1).astype(np.int32)
        neg.setflags(write=False)
        return neg

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def power(self, a: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = int(self.mul[out, a])
        return out

    def check_axioms(self) -> None:
        """Exhaustive O(n^3) scan of the commutative-ring axioms."""
        add, mul, n = self.add, self.mul, self.size
        idx = np.arange(n)
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise InputError("zero/one out of range")
        for name, t in (("add", add), ("mul", mul)):
            if not np.array_equal(t, t.T):
                a, b = np.argwhere(t != t.T)[0]
                raise InputError(f"{name} is not commutative at ({a}, {b})")
            lhs = t[t[:, :, None], idx[None, None, :]]
            rhs = t[idx[:, None, None], t[None, :, :]]
            if not np.array_equal(lhs, rhs):
                a, b, c = np.argwhere(lhs != rhs)[0]
                raise InputError(f"{name} is not associative at ({a}, {b}, {c})")
        if not np.array_equal(add[self.zero], idx):
            raise InputError("zero is not an additive identity")
        if not (add == self.zero).any(axis=1).all():
            a = int(np.flatnonzero(~(add == self.zero).any(axis=1))[0])
            raise InputError(f"element {a} has no additive inverse")
        if not np.array_equal(mul[self.one], idx):
            raise InputError("one is not a multiplicative identity")
        if n > 1 and self.one == self.zero:
            raise InputError("one equals zero in a nonzero ring")
        lhs = mul[idx[:, None, None], add[None, :, :]]
        rhs = add[mul[:, :, None], mul[:, None, :]]
        if not np.array_equal(lhs, rhs):
            a, b, c = np.argwhere(lhs != rhs)[0]
            raise InputError(f"distributivity fails at ({a}, {b}, {c})")

    @cached_property
    def unit_mask(self) -> np.ndarray:
        mask = (self.mul == self.one).any(axis=1).astype(np.uint8)
        mask.setflags(write=False)
        return mask

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.unit_mask))

    @cached_property
    def nonunits(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.unit_mask == 0))

    @cached_property
    def regular_module(self):
        from .module import FiniteModule

        return FiniteModule(self, self.add, self.mul, self.zero,
                            label=f"{self.label}", check=False, regular=True)

    @cached_property
    def ideals(self) -> list["Ideal"]:
        """All ideals, sorted by (cardinality, members)."""
        return [Ideal(self, n.members) for n in self.regular_module.submodules]

    @cached_property
    def proper_ideals(self) -> list["Ideal"]:
        return [i for i in self.ideals if len(i) < self.size]

    def ideal(self, members: Iterable[int]) -> "Ideal":
        return Ideal(self, members, check=True)

    def whole(self) -> "Ideal":
        return Ideal(self, range(self.size))

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, (self.zero,))


class ElementSet:
    """Ascending set of element indices of a finite carrier."""

    def __init__(self, owner, members: Iterable[int]):
        self.owner = owner
        self.members = tuple(sorted({int(x) for x in members}))
        self._mask = None

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            mask = np.zeros(self.owner.size, dtype=np.uint8)
            if self.members:
                mask[list(self.members)] = 1
            mask.setflags(write=False)
            self._mask = mask
        return self._mask

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (type(self) is type(other) and self.owner is other.owner
                and self.members == other.members)

    def __hash__(self) -> int:
        return hash((type(self).__name__, id(self.owner), self.members))

    def __le__(self, other: "ElementSet") -> bool:
        return set(self.members) <= set(other.members)

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and len(self) < len(other)

    def isdisjoint(self, other: Iterable[int]) -> bool:
        return set(self.members).isdisjoint(other)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.members)})"


class Ideal(ElementSet):
    def __init__(self, ring: FiniteRing, members: Iterable[int], *, check: bool = False):
        super().__init__(ring, members)
        if check:
            _check_ideal(ring, self.members)

    @property
    def ring(self) -> FiniteRing:
        return self.owner

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.owner.size

    def __and__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, set(self.members) & set(other.members))

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        mask = kernels.sum_mask(self.ring.add, self.members, other.members)
        return Ideal(self.ring, np.flatnonzero(mask))


def _same_ring(a: ElementSet, b: ElementSet) -> None:
    if a.owner is not b.owner:
        raise InputError("operands live in different rings")


def _check_ideal(ring: FiniteRing, members: Sequence[int]) -> None:
    if not members or ring.zero not in members:
        raise InputError("ideal must contain zero")
    mset = set(members)
    for x in members:
        for y in members:
            z = int(ring.add[x, y])
            if z not in mset:
                raise InputError(f"not closed under addition: {x} + {y} = {z}")
        for r in ring.elements:
            z = int(ring.mul[r, x])
            if z not in mset:
                raise InputError(f"not closed under multiplication: {r} * {x} = {z}")


class MultiplicativeSet(ElementSet):
    """Nonempty multiplicatively closed subset; 1 need not belong to it."""

    def __init__(self, ring: FiniteRing, members: Iterable[int], *, check: bool = True):
        super().__init__(ring, members)
        if not self.members:
            raise InputError("a multiplicative set must be nonempty")
        if check:
            mset = set(self.members)
            for s in self.members:
                for t in self.members:
                    st = int(ring.mul[s, t])
                    if st not in mset:
                        raise InputError(f"not multiplicatively closed: {s} * {t} = {st}")

    @property
    def ring(self) -> FiniteRing:
        return self.owner


class RingHom:
    """Unital ring homomorphism given by an index map."""

    def __init__(self, source: FiniteRing, target: FiniteRing, mapping, *, check: bool = True):
        self.source = source
        self.target = target
        self.map = np.ascontiguousarray(np.asarray(mapping, dtype=np.int32))
        if self.map.shape != (source.size,):
            raise InputError("homomorphism map has the wrong length")
        if check:
            f = self.map
            if f.min() < 0 or f.max() >= target.size:
                raise InputError("homomorphism map leaves the target carrier")
            if not np.array_equal(f[source.add], target.add[f[:, None], f[None, :]]):
                x, y = np.argwhere(f[source.add] != target.add[f[:, None], f[None, :]])[0]
                raise InputError(f"map is not additive at ({x}, {y})")
            if not np.array_equal(f[source.mul], target.mul[f[:, None], f[None, :]]):
                x, y = np.argwhere(f[source.mul] != target.mul[f[:, None], f[None, :]])[0]
                raise InputError(f"map is not multiplicative at ({x}, {y})")
            if int(f[source.one]) != target.one:
                raise InputError("map does not send one to one")

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def image(self, members: Iterable[int]) -> set[int]:
        return {int(self.map[x]) for x in members}


def build_zn(n: int) -> FiniteRing:
    """Integers modulo ``n`` with residue ``i`` stored at index ``i``."""
    if n < 1:
        raise InputError("Z_n needs n >= 1")
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    return FiniteRing(add, mul, 0, 1 % n, label=f"Z{n}", check=False,
                      recipe={"kind": "zn", "n": n})


def units(ring: FiniteRing) -> tuple[int, ...]:
    return ring.units


def ideal_generate(ring: FiniteRing, gens: Iterable[int]) -> Ideal:
    return Ideal(ring, ring.regular_module.span(gens).members)


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    _same_ring(i, j)
    ring = i.ring
    prods = ring.mul[np.ix_(list(i.members), list(j.members))].ravel()
    return ideal_generate(ring, prods.tolist())


def radical(i: Ideal) -> Ideal:
    ring = i.ring
    return Ideal(ring, np.flatnonzero(kernels.radical_mask(ring.mul, i.mask)))


def saturate(ring: FiniteRing, s: MultiplicativeSet) -> MultiplicativeSet:
    mask = kernels.saturation_mask(ring.mul, s.mask)
    return MultiplicativeSet(ring, np.flatnonzero(mask), check=False)


def multiplicative_closure(ring: FiniteRing, gens: Iterable[int],
                           include_one: bool = False) -> MultiplicativeSet:
    members = {int(g) for g in gens}
    if include_one:
        members.add(ring.one)
    frontier = set(members)
    while frontier:
        fresh = {int(ring.mul[a, b]) for a in frontier for b in members} - members
        members |= fresh
        frontier = fresh
    return MultiplicativeSet(ring, members, check=False)


def max_multiple_witness(s: MultiplicativeSet) -> int:
    """Smallest ``t`` in S divisible (within R) by every member of S."""
    ring = s.ring
    for t in s.members:
        if all((ring.mul[u] == t).any() for u in s.members):
            return t
    raise AssertionError("finite multiplicative sets always have a maximal multiple")


def is_quasilocal(ring: FiniteRing) -> bool:
    """True iff the non-units are closed under addition."""
    nu = list(ring.nonunits)
    if not nu:
        return False
    return not ring.unit_mask[ring.add[np.ix_(nu, nu)]].any()


def zero_divisors_mod(i: Ideal) -> tuple[int, ...]:
    """``{x : xy in I for some y outside I}``."""
    if not i.is_proper:
        raise InputError("Z_I(R) needs a proper ideal")
    ring = i.ring
    outside = np.flatnonzero(i.mask == 0)
    hit = i.mask[ring.mul[:, outside]].any(axis=1)
    return tuple(int(x) for x in np.flatnonzero(hit))
