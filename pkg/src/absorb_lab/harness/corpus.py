"""Deterministic corpus of small rings, modules and multiplicative sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..constructions import build_f4
from ..ring import FiniteRing, MultiplicativeSet, multiplicative_closure
from ..schema import InstanceSpec, ring_as_table


@dataclass(frozen=True)
class Bounds:
    max_ring_size: int = 12
    max_module_size: int = 32
    construction_depth: int = 1

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        try:
            a, b, c = (int(x) for x in text.split(","))
        except ValueError:
            raise ValueError(f"bounds must look like 12,32,1 (got {text!r})") from None
        if a < 1 or b < 1 or c < 0:
            raise ValueError("bounds must be positive")
        return cls(a, b, c)


DEFAULT_BOUNDS = Bounds()


def zn(n: int) -> dict:
    return {"kind": "zn", "n": n}


def cyclic_part(n: int, d: int) -> dict:
    """``Z_d`` as a ``Z_n``-module (``d | n``)."""
    if d == n:
        return {"kind": "regular"}
    return {"kind": "quotient", "module": {"kind": "regular"}, "K": list(range(0, n, d))}


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def _zn_modules(n: int, max_module: int) -> list[tuple[str, dict]]:
    """Direct sums of at most three cyclic ``Z_n``-modules."""
    out = []
    divs = _divisors(n)
    for k in (1, 2, 3):
        for combo in combinations_with_replacement(divs, k):
            size = 1
            for d in combo:
                size *= d
            if size > max_module:
                continue
            parts = [cyclic_part(n, d) for d in combo]
            name = "+".join(f"Z{d}" for d in combo)
            out.append((name, parts[0] if k == 1 else {"kind": "direct_sum", "parts": parts}))
    return out


def _base_rings(b: Bounds) -> list[tuple[str, dict, int]]:
    rings = [(f"Z{n}", zn(n), n) for n in range(1, b.max_ring_size + 1)]
    if b.max_ring_size >= 4:
        rings.append(("F4", ring_as_table(build_f4()), 4))
    return rings


def _instance(rid: str, mid: str, ring: dict, module: dict | None, tags) -> InstanceSpec:
    return InstanceSpec(id=f"{rid}|{mid}", ring=ring,
                        module=None if module is None or module == {"kind": "regular"} else module,
                        tags=tuple(tags))


def _factor_modules(name: str, recipe: dict, size: int) -> list[tuple[str, dict, int]]:
    if recipe["kind"] == "zn":
        return [(f"Z{d}", cyclic_part(size, d), d) for d in _divisors(size)]
    return [(name, {"kind": "regular"}, size)]


def generate_corpus(bounds: Bounds = DEFAULT_BOUNDS) -> list[InstanceSpec]:
    b = bounds
    specs: list[InstanceSpec] = []
    base = _base_rings(b)
    for rid, recipe, size in base:
        if recipe["kind"] == "zn":
            if size == 1:
                specs.append(_instance(rid, "Z1", recipe, None, ["zero-ring"]))
                continue
            for mid, mrec in _zn_modules(size, b.max_module_size):
                specs.append(_instance(rid, mid, recipe, mrec, ["zn"]))
        else:
            specs.append(_instance(rid, rid, recipe, None, ["field"]))
            if size * size <= b.max_module_size:
                specs.append(_instance(rid, f"{rid}^2", recipe,
                                       {"kind": "direct_sum", "parts": [{"kind": "regular"}] * 2}, ["field"]))

    # products of two or three nontrivial factors
    nontrivial = [x for x in base if x[2] > 1]
    for k in (2, 3):
        for combo in combinations_with_replacement(range(len(nontrivial)), k):
            factors = [nontrivial[i] for i in combo]
            size = 1
            for f in factors:
                size *= f[2]
            if size > b.max_ring_size:
                continue
            rid = "x".join(f[0] for f in factors)
            recipe = {"kind": "product", "factors": [f[1] for f in factors]}
            specs.append(_instance(rid, rid, recipe, None, ["product"]))
            if k == 2:
                opts = [_factor_modules(*f) for f in factors]
                for m1 in opts[0]:
                    for m2 in opts[1]:
                        if m1[2] * m2[2] > b.max_module_size or (m1[2], m2[2]) == (factors[0][2], factors[1][2]):
                            continue
                        mid = f"{m1[0]}*{m2[0]}"
                        specs.append(_instance(rid, mid, recipe,
                                               {"kind": "componentwise", "parts": [m1[1], m2[1]]},
                                               ["product", "componentwise"]))
                if size * size <= b.max_module_size:
                    specs.append(_instance(rid, f"({rid})^2", recipe,
                                           {"kind": "direct_sum", "parts": [{"kind": "regular"}] * 2},
                                           ["product"]))

    if b.construction_depth >= 1:
        specs.extend(_construction_instances(b))
    specs.sort(key=lambda s: s.id)
    return specs


def _construction_instances(b: Bounds) -> list[InstanceSpec]:
    out = []
    # idealizations R(+)M over Z_n
    for n in range(2, b.max_ring_size + 1):
        for mid, mrec in _zn_modules(n, b.max_module_size):
            msize = 1
            for part in mid.split("+"):
                msize *= int(part[1:])
            if n * msize > b.max_ring_size:
                continue
            rid = f"Z{n}(+){mid}"
            recipe = {"kind": "idealization", "ring": zn(n), "module": mrec}
            out.append(_instance(rid, rid, recipe, None, ["idealization"]))
    # amalgamations Z_n -> Z_m (reduction) along a nonzero ideal J of Z_m
    for n in range(2, b.max_ring_size + 1):
        for m in _divisors(n):
            f = [x % m for x in range(n)]
            for d in _divisors(m):
                j = list(range(0, m, m // d))  # the ideal of order d
                if n * d > b.max_ring_size:
                    continue
                if m == n:
                    rid = f"Z{n}dup{d}"
                    recipe = {"kind": "duplication_ring", "ring": zn(n), "I": j}
                    out.append(_instance(rid, rid, recipe, None, ["amalgamation", "duplication"]))
                    for mid, mrec in _zn_modules(n, b.max_module_size):
                        out.append(_instance(rid, f"{mid}dup", recipe,
                                             {"kind": "duplication_module", "module": mrec},
                                             ["duplication", "duplication-module"]))
                else:
                    rid = f"Z{n}>Z{m}amal{d}"
                    recipe = {"kind": "amalgamation", "A": zn(n), "B": zn(m), "f": f, "J": j}
                    out.append(_instance(rid, rid, recipe, None, ["amalgamation"]))
    # amalgamations into products along a coordinate ideal
    for n in range(2, b.max_ring_size + 1):
        for m1 in _divisors(n):
            for m2 in _divisors(n):
                if m2 < m1:
                    continue
                bsize = m1 * m2
                f = [(x % m1) * m2 + (x % m2) for x in range(n)]
                for which, jsize in ((0, m1), (1, m2)):
                    if n * jsize > b.max_ring_size:
                        continue
                    j = [x * m2 for x in range(m1)] if which == 0 else list(range(m2))
                    rid = f"Z{n}>Z{m1}xZ{m2}amal{'L' if which == 0 else 'R'}"
                    recipe = {"kind": "amalgamation", "A": zn(n),
                              "B": {"kind": "product", "factors": [zn(m1), zn(m2)]}, "f": f, "J": j}
                    out.append(_instance(rid, rid, recipe, None, ["amalgamation"]))
                del bsize
    # the prime subfield into F4
    if b.max_ring_size >= 8:
        f4 = ring_as_table(build_f4())
        for d, j in ((4, [0, 1, 2, 3]),):
            if 2 * d <= b.max_ring_size:
                rid = f"Z2>F4amal{d}"
                recipe = {"kind": "amalgamation", "A": zn(2), "B": f4, "f": [0, 1], "J": j}
                out.append(_instance(rid, rid, recipe, None, ["amalgamation"]))
    # cyclic quotients R/I over the constructed rings
    from ..schema import compile_ring

    for spec in [x for x in out if x.module is None]:
        ring = compile_ring(spec.ring)
        if ring.size > b.max_ring_size:
            continue
        rid = spec.id.split("|")[0]
        for k, ideal in enumerate(ring.proper_ideals[1:], start=1):
            mid = f"{rid}/I{k}"
            out.append(_instance(rid, mid, spec.ring,
                                 {"kind": "quotient", "module": {"kind": "regular"}, "K": list(ideal.members)},
                                 list(spec.tags) + ["cyclic-quotient"]))
    # filter by compiled size
    from ..schema import compile_instance

    kept = []
    for spec in out:
        ci = compile_instance(spec)
        if ci.ring.size <= b.max_ring_size and ci.module.size <= b.max_module_size:
            kept.append(spec)
    return kept


def multsets(ring: FiniteRing, max_size: int = 4) -> list[MultiplicativeSet]:
    """Powers of single elements (with and without 1), ``{1}`` and the unit group."""
    seen = {}
    for x in ring.elements:
        for with_one in (False, True):
            s = multiplicative_closure(ring, [x], include_one=with_one)
            if len(s) <= max_size:
                seen.setdefault(s.members, s)
    one = MultiplicativeSet(ring, [ring.one], check=False)
    seen.setdefault(one.members, one)
    units = MultiplicativeSet(ring, ring.units, check=False)
    seen.setdefault(units.members, units)
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]
