"""Two interchangeable evaluators for the theorem checks.

``FAST`` goes through the cached lattices and the compiled kernels.
``ORACLE`` recomputes everything from the raw tables with plain loops and
keeps no state, so a refutation found by ``FAST`` can be replayed by a path
that shares none of its caches.
"""

from __future__ import annotations

from itertools import product as cartesian

from .. import module as mod
from ..predicates import (
    Predicate,
    _evaluate,
    check_characterization,
    check_ideal_triple_form,
    check_product_form,
    fixed_s_violation,
)
from ..ring import Ideal, MultiplicativeSet, radical


class FastEngine:
    name = "fast"

    def submodules(self, m):
        return [k.members for k in m.submodules]

    def proper_submodules(self, m):
        return [k.members for k in m.proper_submodules]

    def proper_ideals(self, r):
        return [i.members for i in r.proper_ideals]

    def colon(self, m, n):
        return mod.colon_ring(mod.Submodule(m, n)).members

    def colon_elem(self, m, n, x):
        return mod.colon_ring(mod.Submodule(m, n), int(x)).members

    def colon_mod(self, m, n, r):
        return mod.colon_module(mod.Submodule(m, n), int(r)).members

    def mrad(self, m, n):
        return mod.m_radical(mod.Submodule(m, n)).members

    def is_prime(self, m, n):
        return mod.is_prime_submodule(mod.Submodule(m, n))

    def radical(self, r, i):
        return radical(Ideal(r, i)).members

    def span(self, m, gens):
        return m.span(gens).members

    def ideal_times_module(self, r_members, m):
        return mod.ideal_times_module(r_members, m).members

    def is_multiplication(self, m):
        return mod.is_multiplication(m)

    def flags(self, m):
        return mod.structure_flags(m)

    def pred(self, m, n, s, predicate, level="module"):
        """``(applicable, holds, witness)``; ``s`` is a member tuple or None."""
        sset = None if s is None else MultiplicativeSet(m.ring, s, check=False)
        rep = _evaluate(mod.Submodule(m, n), sset, Predicate(predicate), level)
        return rep.applicable, rep.holds, rep.witness_s

    def works_with(self, m, n, s, predicate):
        """True when the single element ``s`` certifies ``predicate`` (gate not checked)."""
        return fixed_s_violation(mod.Submodule(m, n), s, predicate) is None

    def form(self, m, n, s, form):
        """Quantified forms: Ibm, IJm, IJK, I1I2I3 (ideal level) or N1N2N3."""
        sset = MultiplicativeSet(m.ring, s, check=False)
        sub = mod.Submodule(m, n)
        if form == "I1I2I3":
            rep = check_ideal_triple_form(m.ring, Ideal(m.ring, n), sset)
        elif form == "N1N2N3":
            rep = check_product_form(m, sub, sset)
        else:
            rep = check_characterization(m, sub, sset, form)
        return rep.applicable, rep.holds, rep.witness_s


class OracleEngine:
    """Definitions evaluated literally; no caching anywhere."""

    name = "oracle"

    # -- lattices --------------------------------------------------------------

    def span(self, m, gens):
        out = {m.zero} | {int(g) for g in gens}
        changed = True
        while changed:
            changed = False
            for x in list(out):
                for r in range(m.ring.size):
                    y = int(m.act[r, x])
                    if y not in out:
                        out.add(y)
                        changed = True
                for z in list(out):
                    y = int(m.add[x, z])
                    if y not in out:
                        out.add(y)
                        changed = True
        return tuple(sorted(out))

    def submodules(self, m):
        found = {self.span(m, ())}
        frontier = list(found)
        while frontier:
            fresh = []
            for k in frontier:
                for x in range(m.size):
                    if x in k:
                        continue
                    j = self.span(m, k + (x,))
                    if j not in found:
                        found.add(j)
                        fresh.append(j)
            frontier = fresh
        return sorted(found, key=lambda k: (len(k), k))

    def proper_submodules(self, m):
        return [k for k in self.submodules(m) if len(k) < m.size]

    def proper_ideals(self, r):
        return self.proper_submodules(r.regular_module)

    # -- residuals and radicals ----------------------------------------------------

    def colon(self, m, n):
        ns = set(n)
        return tuple(r for r in range(m.ring.size) if all(int(m.act[r, x]) in ns for x in range(m.size)))

    def colon_elem(self, m, n, x):
        ns = set(n)
        return tuple(r for r in range(m.ring.size) if int(m.act[r, x]) in ns)

    def colon_mod(self, m, n, r):
        ns = set(n)
        return tuple(x for x in range(m.size) if int(m.act[r, x]) in ns)

    def is_prime(self, m, n):
        ns = set(n)
        col = set(self.colon(m, n))
        return all(r in col or x in ns
                   for r in range(m.ring.size) for x in range(m.size)
                   if int(m.act[r, x]) in ns)

    def mrad(self, m, n):
        ns = set(n)
        out = set(range(m.size))
        for p in self.proper_submodules(m):
            if ns <= set(p) and self.is_prime(m, p):
                out &= set(p)
        return tuple(sorted(out))

    def radical(self, r, i):
        iset = set(i)
        out = []
        for a in range(r.size):
            p = a
            for _ in range(r.size):
                if p in iset:
                    out.append(a)
                    break
                p = int(r.mul[p, a])
        return tuple(out)

    def ideal_times_module(self, r_members, m):
        return self.span(m, {int(m.act[r, x]) for r in r_members for x in range(m.size)})

    def is_multiplication(self, m):
        return all(self.ideal_times_module(self.colon(m, k), m) == k for k in self.submodules(m))

    def flags(self, m):
        ring = m.ring
        um = tuple(r for r in range(ring.size) if len({int(m.act[r, x]) for x in range(m.size)}) == m.size)
        cyclic = any(len(self.span(m, (x,))) == m.size for x in range(m.size))
        faithful = self.colon(m, (m.zero,)) == (ring.zero,)
        return mod.StructureFlags(self.is_multiplication(m), faithful, cyclic, um)

    # -- predicates ------------------------------------------------------------------

    def _units(self, r):
        return {a for a in range(r.size) if any(int(r.mul[a, x]) == r.one for x in range(r.size))}

    def _violates(self, m, n, s, predicate, level):
        ring = m.ring
        p = Predicate(predicate)
        ns = set(n)
        col = set(self.colon(m, n))
        rcol = set(self.radical(ring, tuple(sorted(col))))
        units = self._units(ring)
        nonunits = [a for a in range(ring.size) if a not in units]
        mul, act = ring.mul, m.act
        if p is Predicate.S_TWO_ABS_PRIMARY:
            for a, b, x in cartesian(range(ring.size), range(ring.size), range(m.size)):
                ab = int(mul[a, b])
                if int(act[ab, x]) not in ns:
                    continue
                if int(act[mul[s, a], x]) in ns or int(act[mul[s, b], x]) in ns or int(mul[s, ab]) in rcol:
                    continue
                return True
            return False
        if p.one_absorbing:
            rad = set(self.mrad(m, n))
            ok_b = ns if p is Predicate.S_ONE_ABS_PRIME else rad
            xs = nonunits if level == "ideal" else range(m.size)
            for a, b, x in cartesian(nonunits, nonunits, xs):
                ab = int(mul[a, b])
                if int(act[ab, x]) in ns and int(mul[s, ab]) not in col and int(act[s, x]) not in ok_b:
                    return True
            return False
        ok_a = col if p in (Predicate.PRIME, Predicate.S_PRIME) else rcol
        for r, x in cartesian(range(ring.size), range(m.size)):
            if int(act[r, x]) in ns and int(mul[s, r]) not in ok_a and int(act[s, x]) not in ns:
                return True
        return False

    def pred(self, m, n, s, predicate, level="module"):
        p = Predicate(predicate)
        if m.ring.size == 1 or m.size == 1:
            return False, False, None
        if p.uses_s:
            col = set(self.colon(m, n))
            if any(x in col for x in s):
                return False, False, None
            for x in sorted(s):
                if not self._violates(m, n, x, p, level):
                    return True, True, int(x)
            return True, False, None
        return True, not self._violates(m, n, m.ring.one, p, level), None

    def works_with(self, m, n, s, predicate):
        return not self._violates(m, n, int(s), Predicate(predicate), "module")

    # -- quantified forms ------------------------------------------------------------

    def _product_set(self, ring, xs, ys):
        return {int(ring.mul[x, y]) for x in xs for y in ys}

    def form(self, m, n, s, form):
        ring = m.ring
        if ring.size == 1 or m.size == 1:
            return False, False, None
        col = set(self.colon(m, n))
        if any(x in col for x in s):
            return False, False, None
        ns = set(n)
        rad = set(self.mrad(m, n))
        ideals = self.proper_ideals(ring)
        units = self._units(ring)
        act = m.act

        def inside(scalars, xs, target):
            return all(int(act[r, x]) in target for r in scalars for x in xs)

        if form == "I1I2I3":
            rrad = set(self.radical(ring, tuple(sorted(ns))))
            prem = [(i1, i2, i3) for i1 in ideals for i2 in ideals for i3 in ideals
                    if self._product_set(ring, self._product_set(ring, i1, i2), i3) <= ns]

            def good(t):
                return all(self._product_set(ring, (t,), self._product_set(ring, i1, i2)) <= ns
                           or self._product_set(ring, (t,), i3) <= rrad for i1, i2, i3 in prem)
        elif form == "N1N2N3":
            subs = self.proper_submodules(m)

            def prod(a, b):
                return self.ideal_times_module(
                    self._product_set(ring, self.colon(m, a), self.colon(m, b)), m)

            prem = []
            for a in subs:
                for b in subs:
                    p = prod(a, b)
                    for c in subs:
                        if set(prod(p, c)) <= ns:
                            prem.append((p, c))

            def good(t):
                return all(inside((t,), p, ns) or inside((t,), c, rad) for p, c in prem)
        elif form == "Ibm":
            nonunits = [b for b in range(ring.size) if b not in units]
            prem = [(i, b, x) for i in ideals for b in nonunits for x in range(m.size)
                    if inside(self._product_set(ring, i, (b,)), (x,), ns)]

            def good(t):
                return all(self._product_set(ring, (t,), self._product_set(ring, i, (b,))) <= col
                           or int(act[t, x]) in rad for i, b, x in prem)
        elif form == "IJm":
            prem = [(self._product_set(ring, i, j), x) for i in ideals for j in ideals
                    for x in range(m.size)
                    if inside(self._product_set(ring, i, j), (x,), ns)]

            def good(t):
                return all(self._product_set(ring, (t,), ij) <= col or int(act[t, x]) in rad
                           for ij, x in prem)
        elif form == "IJK":
            subs = self.submodules(m)
            prem = [(self._product_set(ring, i, j), k) for i in ideals for j in ideals for k in subs
                    if inside(self._product_set(ring, i, j), k, ns)]

            def good(t):
                return all(self._product_set(ring, (t,), ij) <= col or inside((t,), k, rad)
                           for ij, k in prem)
        else:
            return self.pred(m, n, s, Predicate.S_ONE_ABS_PRIMARY)
        for t in sorted(s):
            if good(t):
                return True, True, int(t)
        return True, False, None


FAST = FastEngine()
ORACLE = OracleEngine()
