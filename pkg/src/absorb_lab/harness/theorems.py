"""Theorem-by-theorem verification over compiled instances.

Every theorem enumerates JSON-able cases on an instance and checks each one
through an engine. A failing case is reported with the full instance recipe
and the case parameters, so :func:`recheck` can replay it through the
oracle engine without the corpus generator or any cached lattice.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from .. import constructions as C
from .. import module as mod
from ..predicates import Predicate
from ..ring import (
    Ideal,
    InputError,
    MultiplicativeSet,
    is_quasilocal,
    max_multiple_witness,
    saturate,
    zero_divisors_mod,
)
from ..schema import CompiledInstance, InstanceSpec, compile_instance
from .corpus import multsets
from .engine import FAST, ORACLE

S1AP = Predicate.S_ONE_ABS_PRIMARY
ONE_AP = Predicate.ONE_ABS_PRIMARY

VERIFIED, REFUTED, INAPPLICABLE = "verified", "refuted", "inapplicable"


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    instance_id: str
    status: str
    evidence: dict
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {"theorem_id": self.theorem_id, "instance_id": self.instance_id,
                "status": self.status, "evidence": self.evidence}


@dataclass
class Theorem:
    id: str
    summary: str
    applies: Callable[[CompiledInstance], Optional[str]]
    cases: Callable[[CompiledInstance], Iterable[dict]]
    check: Callable[[CompiledInstance, dict, object, Counter], Optional[str]]
    groups: tuple[str, ...] = ()


REGISTRY: dict[str, Theorem] = {}


def theorem(tid: str, summary: str, applies, groups=("core",)):
    def wrap(fn):
        cases, check = fn()
        REGISTRY[tid] = Theorem(tid, summary, applies, cases, check, groups)
        return fn
    return wrap


# -- shared helpers ------------------------------------------------------------------

def holds(eng, m, n, s, p, level="module") -> bool:
    applicable, ok, _ = eng.pred(m, tuple(n), None if s is None else tuple(s), p, level)
    return applicable and ok


def gated(eng, m, n, s) -> bool:
    col = set(eng.colon(m, tuple(n)))
    return not any(x in col for x in s)


def _sets(ring) -> list[list[int]]:
    return [list(s.members) for s in multsets(ring)]


def _verdict(flag: bool) -> str:
    return "holds" if flag else "fails"


def _nontrivial(ci) -> Optional[str]:
    if ci.ring.size == 1 or ci.module.size == 1:
        return "zero ring or zero module"
    return None


def _regular(ci) -> Optional[str]:
    return _nontrivial(ci) or (None if ci.spec.module is None else "ideal-level theorem: needs the regular module")


def _multiplication(ci) -> Optional[str]:
    return _nontrivial(ci) or (None if mod.is_multiplication(ci.module) else "module is not a multiplication module")


def _faithful_multiplication(ci) -> Optional[str]:
    why = _multiplication(ci)
    if why:
        return why
    return None if mod.structure_flags(ci.module).faithful else "module is not faithful"


def _kind(kind, module_kind=None):
    def applies(ci):
        why = _nontrivial(ci)
        if why:
            return why
        if ci.spec.ring["kind"] not in (kind if isinstance(kind, tuple) else (kind,)):
            return f"ring is not a {kind} construction"
        mk = (ci.spec.module or {"kind": "regular"})["kind"]
        if mk != (module_kind or "regular"):
            return f"needs a {module_kind or 'regular'} module"
        return None
    return applies


def _gated_cases(ci, eng=FAST):
    """Proper submodules crossed with corpus sets satisfying the gate."""
    m = ci.module
    for n in eng.proper_submodules(m):
        for s in _sets(ci.ring):
            if gated(eng, m, n, s):
                yield {"N": list(n), "S": s}


def _all_cases(ci, eng=FAST):
    m = ci.module
    for n in eng.proper_submodules(m):
        for s in _sets(ci.ring):
            yield {"N": list(n), "S": s}


def _ideal(ring, members) -> Ideal:
    return Ideal(ring, members)


def _mset(ring, members) -> MultiplicativeSet:
    return MultiplicativeSet(ring, members, check=False)


# -- axioms ----------------------------------------------------------------------------

@theorem("axioms", "compiled rings and modules satisfy the ring and module axioms",
         lambda ci: None)
def _axioms():
    def cases(ci):
        yield {}

    def check(ci, case, eng, stats):
        try:
            ci.ring.check_axioms()
            ci.module.check_axioms()
        except InputError as exc:
            return str(exc)
        return None
    return cases, check


# -- hierarchy and characterizations ---------------------------------------------------

@theorem("hierarchy", "implications between the predicate classes", _nontrivial)
def _hierarchy():
    def cases(ci):
        return _all_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, case["N"], case["S"]
        v = {p: holds(eng, m, n, None if not p.uses_s else s, p) for p in Predicate}
        g = gated(eng, m, n, s)
        rules = [
            (Predicate.PRIME, Predicate.PRIMARY, True),
            (Predicate.S_PRIME, Predicate.S_PRIMARY, True),
            (Predicate.S_ONE_ABS_PRIME, S1AP, True),
            (Predicate.PRIME, Predicate.S_PRIME, g),
            (Predicate.PRIMARY, Predicate.S_PRIMARY, g),
            (ONE_AP, S1AP, g),
        ]
        for a, b, active in rules:
            if active and v[a] and not v[b]:
                return f"{a.value} holds but {b.value} fails"
        if ci.spec.module is None:
            # ideal-level chains, and module level agreeing with ideal level
            iv = {p: holds(eng, m, n, None if not p.uses_s else s, p, "ideal") for p in Predicate}
            for p in Predicate:
                if iv[p] != v[p]:
                    return f"{p.value}: ideal level {_verdict(iv[p])}, module level {_verdict(v[p])}"
            for a, b in ((Predicate.PRIMARY, ONE_AP), (Predicate.S_PRIMARY, S1AP)):
                if iv[a] and not iv[b]:
                    return f"ideal {a.value} holds but {b.value} fails"
        elif v[Predicate.S_ONE_ABS_PRIME] != v[S1AP] and eng.mrad(m, tuple(n)) == tuple(n):
            return "M-rad(N) = N yet the 1-absorbing prime and primary variants differ"
        return None
    return cases, check


@theorem("char", "the elementwise, Ibm, IJm and IJK forms agree", _nontrivial)
def _char():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), tuple(case["S"])
        verdicts = {f: eng.form(m, n, s, f)[1] for f in ("elementwise", "Ibm", "IJm", "IJK")}
        stats["holds"] += verdicts["elementwise"]
        if len(set(verdicts.values())) > 1:
            return "forms disagree: " + ", ".join(f"{k}={_verdict(v)}" for k, v in verdicts.items())
        return None
    return cases, check


@theorem("char1", "ideal form with three ideals matches the elementwise ideal predicate", _regular)
def _char1():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), tuple(case["S"])
        a = holds(eng, m, n, s, S1AP, "ideal")
        b = eng.form(m, n, s, "I1I2I3")[1]
        return None if a == b else f"elementwise {_verdict(a)}, I1I2I3 form {_verdict(b)}"
    return cases, check


@theorem("n1n2n3", "submodule-product form on multiplication modules", _multiplication)
def _n1n2n3():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), tuple(case["S"])
        a = holds(eng, m, n, s, S1AP)
        b = eng.form(m, n, s, "N1N2N3")[1]
        return None if a == b else f"elementwise {_verdict(a)}, N1N2N3 form {_verdict(b)}"
    return cases, check


@theorem("hoj", "sqrt(N:M) = (M-rad(N):M) on multiplication modules", _multiplication)
def _hoj():
    def cases(ci):
        for n in FAST.submodules(ci.module):
            yield {"N": list(n)}

    def check(ci, case, eng, stats):
        m, n = ci.module, tuple(case["N"])
        left = eng.radical(m.ring, eng.colon(m, n))
        right = eng.colon(m, eng.mrad(m, n))
        return None if left == right else f"sqrt(N:M) = {list(left)} but (M-rad(N):M) = {list(right)}"
    return cases, check


@theorem("char2", "module, colon ideal and ideal-generator forms agree on faithful multiplication modules",
         _faithful_multiplication)
def _char2():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), tuple(case["S"])
        ring = m.ring
        r = ring.regular_module
        a = holds(eng, m, n, s, S1AP)
        col = eng.colon(m, n)
        b = holds(eng, r, col, s, S1AP, "ideal")
        c = any(eng.ideal_times_module(i, m) == n and holds(eng, r, i, s, S1AP, "ideal")
                for i in eng.proper_ideals(ring))
        if a == b == c:
            return None
        return f"N {_verdict(a)}, (N:M) {_verdict(b)}, some I with N = IM {_verdict(c)}"
    return cases, check


@theorem("s-primary", "S-primary submodules of faithful multiplication modules are S-1-absorbing primary",
         _faithful_multiplication)
def _s_primary():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, case["N"], case["S"]
        if holds(eng, m, n, s, Predicate.S_PRIMARY) and not holds(eng, m, n, s, S1AP):
            return "S-primary but not S-1-absorbing primary"
        return None
    return cases, check


@theorem("lrad", "the radical of an S-1-absorbing primary ideal is S-prime", _regular)
def _lrad():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        if not holds(eng, m, n, s, S1AP, "ideal"):
            return None
        stats["premise"] += 1
        rad = eng.radical(m.ring, n)
        if not holds(eng, m, rad, s, Predicate.S_PRIME, "ideal"):
            return f"radical {list(rad)} is not S-prime"
        return None
    return cases, check


@theorem("mrad-sprime", "M-rad of an S-1-absorbing primary submodule is S-prime", _nontrivial)
def _mrad_sprime():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        if not holds(eng, m, n, s, S1AP):
            return None
        stats["premise"] += 1
        rad = eng.mrad(m, n)
        if not gated(eng, m, rad, s):
            return f"M-rad(N) = {list(rad)} meets S through its colon ideal"
        if not holds(eng, m, rad, s, Predicate.S_PRIME):
            return f"M-rad(N) = {list(rad)} is not S-prime"
        return None
    return cases, check


# -- quasilocal laws -----------------------------------------------------------------

@theorem("Tq", "an S-1-absorbing primary ideal that is not S-primary forces a quasilocal ring", _regular)
def _tq():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, case["N"], case["S"]
        if holds(eng, m, n, s, S1AP, "ideal") and not holds(eng, m, n, s, Predicate.S_PRIMARY, "ideal"):
            stats["separations"] += 1
            if not is_quasilocal(m.ring):
                return "separating ideal in a ring that is not quasilocal"
        return None
    return cases, check


def _non_quasilocal(base):
    def applies(ci):
        why = base(ci)
        if why:
            return why
        return "ring is quasilocal" if is_quasilocal(ci.ring) else None
    return applies


@theorem("cq", "over non-quasilocal rings S-1-absorbing primary and S-primary ideals coincide",
         _non_quasilocal(_regular))
def _cq():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, case["N"], case["S"]
        a = holds(eng, m, n, s, S1AP, "ideal")
        b = holds(eng, m, n, s, Predicate.S_PRIMARY, "ideal")
        return None if a == b else f"S-1-absorbing primary {_verdict(a)}, S-primary {_verdict(b)}"
    return cases, check


@theorem("tq-module", "module version of the non-quasilocal equivalence",
         _non_quasilocal(_multiplication))
def _tq_module():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, case["N"], case["S"]
        a = holds(eng, m, n, s, S1AP)
        b = holds(eng, m, n, s, Predicate.S_PRIMARY)
        return None if a == b else f"S-1-absorbing primary {_verdict(a)}, S-primary {_verdict(b)}"
    return cases, check


# -- lemmas on residuals and radicals -------------------------------------------------

@theorem("lemma-d", "colon ideals and residual submodules inherit the predicate", _multiplication)
def _lemma_d():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        if not holds(eng, m, n, s, S1AP):
            return None
        stats["premise"] += 1
        ring = m.ring
        col = eng.colon(m, n)
        if not holds(eng, ring.regular_module, col, s, S1AP, "ideal"):
            return "(N:M) is not an S-1-absorbing primary ideal"
        for r in ring.elements:
            if r in col:
                continue
            res = eng.colon_mod(m, n, r)
            if gated(eng, m, res, s) and not holds(eng, m, res, s, S1AP):
                return f"(N:_M {r}) = {list(res)} is not S-1-absorbing primary"
        return None
    return cases, check


@theorem("lemma-d2", "element colon ideals (N:m) inherit the predicate, under both readings of the range of m",
         _multiplication)
def _lemma_d2():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        if not holds(eng, m, n, s, S1AP):
            return None
        ring = m.ring
        primes = [p for p in eng.proper_submodules(m) if set(n) <= set(p) and eng.is_prime(m, p)]
        outside_some = set(m.elements) - set.intersection(*(set(p) for p in primes)) if primes else set()
        outside_all = set(m.elements) - set().union(*(set(p) for p in primes))
        failures = []
        for x in sorted(outside_some):
            col = eng.colon_elem(m, n, x)
            if any(t in col for t in s) or len(col) == ring.size:
                continue
            ok = holds(eng, ring.regular_module, col, s, S1AP, "ideal")
            if not ok:
                failures.append((x, x in outside_all))
        for x, strict in failures:
            stats["fail-outside-some-prime"] += 1
            stats["fail-outside-every-prime"] += strict
        if any(strict for _, strict in failures):
            x = next(x for x, strict in failures if strict)
            return f"(N:{x}) is not S-1-absorbing primary with {x} outside every prime over N"
        if failures:
            return f"(N:{failures[0][0]}) is not S-1-absorbing primary with {failures[0][0]} outside some prime over N"
        return None
    return cases, check


def _primes_avoid(eng, m, n, s) -> bool:
    return all(gated(eng, m, p, s) for p in eng.proper_submodules(m)
               if set(n) <= set(p) and eng.is_prime(m, p))


@theorem("mrad", "(M-rad(N):s) = M-rad(N) = M-rad(N:s) when every prime over N avoids S", _nontrivial)
def _mrad():
    def cases(ci):
        return _all_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        if not _primes_avoid(eng, m, n, s):
            return None
        stats["premise"] += 1
        rad = eng.mrad(m, n)
        for t in s:
            a = eng.colon_mod(m, rad, t)
            b = eng.mrad(m, eng.colon_mod(m, n, t))
            if not a == rad == b:
                return f"s = {t}: (M-rad(N):s) = {list(a)}, M-rad(N) = {list(rad)}, M-rad(N:s) = {list(b)}"
        return None
    return cases, check


def _ns_premise(eng, m, n, s) -> bool:
    if not _primes_avoid(eng, m, n, s):
        return False
    col = eng.colon(m, n)
    if len(col) == m.ring.size:
        return False
    z = zero_divisors_mod(_ideal(m.ring, col))
    return not set(z) & set(s)


@theorem("ns", "residuals (N:s) are 1-absorbing primary under the zero-divisor gate", _nontrivial)
def _ns():
    def cases(ci):
        return _all_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        if not _ns_premise(eng, m, n, s):
            return None
        stats["premise"] += 1
        s1ap = holds(eng, m, n, s, S1AP)
        stats["premise-with-N-S-1-absorbing"] += s1ap
        for t in s:
            res = eng.colon_mod(m, n, t)
            if not holds(eng, m, res, None, ONE_AP):
                return (f"(N:{t}) = {list(res)} is not 1-absorbing primary "
                        f"(N itself {'is' if s1ap else 'is not'} S-1-absorbing primary)")
        return None
    return cases, check


@theorem("ns-s1ap", "residual statement with N additionally S-1-absorbing primary", _nontrivial)
def _ns_s1ap():
    def cases(ci):
        return _all_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        if not _ns_premise(eng, m, n, s) or not holds(eng, m, n, s, S1AP):
            return None
        stats["premise"] += 1
        for t in s:
            res = eng.colon_mod(m, n, t)
            if not holds(eng, m, res, None, ONE_AP):
                return f"(N:{t}) = {list(res)} is not 1-absorbing primary"
        return None
    return cases, check


@theorem("intersection", "intersections of S-1-absorbing primary submodules with a common M-radical",
         _multiplication)
def _intersection():
    def cases(ci):
        m = ci.module
        for s in _sets(ci.ring):
            groups: dict = {}
            for n in FAST.proper_submodules(m):
                if gated(FAST, m, n, s) and holds(FAST, m, n, s, S1AP):
                    groups.setdefault(FAST.mrad(m, n), []).append(n)
            for members in groups.values():
                for k in (2, 3):
                    for combo in combinations(members, k):
                        yield {"S": s, "family": [list(x) for x in combo]}

    def check(ci, case, eng, stats):
        m, s = ci.module, case["S"]
        fam = [tuple(x) for x in case["family"]]
        if not all(holds(eng, m, x, s, S1AP) for x in fam):
            return "family member is not S-1-absorbing primary"
        if len({eng.mrad(m, x) for x in fam}) != 1:
            return "family members have different M-radicals"
        inter = tuple(sorted(set.intersection(*(set(x) for x in fam))))
        if not holds(eng, m, inter, s, S1AP):
            return f"intersection {list(inter)} is not S-1-absorbing primary"
        return None
    return cases, check


# -- homomorphisms and quotients ---------------------------------------------------------

def _quotient_cases(ci):
    m = ci.module
    for k in FAST.submodules(m):
        if len(k) < m.size:
            yield {"K": list(k)}


def _quotient(m, k):
    return mod.quotient(m, mod.Submodule(m, k))


@theorem("lemf", "quotient maps move colons and M-radicals as expected", _nontrivial)
def _lemf():
    def cases(ci):
        return _quotient_cases(ci)

    def check(ci, case, eng, stats):
        m = ci.module
        q, pi = _quotient(m, case["K"])
        img = lambda xs: tuple(sorted({pi(x) for x in xs}))  # noqa: E731
        pre = lambda ys: tuple(x for x in m.elements if pi(x) in set(ys))  # noqa: E731
        for n in eng.submodules(m):
            if not set(eng.colon(m, n)) <= set(eng.colon(q, img(n))):
                return f"(N:M1) not inside (f(N):M2) for N = {list(n)}"
            if set(case["K"]) <= set(n) and img(eng.mrad(m, n)) != eng.mrad(q, img(n)):
                return f"f(M-rad(N)) differs from M-rad(f(N)) for N = {list(n)}"
        for k in eng.submodules(q):
            if not set(eng.colon(q, k)) <= set(eng.colon(m, pre(k))):
                return f"(K:M2) not inside (f^-1(K):M1) for K = {list(k)}"
            if pre(eng.mrad(q, k)) != eng.mrad(m, pre(k)):
                return f"f^-1(M-rad(K)) differs from M-rad(f^-1(K)) for K = {list(k)}"
        return None
    return cases, check


@theorem("prop-f", "images and preimages under quotient maps", _nontrivial)
def _prop_f():
    def cases(ci):
        for k in _quotient_cases(ci):
            for s in _sets(ci.ring):
                yield {**k, "S": s}

    def check(ci, case, eng, stats):
        m, s, kk = ci.module, case["S"], set(case["K"])
        q, pi = _quotient(m, case["K"])
        for n in eng.proper_submodules(m):
            if not kk <= set(n):
                continue
            fn = tuple(sorted({pi(x) for x in n}))
            if gated(eng, q, fn, s) and holds(eng, m, n, s, S1AP) and not holds(eng, q, fn, s, S1AP):
                return f"image of N = {list(n)} is not S-1-absorbing primary"
        for k in eng.proper_submodules(q):
            if holds(eng, q, k, s, S1AP):
                back = tuple(x for x in m.elements if pi(x) in set(k))
                if not holds(eng, m, back, s, S1AP):
                    return f"preimage of K = {list(k)} is not S-1-absorbing primary"
        return None
    return cases, check


@theorem("cor-c", "N is S-1-absorbing primary exactly when N/K is, for K inside N", _nontrivial)
def _cor_c():
    def cases(ci):
        for k in _quotient_cases(ci):
            for s in _sets(ci.ring):
                yield {**k, "S": s}

    def check(ci, case, eng, stats):
        m, s, kk = ci.module, case["S"], tuple(case["K"])
        q, pi = _quotient(m, kk)
        for n in eng.proper_submodules(m):
            if set(kk) <= set(n):
                a = holds(eng, m, n, s, S1AP)
                b = holds(eng, q, tuple(sorted({pi(x) for x in n})), s, S1AP)
                if a != b:
                    return f"N = {list(n)} {_verdict(a)} but N/K {_verdict(b)}"
        return None
    return cases, check


@theorem("cor-c-intersection", "N meets K in an S-1-absorbing primary submodule of K when (N:K) avoids S",
         _nontrivial)
def _cor_c_intersection():
    def cases(ci):
        for k in _quotient_cases(ci):
            for s in _sets(ci.ring):
                yield {**k, "S": s}

    def check(ci, case, eng, stats):
        m, s, kk = ci.module, case["S"], tuple(case["K"])
        sub, inc = mod.submodule_as_module(mod.Submodule(m, kk))
        back = {inc(i): i for i in sub.elements}
        for n in eng.proper_submodules(m):
            if not holds(eng, m, n, s, S1AP):
                continue
            col_nk = {r for r in m.ring.elements if all(int(m.act[r, x]) in set(n) for x in kk)}
            if col_nk & set(s):
                continue
            stats["premise"] += 1
            inter = tuple(sorted(back[x] for x in set(n) & set(kk)))
            if not holds(eng, sub, inter, s, S1AP):
                return f"N = {list(n)} meets K in a submodule that is not S-1-absorbing primary in K"
        return None
    return cases, check


# -- transfers along S ----------------------------------------------------------------------

@theorem("p1", "changing the multiplicative set: subsets, units, saturation and cyclic modules", _nontrivial)
def _p1():
    def cases(ci):
        return _all_cases(ci)

    def check(ci, case, eng, stats):
        m, n, s = ci.module, tuple(case["N"]), case["S"]
        ring = m.ring
        sset = set(s)
        a = holds(eng, m, n, s, S1AP)
        g = gated(eng, m, n, s)
        # (1) sub-multiplicative sets
        for t in _sets(ring):
            if not set(t) <= sset or t == s:
                continue
            if g and holds(eng, m, n, t, S1AP) and not a:
                return f"T = {t}: T-1-absorbing primary but not S-1-absorbing primary"
            tset = set(t)
            if a and all(any(int(ring.mul[x, y]) in tset for y in t) for x in s):
                if not holds(eng, m, n, t, S1AP):
                    return f"T = {t} absorbs S yet N is not T-1-absorbing primary"
        # (2) plain 1-absorbing primary
        plain = holds(eng, m, n, None, ONE_AP)
        if plain and g and not a:
            return "1-absorbing primary but not S-1-absorbing primary"
        if sset <= set(ring.units) and plain != a:
            return f"S inside the units: 1-absorbing primary {_verdict(plain)}, S-version {_verdict(a)}"
        # (3) saturation
        star = list(saturate(ring, _mset(ring, s)).members)
        if holds(eng, m, n, star, S1AP) != a:
            return f"S and its saturation {star} disagree"
        # (4) cyclic modules with S inside U_M(R)
        flags = eng.flags(m)
        if flags.cyclic and sset <= set(flags.um_set) and plain != a:
            stats["cyclic"] += 1
            return f"cyclic module, S inside U_M(R): 1-absorbing primary {_verdict(plain)}, S-version {_verdict(a)}"
        return None
    return cases, check


def _products_hit(ring, pool: list[int], target: set, n: int) -> bool:
    """Does some product of ``n`` elements of ``pool`` land in ``target``?"""
    layer = set(pool)
    for _ in range(n - 1):
        layer = {int(ring.mul[x, y]) for x in layer for y in pool}
    return bool(layer & target)


@theorem("cor1-prop4", "S-prime ideals absorb products of several elements and of several ideals", _regular)
def _cor1_prop4():
    def cases(ci):
        return _gated_cases(ci)

    def check(ci, case, eng, stats):
        m, p, s = ci.module, tuple(case["N"]), case["S"]
        ring = m.ring
        pset = set(p)
        sp = holds(eng, m, p, s, Predicate.S_PRIME, "ideal")
        base_witness = eng.pred(m, p, tuple(s), Predicate.S_PRIME, "ideal")[2]
        ideals = eng.submodules(ring.regular_module)
        for n in (2, 3, 4):
            good = [t for t in s if not _products_hit(
                ring, [x for x in ring.elements if int(ring.mul[t, x]) not in pset], pset, n)]
            if sp != bool(good):
                return f"n = {n}: S-prime {_verdict(sp)}, element product form {_verdict(bool(good))}"
            if good and good[0] != base_witness:
                stats[f"elements-n{n}-different-witness"] += 1
        for n in (2, 3):
            good = []
            for t in s:
                pool = [i for i in ideals if not {int(ring.mul[t, x]) for x in i} <= pset]
                layer = {i for i in pool}
                for _ in range(n - 1):
                    layer = {eng.span(ring.regular_module,
                                      {int(ring.mul[x, y]) for x in a for y in b})
                             for a in layer for b in pool}
                if not any(set(i) <= pset for i in layer):
                    good.append(t)
            if sp != bool(good):
                return f"n = {n}: S-prime {_verdict(sp)}, ideal product form {_verdict(bool(good))}"
            if good and good[0] != base_witness:
                stats[f"ideals-n{n}-different-witness"] += 1
        return None
    return cases, check


def _localized(ci, case, eng):
    m, n, s = ci.module, tuple(case["N"]), case["S"]
    cache = ci.extras.setdefault("localized", {})
    key = tuple(s)
    if key not in cache:
        sset = _mset(m.ring, s)
        loc, _ = C.localize(m.ring, sset)
        cache[key] = sset, C.localize_module(m, sset, loc)[0]
    sset, lm = cache[key]
    ln = C.localize_submodule(lm, mod.Submodule(m, n)).members
    a = holds(eng, m, n, s, S1AP)
    b = len(ln) < lm.size and holds(eng, lm, ln, None, ONE_AP)
    return a, b, sset


@theorem("localization", "N is S-1-absorbing primary exactly when S^-1 N is 1-absorbing primary", _nontrivial)
def _localization():
    def cases(ci):
        return _all_cases(ci)

    def check(ci, case, eng, stats):
        a, b, sset = _localized(ci, case, eng)
        if a and not b:
            return "N is S-1-absorbing primary but S^-1 N is not 1-absorbing primary"
        if b and not a:
            return (f"S^-1 N is 1-absorbing primary but N is not S-1-absorbing primary "
                    f"(maximal multiple {max_multiple_witness(sset)})")
        return None
    return cases, check


@theorem("localization-forward", "S^-1 N is 1-absorbing primary whenever N is S-1-absorbing primary", _nontrivial)
def _localization_forward():
    def cases(ci):
        return _all_cases(ci)

    def check(ci, case, eng, stats):
        a, b, _ = _localized(ci, case, eng)
        if a and not b:
            return "N is S-1-absorbing primary but S^-1 N is not 1-absorbing primary"
        return None
    return cases, check


# -- products -------------------------------------------------------------------------------

def _product_ring(ci) -> Optional[str]:
    why = _regular(ci)
    if why:
        return why
    return None if ci.spec.ring["kind"] == "product" else "ring is not a product"


@theorem("product-ring", "product ideals: S-1-absorbing primary, S-primary and the factor condition agree",
         _product_ring, groups=("constructions",))
def _product_ring_thm():
    def cases(ci):
        from itertools import product as cartesian

        factors = C._factors(ci.ring)
        ideal_choices = [[list(i.members) for i in f.ideals] for f in factors]
        set_choices = [_sets(f) for f in factors]
        for ideals in cartesian(*ideal_choices):
            if all(len(i) == f.size for i, f in zip(ideals, factors)):
                continue
            for sets in cartesian(*set_choices):
                yield {"I": [list(i) for i in ideals], "S": [list(x) for x in sets]}

    def check(ci, case, eng, stats):
        ring = ci.ring
        factors = C._factors(ring)
        ideal = C.product_ideal(ring, [_ideal(f, i) for f, i in zip(factors, case["I"])])
        sset = C.product_multset(ring, [_mset(f, x) for f, x in zip(factors, case["S"])])
        r = ring.regular_module
        a = holds(eng, r, ideal.members, sset.members, S1AP, "ideal")
        b = holds(eng, r, ideal.members, sset.members, Predicate.S_PRIMARY, "ideal")
        c = False
        for j, f in enumerate(factors):
            ij, sj = case["I"][j], case["S"][j]
            if len(ij) == f.size:
                continue
            others = all(set(case["I"][k]) & set(case["S"][k]) for k in range(len(factors)) if k != j)
            if others and holds(eng, f.regular_module, ij, sj, Predicate.S_PRIMARY, "ideal"):
                c = True
        if a == b == c:
            return None
        return f"S-1-absorbing primary {_verdict(a)}, S-primary {_verdict(b)}, factor condition {_verdict(c)}"
    return cases, check


def _two_factor(ci) -> Optional[str]:
    why = _nontrivial(ci)
    if why:
        return why
    if ci.spec.ring["kind"] != "product" or len(ci.spec.ring["factors"]) != 2:
        return "needs a product of two rings"
    if (ci.spec.module or {"kind": "regular"})["kind"] not in ("regular", "componentwise"):
        return "needs a componentwise module"
    return None


def _components(ci):
    """Factor modules and the componentwise module they assemble into."""
    factors = C._factors(ci.ring)
    recipe = ci.spec.module
    if recipe is None:
        parts = [f.regular_module for f in factors]
    else:
        from ..schema import compile_module

        parts = [compile_module(p, f) for p, f in zip(recipe["parts"], factors)]
    return factors, parts, mod.componentwise_module(ci.ring, parts)


def _product_module_cases(ci):
    factors, parts, _ = _components(ci)
    for side in (0, 1):
        for n in FAST.proper_submodules(parts[side]):
            for s in _sets(factors[side]):
                yield {"side": side, "N": list(n), "S": s}


def _embed(ci, case, other_scalar):
    """``N1 x M2`` (or ``M1 x N2``) and ``S x {c}`` (or ``{c} x S``) inside the product."""
    factors, parts, whole = _components(ci)
    side = case["side"]
    sizes = [p.size for p in parts]
    nset = set(case["N"])
    sub = [x for x in whole.elements
           if (x // sizes[1] if side == 0 else x % sizes[1]) in nset]
    corr = ci.ring.correspondence
    other = factors[1 - side]
    c = other.one if other_scalar == "one" else other.zero
    sset = [corr.encode((t, c) if side == 0 else (c, t)) for t in case["S"]]
    return factors, parts, whole, tuple(sub), sorted(sset)


@theorem("product-module", "N1 x M2 is S x {1}-1-absorbing primary exactly when N1 is S-1-absorbing primary",
         _two_factor, groups=("constructions",))
def _product_module():
    def cases(ci):
        return _product_module_cases(ci)

    def check(ci, case, eng, stats):
        factors, parts, whole, sub, sset = _embed(ci, case, "one")
        side = case["side"]
        pm = parts[side]
        if not gated(eng, pm, case["N"], case["S"]):
            return None
        stats["gated"] += 1
        a = holds(eng, pm, case["N"], case["S"], S1AP)
        b = holds(eng, whole, sub, sset, S1AP)
        return None if a == b else f"factor {_verdict(a)}, product {_verdict(b)}"
    return cases, check


@theorem("product-prop", "N1 x M2 being S x {0}-1-absorbing primary forces N1 S-1-absorbing primary",
         _two_factor, groups=("constructions",))
def _product_prop():
    def cases(ci):
        return (c for c in _product_module_cases(ci) if c["side"] == 0)

    def check(ci, case, eng, stats):
        factors, parts, whole, sub, sset = _embed(ci, case, "zero")
        if holds(eng, whole, sub, sset, S1AP):
            stats["premise"] += 1
            if not holds(eng, parts[0], case["N"], case["S"], S1AP):
                return "N1 x M2 is S x {0}-1-absorbing primary but N1 is not S-1-absorbing primary"
        return None
    return cases, check


@theorem("rad-product", "M-rad(N1 x M2) = M1-rad(N1) x M2", _two_factor, groups=("constructions",))
def _rad_product():
    def cases(ci):
        seen = set()
        for c in _product_module_cases(ci):
            key = (c["side"], tuple(c["N"]))
            if key not in seen:
                seen.add(key)
                yield {"side": c["side"], "N": c["N"], "S": []}

    def check(ci, case, eng, stats):
        factors, parts, whole, sub, _ = _embed(ci, case, "one")
        side = case["side"]
        rad1 = eng.mrad(parts[side], tuple(case["N"]))
        rad_case = {**case, "N": list(rad1)}
        expected = _embed(ci, rad_case, "one")[3]
        got = eng.mrad(whole, sub)
        return None if got == expected else f"M-rad of the product is {list(got)}, expected {list(expected)}"
    return cases, check


# -- idealization ----------------------------------------------------------------------------

def _idealization_parts(ci):
    base = ci.ring.correspondence.parts["base"]
    module = ci.ring.correspondence.parts["module"]
    return base, module


def _idealization_cases(ci):
    base, _ = _idealization_parts(ci)
    for i in base.proper_ideals:
        for s in _sets(base):
            if not set(i.members) & set(s):
                yield {"I": list(i.members), "S": s}


@theorem("id", "I, I(+)M over S(+)0 and I(+)M over S(+)M agree", _kind("idealization"),
         groups=("constructions",))
def _id():
    def cases(ci):
        return _idealization_cases(ci)

    def check(ci, case, eng, stats):
        t = ci.ring
        base, module = _idealization_parts(ci)
        i = _ideal(base, case["I"])
        s = _mset(base, case["S"])
        big = C.idealization_ideal(t, i, module.whole()).members
        zero = C.idealization_multset(t, s, "zero").members
        full = C.idealization_multset(t, s, "full").members
        a = holds(eng, base.regular_module, case["I"], case["S"], S1AP, "ideal")
        b = holds(eng, t.regular_module, big, zero, S1AP, "ideal")
        c = holds(eng, t.regular_module, big, full, S1AP, "ideal")
        if a == b == c:
            return None
        return f"I {_verdict(a)}, I(+)M with S(+)0 {_verdict(b)}, with S(+)M {_verdict(c)}"
    return cases, check


@theorem("id2", "I(+)N over S(+)0, then over S(+)M, then I", _kind("idealization"),
         groups=("constructions",))
def _id2():
    def cases(ci):
        base, module = _idealization_parts(ci)
        for c in _idealization_cases(ci):
            im = set(mod.ideal_times_module(c["I"], module).members)
            for n in module.proper_submodules:
                if im <= set(n.members):
                    yield {**c, "N": list(n.members)}

    def check(ci, case, eng, stats):
        t = ci.ring
        base, module = _idealization_parts(ci)
        i = _ideal(base, case["I"])
        s = _mset(base, case["S"])
        ideal = C.idealization_ideal(t, i, mod.Submodule(module, case["N"])).members
        one = holds(eng, t.regular_module, ideal, C.idealization_multset(t, s, "zero").members, S1AP, "ideal")
        two = holds(eng, t.regular_module, ideal, C.idealization_multset(t, s, "full").members, S1AP, "ideal")
        three = holds(eng, base.regular_module, case["I"], case["S"], S1AP, "ideal")
        if three and not one:
            stats["surrogate (3) without (1)"] += 1
        if one and not two:
            return "(1) holds but (2) fails"
        if two and not three:
            return "(2) holds but (3) fails"
        return None
    return cases, check


@theorem("id-rad", "radicals and units of an idealization", _kind("idealization"),
         groups=("constructions",))
def _id_rad():
    def cases(ci):
        base, _ = _idealization_parts(ci)
        for i in base.ideals:
            yield {"I": list(i.members)}

    def check(ci, case, eng, stats):
        t = ci.ring
        base, module = _idealization_parts(ci)
        nm = module.size
        i = _ideal(base, case["I"])
        big = C.idealization_ideal(t, i, module.whole()).members
        want = C.idealization_ideal(t, _ideal(base, eng.radical(base, i.members)), module.whole()).members
        got = eng.radical(t, big)
        if tuple(got) != tuple(want):
            return f"sqrt(I(+)M) = {list(got)}, sqrt(I)(+)M = {list(want)}"
        units = {x * nm + y for x in base.units for y in module.elements}
        if set(t.units) != units:
            return "U(R(+)M) differs from U(R)(+)M"
        return None
    return cases, check


# -- amalgamation ---------------------------------------------------------------------------

def _amal_applies(ci):
    return _kind(("amalgamation", "duplication_ring"))(ci)


def _amal_parts(ci):
    p = ci.ring.correspondence.parts
    return p["A"], p["B"], p["f"], p["J"]


@theorem("amal", "I is S-1-absorbing primary exactly when I bowtie J is over S bowtie J", _amal_applies,
         groups=("constructions",))
def _amal():
    def cases(ci):
        a, _, _, _ = _amal_parts(ci)
        for i in a.proper_ideals:
            for s in _sets(a):
                if not set(i.members) & set(s):
                    yield {"I": list(i.members), "S": s}

    def check(ci, case, eng, stats):
        t = ci.ring
        a, _, _, _ = _amal_parts(ci)
        big = C.amalgamation_ideal(t, _ideal(a, case["I"])).members
        sj = C.amalgamation_multset(t, _mset(a, case["S"])).members
        x = holds(eng, a.regular_module, case["I"], case["S"], S1AP, "ideal")
        y = holds(eng, t.regular_module, big, sj, S1AP, "ideal")
        return None if x == y else f"I {_verdict(x)}, I bowtie J {_verdict(y)}"
    return cases, check


@theorem("amal1", "sqrt(I bowtie J) = sqrt(I) bowtie J", _amal_applies, groups=("constructions",))
def _amal1():
    def cases(ci):
        a, _, _, _ = _amal_parts(ci)
        for i in a.ideals:
            yield {"I": list(i.members)}

    def check(ci, case, eng, stats):
        t = ci.ring
        a, _, _, _ = _amal_parts(ci)
        got = eng.radical(t, C.amalgamation_ideal(t, _ideal(a, case["I"])).members)
        want = C.amalgamation_ideal(t, _ideal(a, eng.radical(a, tuple(case["I"])))).members
        return None if tuple(got) == tuple(want) else f"sqrt(I bowtie J) = {list(got)}, expected {list(want)}"
    return cases, check


def _subring(ci):
    a, b, f, j = _amal_parts(ci)
    return C.subring_fA_plus_J(b, f, j)


@theorem("bar", "K over S2 in f(A)+J against its bar ideal over the bar set", _amal_applies,
         groups=("constructions",))
def _bar():
    def cases(ci):
        c = _subring(ci)
        for k in c.proper_ideals:
            for s in _sets(c):
                if not set(k.members) & set(s):
                    yield {"K": list(k.members), "S2": s}

    def check(ci, case, eng, stats):
        t = ci.ring
        c = _subring(ci)
        kb = C.bar_ideal(t, c, _ideal(c, case["K"])).members
        sb = C.bar_multset(t, c, _mset(c, case["S2"])).members
        x = holds(eng, c.regular_module, case["K"], case["S2"], S1AP, "ideal")
        y = holds(eng, t.regular_module, kb, sb, S1AP, "ideal")
        return None if x == y else f"K {_verdict(x)}, bar K {_verdict(y)}"
    return cases, check


@theorem("amal2", "sqrt of a bar ideal is the bar of the radical", _amal_applies, groups=("constructions",))
def _amal2():
    def cases(ci):
        for k in _subring(ci).ideals:
            yield {"K": list(k.members)}

    def check(ci, case, eng, stats):
        t = ci.ring
        c = _subring(ci)
        got = eng.radical(t, C.bar_ideal(t, c, _ideal(c, case["K"])).members)
        want = C.bar_ideal(t, c, _ideal(c, eng.radical(c, tuple(case["K"])))).members
        return None if tuple(got) == tuple(want) else f"sqrt(bar K) = {list(got)}, bar sqrt K = {list(want)}"
    return cases, check


# -- duplication ------------------------------------------------------------------------------

def _dup_applies(ci):
    return _kind("duplication_ring", "duplication_module")(ci)


def _dup_parts(ci):
    d = ci.module
    return d.correspondence.parts["module"], d.correspondence.parts["I"], d


def _dup(d, n):
    return C.dup_submodule(d, mod.Submodule(d.correspondence.parts["module"], n)).members


@theorem("dup1", "(N bowtie I : M bowtie I) = (N:M) bowtie I", _dup_applies, groups=("constructions",))
def _dup1():
    def cases(ci):
        m, _, _ = _dup_parts(ci)
        for n in FAST.submodules(m):
            yield {"N": list(n)}

    def check(ci, case, eng, stats):
        m, i, d = _dup_parts(ci)
        t = ci.ring
        got = eng.colon(d, _dup(d, case["N"]))
        want = C.amalgamation_ideal(t, _ideal(m.ring, eng.colon(m, tuple(case["N"])))).members
        return None if tuple(got) == tuple(want) else f"colon {list(got)}, expected {list(want)}"
    return cases, check


@theorem("dup2", "L is prime exactly when L bowtie I is prime", _dup_applies, groups=("constructions",))
def _dup2():
    def cases(ci):
        m, _, _ = _dup_parts(ci)
        for n in FAST.proper_submodules(m):
            yield {"N": list(n)}

    def check(ci, case, eng, stats):
        m, _, d = _dup_parts(ci)
        a = eng.is_prime(m, tuple(case["N"]))
        b = eng.is_prime(d, _dup(d, case["N"]))
        return None if a == b else f"L prime {a}, L bowtie I prime {b}"
    return cases, check


@theorem("dup3", "primes over N bowtie I and M-rad(N bowtie I) = M-rad(N) bowtie I", _dup_applies,
         groups=("constructions",))
def _dup3():
    def cases(ci):
        m, _, _ = _dup_parts(ci)
        for n in FAST.proper_submodules(m):
            yield {"N": list(n)}

    def check(ci, case, eng, stats):
        m, _, d = _dup_parts(ci)
        n = tuple(case["N"])
        big = set(_dup(d, n))
        primes_d = {p for p in eng.proper_submodules(d) if big <= set(p) and eng.is_prime(d, p)}
        primes_m = {_dup(d, p) for p in eng.proper_submodules(m) if set(n) <= set(p) and eng.is_prime(m, p)}
        if primes_d != primes_m:
            return "primes over N bowtie I are not the duplicated primes over N"
        got = eng.mrad(d, tuple(sorted(big)))
        want = _dup(d, eng.mrad(m, n))
        return None if tuple(got) == tuple(want) else f"M-rad {list(got)}, expected {list(want)}"
    return cases, check


@theorem("dup-final", "N is S-1-absorbing primary exactly when N bowtie I is over S bowtie I", _dup_applies,
         groups=("constructions",))
def _dup_final():
    def cases(ci):
        m, _, _ = _dup_parts(ci)
        for n in FAST.proper_submodules(m):
            for s in _sets(m.ring):
                if gated(FAST, m, n, s):
                    yield {"N": list(n), "S": s}

    def check(ci, case, eng, stats):
        m, _, d = _dup_parts(ci)
        sb = C.dup_multset(ci.ring, _mset(m.ring, case["S"])).members
        a = holds(eng, m, case["N"], case["S"], S1AP)
        b = holds(eng, d, _dup(d, case["N"]), sb, S1AP)
        return None if a == b else f"N {_verdict(a)}, N bowtie I {_verdict(b)}"
    return cases, check


# -- running -----------------------------------------------------------------------------------

def _register_avoidance():
    from . import avoidance  # noqa: F401  (registers its theorems)


SUITES = {
    "constructions": lambda t: "constructions" in t.groups,
    "core": lambda t: "core" in t.groups,
    "coverings": lambda t: "avoidance" in t.groups,
}


def resolve_suite(names: str | Iterable[str]) -> list[str]:
    _register_avoidance()
    if isinstance(names, str):
        names = [x.strip() for x in names.split(",") if x.strip()]
    out: list[str] = []
    for name in names:
        if name == "all":
            picked = list(REGISTRY)
        elif name in SUITES:
            picked = [t.id for t in REGISTRY.values() if SUITES[name](t)]
        elif name in REGISTRY:
            picked = [name]
        else:
            raise InputError(f"unknown theorem id {name!r}")
        out.extend(x for x in picked if x not in out)
    return sorted(out)


def _run(thm: Theorem, ci: CompiledInstance) -> TheoremReport:
    start = time.perf_counter()
    why = thm.applies(ci)
    if why:
        return TheoremReport(thm.id, ci.spec.id, INAPPLICABLE, {"gate": why},
                             time.perf_counter() - start)
    stats: Counter = Counter()
    checked = failures = 0
    first = None
    for case in thm.cases(ci):
        checked += 1
        detail = thm.check(ci, case, FAST, stats)
        if detail is not None:
            failures += 1
            if first is None:
                first = (case, detail)
    elapsed = time.perf_counter() - start
    if checked == 0:
        return TheoremReport(thm.id, ci.spec.id, INAPPLICABLE, {"gate": "no case meets the hypotheses"},
                             elapsed)
    evidence: dict = {"checked": checked}
    if stats:
        evidence["stats"] = {k: stats[k] for k in sorted(stats)}
    if first is None:
        return TheoremReport(thm.id, ci.spec.id, VERIFIED, evidence, elapsed)
    evidence.update({"failures": failures, "instance": ci.spec.to_dict(), "case": first[0],
                     "detail": first[1]})
    return TheoremReport(thm.id, ci.spec.id, REFUTED, evidence, elapsed)


def verify_theorems(instance: InstanceSpec | CompiledInstance, suite="all") -> list[TheoremReport]:
    ids = resolve_suite(suite)
    ci = instance if isinstance(instance, CompiledInstance) else compile_instance(instance)
    return [_run(REGISTRY[t], ci) for t in ids]


def recheck(report: TheoremReport | dict) -> Optional[str]:
    """Replay a refutation from its evidence alone through the oracle engine.

    Returns the oracle's mismatch detail, or None when the oracle finds no
    mismatch (which would mean the fast path is wrong).
    """
    d = report.to_dict() if isinstance(report, TheoremReport) else report
    _register_avoidance()
    ev = d["evidence"]
    from ..schema import _spec_from

    spec = _spec_from(ev["instance"])
    ci = compile_instance(spec)
    return REGISTRY[d["theorem_id"]].check(ci, ev["case"], ORACLE, Counter())


def sort_reports(reports: Iterable[TheoremReport]) -> list[TheoremReport]:
    return sorted(reports, key=lambda r: (r.instance_id, r.theorem_id))
