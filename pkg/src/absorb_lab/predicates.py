"""Ideal and submodule predicates with fixed-s witness semantics.

Every S-predicate is decided by trying each ``s`` of ``S`` in ascending
order and asking whether that single ``s`` rescues every premise tuple.
The premise tuples do not depend on ``s``, so they are collected once and
each candidate is checked with one kernel call.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import kernels
from .module import FiniteModule, Submodule, as_submodule, colon_ring, m_radical
from .ring import FiniteRing, Ideal, InputError, MultiplicativeSet


class Predicate(str, Enum):
    PRIME = "prime"
    PRIMARY = "primary"
    S_PRIME = "s_prime"
    S_PRIMARY = "s_primary"
    ONE_ABS_PRIMARY = "one_abs_primary"
    S_ONE_ABS_PRIMARY = "s_one_abs_primary"
    S_ONE_ABS_PRIME = "s_one_abs_prime"
    S_TWO_ABS_PRIMARY = "s_two_abs_primary"

    @property
    def uses_s(self) -> bool:
        return self.value.startswith("s_")

    @property
    def one_absorbing(self) -> bool:
        return "one_abs" in self.value


IDEAL_PREDICATES = (
    Predicate.PRIME, Predicate.PRIMARY, Predicate.S_PRIME, Predicate.S_PRIMARY,
    Predicate.ONE_ABS_PRIMARY, Predicate.S_ONE_ABS_PRIMARY,
)
ALL_PREDICATES = tuple(Predicate)


class Form(str, Enum):
    ELEMENTWISE = "elementwise"
    IBM = "Ibm"
    IJM = "IJm"
    IJK = "IJK"


@dataclass(frozen=True)
class PredicateReport:
    predicate: str
    applicable: bool
    holds: bool
    witness_s: Optional[int] = None
    counterexample: Optional[tuple] = None
    notes: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["counterexample"] is not None:
            d["counterexample"] = [int(x) for x in d["counterexample"]]
        return d


def _coerce(predicate) -> Predicate:
    try:
        return Predicate(predicate)
    except ValueError:
        raise InputError(f"unknown predicate {predicate!r}") from None


def _mask(owner_size: int, members) -> np.ndarray:
    m = np.zeros(owner_size, dtype=np.uint8)
    m[list(members)] = 1
    return m


def colon_mask(n: Submodule) -> np.ndarray:
    return _mask(n.module.ring.size, colon_ring(n).members)


def rad_colon_mask(n: Submodule) -> np.ndarray:
    return kernels.radical_mask(n.module.ring.mul, colon_mask(n))


def mrad_mask(n: Submodule) -> np.ndarray:
    return _mask(n.module.size, m_radical(n).members)


@dataclass
class _Premises:
    """Premise tuples of a predicate, independent of the witness ``s``."""

    pp: np.ndarray
    pm: np.ndarray
    ok_a: np.ndarray
    ok_b: np.ndarray
    factor: dict = field(default_factory=dict)  # scalar p -> smallest (a, b)


def _premises(n: Submodule, predicate: Predicate, m_range) -> _Premises:
    module, ring = n.module, n.module.ring
    nmask = n.mask
    if predicate in (Predicate.PRIME, Predicate.S_PRIME):
        ok_a, ok_b = colon_mask(n), nmask
    elif predicate in (Predicate.PRIMARY, Predicate.S_PRIMARY):
        ok_a, ok_b = rad_colon_mask(n), nmask
    elif predicate is Predicate.S_ONE_ABS_PRIME:
        ok_a, ok_b = colon_mask(n), nmask
    else:
        ok_a, ok_b = colon_mask(n), mrad_mask(n)
    factor = {}
    if predicate.one_absorbing:
        nu = np.asarray(ring.nonunits, dtype=np.int32)
        prods = ring.mul[np.ix_(nu, nu)]
        for i in range(len(nu)):
            for j in range(len(nu)):
                factor.setdefault(int(prods[i, j]), (int(nu[i]), int(nu[j])))
        scalars = np.array(sorted(factor), dtype=np.int32)
    else:
        scalars = np.arange(ring.size, dtype=np.int32)
    pp, pm = kernels.premise_pairs(scalars, np.asarray(m_range, dtype=np.int32), module.act, nmask)
    return _Premises(pp, pm, ok_a, ok_b, factor)


def _tuple_of(prem: _Premises, predicate: Predicate, i: int) -> tuple:
    p, m = int(prem.pp[i]), int(prem.pm[i])
    if predicate.one_absorbing:
        a, b = prem.factor[p]
        return (a, b, m)
    return (p, m)


def _m_range(n: Submodule, predicate: Predicate, level: str):
    module = n.module
    if level == "ideal" and predicate.one_absorbing:
        return module.ring.nonunits
    return range(module.size)


def _violation(n: Submodule, s: int, predicate: Predicate, prem: Optional[_Premises],
               rad: Optional[np.ndarray]) -> Optional[tuple]:
    module = n.module
    if predicate is Predicate.S_TWO_ABS_PRIMARY:
        return kernels.two_abs_violation(int(s), module.ring.mul, module.act, n.mask, rad)
    i = kernels.first_violation(int(s), prem.pp, prem.pm, module.ring.mul, module.act,
                                prem.ok_a, prem.ok_b)
    return None if i < 0 else _tuple_of(prem, predicate, i)


def fixed_s_violation(n: Submodule, s: int, predicate, level: str = "module") -> Optional[tuple]:
    """First tuple that the single element ``s`` fails to rescue, or None.

    For the plain predicates pass ``s = ring.one``.
    """
    predicate = _coerce(predicate)
    if predicate is Predicate.S_TWO_ABS_PRIMARY:
        return _violation(n, s, predicate, None, rad_colon_mask(n))
    prem = _premises(n, predicate, _m_range(n, predicate, level))
    return _violation(n, s, predicate, prem, None)


def _evaluate(n: Submodule, s_set: Optional[MultiplicativeSet], predicate: Predicate,
              level: str) -> PredicateReport:
    module = n.module
    ring = module.ring
    if not n.is_proper:
        raise InputError(f"{'ideal' if level == 'ideal' else 'submodule'} must be proper")
    if predicate.uses_s and s_set is None:
        raise InputError(f"{predicate.value} needs a multiplicative set")
    if s_set is not None and s_set.owner is not ring:
        raise InputError("multiplicative set belongs to a different ring")
    key = (n.members, None if s_set is None else s_set.members, predicate, level)
    cached = module.pred_cache.get(key)
    if cached is not None:
        return cached
    p = predicate.value
    if ring.size == 1 or module.size == 1:
        report = PredicateReport(p, False, False, notes="zero ring or zero module")
    elif predicate.uses_s and not s_set.isdisjoint(colon_ring(n)):
        hit = next(x for x in s_set.members if x in set(colon_ring(n).members))
        report = PredicateReport(p, False, False, notes=f"gate fails: {hit} lies in (N:M) and S")
    else:
        if predicate is Predicate.S_TWO_ABS_PRIMARY:
            prem, rad = None, rad_colon_mask(n)
        else:
            prem, rad = _premises(n, predicate, _m_range(n, predicate, level)), None
        candidates = s_set.members if predicate.uses_s else (ring.one,)
        first_bad = None
        report = None
        for s in candidates:
            bad = _violation(n, s, predicate, prem, rad)
            if bad is None:
                report = PredicateReport(p, True, True,
                                         witness_s=int(s) if predicate.uses_s else None)
                break
            if first_bad is None:
                first_bad = (int(s),) + bad if predicate.uses_s else bad
        if report is None:
            report = PredicateReport(p, True, False, counterexample=first_bad,
                                     notes="counterexample for the smallest s" if predicate.uses_s else "")
    module.pred_cache[key] = report
    return report


def check_submodule_predicate(module: FiniteModule, n: Submodule,
                              s_set: Optional[MultiplicativeSet], predicate) -> PredicateReport:
    if n.module is not module:
        raise InputError("submodule belongs to a different module")
    return _evaluate(n, s_set, _coerce(predicate), "module")


def check_ideal_predicate(ring: FiniteRing, ideal: Ideal,
                          s_set: Optional[MultiplicativeSet], predicate) -> PredicateReport:
    if ideal.ring is not ring:
        raise InputError("ideal belongs to a different ring")
    return _evaluate(as_submodule(ideal), s_set, _coerce(predicate), "ideal")


# -- characterization forms -------------------------------------------------


def _gated(n: Submodule, s_set: MultiplicativeSet, label: str) -> Optional[PredicateReport]:
    if not n.is_proper:
        raise InputError("submodule must be proper")
    if n.module.ring.size == 1 or n.module.size == 1:
        return PredicateReport(label, False, False, notes="zero ring or zero module")
    if not s_set.isdisjoint(colon_ring(n)):
        return PredicateReport(label, False, False, notes="gate fails")
    return None


def _first_good(label: str, s_set, bad_for) -> PredicateReport:
    first_bad = None
    for s in s_set.members:
        bad = bad_for(int(s))
        if bad is None:
            return PredicateReport(label, True, True, witness_s=int(s))
        if first_bad is None:
            first_bad = (int(s),) + tuple(int(x) for x in bad)
    return PredicateReport(label, True, False, counterexample=first_bad)


def _products(ring: FiniteRing, a, b) -> np.ndarray:
    return np.unique(ring.mul[np.ix_(np.asarray(a), np.asarray(b))])


def check_characterization(module: FiniteModule, n: Submodule, s_set: MultiplicativeSet,
                           form) -> PredicateReport:
    """Evaluate one quantified form of the S-1-absorbing primary condition.

    Counterexamples are ``(s, ...)`` followed by indices into
    ``ring.proper_ideals`` / ``module.submodules`` and raw elements:
    Ibm -> (s, I, b, m), IJm -> (s, I, J, m), IJK -> (s, I, J, K).
    """
    form = Form(form)
    label = f"s_one_abs_primary[{form.value}]"
    gate = _gated(n, s_set, label)
    if gate is not None:
        return gate
    if form is Form.ELEMENTWISE:
        r = check_submodule_predicate(module, n, s_set, Predicate.S_ONE_ABS_PRIMARY)
        return PredicateReport(label, r.applicable, r.holds, r.witness_s, r.counterexample)
    ring = module.ring
    nmask = n.mask.astype(bool)
    colon = colon_mask(n).astype(bool)
    rad = mrad_mask(n).astype(bool)
    act, mul = module.act, ring.mul
    ideals = ring.proper_ideals

    if form is Form.IBM:
        nu = np.asarray(ring.nonunits, dtype=np.intp)
        prem = []
        for i in ideals:
            ib = mul[np.ix_(i.members, nu)]  # [x, b]
            prem.append(nmask[act[ib]].all(axis=0))  # [b, m]: I b m in N

        def bad_for(s):
            sm_ok = rad[act[s]]
            for k, i in enumerate(ideals):
                ib = mul[np.ix_(i.members, nu)]
                sib_ok = colon[mul[s][ib]].all(axis=0)  # [b]
                bad = prem[k] & ~sib_ok[:, None] & ~sm_ok[None, :]
                if bad.any():
                    bi, m = np.argwhere(bad)[0]
                    return (k, int(nu[bi]), int(m))
            return None

    elif form is Form.IJM:
        pairs = []
        for a, i in enumerate(ideals):
            for b, j in enumerate(ideals):
                if b < a:
                    continue
                x = _products(ring, i.members, j.members)
                pairs.append((a, b, x, nmask[act[x]].all(axis=0)))

        def bad_for(s):
            sm_ok = rad[act[s]]
            for a, b, x, prem in pairs:
                if colon[mul[s][x]].all():
                    continue
                bad = prem & ~sm_ok
                if bad.any():
                    return (a, b, int(np.flatnonzero(bad)[0]))
            return None

    else:
        subs = module.submodules
        pairs = []
        for a, i in enumerate(ideals):
            for b, j in enumerate(ideals):
                if b < a:
                    continue
                x = _products(ring, i.members, j.members)
                inside = nmask[act[x]].all(axis=0)
                ks = [c for c, k in enumerate(subs) if inside[list(k.members)].all()]
                pairs.append((a, b, x, ks))

        def bad_for(s):
            for a, b, x, ks in pairs:
                if colon[mul[s][x]].all():
                    continue
                for c in ks:
                    if not rad[act[s][list(subs[c].members)]].all():
                        return (a, b, c)
            return None

    return _first_good(label, s_set, bad_for)


def check_ideal_triple_form(ring: FiniteRing, ideal: Ideal, s_set: MultiplicativeSet) -> PredicateReport:
    """Ideal-lattice form: I1 I2 I3 in I forces s I1 I2 in I or s I3 in sqrt(I).

    Counterexample is ``(s, i1, i2, i3)`` as indices into ``ring.proper_ideals``.
    """
    label = "s_one_abs_primary[I1I2I3]"
    n = as_submodule(ideal)
    gate = _gated(n, s_set, label)
    if gate is not None:
        return gate
    imask = ideal.mask.astype(bool)
    rad = kernels.radical_mask(ring.mul, ideal.mask).astype(bool)
    ideals = ring.proper_ideals
    triples = []
    for a, i1 in enumerate(ideals):
        for b in range(a, len(ideals)):
            x = _products(ring, i1.members, ideals[b].members)
            for c, i3 in enumerate(ideals):
                if imask[_products(ring, x, i3.members)].all():
                    triples.append((a, b, c, x, np.asarray(i3.members)))

    def bad_for(s):
        row = ring.mul[s]
        for a, b, c, x, i3 in triples:
            if not imask[row[x]].all() and not rad[row[i3]].all():
                return (a, b, c)
        return None

    return _first_good(label, s_set, bad_for)


def check_product_form(module: FiniteModule, n: Submodule, s_set: MultiplicativeSet) -> PredicateReport:
    """Submodule-product form on a multiplication module.

    N1 N2 N3 in N forces s N1 N2 in N or s N3 in M-rad(N), over proper
    submodules. Counterexample indices refer to ``module.submodules``.
    """
    from .module import is_multiplication, submodule_product

    label = "s_one_abs_primary[N1N2N3]"
    if not is_multiplication(module):
        raise InputError("submodule products need a multiplication module")
    gate = _gated(n, s_set, label)
    if gate is not None:
        return gate
    subs = module.submodules
    proper = [k for k, x in enumerate(subs) if x.is_proper]
    nset = set(n.members)
    rad = mrad_mask(n).astype(bool)
    prod2 = {}
    for a in proper:
        for b in proper:
            if b >= a:
                prod2[(a, b)] = submodule_product(subs[a], subs[b])
    triples = []
    for (a, b), p in prod2.items():
        for c in proper:
            if set(submodule_product(p, subs[c]).members) <= nset:
                triples.append((a, b, c, np.asarray(p.members), np.asarray(subs[c].members)))

    def bad_for(s):
        row = module.act[s]
        for a, b, c, p, k in triples:
            if not set(row[p].tolist()) <= nset and not rad[row[k]].all():
                return (a, b, c)
        return None

    return _first_good(label, s_set, bad_for)
