"""Deterministic searches over the corpus.

``separate_classes`` looks for the first instance in one predicate class
but not another. ``mutation_search`` looks for an instance on which the
fixed-s reading and the per-tuple reading of an S-predicate disagree.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .. import module as mod
from ..predicates import Predicate, _m_range, _premises, rad_colon_mask
from ..ring import is_quasilocal
from ..schema import InstanceSpec, compile_instance
from .corpus import DEFAULT_BOUNDS, generate_corpus
from .engine import FAST
from .theorems import _sets, gated, holds


def _candidates(corpus: Iterable[InstanceSpec], level: str, need_s: bool):
    """Yield ``(spec, compiled, N, S)`` in corpus order, lattice order, set order."""
    for spec in corpus:
        if level == "ideal" and spec.module is not None:
            continue
        ci = compile_instance(spec)
        if ci.ring.size == 1 or ci.module.size == 1:
            continue
        sets = _sets(ci.ring) if need_s else [None]
        for n in FAST.proper_submodules(ci.module):
            for s in sets:
                yield spec, ci, n, s


def _hit(spec: InstanceSpec, n, s) -> InstanceSpec:
    return InstanceSpec(id=spec.id, ring=spec.ring, module=spec.module, target=tuple(n),
                        multset=None if s is None else tuple(s), tags=spec.tags)


def separate_classes(pred_a, pred_b, corpus: Optional[Iterable[InstanceSpec]] = None,
                     level: str = "module", gated_only: bool = True) -> dict:
    """First instance where ``pred_a`` holds and ``pred_b`` fails, or an exhaustion report.

    With ``gated_only`` the search skips (N, S) pairs where (N:M) meets S,
    so an S-predicate cannot fail merely because its gate does.
    """
    a, b = Predicate(pred_a), Predicate(pred_b)
    corpus = generate_corpus(DEFAULT_BOUNDS) if corpus is None else corpus
    need_s = a.uses_s or b.uses_s
    checked = 0
    for spec, ci, n, s in _candidates(corpus, level, need_s):
        m = ci.module
        if need_s and gated_only and not gated(FAST, m, n, s):
            continue
        checked += 1
        if holds(FAST, m, n, s if a.uses_s else None, a, level) and \
                not holds(FAST, m, n, s if b.uses_s else None, b, level):
            hit = _hit(spec, n, s)
            return {"status": "found", "predicates": [a.value, b.value], "level": level,
                    "checked": checked, "instance": hit.to_dict(),
                    "post_check": post_check(a, b, ci, n, level)}
    return {"status": "exhausted", "predicates": [a.value, b.value], "level": level,
            "checked": checked}


def post_check(a: Predicate, b: Predicate, ci, n, level: str) -> dict:
    """Consistency facts a hit must satisfy."""
    m = ci.module
    out: dict = {}
    if (a, b) == (Predicate.S_ONE_ABS_PRIMARY, Predicate.S_ONE_ABS_PRIME):
        out["mrad_differs_from_N"] = FAST.mrad(m, tuple(n)) != tuple(n)
    if (a, b) == (Predicate.S_ONE_ABS_PRIMARY, Predicate.S_PRIMARY):
        out["quasilocal"] = bool(is_quasilocal(ci.ring))
        out["multiplication"] = bool(mod.is_multiplication(m))
    return out


# -- fixed-s versus per-tuple witnesses ------------------------------------------------

def _rescue_matrix(n: mod.Submodule, s_members, predicate: Predicate, level: str) -> np.ndarray:
    """``rescued[k, t]``: does the k-th element of S rescue premise tuple t?"""
    module = n.module
    ring = module.ring
    if predicate is Predicate.S_TWO_ABS_PRIMARY:
        rad = rad_colon_mask(n).astype(bool)
        nmask = n.mask.astype(bool)
        r = np.arange(ring.size)
        ab = ring.mul[r[:, None], r[None, :]]
        prem = nmask[module.act[ab]]  # [a, b, m]
        idx = np.argwhere(prem)
        rows = []
        for s in s_members:
            sa = ring.mul[s][idx[:, 0]]
            sb = ring.mul[s][idx[:, 1]]
            m = idx[:, 2]
            ok = nmask[module.act[sa, m]] | nmask[module.act[sb, m]] | rad[ring.mul[s][ab[idx[:, 0], idx[:, 1]]]]
            rows.append(ok)
        return np.array(rows, dtype=bool).reshape(len(s_members), len(idx))
    prem = _premises(n, predicate, _m_range(n, predicate, level))
    ok_a, ok_b = prem.ok_a.astype(bool), prem.ok_b.astype(bool)
    rows = [ok_a[ring.mul[s][prem.pp]] | ok_b[module.act[s][prem.pm]] for s in s_members]
    return np.array(rows, dtype=bool).reshape(len(s_members), len(prem.pp))


def per_tuple_holds(n: mod.Submodule, s_members, predicate, level: str = "module") -> bool:
    """The deliberately wrong reading: every tuple has *some* rescuing s."""
    rescued = _rescue_matrix(n, list(s_members), Predicate(predicate), level)
    return bool(rescued.any(axis=0).all())


def fixed_s_holds(n: mod.Submodule, s_members, predicate, level: str = "module") -> bool:
    """One s rescues every tuple (the definition; gate not checked here)."""
    rescued = _rescue_matrix(n, list(s_members), Predicate(predicate), level)
    return bool(rescued.all(axis=1).any())


S_PREDICATES = tuple(p for p in Predicate if p.uses_s)


def mutation_search(corpus: Optional[Iterable[InstanceSpec]] = None,
                    predicates: Iterable = S_PREDICATES) -> dict:
    """First gated instance where per-tuple witnesses exist but no uniform s does."""
    corpus = generate_corpus(DEFAULT_BOUNDS) if corpus is None else corpus
    preds = [Predicate(p) for p in predicates]
    checked = 0
    for spec, ci, n, s in _candidates(corpus, "module", True):
        m = ci.module
        if not gated(FAST, m, n, s):
            continue
        sub = mod.Submodule(m, n)
        for p in preds:
            checked += 1
            if per_tuple_holds(sub, s, p) and not fixed_s_holds(sub, s, p):
                return {"status": "found", "predicate": p.value, "checked": checked,
                        "instance": _hit(spec, n, s).to_dict()}
    return {"status": "exhausted", "predicates": [p.value for p in preds], "checked": checked}
