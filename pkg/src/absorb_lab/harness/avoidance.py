"""Covering scenarios and the avoidance statements.

Two readings of the range of ``m`` in the hypotheses are supported:

* reading ``A``: ``m`` runs over ``M \\ N_k``;
* reading ``B``: ``m`` runs over the complement of some prime submodule
  containing ``N_k``, i.e. over ``M \\ M-rad(N_k)``.

Both are always computed; the CLI can restrict which ones are reported.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .. import module as mod
from ..predicates import Predicate
from .engine import FAST
from .theorems import REGISTRY, Theorem, TheoremReport, VERIFIED, REFUTED, INAPPLICABLE, holds

READINGS = ("A", "B")
MAX_MODULE = 16
MAX_COVERS = 4

_active = list(READINGS)


def set_readings(readings) -> None:
    """Restrict the registered scans to some of the readings."""
    bad = [r for r in readings if r not in READINGS]
    if bad or not readings:
        raise ValueError(f"readings must be drawn from {READINGS}")
    _active[:] = [r for r in READINGS if r in readings]


@dataclass(frozen=True)
class CoveringScenario:
    target: tuple[int, ...]
    covers: tuple[tuple[int, ...], ...]
    multset: tuple[int, ...]
    efficient: bool


def _covered(n, covers) -> bool:
    union = set().union(*map(set, covers))
    return set(n) <= union


def is_efficient(n, covers) -> bool:
    """No cover can be dropped without losing coverage of ``n``."""
    return all(not _covered(n, covers[:k] + covers[k + 1:]) for k in range(len(covers)))


def coverings(module, max_n: int = MAX_COVERS, eng=FAST) -> Iterator[tuple[tuple, tuple]]:
    """``(N, covers)`` with ``2 <= n <= max_n`` distinct proper covers and N in their union."""
    subs = eng.proper_submodules(module)
    every = eng.submodules(module)
    for n in range(2, max_n + 1):
        for covers in combinations(subs, n):
            union = set().union(*map(set, covers))
            for target in every:
                if set(target) <= union:
                    yield target, covers


class _Hypotheses:
    """Per-submodule data for the hypotheses, cached for one module and S."""

    def __init__(self, module, s, eng=FAST):
        self.m, self.s, self.eng = module, tuple(s), eng
        self._range: dict = {}
        self._rad: dict = {}
        self._h2: dict = {}
        self._s1ap: dict = {}

    def m_range(self, k, reading):
        key = (k, reading)
        if key not in self._range:
            outside = set(k) if reading == "A" else set(self.eng.mrad(self.m, k))
            self._range[key] = [x for x in self.m.elements if x not in outside]
        return self._range[key]

    def rad_colon(self, k, x):
        key = (k, x)
        if key not in self._rad:
            self._rad[key] = set(self.eng.radical(self.m.ring, self.eng.colon_elem(self.m, k, x)))
        return self._rad[key]

    def h1(self, k, reading) -> bool:
        return all(not self.rad_colon(k, x) & set(self.s) for x in self.m_range(k, reading))

    def h2(self, j, k, reading) -> bool:
        key = (j, k, reading)
        if key not in self._h2:
            ring = self.m.ring
            rj = self.eng.radical(ring, self.eng.colon(self.m, j))
            ok = True
            for x in self.m_range(k, reading):
                target = self.rad_colon(k, x)
                for t in self.s:
                    if all(int(ring.mul[t, a]) in target for a in rj):
                        ok = False
                        break
                if not ok:
                    break
            self._h2[key] = ok
        return self._h2[key]

    def s1ap(self, k) -> bool:
        if k not in self._s1ap:
            self._s1ap[k] = holds(self.eng, self.m, k, self.s, Predicate.S_ONE_ABS_PRIMARY)
        return self._s1ap[k]

    def common(self, covers, reading) -> bool:
        if not all(self.h1(k, reading) for k in covers):
            return False
        return all(self.h2(j, k, reading) for j in covers for k in covers if j != k)


def scan(module, s, max_n: int = MAX_COVERS, readings=READINGS, eng=FAST,
         stats: Optional[Counter] = None) -> Optional[dict]:
    """Check the avoidance theorem and A1 on every covering; first violation or None."""
    stats = Counter() if stats is None else stats
    hyp = _Hypotheses(module, s, eng)
    for target, covers in coverings(module, max_n, eng):
        stats["scenarios"] += 1
        trivially = any(set(target) <= set(k) for k in covers)
        efficient = is_efficient(target, covers)
        stats["efficient"] += efficient
        for reading in readings:
            if not hyp.common(covers, reading):
                continue
            not_s1ap = sum(not hyp.s1ap(k) for k in covers)
            if not_s1ap <= 2:
                stats[f"reading-{reading}:avoidance-hypotheses"] += 1
                if not trivially:
                    return {"statement": "avoidance", "reading": reading, "target": list(target),
                            "covers": [list(k) for k in covers]}
            if efficient and len(covers) > 2:
                stats[f"reading-{reading}:a1-hypotheses"] += 1
                hit = [list(k) for k in covers if hyp.s1ap(k)]
                if hit:
                    return {"statement": "a1", "reading": reading, "target": list(target),
                            "covers": [list(k) for k in covers], "s_one_abs_primary_cover": hit[0]}
    return None


def avoidance_scan(module, s, max_n: int = MAX_COVERS, readings=READINGS, eng=FAST,
                   label: str = "") -> list[TheoremReport]:
    """Reports for the avoidance theorem and A1, one per reading."""
    out = []
    if not mod.is_multiplication(module):
        for tid in ("a1", "avoidance"):
            for r in readings:
                out.append(TheoremReport(f"{tid}[{r}]", label or module.label, INAPPLICABLE,
                                         {"gate": "module is not a multiplication module"}))
        return out
    for r in readings:
        stats: Counter = Counter()
        bad = scan(module, s, max_n, (r,), eng, stats)
        for tid in ("a1", "avoidance"):
            ev: dict = {"stats": {k: stats[k] for k in sorted(stats)}}
            if tid == "a1" and max_n < 3:
                out.append(TheoremReport(f"{tid}[{r}]", label or module.label, INAPPLICABLE,
                                         {"gate": "efficient coverings need n > 2"}))
                continue
            if bad is not None and bad["statement"] == tid:
                ev["case"] = bad
                out.append(TheoremReport(f"{tid}[{r}]", label or module.label, REFUTED, ev))
            else:
                out.append(TheoremReport(f"{tid}[{r}]", label or module.label, VERIFIED, ev))
    return out


# -- registry entries ------------------------------------------------------------------

def _applies(ci) -> Optional[str]:
    if ci.ring.size == 1 or ci.module.size == 1:
        return "zero ring or zero module"
    if ci.module.size > MAX_MODULE:
        return f"module larger than {MAX_MODULE}"
    if not mod.is_multiplication(ci.module):
        return "module is not a multiplication module"
    return None


def _sets(ci):
    from .theorems import _sets as sets

    return sets(ci.ring)


def _cases(ci):
    for s in _sets(ci):
        for r in _active:
            yield {"S": s, "reading": r}


def _check_for(statement):
    def check(ci, case, eng, stats):
        sub: Counter = Counter()
        bad = scan(ci.module, case["S"], MAX_COVERS, (case["reading"],), eng, sub)
        for k, v in sub.items():
            stats[k] += v
        if bad is not None and bad["statement"] == statement:
            return f"reading {bad['reading']}: covering {bad['covers']} of {bad['target']} violates the conclusion"
        return None
    return check


REGISTRY["avoidance"] = Theorem(
    "avoidance", "a covered submodule lies in one cover under the avoidance hypotheses",
    _applies, _cases, _check_for("avoidance"), ("avoidance",))
REGISTRY["a1"] = Theorem(
    "a1", "efficient coverings with n > 2 have no S-1-absorbing primary cover under the hypotheses",
    _applies, _cases, _check_for("a1"), ("avoidance",))


def _quotient_cases(ci):
    for k in FAST.submodules(ci.module):
        if 1 < len(k) < ci.module.size:
            for s in _sets(ci):
                yield {"K": list(k), "S": s, "readings": list(_active)}


def _check_quotient(ci, case, eng, stats):
    m = ci.module
    readings = case.get("readings", READINGS)
    if scan(m, case["S"], MAX_COVERS, readings, eng) is not None:
        return None  # the corollary only speaks when M itself satisfies the theorem
    q, _ = mod.quotient(m, mod.Submodule(m, case["K"]))
    stats["quotients"] += 1
    bad = scan(q, case["S"], MAX_COVERS, readings, eng)
    if bad is not None:
        return f"M/K violates {bad['statement']} under reading {bad['reading']}"
    return None


REGISTRY["avoidance-quotient"] = Theorem(
    "avoidance-quotient", "the avoidance statement passes from M to its quotients",
    _applies, _quotient_cases, _check_quotient, ("avoidance",))
