import json
from collections import Counter

import pytest

from absorb_lab import module as mod
from absorb_lab.harness.avoidance import avoidance_scan, coverings, is_efficient
from absorb_lab.harness.corpus import Bounds, generate_corpus
from absorb_lab.harness.engine import ORACLE
from absorb_lab.harness.search import separate_classes
from absorb_lab.predicates import ALL_PREDICATES
from absorb_lab.harness.theorems import (
    INAPPLICABLE,
    REFUTED,
    VERIFIED,
    recheck,
    resolve_suite,
    sort_reports,
    verify_theorems,
)
from absorb_lab.ring import InputError, MultiplicativeSet, build_zn, is_quasilocal
from absorb_lab.schema import InstanceSpec, compile_instance, parse_instance, serialize

from .golden_data import GOLDEN, SEPARATIONS, dump


def _spec(ring, module=None, id="t"):
    return InstanceSpec(id=id, ring=ring, module=module)


def test_corpus_golden(small_corpus):
    doc = json.loads((GOLDEN / "corpus_8_16_1.json").read_text())
    assert doc["count"] == len(small_corpus)
    assert doc["ids"] == [s.id for s in small_corpus]
    ids = set(doc["ids"])
    assert {f"Z{n}|Z{n}" for n in range(2, 9)} <= ids
    assert {"Z2xZ2|Z2xZ2", "Z2(+)Z2|Z2(+)Z2", "Z4dup2|Z4dup2"} <= ids


def test_corpus_is_deterministic(corpus):
    assert len(corpus) >= 150
    assert serialize(generate_corpus(Bounds())) == serialize(corpus)


def test_smallest_bounds():
    specs = generate_corpus(Bounds(1, 1, 0))
    assert [s.id for s in specs] == ["Z1|Z1"]
    m = compile_instance(specs[0]).module
    for p in ALL_PREDICATES:
        assert ORACLE.pred(m, (0,), (0,) if p.uses_s else None, p)[0] is False
    for r in verify_theorems(specs[0]):
        assert r.status == (VERIFIED if r.theorem_id == "axioms" else INAPPLICABLE)


def test_bounds_parse():
    assert Bounds.parse("8,16,1") == Bounds(8, 16, 1)
    with pytest.raises(ValueError):
        Bounds.parse("8,16")


def test_char_on_z8_mod_4():
    spec = parse_instance(json.dumps({"id": "z8/4", "ring": {"kind": "zn", "n": 8},
                                      "module": {"kind": "quotient", "module": {"kind": "regular"},
                                                 "K": [0, 4]}}))
    (rep,) = verify_theorems(spec, "char")
    assert rep.status == VERIFIED and rep.evidence["checked"] > 0


def test_cq_on_z6():
    (rep,) = verify_theorems(_spec({"kind": "zn", "n": 6}), "cq")
    assert rep.status == VERIFIED
    (rep,) = verify_theorems(_spec({"kind": "zn", "n": 8}), "cq")
    assert rep.status == INAPPLICABLE and "quasilocal" in rep.evidence["gate"]


def test_unknown_theorem():
    with pytest.raises(InputError):
        resolve_suite("no-such-theorem")
    assert "Tq" in resolve_suite("core") and "id" in resolve_suite("constructions")
    assert resolve_suite("coverings") == ["a1", "avoidance", "avoidance-quotient"]
    assert resolve_suite("avoidance") == ["avoidance"]


def test_reports_sorted_and_serializable():
    reps = verify_theorems(_spec({"kind": "zn", "n": 4}, id="b")) + \
        verify_theorems(_spec({"kind": "zn", "n": 2}, id="a"), "char")
    out = sort_reports(reps)
    assert [r.instance_id for r in out][0] == "a"
    json.dumps([r.to_dict() for r in out])


@pytest.mark.parametrize("tid,ring,module", [
    ("ns", {"kind": "zn", "n": 10}, None),
    ("localization", {"kind": "zn", "n": 12},
     {"kind": "direct_sum", "parts": [{"kind": "quotient", "module": {"kind": "regular"},
                                       "K": list(range(0, 12, 2))}, {"kind": "regular"}]}),
])
def test_refutations_replay_from_evidence(tid, ring, module):
    (rep,) = verify_theorems(_spec(ring, module), tid)
    assert rep.status == REFUTED
    payload = json.loads(json.dumps(rep.to_dict()))
    assert recheck(payload) is not None


def test_repaired_statements_verify():
    spec = _spec({"kind": "zn", "n": 10})
    assert {r.status for r in verify_theorems(spec, "ns-s1ap,localization-forward")} == {VERIFIED}


def test_intersection_part_counterexample():
    # N = Z2+0+0 inside Z2+Z4+Z4 over Z12 meets K = 0+Z4+Z4 (index set below) badly
    ring = build_zn(12)
    spec = _spec({"kind": "zn", "n": 12}, {"kind": "direct_sum", "parts": [
        {"kind": "quotient", "module": {"kind": "regular"}, "K": list(range(0, 12, 2))},
        {"kind": "quotient", "module": {"kind": "regular"}, "K": list(range(0, 12, 4))},
        {"kind": "quotient", "module": {"kind": "regular"}, "K": list(range(0, 12, 4))}]})
    ci = compile_instance(spec)
    m = ci.module
    n = m.submodule([0, 16])
    k = m.submodule([0, 1, 2, 3, 8, 9, 10, 11])
    s = MultiplicativeSet(ci.ring, [1])
    assert ORACLE.pred(m, n.members, s.members, "s_one_abs_primary")[1]
    sub, inc = mod.submodule_as_module(k)
    inter = [i for i, x in enumerate(k.members) if x in n.members]
    assert ORACLE.pred(sub, tuple(inter), s.members, "s_one_abs_primary") == (True, False, None)
    del ring


def test_avoidance_readings_and_small_n():
    m = build_zn(12).regular_module
    s = [1]
    reps = avoidance_scan(m, s, max_n=2)
    assert {r.theorem_id for r in reps} == {"a1[A]", "a1[B]", "avoidance[A]", "avoidance[B]"}
    assert all(r.status == INAPPLICABLE for r in reps if r.theorem_id.startswith("a1"))
    reps = avoidance_scan(m, s, max_n=3)
    assert all(r.status == VERIFIED for r in reps)


def test_avoidance_on_non_multiplication_module():
    z2 = build_zn(2)
    plane = mod.product_module(z2.regular_module, z2.regular_module)
    assert {r.status for r in avoidance_scan(plane, [1])} == {INAPPLICABLE}
    lines = [k for k in plane.proper_submodules if len(k) == 2]
    covs = [(t, c) for t, c in coverings(plane, 3) if len(c) == 3 and set(c) == {k.members for k in lines}]
    assert covs and all(is_efficient(t, c) for t, c in covs if len(t) == 4)


@pytest.mark.parametrize("name", sorted(SEPARATIONS) + ["search_s1ap_not_1ap"])
def test_search_goldens(name, corpus):
    a, b, level = {**SEPARATIONS, "search_s1ap_not_1ap": ("s_one_abs_primary", "one_abs_primary", "module")}[name]
    got = dump(separate_classes(a, b, corpus, level=level))
    assert got == (GOLDEN / f"{name}.json").read_text()


def test_search_post_checks(corpus):
    hit = separate_classes("s_one_abs_primary", "s_one_abs_prime", corpus)
    assert hit["status"] == "found" and hit["post_check"]["mrad_differs_from_N"]
    for level in ("ideal", "module"):
        r = separate_classes("s_one_abs_primary", "s_primary", corpus, level=level)
        if r["status"] == "found":
            ci = compile_instance(parse_instance(json.dumps(r["instance"])))
            assert is_quasilocal(ci.ring)
    assert separate_classes("one_abs_primary", "s_one_abs_primary", corpus)["status"] == "exhausted"


def test_stats_are_counted():
    (rep,) = verify_theorems(_spec({"kind": "zn", "n": 12}), "avoidance")
    assert rep.status == VERIFIED
    stats = Counter(rep.evidence["stats"])
    assert stats["scenarios"] > 0
