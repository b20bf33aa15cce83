import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from absorb_lab import module as mod
from absorb_lab.harness.corpus import Bounds, generate_corpus, multsets
from absorb_lab.harness.engine import FAST, ORACLE
from absorb_lab.harness.search import fixed_s_holds, per_tuple_holds
from absorb_lab.predicates import (
    ALL_PREDICATES,
    IDEAL_PREDICATES,
    Predicate,
    check_characterization,
    check_ideal_predicate,
    check_submodule_predicate,
    fixed_s_violation,
)
from absorb_lab.ring import InputError, MultiplicativeSet, build_zn
from absorb_lab.schema import compile_instance

SMALL = [compile_instance(s) for s in generate_corpus(Bounds(8, 16, 1))
         if s.id.split("|")[0] not in ("Z1",)]


def test_z4_zero_ideal():
    z4 = build_zn(4)
    rep = check_ideal_predicate(z4, z4.zero_ideal(), MultiplicativeSet(z4, [1]), "s_one_abs_primary")
    assert rep.applicable and rep.holds and rep.witness_s == 1


def test_z6_prime_ideal():
    z6 = build_zn(6)
    assert check_ideal_predicate(z6, z6.ideal([0, 2, 4]), None, "prime").holds


def test_gate_violation_is_not_applicable():
    z6 = build_zn(6)
    rep = check_ideal_predicate(z6, z6.ideal([0, 2, 4]), MultiplicativeSet(z6, [2, 4]), "s_one_abs_primary")
    assert not rep.applicable and not rep.holds and "gate" in rep.notes


def test_errors():
    z6 = build_zn(6)
    with pytest.raises(InputError):
        check_ideal_predicate(z6, z6.whole(), MultiplicativeSet(z6, [1]), "prime")
    with pytest.raises(InputError):
        check_ideal_predicate(z6, z6.zero_ideal(), None, "s_prime")
    with pytest.raises(InputError):
        check_ideal_predicate(z6, z6.zero_ideal(), None, "no_such_predicate")


def test_z8_four_forms_agree():
    z8 = build_zn(8)
    m = z8.regular_module
    n = m.submodule([0, 4])
    s = MultiplicativeSet(z8, [1])
    rep = check_submodule_predicate(m, n, s, "s_one_abs_primary")
    assert rep.holds and rep.witness_s == 1
    for form in ("elementwise", "Ibm", "IJm", "IJK"):
        assert check_characterization(m, n, s, form).holds


def test_counterexample_is_genuine():
    z8 = build_zn(8)
    m = z8.regular_module
    n = m.submodule([0, 4])
    bad = fixed_s_violation(n, 1, "prime")
    r, x = bad
    assert int(m.act[r, x]) in n.members
    assert r not in mod.colon_ring(n).members and x not in n.members


def _cases(ci):
    m = ci.module
    for n in m.proper_submodules:
        for s in multsets(ci.ring):
            yield n, s


@pytest.mark.parametrize("ci", SMALL, ids=lambda c: c.spec.id)
def test_engines_agree(ci):
    m = ci.module
    for n, s in _cases(ci):
        for p in ALL_PREDICATES:
            sm = s.members if p.uses_s else None
            assert FAST.pred(m, n.members, sm, p) == ORACLE.pred(m, n.members, sm, p), (n, s, p)


@pytest.mark.parametrize("ci", [c for c in SMALL if c.spec.module is None], ids=lambda c: c.spec.id)
def test_regular_module_matches_ideal_level(ci):
    m = ci.module
    for n, s in _cases(ci):
        for p in IDEAL_PREDICATES:
            sm = s.members if p.uses_s else None
            assert FAST.pred(m, n.members, sm, p) == FAST.pred(m, n.members, sm, p, "ideal")


@pytest.mark.parametrize("ci", SMALL[::3], ids=lambda c: c.spec.id)
def test_classes_coincide_when_radical_is_n(ci):
    m = ci.module
    for n, s in _cases(ci):
        if mod.m_radical(n).members == n.members:
            a = check_submodule_predicate(m, n, s, "s_one_abs_primary")
            b = check_submodule_predicate(m, n, s, "s_one_abs_prime")
            assert (a.applicable, a.holds) == (b.applicable, b.holds)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(SMALL), st.data())
def test_per_tuple_witnesses_combine(ci, data):
    # the product of all of S rescues any tuple some member of S rescues
    m = ci.module
    n = data.draw(st.sampled_from(m.proper_submodules))
    s = data.draw(st.sampled_from(multsets(ci.ring)))
    p = data.draw(st.sampled_from([x for x in Predicate if x.uses_s]))
    assert per_tuple_holds(n, s.members, p) == fixed_s_holds(n, s.members, p)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(SMALL), st.data())
def test_witness_really_works(ci, data):
    m = ci.module
    n = data.draw(st.sampled_from(m.proper_submodules))
    s = data.draw(st.sampled_from(multsets(ci.ring)))
    p = data.draw(st.sampled_from([x for x in Predicate if x.uses_s]))
    rep = check_submodule_predicate(m, n, s, p)
    if rep.holds:
        assert ORACLE.works_with(m, n.members, rep.witness_s, p)
        assert all(not ORACLE.works_with(m, n.members, t, p) for t in s.members if t < rep.witness_s)


def test_hierarchy_s_prime_is_s_one_abs_primary():
    for ci in SMALL:
        m = ci.module
        for n, s in _cases(ci):
            if FAST.pred(m, n.members, s.members, "s_prime")[1]:
                assert FAST.pred(m, n.members, s.members, "s_one_abs_primary")[1]
