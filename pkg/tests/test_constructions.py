from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from absorb_lab import constructions as C
from absorb_lab import module as mod
from absorb_lab.ring import InputError, MultiplicativeSet, RingHom, build_zn, radical, units
from absorb_lab.schema import compile_module


def zd_over(ring, d):
    return compile_module({"kind": "quotient", "module": {"kind": "regular"},
                           "K": list(range(0, ring.size, d))}, ring)


def isomorphic(r, s):
    if r.size != s.size:
        return False
    for perm in permutations(range(s.size)):
        p = np.array(perm)
        if p[r.one] == s.one and np.array_equal(p[r.add], s.add[p[:, None], p[None, :]]) and \
                np.array_equal(p[r.mul], s.mul[p[:, None], p[None, :]]):
            return True
    return False


def test_idealization_arithmetic():
    z2 = build_zn(2)
    t = C.idealization(z2, z2.regular_module)
    c = t.correspondence
    x = c.encode((1, 1))
    assert c.decode(int(t.mul[x, x])) == (1, 0)
    t.check_axioms()


def test_idealization_of_z4_by_z2():
    z4 = build_zn(4)
    t = C.idealization(z4, zd_over(z4, 2))
    assert t.size == 8
    assert t.correspondence.decode(t.zero) == (0, 0)
    assert t.correspondence.decode(t.one) == (1, 0)
    s = C.idealization_multset(t, MultiplicativeSet(z4, [1]), "zero")
    assert [t.correspondence.decode(x) for x in s.members] == [(1, 0)]
    assert len(C.idealization_multset(t, MultiplicativeSet(z4, [1]), "full")) == 2


@pytest.mark.parametrize("n,d", [(2, 2), (4, 2), (4, 4), (6, 3), (3, 3)])
def test_idealization_units_and_radicals(n, d):
    r = build_zn(n)
    m = zd_over(r, d)
    t = C.idealization(r, m)
    t.check_axioms()
    c = t.correspondence
    assert {c.decode(u) for u in units(t)} == {(u, x) for u in units(r) for x in m.elements}
    for i in r.ideals:
        whole = m.whole()
        ideal = C.idealization_ideal(t, i, whole)
        expect = C.idealization_ideal(t, radical(i), whole)
        assert radical(ideal).members == expect.members


def test_idealization_ideal_needs_im_in_n():
    z4 = build_zn(4)
    t = C.idealization(z4, z4.regular_module)
    with pytest.raises(InputError, match="IM is not inside N"):
        C.idealization_ideal(t, z4.whole(), z4.regular_module.zero_submodule())
    zero = C.idealization_ideal(t, z4.zero_ideal(), z4.regular_module.submodule([0, 2]))
    assert len(zero) == 2


def test_amalgamation_sizes():
    z4, z2 = build_zn(4), build_zn(2)
    f = RingHom(z4, z2, [0, 1, 0, 1])
    assert C.amalgamation(z4, z2, f, z2.zero_ideal()).size == 4
    t = C.amalgamation(z4, z2, f, z2.whole())
    assert t.size == 8
    assert sorted(t.correspondence.elements) == [(a, b) for a in range(4) for b in range(2)]
    t.check_axioms()
    zero = C.amalgamation(z4, z2, f, z2.zero_ideal())
    assert C.amalgamation_ideal(zero, z4.zero_ideal()).members == (zero.zero,)


def test_bad_homomorphism():
    z4, z3 = build_zn(4), build_zn(3)
    with pytest.raises(InputError):
        RingHom(z4, z3, [0, 1, 2, 0])


def test_duplication_is_amalgamation_along_identity():
    z4 = build_zn(4)
    i = z4.ideal([0, 2])
    d = C.duplication_ring(z4, i)
    a = C.amalgamation(z4, z4, RingHom(z4, z4, range(4)), i)
    assert np.array_equal(d.add, a.add) and np.array_equal(d.mul, a.mul)


def test_duplication_module_carrier():
    z4 = build_zn(4)
    i = z4.ideal([0, 2])
    dm = C.duplication_module(z4.regular_module, i)
    assert dm.size == 8
    assert sorted(dm.correspondence.elements) == sorted((m, k) for m in range(4) for k in range(4)
                                                        if (m - k) % 4 in (0, 2))
    dm.check_axioms()
    diag = C.duplication_module(z4.regular_module, z4.zero_ideal())
    assert diag.correspondence.elements == [(m, m) for m in range(4)]


@pytest.mark.parametrize("n", [4, 6, 8, 9])
def test_duplication_colon_and_radical(n):
    r = build_zn(n)
    for i in r.ideals[1:]:
        d = C.duplication_ring(r, i)
        dm = C.duplication_module(r.regular_module, i, d)
        for k in r.regular_module.proper_submodules:
            nd = C.dup_submodule(dm, k)
            col = mod.colon_ring(nd).members
            expect = C.amalgamation_ideal(d, mod.colon_ring(k)).members
            assert col == expect
            rad = C.dup_submodule(dm, mod.m_radical(k))
            assert mod.m_radical(nd).members == rad.members


def test_localization_examples():
    z6 = build_zn(6)
    loc, hom = C.localize(z6, MultiplicativeSet(z6, [1]))
    assert loc.size == 6 and len(set(hom.map.tolist())) == 6
    loc, hom = C.localize(z6, MultiplicativeSet(z6, [1, 3]))
    assert loc.size == 2
    assert [x for x in range(6) if hom(x) == loc.zero] == [0, 2, 4]
    loc, _ = C.localize(z6, MultiplicativeSet(z6, [0, 1]))
    assert loc.size == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 24), st.integers(0, 23))
def test_localization_of_zn_by_powers(n, g):
    # inverting g in Z_n kills the primary components of primes dividing g
    r = build_zn(n)
    g %= n
    s = MultiplicativeSet(r, {pow(g, k, n) for k in range(1, n + 1)} | {1})
    loc, _ = C.localize(r, s)
    size = n
    from math import gcd
    while gcd(size, g) > 1:
        size //= gcd(size, g)
    assert loc.size == (1 if g == 0 else size)


def test_product_of_z2_z3_is_z6():
    assert isomorphic(C.product_ring([build_zn(2), build_zn(3)]), build_zn(6))
    assert not isomorphic(C.product_ring([build_zn(2), build_zn(2)]), build_zn(4))


def test_quotient_ring():
    z12 = build_zn(12)
    q, pi = C.quotient_ring(z12, z12.ideal([0, 4, 8]))
    assert q.size == 4 and isomorphic(q, build_zn(4))
    assert pi(5) == pi(1)


def test_subring_and_bar():
    z4, z2 = build_zn(4), build_zn(2)
    f = RingHom(z4, z2, [0, 1, 0, 1])
    t = C.amalgamation(z4, z2, f, z2.whole())
    c = C.subring_fA_plus_J(z2, f, z2.whole())
    assert c.size == 2
    k = c.zero_ideal()
    bar = C.bar_ideal(t, c, k)
    assert {t.correspondence.decode(x)[1] for x in bar.members} == {0}
    assert radical(bar).members == C.bar_ideal(t, c, radical(k)).members
