from functools import lru_cache
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from absorb_lab import module as mod
from absorb_lab.constructions import product_ring
from absorb_lab.module import (
    Submodule,
    colon_module,
    colon_ring,
    componentwise_module,
    hom_image,
    hom_preimage,
    is_prime_submodule,
    m_radical,
    product_module,
    product_submodule,
    quotient,
    structure_flags,
    submodule_product,
)
from absorb_lab.ring import InputError, build_zn
from absorb_lab.schema import compile_module

from . import oracles


@lru_cache(maxsize=None)
def zn(n):
    return build_zn(n)


def regular(n):
    return zn(n).regular_module


def zd_over_zn(n, d):
    return compile_module({"kind": "quotient", "module": {"kind": "regular"},
                           "K": list(range(0, n, d))}, zn(n))


def brute_submodules(m):
    """Every subset closed under + and the action (tiny modules only)."""
    out = []
    for k in range(1, m.size + 1):
        for subset in combinations(range(m.size), k):
            s = set(subset)
            if m.zero in s and all(int(m.add[a, b]) in s for a in s for b in s) and \
                    all(int(m.act[r, a]) in s for r in m.ring.elements for a in s):
                out.append(subset)
    return sorted(out, key=lambda x: (len(x), x))


def test_colon_of_cyclic():
    m = regular(12)
    assert colon_ring(m.submodule([0, 4, 8])).members == (0, 4, 8)


def test_colon_in_direct_sum():
    z24 = build_zn(24)
    m = product_module(z24.regular_module, z24.regular_module)
    n = m.span([3 * 24])  # (3, 0)
    expected = tuple(r for r in range(24) if all(int(m.act[r, x]) in set(n.members) for x in m.elements))
    assert expected == (0,)
    assert colon_ring(n).members == expected


def test_colon_module():
    m = regular(12)
    n = m.submodule([0, 4, 8])
    assert colon_module(n, 2).members == (0, 2, 4, 6, 8, 10)


def test_lattices():
    assert [k.members for k in regular(4).submodules] == [(0,), (0, 2), (0, 1, 2, 3)]
    z2 = build_zn(2)
    plane = product_module(z2.regular_module, z2.regular_module)
    assert len(plane.submodules) == 5
    assert len(regular(6).submodules) == 4


@pytest.mark.parametrize("n,d", [(2, 2), (4, 2), (3, 3), (6, 2), (4, 4)])
def test_lattice_matches_subset_scan(n, d):
    m = product_module(regular(n), zd_over_zn(n, d))
    assert [k.members for k in m.submodules] == brute_submodules(m)


def test_mrad_of_zero_in_z12():
    assert m_radical(regular(12).zero_submodule()).members == (0, 6)


@given(st.integers(2, 36), st.integers(1, 36))
def test_mrad_of_ideal_is_radical(n, d):
    m = regular(n)
    k = m.submodule(oracles.ideal(n, d))
    if k.is_proper:
        assert m_radical(k).members == oracles.radical(n, d)


def test_prime_submodules():
    assert is_prime_submodule(regular(4).submodule([0, 2]))
    assert not is_prime_submodule(regular(8).submodule([0, 4]))
    assert is_prime_submodule(regular(7).zero_submodule())
    with pytest.raises(InputError):
        is_prime_submodule(regular(4).whole())


def test_mrad_is_idempotent_and_extensive():
    m = product_module(regular(4), zd_over_zn(4, 2))
    for k in m.proper_submodules:
        r = m_radical(k)
        assert set(k.members) <= set(r.members)
        assert m_radical(r).members == r.members if r.is_proper else True


def test_flags():
    f = structure_flags(regular(12))
    assert (f.multiplication, f.faithful, f.cyclic) == (True, True, True)
    assert f.um_set == oracles.units(12)
    z2 = build_zn(2)
    assert not structure_flags(product_module(z2.regular_module, z2.regular_module)).multiplication


def test_submodule_product():
    m = regular(8)
    n = m.submodule([0, 2, 4, 6])
    assert submodule_product(n, n).members == (0, 4)
    z2 = build_zn(2)
    plane = product_module(z2.regular_module, z2.regular_module)
    with pytest.raises(InputError):
        submodule_product(plane.zero_submodule(), plane.zero_submodule())


def test_quotients():
    m = regular(8)
    q, pi = quotient(m, m.submodule([0, 4]))
    assert q.size == 4 and q.ring.size == 8
    image = hom_image(pi, m.submodule([0, 2, 4, 6]))
    assert len(image) == 2
    assert quotient(m, m.whole())[0].size == 1
    assert hom_preimage(pi, q.zero_submodule()).members == (0, 4)


def test_componentwise_lattice():
    r = product_ring([build_zn(2), build_zn(3)])
    m = componentwise_module(r, [f.regular_module for f in r.correspondence.parts["factors"]])
    assert len(m.submodules) == 4


def test_mrad_of_product_submodule():
    m1, m2 = regular(12), zd_over_zn(12, 6)
    m = product_module(m1, m2)
    for n1 in m1.proper_submodules:
        n = product_submodule(n1, m2.whole(), m)
        expect = product_submodule(m_radical(n1), m2.whole(), m)
        assert m_radical(n).members == expect.members


def test_submodule_check():
    m = regular(8)
    with pytest.raises(InputError, match="3 \\+ 3"):
        m.submodule([0, 3])
    assert isinstance(m.submodule([0, 4]), Submodule)


def test_mrad_is_intersection_of_primes():
    m = product_module(regular(6), zd_over_zn(6, 2))
    for k in m.proper_submodules:
        primes = [p for p in m.proper_submodules if set(k.members) <= set(p.members) and is_prime_submodule(p)]
        expect = set(m.elements)
        for p in primes:
            expect &= set(p.members)
        assert m_radical(k).members == tuple(sorted(expect))
        assert mod.m_radical(k) is not None
