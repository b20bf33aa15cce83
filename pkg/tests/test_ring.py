import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from absorb_lab.constructions import build_f4, idealization, product_ring
from absorb_lab.ring import (
    FiniteRing,
    InputError,
    MultiplicativeSet,
    build_zn,
    ideal_generate,
    ideal_product,
    is_quasilocal,
    max_multiple_witness,
    multiplicative_closure,
    radical,
    saturate,
    units,
    zero_divisors_mod,
)

from . import oracles


def test_zero_ring():
    r = build_zn(1)
    assert r.size == 1 and r.zero == r.one


def test_zn_rejects_zero():
    with pytest.raises(InputError):
        build_zn(0)


@pytest.mark.parametrize("n,expected", [(6, (1, 5)), (4, (1, 3))])
def test_units_small(n, expected):
    assert units(build_zn(n)) == expected


def test_units_of_idealization():
    z2 = build_zn(2)
    t = idealization(z2, z2.regular_module)
    decoded = {t.correspondence.decode(u) for u in units(t)}
    assert decoded == {(1, 0), (1, 1)}


@given(st.integers(2, 40))
def test_units_match_gcd(n):
    assert units(build_zn(n)) == oracles.units(n)


def test_ideal_generate():
    z12 = build_zn(12)
    assert ideal_generate(z12, [4]).members == (0, 4, 8)
    assert ideal_generate(z12, []).members == (0,)
    assert ideal_generate(build_zn(6), [2, 3]).members == tuple(range(6))


def test_ideal_product():
    z12, z8 = build_zn(12), build_zn(8)
    assert ideal_product(z12.ideal([0, 4, 8]), z12.ideal([0, 3, 6, 9])).members == (0,)
    assert ideal_product(z8.ideal([0, 2, 4, 6]), z8.ideal([0, 2, 4, 6])).members == (0, 4)
    with pytest.raises(InputError):
        ideal_product(z12.ideal([0]), z8.ideal([0]))


def test_radical_examples():
    z8, z12 = build_zn(8), build_zn(12)
    assert radical(z8.ideal([0, 4])).members == (0, 2, 4, 6)
    assert radical(z12.zero_ideal()).members == (0, 6)


@given(st.integers(2, 36), st.integers(0, 36))
def test_radical_matches_factorization(n, d):
    r = build_zn(n)
    assert radical(r.ideal(oracles.ideal(n, d))).members == oracles.radical(n, d)


@given(st.integers(1, 30))
def test_ideal_lattice_is_divisor_lattice(n):
    assert [i.members for i in build_zn(n).ideals] == oracles.ideals(n)


@given(st.integers(2, 30))
def test_saturation_of_one_is_units(n):
    r = build_zn(n)
    assert saturate(r, MultiplicativeSet(r, [1])).members == oracles.units(n)


def _saturation_oracle(ring, s):
    # r in S* iff r*x = s' for some x, s' up to an S-torsion term u(rx - s') = 0
    out = []
    for r in ring.elements:
        if any(int(ring.mul[u, ring.sub(int(ring.mul[r, x]), t)]) == ring.zero
               for x in ring.elements for t in s for u in s):
            out.append(r)
    return tuple(out)


def test_saturation_z24():
    z24 = build_zn(24)
    s = MultiplicativeSet(z24, [3, 9])
    sat = saturate(z24, s).members
    assert sat == _saturation_oracle(z24, [3, 9])
    assert {3, 9} <= set(sat) and set(oracles.units(24)) <= set(sat)


def test_max_multiple_witness():
    z24 = build_zn(24)
    assert max_multiple_witness(MultiplicativeSet(z24, [1])) == 1
    assert max_multiple_witness(MultiplicativeSet(z24, [3, 9])) == 3
    assert max_multiple_witness(MultiplicativeSet(z24, units(z24))) == 1


@given(st.integers(2, 30), st.integers(0, 29))
def test_max_multiple_divisible_by_all(n, g):
    r = build_zn(n)
    s = multiplicative_closure(r, [g % n])
    t = max_multiple_witness(s)
    assert all(any(int(r.mul[u, x]) == t for x in r.elements) for u in s.members)


@pytest.mark.parametrize("n", range(2, 40))
def test_quasilocal_iff_prime_power(n):
    assert is_quasilocal(build_zn(n)) == oracles.quasilocal(n)


def test_products_are_not_quasilocal():
    z3 = build_zn(3)
    assert not is_quasilocal(product_ring([z3, z3]))
    assert not is_quasilocal(product_ring([build_zn(4), build_zn(2)]))
    assert is_quasilocal(build_f4())


def test_zero_divisors_mod():
    z6, z4, z7 = build_zn(6), build_zn(4), build_zn(7)
    assert zero_divisors_mod(z6.zero_ideal()) == (0, 2, 3, 4)
    assert zero_divisors_mod(z4.ideal([0, 2])) == (0, 2)
    assert zero_divisors_mod(z7.zero_ideal()) == (0,)
    with pytest.raises(InputError):
        zero_divisors_mod(z6.whole())


def test_bad_tables_rejected():
    add = [[0, 1], [1, 0]]
    with pytest.raises(InputError, match="distributivity|identity|associative"):
        FiniteRing(add, [[0, 0], [0, 0]], 0, 1)
    with pytest.raises(InputError):
        FiniteRing([[0, 1], [0, 1]], add, 0, 1)


def test_multiplicative_set_checks_closure():
    z6 = build_zn(6)
    with pytest.raises(InputError, match="closed"):
        MultiplicativeSet(z6, [2])
    assert MultiplicativeSet(z6, [2, 4]).members == (2, 4)


@settings(max_examples=25)
@given(st.lists(st.integers(2, 5), min_size=1, max_size=2))
def test_product_axioms_and_units(ns):
    rings = [build_zn(n) for n in ns]
    p = product_ring(rings)
    p.check_axioms()
    expect = {t for t in np.ndindex(*ns) if all(x in oracles.units(n) for x, n in zip(t, ns))}
    assert {p.correspondence.decode(u) for u in p.units} == expect
