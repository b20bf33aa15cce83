import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from absorb_lab import _pykernels as py
from absorb_lab import kernels
from absorb_lab.constructions import product_ring
from absorb_lab.module import product_module
from absorb_lab.ring import build_zn

cy = pytest.importorskip("absorb_lab._kernels")


def _mask(n, draw_bits):
    return np.array(draw_bits, dtype=np.uint8)[:n]


def _module(kind):
    if kind == "zn":
        return build_zn(12).regular_module
    if kind == "prod":
        return product_ring([build_zn(2), build_zn(4)]).regular_module
    z4 = build_zn(4)
    return product_module(z4.regular_module, z4.regular_module)


modules = st.sampled_from(["zn", "prod", "sum"])


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@settings(max_examples=40, deadline=None)
@given(modules, st.data())
def test_masks_agree(kind, data):
    m = _module(kind)
    n, r = m.size, m.ring.size
    gens = np.array(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)), dtype=np.uint8)
    span_py = py.span_mask(m.add, m.act, gens, m.zero)
    assert np.array_equal(span_py, cy.span_mask(m.add, m.act, gens, m.zero))
    imask = np.array(data.draw(st.lists(st.integers(0, 1), min_size=r, max_size=r)), dtype=np.uint8)
    assert np.array_equal(py.radical_mask(m.ring.mul, imask), cy.radical_mask(m.ring.mul, imask))
    assert np.array_equal(py.saturation_mask(m.ring.mul, imask), cy.saturation_mask(m.ring.mul, imask))
    idx = np.flatnonzero(gens).astype(np.int32)
    ridx = np.flatnonzero(imask).astype(np.int32)
    assert np.array_equal(py.colon_ring_mask(m.act, span_py, idx), cy.colon_ring_mask(m.act, span_py, idx))
    assert np.array_equal(py.colon_module_mask(m.act, span_py, ridx),
                          cy.colon_module_mask(m.act, span_py, ridx))
    assert np.array_equal(py.sum_mask(m.add, idx, idx), cy.sum_mask(m.add, idx, idx))
    colon = py.colon_ring_mask(m.act, span_py, np.arange(n, dtype=np.int32))
    assert py.prime_test(m.act, span_py, colon) == cy.prime_test(m.act, span_py, colon)


@settings(max_examples=40, deadline=None)
@given(modules, st.data())
def test_violation_scans_agree(kind, data):
    m = _module(kind)
    subs = m.proper_submodules
    nsub = data.draw(st.sampled_from(subs))
    nmask = nsub.mask
    s = data.draw(st.integers(0, m.ring.size - 1))
    scalars = np.arange(m.ring.size, dtype=np.int32)
    mr = np.arange(m.size, dtype=np.int32)
    pp1, pm1 = py.premise_pairs(scalars, mr, m.act, nmask)
    pp2, pm2 = cy.premise_pairs(scalars, mr, m.act, nmask)
    assert np.array_equal(pp1, pp2) and np.array_equal(pm1, pm2)
    ok_a = py.radical_mask(m.ring.mul, py.colon_ring_mask(m.act, nmask, mr))
    assert py.first_violation(s, pp1, pm1, m.ring.mul, m.act, ok_a, nmask) == \
        cy.first_violation(s, pp1, pm1, m.ring.mul, m.act, ok_a, nmask)
    assert py.two_abs_violation(s, m.ring.mul, m.act, nmask, ok_a) == \
        cy.two_abs_violation(s, m.ring.mul, m.act, nmask, ok_a)


def test_pure_backend_gives_identical_output(tmp_path):
    spec = tmp_path / "z12.json"
    spec.write_text('{"ring": {"kind": "zn", "n": 12}, "multset": [1, 5, 7, 11]}')
    outs = []
    for pure in ("0", "1"):
        env = dict(os.environ, ABSORB_LAB_PURE=pure)
        res = subprocess.run([sys.executable, "-m", "absorb_lab", "classify", "--in", str(spec)],
                             capture_output=True, env=env, check=True)
        outs.append(res.stdout)
        backend = subprocess.run([sys.executable, "-c", "from absorb_lab import kernels; print(kernels.BACKEND)"],
                                 capture_output=True, env=env, text=True, check=True).stdout.strip()
        assert backend == ("python" if pure == "1" else "cython")
    assert outs[0] == outs[1]
