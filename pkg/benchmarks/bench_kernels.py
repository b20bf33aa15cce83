"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from absorb_lab import _pykernels
from absorb_lab.module import product_module
from absorb_lab.ring import build_zn

try:
    from absorb_lab import _kernels
except ImportError:
    _kernels = None


def workloads(k):
    z12 = build_zn(12)
    m = product_module(z12.regular_module, z12.regular_module)
    ring = m.ring
    n = m.submodule(m.span([13]).members)
    nmask = n.mask
    mr = np.arange(m.size, dtype=np.int32)
    scalars = np.arange(ring.size, dtype=np.int32)
    pp, pm = k.premise_pairs(scalars, mr, m.act, nmask)
    colon = k.colon_ring_mask(m.act, nmask, mr)
    rad = k.radical_mask(ring.mul, colon)
    gens = np.zeros(m.size, dtype=np.uint8)
    gens[[1, 12]] = 1
    smask = np.zeros(ring.size, dtype=np.uint8)
    smask[[1, 5, 7, 11]] = 1
    return {
        "span_mask": lambda: k.span_mask(m.add, m.act, gens, m.zero),
        "premise_pairs": lambda: k.premise_pairs(scalars, mr, m.act, nmask),
        "first_violation": lambda: [k.first_violation(s, pp, pm, ring.mul, m.act, rad, nmask) for s in range(12)],
        "two_abs_violation": lambda: k.two_abs_violation(1, ring.mul, m.act, nmask, rad),
        "radical_mask": lambda: k.radical_mask(ring.mul, colon),
        "prime_test": lambda: k.prime_test(m.act, nmask, colon),
        "saturation_mask": lambda: k.saturation_mask(ring.mul, smask),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _kernels)] if _kernels else [])
    table = {name: {k: min(timeit.repeat(fn, number=args.repeat, repeat=3)) / args.repeat
                    for k, fn in workloads(mod).items()} for name, mod in backends}
    print(f"{'kernel':<20}" + "".join(f"{n:>14}" for n, _ in backends) + ("     speedup" if _kernels else ""))
    for kernel in table["python"]:
        row = f"{kernel:<20}" + "".join(f"{table[n][kernel] * 1e6:>12.1f}us" for n, _ in backends)
        if _kernels:
            row += f"{table['python'][kernel] / table['cython'][kernel]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
