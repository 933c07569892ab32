#!/usr/bin/env python3
"""Benchmark the compiled entropy kernels against the numpy fallback.

The workload mirrors real sweeps: per-ensemble block-entropy accumulation
over the occupation lattices of a truncated channel.  Reports wall time per
evaluation for each available backend and checks they agree.

Usage: python benchmarks/bench_kernels.py [--d D] [--z Z] [--repeats N]
"""

import argparse
import importlib
import math
import time

import numpy as np

from unruhcap.combinat import block_normalizer, composition_matrix
from unruhcap.spectra import UnruhConfig, unruh_weights


def available_backends():
    backends = {}
    try:
        backends["compiled"] = importlib.import_module("unruhcap._fast")
    except ImportError:
        pass
    backends["python"] = importlib.import_module("unruhcap._kernels_py")
    return backends


def build_workload(d, z):
    """Per-j sub-tables and inverse normalizers, as the sweep engine sees them."""
    weights = unruh_weights(UnruhConfig(d, z))
    horizon = weights.size
    inv_norm = np.zeros(horizon + 2)
    for k in range(1, horizon + 1):
        inv_norm[k] = 1.0 / float(block_normalizer(d, k))
    chunks = []
    for j in range(horizon + 1):
        comps = composition_matrix(d - 1, j)
        b1s = np.arange(horizon - j + 1)
        chunks.append(
            (
                comps.astype(np.float64),
                np.ascontiguousarray(inv_norm[j + b1s]),
                np.ascontiguousarray(inv_norm[j + b1s + 1]),
            )
        )
    return horizon, chunks


def run_once(impl, chunks, mu, horizon):
    out_b = np.zeros(horizon + 2)
    out_e = np.zeros(horizon + 2)
    inv_ln_base = 1.0 / math.log(2.0)
    tail = mu[1:]
    for j, (comps, inv_b, inv_e) in enumerate(chunks):
        a_sub = comps @ tail
        impl.block_family_entropy(a_sub, float(mu[0]), inv_b, inv_e, inv_ln_base, out_b, out_e, j)
    return out_b, out_e


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--d", type=int, default=3)
    parser.add_argument("--z", type=float, default=0.75)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    horizon, chunks = build_workload(args.d, args.z)
    terms = sum(c[0].shape[0] * c[1].size for c in chunks)
    print(f"workload: d={args.d} z={args.z} horizon={horizon} lattice terms={terms:,}")

    mu = np.linspace(1.0, 2.0, args.d)
    mu /= mu.sum()
    results = {}
    for name, impl in backends.items():
        run_once(impl, chunks, mu, horizon)  # warm-up
        start = time.perf_counter()
        for _ in range(args.repeats):
            out = run_once(impl, chunks, mu, horizon)
        per_eval = (time.perf_counter() - start) / args.repeats
        results[name] = (per_eval, out)
        print(f"{name:>9}: {per_eval * 1e3:9.2f} ms / ensemble evaluation")

    if len(results) == 2:
        (_, (fast_b, fast_e)) = results["compiled"]
        (_, (ref_b, ref_e)) = results["python"]
        dev = max(np.max(np.abs(fast_b - ref_b)), np.max(np.abs(fast_e - ref_e)))
        speedup = results["python"][0] / results["compiled"][0]
        print(f"agreement: max |diff| = {dev:.3e}")
        print(f"speedup:   {speedup:.1f}x")
        if dev > 1e-10:
            raise SystemExit("backends disagree beyond 1e-10")
    else:
        print("compiled backend not built; benchmarked the fallback only")


if __name__ == "__main__":
    main()
