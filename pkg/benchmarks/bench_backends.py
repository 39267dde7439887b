#!/usr/bin/env python3
"""Benchmark the compiled Keccak kernel against the pure-Python fallback.

Times raw permutation calls, bulk block absorption, and an end-to-end
tree hash through each backend.  Digests must agree between backends;
the script asserts that before printing numbers.

Usage: python benchmarks/bench_backends.py [--seconds 1.0]
"""

import argparse
import time

from parashake import _keccak_py
from parashake.bits import BitString
from parashake.errors import TreeHashError


def _load_compiled():
    try:
        from parashake import _keccak_cy
        return _keccak_cy
    except ImportError:
        return None


def _time(fn, seconds: float) -> float:
    """Calls per second of fn over roughly `seconds`."""
    fn()  # warm up
    calls = 0
    t0 = time.perf_counter()
    while True:
        fn()
        calls += 1
        dt = time.perf_counter() - t0
        if dt >= seconds:
            return calls / dt


def bench_permute(impl, seconds: float) -> float:
    state = bytearray(200)
    return _time(lambda: impl.permute(state), seconds)


def bench_absorb(impl, seconds: float) -> float:
    """MB/s of bulk absorption, 64 blocks at a time."""
    state = bytearray(200)
    data = bytes(range(256)) * (136 * 64 // 256 + 1)
    data = data[:136 * 64]
    rate = _time(lambda: impl.absorb_blocks(state, data, 136), seconds)
    return rate * len(data) / 1e6


def bench_tree_hash(backend_name: str, seconds: float, n_bits: int = 500_000):
    """End-to-end: plan + evaluate a message through one backend."""
    from parashake import evaluate, keccak, planner

    keccak.set_backend(backend_name)
    try:
        message = BitString((1 << n_bits) - 1, n_bits)
        plan = planner.plan("ternary", n_bits)
        digests = []

        def run():
            digests.append(
                evaluate.evaluate_sequential(plan.node_tree, message).hex())

        rate = _time(run, seconds)
    finally:
        keccak.set_backend("auto")
    assert len(set(digests)) == 1
    return rate, digests[0]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seconds", type=float, default=1.0,
                        help="sampling time per measurement")
    args = parser.parse_args()

    compiled = _load_compiled()

    # equivalence gate before timing anything
    state_a = bytearray(b"\xa5" * 200)
    state_b = bytearray(state_a)
    _keccak_py.permute(state_a)
    if compiled is not None:
        compiled.permute(state_b)
        assert state_a == state_b, "backends disagree"

    rows = [("python", _keccak_py)]
    if compiled is not None:
        rows.append(("c", compiled))

    print("%-8s %16s %14s" % ("backend", "permute calls/s", "absorb MB/s"))
    perm = {}
    for name, impl in rows:
        perm[name] = bench_permute(impl, args.seconds)
        mbs = bench_absorb(impl, args.seconds)
        print("%-8s %16.0f %14.1f" % (name, perm[name], mbs))
    if compiled is not None:
        print("speedup: %.1fx" % (perm["c"] / perm["python"]))

    print()
    print("end-to-end 500 kbit ternary hash:")
    digests = {}
    for name, _ in rows:
        try:
            rate, digest = bench_tree_hash(name, args.seconds)
        except TreeHashError as exc:
            print("%-8s failed: %s" % (name, exc))
            return 1
        digests[name] = digest
        print("%-8s %10.2f hashes/s" % (name, rate))
    if len(set(digests.values())) != 1:
        print("backend digests disagree!")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
