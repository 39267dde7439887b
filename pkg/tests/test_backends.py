"""The compiled kernel and the pure fallback must be indistinguishable."""

import pytest

from parashake import keccak, planner
from parashake.bits import BitString
from parashake.evaluate import evaluate_parallel, evaluate_sequential

needs_compiled = pytest.mark.skipif(keccak.BACKEND != "c",
                                    reason="compiled kernel not built")


@needs_compiled
def test_digests_identical_across_backends(rng):
    n = 29457
    message = BitString(rng.getrandbits(n), n)
    plan = planner.plan_ternary(n)
    compiled = evaluate_sequential(plan.node_tree, message)
    original = keccak.BACKEND
    try:
        keccak.set_backend("py")
        pure = evaluate_sequential(plan.node_tree, message)
        pure_par = evaluate_parallel(plan.node_tree, message)
    finally:
        keccak.set_backend(original)
    assert pure.bits == compiled.bits
    assert pure_par.bits == compiled.bits
    assert pure.total_calls == compiled.total_calls


@needs_compiled
def test_absorb_blocks_agree_on_odd_rates(rng):
    from parashake import _keccak_cy, _keccak_py
    for rate in (8, 72, 136, 168, 200):
        data = rng.randbytes(rate * 3)
        a = bytearray(200)
        b = bytearray(200)
        _keccak_cy.absorb_blocks(a, data, rate)
        _keccak_py.absorb_blocks(b, data, rate)
        assert a == b, rate


@needs_compiled
def test_absorb_blocks_input_validation():
    from parashake import _keccak_cy
    with pytest.raises(ValueError):
        _keccak_cy.absorb_blocks(bytearray(100), b"\x00" * 136, 136)
    with pytest.raises(ValueError):
        _keccak_cy.absorb_blocks(bytearray(200), b"\x00" * 135, 136)
    assert _keccak_cy.absorb_blocks(bytearray(200), b"", 136) == 0
