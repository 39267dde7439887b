"""Keccak-f[1600], the unit of time for every cost in this package.

A compiled kernel is preferred when present; a pure-Python fallback is
selected at import time otherwise.  Set PARASHAKE_BACKEND=py (or =c) to
force a backend.
"""

from __future__ import annotations

import os
import struct
import sys

from . import _keccak_py
from .bits import BitString

STATE_BITS = 1600
LANE_COUNT = 25
ROUNDS = 24


def _resolve_backend(choice: str):
    if choice in ("py", "python"):
        return _keccak_py, "python"
    if choice not in ("auto", "c"):
        raise ValueError("backend must be auto, c or py")
    # The compiled kernel assumes little-endian lane storage.
    if sys.byteorder == "little":
        try:
            from . import _keccak_cy
            return _keccak_cy, "c"
        except ImportError:
            pass
    if choice == "c":
        raise ImportError("compiled keccak kernel requested but not available")
    return _keccak_py, "python"


def set_backend(choice: str) -> str:
    """Rebind the kernel; returns the selected backend name."""
    global _impl, BACKEND, permute, absorb_blocks
    _impl, BACKEND = _resolve_backend(choice)
    permute = _impl.permute
    absorb_blocks = _impl.absorb_blocks
    return BACKEND


_impl, BACKEND = _resolve_backend(os.environ.get("PARASHAKE_BACKEND", "auto"))

permute = _impl.permute
absorb_blocks = _impl.absorb_blocks


def keccak_f(lanes) -> list:
    """24-round Keccak-f[1600] on 25 unsigned 64-bit lanes (x + 5*y order).

    Pure function: returns a new list, the input is unchanged.
    """
    buf = bytearray(struct.pack("<25Q", *lanes))
    permute(buf)
    return list(struct.unpack("<25Q", buf))


def state_from_bits(bits: BitString) -> list:
    """FIPS 202 mapping of a 1600-bit string onto the lane grid."""
    if len(bits) != STATE_BITS:
        raise ValueError("state must be exactly 1600 bits")
    mask = (1 << 64) - 1
    return [(bits.value >> (64 * i)) & mask for i in range(LANE_COUNT)]


def state_to_bits(lanes) -> BitString:
    """Inverse of `state_from_bits`."""
    value = 0
    for i, lane in enumerate(lanes):
        if lane >> 64:
            raise ValueError("lane wider than 64 bits")
        value |= lane << (64 * i)
    return BitString(value, STATE_BITS)
