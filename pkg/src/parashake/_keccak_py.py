"""Pure-Python Keccak-f[1600] kernel.

Fallback backend used when the compiled extension is unavailable.  The
state is a 200-byte buffer holding 25 lanes of 64 bits, little-endian,
lane index x + 5*y.
"""

import struct

_MASK = 0xFFFFFFFFFFFFFFFF

_RC = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A,
    0x8000000080008000, 0x000000000000808B, 0x0000000080000001,
    0x8000000080008081, 0x8000000000008009, 0x000000000000008A,
    0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089,
    0x8000000000008003, 0x8000000000008002, 0x8000000000000080,
    0x000000000000800A, 0x800000008000000A, 0x8000000080008081,
    0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

# Rotation offsets, indexed x + 5*y.
_ROT = (
    0, 1, 62, 28, 27,
    36, 44, 6, 55, 20,
    3, 10, 43, 25, 39,
    41, 45, 15, 21, 8,
    18, 2, 61, 56, 14,
)

# Combined rho+pi: destination index and rotation for each source lane.
_RHO_PI = tuple(
    (y + 5 * ((2 * x + 3 * y) % 5), _ROT[x + 5 * y])
    for y in range(5) for x in range(5)
)


def _f1600(s: list) -> None:
    rot = _RHO_PI
    for rc in _RC:
        # theta
        c = [s[x] ^ s[x + 5] ^ s[x + 10] ^ s[x + 15] ^ s[x + 20]
             for x in range(5)]
        d = [c[(x - 1) % 5] ^ ((c[(x + 1) % 5] << 1 | c[(x + 1) % 5] >> 63) & _MASK)
             for x in range(5)]
        for i in range(25):
            s[i] ^= d[i % 5]
        # rho + pi
        b = [0] * 25
        for i in range(25):
            dest, r = rot[i]
            v = s[i]
            b[dest] = (v << r | v >> (64 - r)) & _MASK
        # chi (operands stay below 2**64, so no extra masking is needed)
        for y in range(0, 25, 5):
            t0, t1, t2, t3, t4 = b[y:y + 5]
            s[y] = t0 ^ (~t1 & t2)
            s[y + 1] = t1 ^ (~t2 & t3)
            s[y + 2] = t2 ^ (~t3 & t4)
            s[y + 3] = t3 ^ (~t4 & t0)
            s[y + 4] = t4 ^ (~t0 & t1)
        # iota
        s[0] ^= rc


def permute(state: bytearray) -> None:
    """Apply Keccak-f[1600] in place to a 200-byte state buffer."""
    lanes = list(struct.unpack("<25Q", bytes(state)))
    _f1600(lanes)
    state[:] = struct.pack("<25Q", *lanes)


def absorb_blocks(state: bytearray, data: bytes, rate_bytes: int) -> int:
    """XOR rate-sized blocks into the state, permuting after each.

    `data` must be an exact multiple of `rate_bytes`; returns the number
    of permutation calls performed.
    """
    nblocks, rem = divmod(len(data), rate_bytes)
    if rem:
        raise ValueError("data is not a whole number of blocks")
    for b in range(nblocks):
        off = b * rate_bytes
        block = data[off:off + rate_bytes]
        mixed = int.from_bytes(state[:rate_bytes], "little") ^ \
            int.from_bytes(block, "little")
        state[:rate_bytes] = mixed.to_bytes(rate_bytes, "little")
        permute(state)
    return nblocks
