# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Keccak-f[1600] kernel.

Hot inner loop of the whole package: one call per absorbed rate block.
Interface matches `_keccak_py` (200-byte state buffer, little-endian
64-bit lanes, lane index x + 5*y).  The GIL is released inside the
permutation so thread-pool evaluation of independent nodes runs in
parallel.
"""

from libc.stdint cimport uint64_t
from libc.string cimport memcpy

cdef uint64_t[24] _RC
_RC[:] = [
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808AULL,
    0x8000000080008000ULL, 0x000000000000808BULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008AULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000AULL,
    0x000000008000808BULL, 0x800000000000008BULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800AULL, 0x800000008000000AULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
]

cdef int[25] _ROT
_ROT[:] = [
    0, 1, 62, 28, 27,
    36, 44, 6, 55, 20,
    3, 10, 43, 25, 39,
    41, 45, 15, 21, 8,
    18, 2, 61, 56, 14,
]

cdef int[25] _DEST
cdef int _x, _y
for _y in range(5):
    for _x in range(5):
        _DEST[_x + 5 * _y] = _y + 5 * ((2 * _x + 3 * _y) % 5)


cdef inline uint64_t _rotl(uint64_t v, int r) nogil:
    if r == 0:
        return v
    return (v << r) | (v >> (64 - r))


cdef void _f1600(uint64_t *s) nogil:
    cdef uint64_t c[5]
    cdef uint64_t d[5]
    cdef uint64_t b[25]
    cdef int rnd, x, i, y

    for rnd in range(24):
        for x in range(5):
            c[x] = s[x] ^ s[x + 5] ^ s[x + 10] ^ s[x + 15] ^ s[x + 20]
        for x in range(5):
            d[x] = c[(x + 4) % 5] ^ _rotl(c[(x + 1) % 5], 1)
        for i in range(25):
            s[i] ^= d[i % 5]
        for i in range(25):
            b[_DEST[i]] = _rotl(s[i], _ROT[i])
        for y in range(0, 25, 5):
            for x in range(5):
                s[y + x] = b[y + x] ^ ((~b[y + (x + 1) % 5]) & b[y + (x + 2) % 5])
        s[0] ^= _RC[rnd]


def permute(unsigned char[::1] state):
    """Apply Keccak-f[1600] in place to a 200-byte state buffer."""
    if state.shape[0] != 200:
        raise ValueError("state must be 200 bytes")
    cdef uint64_t lanes[25]
    with nogil:
        memcpy(lanes, &state[0], 200)
        _f1600(lanes)
        memcpy(&state[0], lanes, 200)


def absorb_blocks(unsigned char[::1] state, const unsigned char[::1] data,
                  Py_ssize_t rate_bytes):
    """XOR rate-sized blocks into the state, permuting after each.

    Returns the number of permutation calls performed.
    """
    if state.shape[0] != 200:
        raise ValueError("state must be 200 bytes")
    if rate_bytes <= 0 or rate_bytes > 200 or data.shape[0] % rate_bytes:
        raise ValueError("data is not a whole number of blocks")
    cdef Py_ssize_t nblocks = data.shape[0] // rate_bytes
    cdef Py_ssize_t blk, i
    cdef uint64_t lanes[25]
    cdef unsigned char *sp
    cdef const unsigned char *dp
    if nblocks == 0:
        return 0
    with nogil:
        sp = &state[0]
        dp = &data[0]
        memcpy(lanes, sp, 200)
        for blk in range(nblocks):
            for i in range(rate_bytes):
                (<unsigned char *> lanes)[i] ^= dp[blk * rate_bytes + i]
            _f1600(lanes)
        memcpy(sp, lanes, 200)
    return nblocks
