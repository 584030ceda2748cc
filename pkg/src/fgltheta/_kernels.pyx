# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled truncated products modulo 2**N for N <= 64.

Unsigned 64-bit arithmetic wraps modulo 2**64, so accumulating without
reduction and masking once at the end is exact for every N <= 64.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from fgltheta import _kernels_py


cdef uint64_t _mask(int bits):
    if bits >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << bits) - 1


def mul_trunc_mod(a, b, int order, int bits):
    if bits > 64:
        return _kernels_py.mul_trunc_mod(a, b, order, bits)
    cdef int la = min(len(a), order)
    cdef int lb = min(len(b), order)
    cdef uint64_t mask = _mask(bits)
    cdef uint64_t *pa = <uint64_t *>malloc((la + 1) * sizeof(uint64_t))
    cdef uint64_t *pb = <uint64_t *>malloc((lb + 1) * sizeof(uint64_t))
    cdef uint64_t *out = <uint64_t *>malloc((order + 1) * sizeof(uint64_t))
    cdef int i, j, top
    cdef uint64_t ai
    try:
        for i in range(la):
            pa[i] = <uint64_t>(a[i] & 0xFFFFFFFFFFFFFFFF)
        for i in range(lb):
            pb[i] = <uint64_t>(b[i] & 0xFFFFFFFFFFFFFFFF)
        for i in range(order):
            out[i] = 0
        for i in range(la):
            ai = pa[i]
            if ai == 0:
                continue
            top = order - i
            if top > lb:
                top = lb
            for j in range(top):
                out[i + j] += ai * pb[j]
        return [out[i] & mask for i in range(order)]
    finally:
        free(pa)
        free(pb)
        free(out)


def bivar_mul_trunc_mod(a, b, int order, int bits):
    if bits > 64:
        return _kernels_py.bivar_mul_trunc_mod(a, b, order, bits)
    cdef int size = order * (order + 1) // 2
    cdef int la = min(len(a), size)
    cdef int lb = min(len(b), size)
    cdef uint64_t mask = _mask(bits)
    cdef uint64_t *pa = <uint64_t *>malloc((size + 1) * sizeof(uint64_t))
    cdef uint64_t *pb = <uint64_t *>malloc((size + 1) * sizeof(uint64_t))
    cdef uint64_t *out = <uint64_t *>malloc((size + 1) * sizeof(uint64_t))
    cdef int n1, i1, n2, i2, k1, k2, n
    cdef uint64_t c1
    try:
        for k1 in range(size):
            pa[k1] = <uint64_t>(a[k1] & 0xFFFFFFFFFFFFFFFF) if k1 < la else 0
            pb[k1] = <uint64_t>(b[k1] & 0xFFFFFFFFFFFFFFFF) if k1 < lb else 0
            out[k1] = 0
        for n1 in range(order):
            for i1 in range(n1 + 1):
                k1 = n1 * (n1 + 1) // 2 + i1
                c1 = pa[k1]
                if c1 == 0:
                    continue
                for n2 in range(order - n1):
                    n = n1 + n2
                    k2 = n2 * (n2 + 1) // 2
                    for i2 in range(n2 + 1):
                        out[n * (n + 1) // 2 + i1 + i2] += c1 * pb[k2 + i2]
        return [out[k1] & mask for k1 in range(size)]
    finally:
        free(pa)
        free(pb)
        free(out)
