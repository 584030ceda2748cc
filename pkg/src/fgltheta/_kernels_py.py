"""Pure-Python truncated products modulo 2**N.

Reference implementation of the hot loops; :mod:`fgltheta.kernels` uses the
compiled versions from ``_kernels`` when they are importable.

Bivariate series are stored flat in graded order: the monomial
``z1**i * z2**j`` with ``n = i + j`` sits at index ``n*(n+1)//2 + i``.
"""


def tri_index(i, j):
    n = i + j
    return n * (n + 1) // 2 + i


def tri_size(order):
    return order * (order + 1) // 2


def mul_trunc_mod(a, b, order, bits):
    mask = (1 << bits) - 1
    la, lb = min(len(a), order), min(len(b), order)
    out = [0] * order
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(lb, order - i)):
            out[i + j] += ai * b[j]
    return [c & mask for c in out]


def bivar_mul_trunc_mod(a, b, order, bits):
    mask = (1 << bits) - 1
    out = [0] * tri_size(order)
    terms_b = []
    for n in range(order):
        base = n * (n + 1) // 2
        for i in range(n + 1):
            c = b[base + i] if base + i < len(b) else 0
            if c:
                terms_b.append((n, i, c))
    for n1 in range(order):
        base1 = n1 * (n1 + 1) // 2
        for i1 in range(n1 + 1):
            k = base1 + i1
            if k >= len(a):
                break
            c1 = a[k]
            if not c1:
                continue
            for n2, i2, c2 in terms_b:
                n = n1 + n2
                if n >= order:
                    break
                out[n * (n + 1) // 2 + i1 + i2] += c1 * c2
    return [c & mask for c in out]
