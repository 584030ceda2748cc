"""Independent reference computations used by the tests.

Nothing here imports the package under test.  Each oracle uses a different
method from the production code: extended Euclid instead of ``pow``,
coefficient recursions instead of series arithmetic, sympy rational series
instead of the certified-window series classes, closed-form expansions of the
Weierstrass formal group from the literature.
"""

from fractions import Fraction

import sympy


def egcd_inverse(a, m):
    """Inverse of ``a`` mod ``m`` by the extended Euclidean algorithm."""
    r0, r1, s0, s1 = a % m, m, 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ValueError("not invertible")
    return s0 % m


def geometric_inverse(coeffs, order):
    """``1 / f`` for ``f`` with constant term 1, via ``sum (1 - f)^k`` over Fractions."""
    g = [Fraction(0)] * order
    h = [Fraction(-c) for c in coeffs[:order]] + [Fraction(0)] * (order - len(coeffs))
    h[0] = Fraction(0)
    term = [Fraction(1)] + [Fraction(0)] * (order - 1)
    for _ in range(order):
        g = [a + b for a, b in zip(g, term)]
        term = [sum(term[i] * h[k - i] for i in range(k + 1)) for k in range(order)]
    return g


def c_recursion(K):
    """Coefficients of ``c`` with ``c = -1 + v`` and ``v = -4s + 12 s v - 12 s v^2 + 4 s v^3``.

    Solved degree by degree with plain integer convolutions.
    """
    v = [0] * K

    def conv(a, b):
        return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(K)]

    for n in range(1, K):
        v2 = conv(v, v)
        v3 = conv(v2, v)
        v[n] = (-4 if n == 1 else 0) + 12 * v[n - 1] - 12 * v2[n - 1] + 4 * v3[n - 1]
    return [-1 + v[0]] + v[1:]


def psi2_s_sympy(K):
    """``P = s^2 (1 + (6c - 4c^2) s)^-3`` through ``s^(K-1)``.

    sympy expands ``D = (1 + (6c - 4c^2) s)^3`` as a polynomial; ``P`` is then
    found by undetermined coefficients from ``P D = s^2`` (``D(0) = 1``).
    """
    s = sympy.Symbol("s")
    c = sum(coef * s**k for k, coef in enumerate(c_recursion(K)))
    D = sympy.Poly(sympy.expand((1 + (6 * c - 4 * c**2) * s) ** 3), s)
    d = [int(D.coeff_monomial(s**k)) for k in range(K)]
    target = [0, 0, 1] + [0] * K
    p = [0] * K
    for n in range(K):
        p[n] = target[n] - sum(p[i] * d[n - i] for i in range(n))
    return p


def weierstrass_w(a1, a2, a3, a4, a6):
    """First terms of ``w(z)``: coefficients of ``z^3 .. z^7``.

    Derived by hand, degree by degree: the ``z^(n+3)`` coefficient is
    ``a1 A(n-1) + a2 A(n-2) + a3 [w^2] + a4 [z w^2]``.
    """
    return [
        1,
        a1,
        a1**2 + a2,
        a1**3 + 2 * a1 * a2 + a3,
        a1**4 + 3 * a1**2 * a2 + 3 * a1 * a3 + a2**2 + a4,
    ]


def weierstrass_fgl_low(a1, a2, a3, a4, a6):
    """Coefficients ``{(i, j): c}`` of the curve law through total degree 4."""
    return {
        (1, 0): 1,
        (0, 1): 1,
        (1, 1): -a1,
        (2, 1): -a2,
        (1, 2): -a2,
        (3, 1): -2 * a3,
        (2, 2): a1 * a2 - 3 * a3,
        (1, 3): -2 * a3,
    }


def f4_mul(x, y):
    """``(a + b w)(c + d w)`` in ``Z[w]/(w^2 + w + 1)`` via sympy polynomial remainder."""
    w = sympy.Symbol("w")
    p = sympy.rem(sympy.expand((x[0] + x[1] * w) * (y[0] + y[1] * w)), w**2 + w + 1, w)
    p = sympy.Poly(p, w)
    return int(p.coeff_monomial(1)), int(p.coeff_monomial(w))


def gf2_rank(rows):
    """Rank over F2 of a list of 0/1 lists by textbook row reduction."""
    m = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] % 2), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] % 2:
                m[i] = [(a + b) % 2 for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank
