"""Exact coefficient domains.

Elements are immutable values with the usual arithmetic operators (and
coercion from Python ints).  Each element family has a small *ring* object
that supplies ``zero``/``one``, unit tests and inversion, which is what the
series and curve code are written against.

Rings defined here:

``ZZ``, ``QQ``
    Python ``int`` and :class:`fractions.Fraction`.
``PadicRing(N)``
    residues mod ``2**N`` with precision tracking (:class:`PadicApprox`).
``WittRing(N)``
    ``W(F_4) = Z_2[w]/(w^2 + w + 1)`` mod ``2**N`` (:class:`WittF4`).
``QuotientRing(base, t)``
    ``base[d]/(d^3 - t*d - 2)`` (:class:`QuotientExt`).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_DIGITS = int(os.environ.get("FGLTHETA_DEFAULT_DIGITS", "64"))


class NotAUnit(ArithmeticError):
    pass


class DomainMismatch(TypeError):
    pass


def power(x, n: int, one):
    """``x**n`` for ``n >= 0`` by repeated squaring, starting from ``one``."""
    if n < 0:
        raise ValueError("negative exponent")
    result = one
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


# ---------------------------------------------------------------------------
# integers and rationals


class IntegerRing:
    zero = 0
    one = 1

    def __call__(self, n):
        return int(n)

    def is_zero(self, x) -> bool:
        return x == 0

    def is_unit(self, x) -> bool:
        return x in (1, -1)

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit(f"{x} is not a unit in ZZ")
        return x

    def __repr__(self):
        return "ZZ"


class RationalField:
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, n):
        return Fraction(n)

    def is_zero(self, x) -> bool:
        return x == 0

    def is_unit(self, x) -> bool:
        return x != 0

    def inv(self, x):
        if x == 0:
            raise NotAUnit("0 is not invertible")
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()


# ---------------------------------------------------------------------------
# 2-adic residues


@dataclass(frozen=True, slots=True)
class PadicApprox:
    """An element of ``Z_2`` known modulo ``2**precision``.

    ``value`` is always the canonical representative in ``[0, 2**precision)``.
    Use :meth:`of` to build one from an arbitrary integer.
    """

    value: int
    precision: int

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        if not 0 <= self.value < (1 << self.precision):
            raise ValueError(
                f"value {self.value} out of range for precision {self.precision}"
            )

    @classmethod
    def of(cls, n: int, precision: int) -> PadicApprox:
        return cls(int(n) % (1 << precision), precision)

    def _coerce(self, other):
        if isinstance(other, PadicApprox):
            return other
        if isinstance(other, int):
            return PadicApprox.of(other, self.precision)
        if isinstance(other, Fraction):
            if other.denominator % 2 == 0:
                raise NotAUnit(f"{other} is not 2-integral")
            num = PadicApprox.of(other.numerator, self.precision)
            return num * padic_inv(PadicApprox.of(other.denominator, self.precision))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.precision, other.precision)
        return PadicApprox.of(self.value + other.value, n)

    __radd__ = __add__

    def __neg__(self):
        return PadicApprox.of(-self.value, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.precision, other.precision)
        return PadicApprox.of(self.value * other.value, n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return padic_inv(self) ** (-n)
        return PadicApprox.of(pow(self.value, n, 1 << self.precision), self.precision)

    def __int__(self):
        return self.value

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.value & 1 == 1

    def valuation(self) -> int:
        """2-adic valuation; equals ``precision`` for the zero residue."""
        if self.value == 0:
            return self.precision
        return (self.value & -self.value).bit_length() - 1

    def signed(self) -> int:
        """Representative of minimal absolute value (ties go negative)."""
        m = 1 << self.precision
        v = self.value
        return v - m if 2 * v >= m and m > 1 else v

    def reduce(self, precision: int) -> PadicApprox:
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        return PadicApprox.of(self.value, precision)

    def halve(self) -> PadicApprox:
        """Exact division by 2; loses one digit of precision."""
        if self.value & 1:
            raise NotAUnit(f"{self} is not divisible by 2")
        return PadicApprox(self.value >> 1, self.precision - 1)

    def __repr__(self):
        return f"{self.signed()} (mod 2^{self.precision})"


def padic_inv(x: PadicApprox) -> PadicApprox:
    """Inverse of a 2-adic unit at the same precision."""
    if not x.is_unit():
        raise NotAUnit(f"{x.value} is even")
    if x.precision == 0:
        return x
    return PadicApprox(pow(x.value, -1, 1 << x.precision), x.precision)


@dataclass(frozen=True)
class PadicRing:
    precision: int = DEFAULT_DIGITS

    @property
    def zero(self):
        return PadicApprox(0, self.precision)

    @property
    def one(self):
        return PadicApprox.of(1, self.precision)

    def __call__(self, n):
        if isinstance(n, PadicApprox):
            if n.precision <= self.precision:
                return n
            return n.reduce(self.precision)
        return PadicApprox.of(0, self.precision) + n

    def is_zero(self, x) -> bool:
        return x.value == 0

    def is_unit(self, x) -> bool:
        return x.is_unit()

    def inv(self, x):
        return padic_inv(x)

    def __repr__(self):
        return f"Z/2^{self.precision}"


# ---------------------------------------------------------------------------
# W(F_4)


@dataclass(frozen=True, slots=True)
class WittF4:
    """``re + im*w`` in ``W(F_4)`` mod ``2**N`` where ``w**2 + w + 1 = 0``.

    ``w`` is the Teichmueller lift of a generator of ``F_4^x``.
    """

    re: PadicApprox
    im: PadicApprox

    @classmethod
    def of(cls, re: int, im: int, precision: int) -> WittF4:
        return cls(PadicApprox.of(re, precision), PadicApprox.of(im, precision))

    @property
    def precision(self) -> int:
        return min(self.re.precision, self.im.precision)

    def _coerce(self, other):
        if isinstance(other, WittF4):
            return other
        if isinstance(other, (int, PadicApprox)):
            n = self.precision
            return WittF4(PadicApprox.of(0, n) + other, PadicApprox(0, n))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WittF4(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return WittF4(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WittF4(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        bd = b * d
        # w^2 = -1 - w
        return WittF4(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return power(witt_inv(self), -n, WittF4.of(1, 0, self.precision))
        return power(self, n, WittF4.of(1, 0, self.precision))

    def is_zero(self) -> bool:
        return self.re.value == 0 and self.im.value == 0

    def norm(self) -> PadicApprox:
        a, b = self.re, self.im
        return a * a - a * b + b * b

    def is_unit(self) -> bool:
        return self.norm().is_unit()

    def reduce(self, precision: int) -> WittF4:
        return WittF4(self.re.reduce(precision), self.im.reduce(precision))

    def __repr__(self):
        return f"({self.re.signed()} + {self.im.signed()}w mod 2^{self.precision})"


def witt_frobenius(x: WittF4) -> WittF4:
    """sigma(a + b w) = (a - b) - b w, since sigma(w) = w^2 = -1 - w."""
    return WittF4(x.re - x.im, -x.im)


def witt_inv(x: WittF4) -> WittF4:
    n = x.norm()
    if not n.is_unit():
        raise NotAUnit(f"{x} has even norm")
    ninv = padic_inv(n)
    s = witt_frobenius(x)
    return WittF4(s.re * ninv, s.im * ninv)


@dataclass(frozen=True)
class WittRing:
    precision: int = DEFAULT_DIGITS

    @property
    def zero(self):
        return WittF4.of(0, 0, self.precision)

    @property
    def one(self):
        return WittF4.of(1, 0, self.precision)

    @property
    def omega(self):
        return WittF4.of(0, 1, self.precision)

    def __call__(self, n):
        return self.zero + n

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def is_unit(self, x) -> bool:
        return x.is_unit()

    def inv(self, x):
        return witt_inv(x)

    def elements(self):
        """All ``4**N`` elements; only sensible for tiny precision."""
        m = 1 << self.precision
        for a in range(m):
            for b in range(m):
                yield WittF4.of(a, b, self.precision)

    def __repr__(self):
        return f"W(F4)/2^{self.precision}"


# ---------------------------------------------------------------------------
# base[d]/(d^3 - t d - 2)


class QuotientExt:
    """``c0 + c1*d + c2*d**2`` with ``d**3 = t*d + 2`` over a base ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: QuotientRing, coeffs):
        self.ring = ring
        coeffs = tuple(coeffs)
        if len(coeffs) != 3:
            raise ValueError("expected three coordinates on the basis 1, d, d^2")
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, QuotientExt):
            if other.ring != self.ring:
                raise DomainMismatch("quotient extensions over different bases")
            return other
        try:
            c = self.ring.base(other)
        except (TypeError, ValueError):
            return NotImplemented
        z = self.ring.base.zero
        return QuotientExt(self.ring, (c, z, z))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuotientExt(self.ring, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return QuotientExt(self.ring, (-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuotientExt(self.ring, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return quotient_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return power(self.ring.inv(self), -n, self.ring.one)
        return power(self, n, self.ring.one)

    def __eq__(self, other):
        if isinstance(other, QuotientExt):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        c0, c1, c2 = self.coeffs
        return f"({c0!r}) + ({c1!r})*d + ({c2!r})*d^2"


def quotient_mul(x: QuotientExt, y: QuotientExt) -> QuotientExt:
    """Product on the basis {1, d, d^2}, reducing d^3 -> t d + 2, d^4 -> t d^2 + 2 d."""
    if x.ring != y.ring:
        raise DomainMismatch("quotient extensions over different bases")
    t = x.ring.t
    a0, a1, a2 = x.coeffs
    b0, b1, b2 = y.coeffs
    p0 = a0 * b0
    p1 = a0 * b1 + a1 * b0
    p2 = a0 * b2 + a1 * b1 + a2 * b0
    p3 = a1 * b2 + a2 * b1
    p4 = a2 * b2
    return QuotientExt(x.ring, (p0 + 2 * p3, p1 + t * p3 + 2 * p4, p2 + t * p4))


class QuotientRing:
    """``base[d]/(d^3 - t*d - 2)``; ``t`` is an element of ``base``."""

    def __init__(self, base, t):
        self.base = base
        self.t = base(t)

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.base == other.base
            and self.t == other.t
        )

    def __hash__(self):
        return hash(("QuotientRing", repr(self.base)))

    def __call__(self, c):
        if isinstance(c, QuotientExt):
            return c
        z = self.base.zero
        return QuotientExt(self, (self.base(c), z, z))

    @property
    def zero(self):
        z = self.base.zero
        return QuotientExt(self, (z, z, z))

    @property
    def one(self):
        z = self.base.zero
        return QuotientExt(self, (self.base.one, z, z))

    @property
    def gen(self):
        z = self.base.zero
        return QuotientExt(self, (z, self.base.one, z))

    def is_zero(self, x) -> bool:
        return all(self.base.is_zero(c) for c in x.coeffs)

    def multiplication_matrix(self, x):
        """Columns are ``x``, ``x*d``, ``x*d^2`` on the basis {1, d, d^2}."""
        d = self.gen
        cols = [x, x * d, x * d * d]
        return [[cols[j].coeffs[i] for j in range(3)] for i in range(3)]

    def norm(self, x):
        (a, b, c), (e, f, g), (h, i, j) = self.multiplication_matrix(x)
        return a * (f * j - g * i) - b * (e * j - g * h) + c * (e * i - f * h)

    def is_unit(self, x) -> bool:
        return self.base.is_unit(self.norm(x))

    def inv(self, x):
        """Inverse through the adjugate of the multiplication matrix."""
        m = self.multiplication_matrix(x)
        det = self.norm(x)
        if not self.base.is_unit(det):
            raise NotAUnit("norm is not a unit in the base ring")
        dinv = self.base.inv(det)
        # first column of adj(m) solves m * y = e_0
        (a, b, c), (e, f, g), (h, i, j) = m
        y = (f * j - g * i, -(e * j - g * h), e * i - f * h)
        return QuotientExt(self, (yk * dinv for yk in y))

    def relation_residual(self):
        d = self.gen
        return d * d * d - self.t * d - 2

    def __repr__(self):
        return f"{self.base!r}[d]/(d^3 - t d - 2)"



# ---------------------------------------------------------------------------
# Z[x_1, ..., x_n]


class PolyRing:
    """Integer polynomials in named generators, optionally graded.

    Elements are :class:`sympy.polys.rings.PolyElement` values; this class only
    adds the ring protocol used by the series code and a few reductions.
    """

    def __init__(self, names, degrees=None):
        from sympy import ZZ as _SZZ
        from sympy.polys.rings import ring as _ring

        self.names = tuple(names)
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(self.names)
        if len(self.degrees) != len(self.names):
            raise ValueError("one degree per generator")
        self.sympy_ring, *gens = _ring(",".join(self.names), _SZZ)
        self.gens = tuple(gens)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.names, self.degrees) == (other.names, other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __call__(self, x):
        if getattr(x, "ring", None) is self.sympy_ring:
            return x
        return self.sympy_ring(x)

    def gen(self, name):
        return self.gens[self.names.index(name)]

    @property
    def zero(self):
        return self.sympy_ring.zero

    @property
    def one(self):
        return self.sympy_ring.one

    def is_zero(self, x) -> bool:
        return not x

    def is_unit(self, x) -> bool:
        return x == 1 or x == -1

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit(f"{x} is not a unit")
        return x

    def terms(self, p):
        """``{exponent tuple: int}``."""
        return {m: int(c) for m, c in dict(p).items()}

    def from_terms(self, terms):
        return self.sympy_ring(dict(terms)) if terms else self.zero

    def mod(self, p, m: int):
        """Reduce coefficients to ``[0, m)``."""
        return self.from_terms({e: c % m for e, c in self.terms(p).items() if c % m})

    def substitute(self, p, name, value):
        return p.subs(self.gen(name), value)

    def degree(self, exponent) -> int:
        return sum(e * d for e, d in zip(exponent, self.degrees))

    def homogeneous_degree(self, p):
        """The weighted degree of ``p`` if homogeneous, else ``None`` (``None`` for 0 too)."""
        degs = {self.degree(e) for e in self.terms(p)}
        return degs.pop() if len(degs) == 1 else None

    def monomials_of_degree(self, n: int):
        """Exponent tuples of weighted degree ``n`` (degrees must be positive)."""
        out = []

        def rec(i, left, acc):
            if i == len(self.degrees):
                if left == 0:
                    out.append(tuple(acc))
                return
            for e in range(left // self.degrees[i] + 1):
                rec(i + 1, left - e * self.degrees[i], acc + [e])

        rec(0, n, [])
        return out

    def __repr__(self):
        return f"ZZ[{', '.join(self.names)}]"
