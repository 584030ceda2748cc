"""Truncated univariate, Laurent and bivariate power series.

All series are immutable and carry their coefficient ring plus a *certified
order*: a series of order ``K`` is known modulo ``s**K``.  Coefficients at
degrees ``>= K`` are unknown, not zero, and the bookkeeping below never
claims more than the operands justify:

* sums and products of power series: ``min`` of the operand orders;
* Laurent products: ``min(K1 + v2, K2 + v1)`` with ``v`` the valuations;
* composition ``f(g)`` with ``val(g) = v``: ``min(K_f * v, K_g)``;
* Laurent inverse of ``f`` with valuation ``v``: ``K - 2*v``.

Products over :class:`~fgltheta.coeffdom.PadicRing` go through the
compiled kernels in :mod:`fgltheta.kernels`.
"""

from __future__ import annotations

from fgltheta import kernels
from fgltheta.coeffdom import NotAUnit, PadicApprox, PadicRing, power


class NonUnitLeadingCoefficient(NotAUnit):
    pass


class NonzeroConstantTerm(ValueError):
    pass


class UnknownCoefficient(IndexError):
    pass


def _is_padic(ring) -> bool:
    return isinstance(ring, PadicRing)


def _mul_lists(ring, a, b, length):
    """First ``length`` coefficients of the product of two coefficient lists."""
    if length <= 0:
        return []
    if _is_padic(ring):
        n = ring.precision
        raw = kernels.mul_trunc_mod([x.value for x in a], [x.value for x in b], length, n)
        return [PadicApprox(v, n) for v in raw]
    zero = ring.zero
    out = [zero] * length
    la = min(len(a), length)
    lb = len(b)
    for i in range(la):
        ai = a[i]
        if ring.is_zero(ai):
            continue
        for j in range(min(lb, length - i)):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def _common_ring(r1, r2):
    if r1 == r2:
        return r1
    if _is_padic(r1) and _is_padic(r2):
        return PadicRing(min(r1.precision, r2.precision))
    raise TypeError(f"series over different rings: {r1!r} and {r2!r}")


def _normalize(ring, coeffs):
    """Coerce coefficients into ``ring``; p-adic rings drop to the least precision."""
    coeffs = [ring(c) for c in coeffs]
    if _is_padic(ring) and coeffs:
        m = min(c.precision for c in coeffs)
        if m < ring.precision:
            ring = PadicRing(m)
            coeffs = [c.reduce(m) for c in coeffs]
    return ring, coeffs


# ---------------------------------------------------------------------------


class TruncSeries:
    """Power series ``sum c_k s**k`` known modulo ``s**order``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[:order] + [ring.zero] * (order - len(coeffs))
        self.ring, coeffs = _normalize(ring, coeffs)
        self.coeffs = tuple(coeffs)

    # construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, ring, c, order):
        return cls(ring, [c], order)

    @classmethod
    def monomial(cls, ring, degree, order, c=None):
        c = ring.one if c is None else c
        if degree >= order:
            return cls(ring, [], order)
        return cls(ring, [ring.zero] * degree + [c], order)

    @classmethod
    def gen(cls, ring, order):
        return cls.monomial(ring, 1, order)

    @classmethod
    def from_dict(cls, ring, terms, order):
        coeffs = [ring.zero] * order
        for k, c in terms.items():
            if k < order:
                coeffs[k] = coeffs[k] + c
        return cls(ring, coeffs, order)

    # basic protocol -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k):
        if k < 0:
            return self.ring.zero
        if k >= self.order:
            raise UnknownCoefficient(f"degree {k} is beyond the certified order {self.order}")
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c!r}*s^{k}" for k, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]
        return (" + ".join(terms) or "0") + f" + O(s^{self.order})"

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def valuation(self) -> int:
        """Lowest degree with a nonzero coefficient (``order`` if none)."""
        for k, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return k
        return self.order

    def truncate(self, order) -> TruncSeries:
        if order > self.order:
            raise UnknownCoefficient("cannot extend a truncated series")
        return TruncSeries(self.ring, self.coeffs[:order], order)

    def map(self, fn, ring=None) -> TruncSeries:
        return TruncSeries(ring or self.ring, [fn(c) for c in self.coeffs], self.order)

    def agrees_with(self, other, order=None) -> bool:
        """Coefficientwise equality on the shared window."""
        n = min(self.order, other.order) if order is None else order
        return all(self.ring.is_zero(self[k] - other[k]) for k in range(n))

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, LaurentSeries):
            return NotImplemented
        try:
            return TruncSeries.constant(self.ring, self.ring(other), self.order)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = _common_ring(self.ring, other.ring)
        n = min(self.order, other.order)
        return TruncSeries(ring, [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.ring, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            if isinstance(other, LaurentSeries):
                return NotImplemented
            try:
                c = self.ring(other)
            except (TypeError, ValueError):
                return NotImplemented
            return TruncSeries(self.ring, [a * c for a in self.coeffs], self.order)
        ring = _common_ring(self.ring, other.ring)
        n = min(self.order, other.order)
        return TruncSeries(ring, _mul_lists(ring, self.coeffs, other.coeffs, n), n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return power(series_inverse(self), -n, TruncSeries.constant(self.ring, self.ring.one, self.order))
        return power(self, n, TruncSeries.constant(self.ring, self.ring.one, self.order))

    def shift(self, k: int) -> TruncSeries:
        """Multiply by the exact monomial ``s**k`` (``k >= 0``); raises the order by ``k``."""
        if k < 0:
            raise ValueError("use LaurentSeries for negative shifts")
        return TruncSeries(self.ring, [self.ring.zero] * k + list(self.coeffs), self.order + k)

    def derivative(self) -> TruncSeries:
        return TruncSeries(
            self.ring, [c * k for k, c in enumerate(self.coeffs)][1:], max(self.order - 1, 0)
        )

    def inverse(self) -> TruncSeries:
        return series_inverse(self)

    def __call__(self, g):
        return series_compose(self, g)


def _power_series_inverse(ring, coeffs, order):
    """Coefficient list of ``1/f`` mod ``s**order``; ``coeffs[0]`` must be a unit."""
    if order == 0:
        return []
    a0 = coeffs[0]
    if not ring.is_unit(a0):
        raise NonUnitLeadingCoefficient(f"leading coefficient {a0!r} is not a unit")
    inv0 = ring.inv(a0)
    if _is_padic(ring):
        m = 1 << ring.precision
        a = [c.value for c in coeffs[:order]] + [0] * max(0, order - len(coeffs))
        i0 = inv0.value
        b = [i0]
        for n in range(1, order):
            acc = 0
            for k in range(1, n + 1):
                if a[k]:
                    acc += a[k] * b[n - k]
            b.append((-i0 * acc) % m)
        return [PadicApprox(v, ring.precision) for v in b]
    b = [inv0]
    for n in range(1, order):
        acc = ring.zero
        for k in range(1, min(n, len(coeffs) - 1) + 1):
            acc = acc + coeffs[k] * b[n - k]
        b.append(-(inv0 * acc))
    return b


def series_inverse(f):
    """Multiplicative inverse of a power series or Laurent series.

    A Laurent series is first written as ``s**v * g`` with ``g(0)`` a unit;
    the certified order of the result is ``K - 2v``.
    """
    if isinstance(f, LaurentSeries):
        v = f.valuation()
        if v >= f.order:
            raise NonUnitLeadingCoefficient("series is zero within its window")
        g = f.coefficients_from(v)
        inv = _power_series_inverse(f.ring, g, len(g))
        return LaurentSeries(f.ring, -v, inv)
    return TruncSeries(f.ring, _power_series_inverse(f.ring, f.coeffs, f.order), f.order)


def series_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """``f(g(s))`` for ``g`` without constant term, by Horner's rule."""
    if g.order > 0 and not g.ring.is_zero(g[0]):
        raise NonzeroConstantTerm("inner series must have zero constant term")
    n = min(f.order * g.valuation(), g.order)
    if f.order == 0:
        return TruncSeries(f.ring, [], 0)
    g = g.truncate(n) if n <= g.order else g
    acc = TruncSeries.constant(f.ring, f.coeffs[-1], n)
    for c in reversed(f.coeffs[:-1]):
        acc = acc * g + c
    return TruncSeries(acc.ring, acc.coeffs[:n], n)


# ---------------------------------------------------------------------------


class LaurentSeries:
    """``sum_{k >= lo} c_k s**k`` known modulo ``s**order``."""

    __slots__ = ("ring", "lo", "coeffs")

    def __init__(self, ring, lo, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = lo + len(coeffs)
        if order < lo:
            lo = order
        length = order - lo
        coeffs = coeffs[:length] + [ring.zero] * (length - len(coeffs))
        self.ring, coeffs = _normalize(ring, coeffs)
        self.lo = lo
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_series(cls, f: TruncSeries, lo=0):
        """Reinterpret ``f`` as ``s**lo * f``."""
        return cls(f.ring, lo, f.coeffs, lo + f.order)

    @classmethod
    def from_dict(cls, ring, terms, order):
        lo = min(min(terms, default=0), 0)
        coeffs = [ring.zero] * max(order - lo, 0)
        for k, c in terms.items():
            if k < order:
                coeffs[k - lo] = coeffs[k - lo] + c
        return cls(ring, lo, coeffs, order)

    @classmethod
    def monomial(cls, ring, degree, order, c=None):
        return cls.from_dict(ring, {degree: ring.one if c is None else c}, order)

    @property
    def order(self) -> int:
        return self.lo + len(self.coeffs)

    def __getitem__(self, k):
        if k < self.lo:
            return self.ring.zero
        if k >= self.order:
            raise UnknownCoefficient(f"degree {k} is beyond the certified order {self.order}")
        return self.coeffs[k - self.lo]

    def items(self):
        """Nonzero ``(degree, coefficient)`` pairs inside the window."""
        return [
            (self.lo + i, c) for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)
        ]

    def __eq__(self, other):
        if isinstance(other, LaurentSeries):
            return self.ring == other.ring and self.order == other.order and self.items() == other.items()
        return NotImplemented

    def __hash__(self):
        return hash((self.order, tuple(self.items())))

    def __repr__(self):
        terms = [f"{c!r}*s^{k}" for k, c in self.items()]
        return (" + ".join(terms) or "0") + f" + O(s^{self.order})"

    def is_zero(self) -> bool:
        return not self.items()

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return self.lo + i
        return self.order

    def coefficients_from(self, start):
        return [self[k] for k in range(start, self.order)]

    def truncate(self, order) -> LaurentSeries:
        if order > self.order:
            raise UnknownCoefficient("cannot extend a truncated series")
        return LaurentSeries(self.ring, self.lo, self.coeffs, order)

    def principal_part(self):
        """Nonzero terms of negative degree."""
        return [(k, c) for k, c in self.items() if k < 0]

    def to_series(self) -> TruncSeries:
        if self.principal_part():
            raise ValueError("series has negative-degree terms")
        return TruncSeries(self.ring, [self[k] for k in range(max(self.order, 0))])

    def map(self, fn, ring=None) -> LaurentSeries:
        return LaurentSeries(ring or self.ring, self.lo, [fn(c) for c in self.coeffs], self.order)

    def agrees_with(self, other, order=None) -> bool:
        n = min(self.order, other.order) if order is None else order
        lo = min(self.lo, other.lo)
        return all(self.ring.is_zero(self[k] - other[k]) for k in range(lo, n))

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, TruncSeries):
            return LaurentSeries.from_series(other)
        try:
            c = self.ring(other)
        except (TypeError, ValueError):
            return NotImplemented
        return LaurentSeries(self.ring, 0, [c], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = _common_ring(self.ring, other.ring)
        lo = min(self.lo, other.lo)
        n = min(self.order, other.order)
        return LaurentSeries(ring, lo, [self[k] + other[k] for k in range(lo, n)], n)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.ring, self.lo, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (LaurentSeries, TruncSeries)):
            try:
                c = self.ring(other)
            except (TypeError, ValueError):
                return NotImplemented
            return LaurentSeries(self.ring, self.lo, [a * c for a in self.coeffs], self.order)
        other = self._coerce(other)
        ring = _common_ring(self.ring, other.ring)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        lo = self.lo + other.lo
        coeffs = _mul_lists(ring, self.coeffs, other.coeffs, order - lo)
        return LaurentSeries(ring, lo, coeffs, order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return series_inverse(self) ** (-n)
        if n == 0:
            return LaurentSeries(self.ring, 0, [self.ring.one], self.order - self.valuation())
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by the exact monomial ``s**k``."""
        return LaurentSeries(self.ring, self.lo + k, self.coeffs, self.order + k)

    def inverse(self) -> LaurentSeries:
        return series_inverse(self)

    def compress(self, m: int):
        """Rewrite in the variable ``s**m``.

        Returns ``(series, stray)`` where ``stray`` lists nonzero terms whose
        degree is not a multiple of ``m`` (they have no image).
        """
        stray = [(k, c) for k, c in self.items() if k % m]
        lo = -((-self.lo) // m)
        order = -((-self.order) // m)
        coeffs = [self[m * j] for j in range(lo, order)]
        return LaurentSeries(self.ring, lo, coeffs, order), stray

    def expand(self, m: int) -> LaurentSeries:
        """Substitute ``s -> s**m`` (inverse of :meth:`compress`)."""
        lo = m * self.lo
        order = m * self.order
        coeffs = [self.ring.zero] * (order - lo)
        for k, c in self.items():
            coeffs[m * k - lo] = c
        return LaurentSeries(self.ring, lo, coeffs, order)


# ---------------------------------------------------------------------------


class BivarSeries:
    """``F(z1, z2)`` truncated in total degree: known modulo terms of degree ``>= order``.

    Storage is flat in graded order (see :func:`fgltheta.kernels.tri_index`).
    """

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, coeffs, order):
        size = kernels.tri_size(order)
        coeffs = list(coeffs)[:size]
        coeffs += [ring.zero] * (size - len(coeffs))
        self.ring, coeffs = _normalize(ring, coeffs)
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_dict(cls, ring, terms, order):
        coeffs = [ring.zero] * kernels.tri_size(order)
        for (i, j), c in terms.items():
            if i + j < order:
                k = kernels.tri_index(i, j)
                coeffs[k] = coeffs[k] + c
        return cls(ring, coeffs, order)

    @classmethod
    def from_univariate(cls, f: TruncSeries, var: int, order=None):
        order = f.order if order is None else min(order, f.order)
        terms = {((k, 0) if var == 0 else (0, k)): c for k, c in enumerate(f.coeffs[:order])}
        return cls.from_dict(f.ring, terms, order)

    @classmethod
    def constant(cls, ring, c, order):
        return cls.from_dict(ring, {(0, 0): c}, order)

    def __getitem__(self, ij):
        i, j = ij
        if i < 0 or j < 0:
            return self.ring.zero
        if i + j >= self.order:
            raise UnknownCoefficient(f"total degree {i + j} beyond order {self.order}")
        return self.coeffs[kernels.tri_index(i, j)]

    def items(self):
        out = []
        for n in range(self.order):
            for i in range(n + 1):
                c = self.coeffs[kernels.tri_index(i, n - i)]
                if not self.ring.is_zero(c):
                    out.append(((i, n - i), c))
        return out

    def as_dict(self):
        return dict(self.items())

    def __eq__(self, other):
        if isinstance(other, BivarSeries):
            return self.ring == other.ring and self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c!r}*z1^{i}*z2^{j}" for (i, j), c in self.items()]
        return (" + ".join(terms) or "0") + f" + O(deg {self.order})"

    def is_zero(self) -> bool:
        return not self.items()

    def valuation(self) -> int:
        for (i, j), _ in self.items():
            return i + j
        return self.order

    def truncate(self, order) -> BivarSeries:
        if order > self.order:
            raise UnknownCoefficient("cannot extend a truncated series")
        return BivarSeries(self.ring, self.coeffs[: kernels.tri_size(order)], order)

    def swap(self) -> BivarSeries:
        """``F(z2, z1)``."""
        return BivarSeries.from_dict(self.ring, {(j, i): c for (i, j), c in self.items()}, self.order)

    def map(self, fn, ring=None) -> BivarSeries:
        return BivarSeries(ring or self.ring, [fn(c) for c in self.coeffs], self.order)

    def _coerce(self, other):
        if isinstance(other, BivarSeries):
            return other
        try:
            return BivarSeries.constant(self.ring, self.ring(other), self.order)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = _common_ring(self.ring, other.ring)
        n = min(self.order, other.order)
        size = kernels.tri_size(n)
        return BivarSeries(ring, [a + b for a, b in zip(self.coeffs[:size], other.coeffs[:size])], n)

    __radd__ = __add__

    def __neg__(self):
        return BivarSeries(self.ring, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BivarSeries):
            try:
                c = self.ring(other)
            except (TypeError, ValueError):
                return NotImplemented
            return BivarSeries(self.ring, [a * c for a in self.coeffs], self.order)
        ring = _common_ring(self.ring, other.ring)
        n = min(self.order, other.order)
        if _is_padic(ring):
            bits = ring.precision
            raw = kernels.bivar_mul_trunc_mod(
                [c.value for c in self.coeffs], [c.value for c in other.coeffs], n, bits
            )
            return BivarSeries(ring, [PadicApprox(v, bits) for v in raw], n)
        out = [ring.zero] * kernels.tri_size(n)
        right = [(i + j, i, c) for (i, j), c in other.items()]
        for (i1, j1), c1 in self.items():
            d1 = i1 + j1
            if d1 >= n:
                break
            for d2, i2, c2 in right:
                if d1 + d2 >= n:
                    break
                k = kernels.tri_index(i1 + i2, d1 + d2 - i1 - i2)
                out[k] = out[k] + c1 * c2
        return BivarSeries(ring, out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return power(self, n, BivarSeries.constant(self.ring, self.ring.one, self.order))

    def inverse(self) -> BivarSeries:
        """``1/F`` for ``F(0, 0)`` a unit, by the geometric series in ``F - F(0,0)``."""
        c0 = self[0, 0]
        if not self.ring.is_unit(c0):
            raise NonUnitLeadingCoefficient(f"constant term {c0!r} is not a unit")
        inv0 = self.ring.inv(c0)
        e = (self - c0) * inv0
        # 1/(1 + e) = 1 - e + e^2 - ..., e has valuation >= 1
        acc = BivarSeries.constant(self.ring, self.ring.one, self.order)
        for _ in range(self.order):
            acc = 1 - e * acc
        return acc * inv0

    def substitute(self, f: TruncSeries, g: TruncSeries) -> TruncSeries:
        """``F(f(z), g(z))`` for univariate ``f``, ``g`` without constant terms."""
        for h in (f, g):
            if h.order and not h.ring.is_zero(h[0]):
                raise NonzeroConstantTerm("substituted series must vanish at 0")
        n = min(f.order, g.order, self.order * min(f.valuation(), g.valuation()))
        ring = _common_ring(self.ring, _common_ring(f.ring, g.ring))
        one = TruncSeries.constant(ring, ring.one, n)
        fp, gp = [one], [one]
        for _ in range(1, self.order):
            fp.append(fp[-1] * f.truncate(n))
            gp.append(gp[-1] * g.truncate(n))
        acc = TruncSeries(ring, [], n)
        for (i, j), c in self.items():
            if min(i, j) >= 0 and i + j < self.order:
                acc = acc + (fp[i] * gp[j]) * c
        return acc

    def diagonal(self) -> TruncSeries:
        """``F(z, z)`` as a univariate series (exact, order preserved)."""
        coeffs = [self.ring.zero] * self.order
        for (i, j), c in self.items():
            coeffs[i + j] = coeffs[i + j] + c
        return TruncSeries(self.ring, coeffs, self.order)


def compose_bivariate(f: TruncSeries, g: BivarSeries) -> BivarSeries:
    """``f(g(z1, z2))`` for ``g`` without constant term."""
    if not g.ring.is_zero(g[0, 0]):
        raise NonzeroConstantTerm("inner series must have zero constant term")
    n = min(g.order, f.order * g.valuation())
    g = g.truncate(n)
    if f.order == 0:
        return BivarSeries(f.ring, [], 0)
    acc = BivarSeries.constant(f.ring, f.coeffs[-1], n)
    for c in reversed(f.coeffs[:-1]):
        acc = acc * g + c
    return acc


def divided_difference(w: TruncSeries, order=None) -> BivarSeries:
    """``(w(z2) - w(z1)) / (z2 - z1)`` as a bivariate series.

    ``z**n`` contributes ``sum_{i+j=n-1} z1**i z2**j``.  Since ``w`` is only
    known mod ``z**K``, the result is certified to total degree ``K - 1``.
    """
    cert = max(w.order - 1, 0)
    order = cert if order is None else min(order, cert)
    terms = {}
    for n, c in enumerate(w.coeffs):
        if n == 0 or w.ring.is_zero(c):
            continue
        if n - 1 >= order:
            break
        for i in range(n):
            terms[(i, n - 1 - i)] = c
    return BivarSeries.from_dict(w.ring, terms, order)


# ---------------------------------------------------------------------------
# rings of series, so series can serve as coefficients


class SeriesRing:
    """Power series in one variable over ``base``, known mod ``var**order``."""

    def __init__(self, base, order, var="t"):
        self.base = base
        self.order = order
        self.var = var

    def __eq__(self, other):
        return (
            isinstance(other, SeriesRing)
            and self.base == other.base
            and self.order == other.order
            and self.var == other.var
        )

    def __hash__(self):
        return hash(("SeriesRing", self.order, self.var))

    def __call__(self, x):
        if isinstance(x, TruncSeries):
            return x
        return TruncSeries.constant(self.base, self.base(x), self.order)

    @property
    def zero(self):
        return TruncSeries(self.base, [], self.order)

    @property
    def one(self):
        return TruncSeries.constant(self.base, self.base.one, self.order)

    @property
    def gen(self):
        return TruncSeries.gen(self.base, self.order)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def is_unit(self, x) -> bool:
        return x.order > 0 and self.base.is_unit(x[0])

    def inv(self, x):
        return series_inverse(x)

    def __repr__(self):
        return f"{self.base!r}[[{self.var}]]/({self.var}^{self.order})"


class LaurentRing:
    """Laurent series over a field-like ``base``; elements carry their own windows."""

    def __init__(self, base, order, var="u"):
        self.base = base
        self.order = order
        self.var = var

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and self.base == other.base and self.var == other.var

    def __hash__(self):
        return hash(("LaurentRing", self.var))

    def __call__(self, x):
        if isinstance(x, LaurentSeries):
            return x
        if isinstance(x, TruncSeries):
            return LaurentSeries.from_series(x)
        return LaurentSeries(self.base, 0, [self.base(x)], self.order)

    @property
    def zero(self):
        return LaurentSeries(self.base, 0, [], self.order)

    @property
    def one(self):
        return self(self.base.one)

    @property
    def gen(self):
        return LaurentSeries.monomial(self.base, 1, self.order)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def is_unit(self, x) -> bool:
        v = x.valuation()
        return v < x.order and self.base.is_unit(x[v])

    def inv(self, x):
        return series_inverse(x)

    def __repr__(self):
        return f"{self.base!r}(({self.var}))"
