"""Weierstrass curves, their formal group laws, and Velu 2-isogenies.

The formal coordinate is ``z = -x/y`` with ``w = -1/y``.  The group law is
built by the chord construction: the line through two points near the
identity meets the curve in a third point, whose formal inverse is the sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from fgltheta.coeffdom import PolyRing
from fgltheta.series import (
    BivarSeries,
    TruncSeries,
    compose_bivariate,
    divided_difference,
)


class NotOnCurve(ValueError):
    pass


class KernelNotTwoTorsion(ValueError):
    pass


class InternalMismatch(ArithmeticError):
    """Two computations that must agree did not; indicates an arithmetic bug."""


class OrderTooSmall(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over ``ring``."""

    ring: object
    a1: object
    a2: object
    a3: object
    a4: object
    a6: object

    @classmethod
    def from_coefficients(cls, ring, a1=0, a2=0, a3=0, a4=0, a6=0):
        return cls(ring, *(ring(c) for c in (a1, a2, a3, a4, a6)))

    @classmethod
    def gamma13(cls, ring, a, b):
        """The curve ``y^2 + a xy + b y = x^3``."""
        return cls.from_coefficients(ring, a1=a, a3=b)

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    def residual(self, x, y):
        return (
            y * y + self.a1 * x * y + self.a3 * y
            - x * x * x - self.a2 * x * x - self.a4 * x - self.a6
        )

    def contains(self, P) -> bool:
        return self.ring.is_zero(self.residual(P.x, P.y))

    def is_gamma13_form(self) -> bool:
        z = self.ring.is_zero
        return z(self.a2) and z(self.a4) and z(self.a6)

    def same_as(self, other) -> bool:
        """Coefficientwise equality in the common ring."""
        return all(self.ring.is_zero(p - q) for p, q in zip(self.coefficients, other.coefficients))

    def __repr__(self):
        return "WeierstrassCurve(a1={!r}, a2={!r}, a3={!r}, a4={!r}, a6={!r})".format(*self.coefficients)


@dataclass(frozen=True, eq=False)
class AffinePoint:
    x: object
    y: object


# ---------------------------------------------------------------------------
# formal expansion


def expand_w(curve: WeierstrassCurve, order: int) -> TruncSeries:
    """``w(z)`` with ``w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3``.

    Fixed-point iteration from ``w = z^3``; every pass fixes one more
    coefficient, so ``order`` passes are more than enough.
    """
    if order < 3:
        raise OrderTooSmall("expand_w needs order >= 3")
    R = curve.ring
    a1, a2, a3, a4, a6 = curve.coefficients
    z3 = TruncSeries.monomial(R, 3, order)
    w = z3
    for _ in range(order):
        w2 = w * w
        w = (
            z3
            + w.shift(1).truncate(order) * a1
            + w.shift(2).truncate(order) * a2
            + w2 * a3
            + w2.shift(1).truncate(order) * a4
            + w2 * w * a6
        )
    return w


def formal_inverse_from_curve(curve: WeierstrassCurve, w: TruncSeries) -> TruncSeries:
    """``i(z) = -z / (1 - a1 z - a3 w(z))``: the coordinate of ``-P``."""
    order = w.order
    R = curve.ring
    denom = 1 - TruncSeries.gen(R, order) * curve.a1 - w * curve.a3
    return -(denom.inverse().shift(1).truncate(order))


class FormalGroupLaw:
    """A one-dimensional formal group law ``F(z1, z2)``.

    The n-series for ``n`` in ``-2..3`` are computed when the law is built.
    """

    TABLE = range(-2, 4)

    def __init__(self, F: BivarSeries, inverse: TruncSeries | None = None, curve=None):
        self.F = F
        self.curve = curve
        self.ring = F.ring
        self.inverse = inverse if inverse is not None else self._solve_inverse()
        self.n_table = self._build_table()

    @property
    def order(self) -> int:
        return self.F.order

    @classmethod
    def additive(cls, ring, order):
        return cls(BivarSeries.from_dict(ring, {(1, 0): ring.one, (0, 1): ring.one}, order))

    @classmethod
    def multiplicative(cls, ring, order, v=None):
        """``z1 + z2 + v z1 z2``."""
        v = ring.one if v is None else v
        return cls(
            BivarSeries.from_dict(ring, {(1, 0): ring.one, (0, 1): ring.one, (1, 1): v}, order)
        )

    def __call__(self, f: TruncSeries, g: TruncSeries) -> TruncSeries:
        return self.F.substitute(f, g)

    def gen(self) -> TruncSeries:
        return TruncSeries.gen(self.ring, self.order)

    def _solve_inverse(self):
        z = self.gen()
        higher = self.F - BivarSeries.from_dict(
            self.ring, {(1, 0): self.ring.one, (0, 1): self.ring.one}, self.order
        )
        y = -z
        for _ in range(self.order):
            y = -z - higher.substitute(z, y)
        return y

    def _build_table(self):
        z = self.gen()
        table = {0: TruncSeries(self.ring, [], self.order), 1: z, -1: self.inverse}
        for n in range(2, max(self.TABLE) + 1):
            table[n] = self(table[n - 1], z)
        for n in range(-2, min(self.TABLE) - 1, -1):
            table[n] = self(table[n + 1], self.inverse)
        return table

    # axiom residuals ----------------------------------------------------

    def unit_residual(self):
        """``(F(z, 0) - z, F(0, z) - z)``."""
        z = self.gen()
        zero = TruncSeries(self.ring, [], self.order)
        return self(z, zero) - z, self(zero, z) - z

    def commutativity_residual(self) -> BivarSeries:
        return self.F - self.F.swap()

    def associativity_residual(self, order=None):
        """``F(F(z1,z2),z3) - F(z1,F(z2,z3))`` as ``{(i,j,k): c}`` below ``order``."""
        order = self.order if order is None else min(order, self.order)
        R = self.ring
        F = {ij: c for ij, c in self.F.items() if sum(ij) < order}
        inner12 = {(i, j, 0): c for (i, j), c in F.items()}
        inner23 = {(0, i, j): c for (i, j), c in F.items()}
        left = _tri_substitute(F, inner12, {(0, 0, 1): R.one}, order, R)
        right = _tri_substitute(F, {(1, 0, 0): R.one}, inner23, order, R)
        out = {}
        for key in set(left) | set(right):
            r = left.get(key, R.zero) - right.get(key, R.zero)
            if not R.is_zero(r):
                out[key] = r
        return out


def _tri_mul(p, q, order, ring):
    out = {}
    for (a, b, c), x in p.items():
        da = a + b + c
        for (d, e, f), y in q.items():
            if da + d + e + f >= order:
                continue
            key = (a + d, b + e, c + f)
            out[key] = out.get(key, ring.zero) + x * y
    return {k: v for k, v in out.items() if not ring.is_zero(v)}


def _tri_substitute(F, f, g, order, ring):
    """``F(f, g)`` with trivariate ``f``, ``g`` given as dicts."""
    top = max((i for i, _ in F), default=0)
    topj = max((j for _, j in F), default=0)
    one = {(0, 0, 0): ring.one}
    fp, gp = [one], [one]
    for _ in range(top):
        fp.append(_tri_mul(fp[-1], f, order, ring))
    for _ in range(topj):
        gp.append(_tri_mul(gp[-1], g, order, ring))
    out = {}
    for (i, j), c in F.items():
        for key, v in _tri_mul(fp[i], gp[j], order, ring).items():
            out[key] = out.get(key, ring.zero) + v * c
    return out


def fgl_from_curve(curve: WeierstrassCurve, order: int) -> FormalGroupLaw:
    """Formal group law of ``curve`` in ``z = -x/y``, certified to total degree ``order``."""
    if order < 3:
        raise OrderTooSmall("fgl_from_curve needs order >= 3")
    R = curve.ring
    a1, a2, a3, a4, a6 = curve.coefficients
    # the slope loses one degree of certification, so expand w one further
    w = expand_w(curve, order + 1)
    lam = divided_difference(w, order)
    w1 = BivarSeries.from_univariate(w, 0, order)
    z1 = BivarSeries.from_dict(R, {(1, 0): R.one}, order)
    z2 = BivarSeries.from_dict(R, {(0, 1): R.one}, order)
    nu = w1 - lam * z1
    lam2 = lam * lam
    # the line w = lam z + nu meets the curve where a cubic in z vanishes;
    # z1 + z2 + z3 is minus its z^2 coefficient over its z^3 coefficient
    num = lam * a1 + nu * a2 + lam2 * a3 + lam * nu * (2 * a4) + lam2 * nu * (3 * a6)
    den = 1 + lam * a2 + lam2 * a4 + lam2 * lam * a6
    z3 = -z1 - z2 - num * den.inverse()
    inverse = formal_inverse_from_curve(curve, w.truncate(order))
    F = compose_bivariate(inverse, z3)
    return FormalGroupLaw(F, inverse=inverse, curve=curve)


def n_series(F: FormalGroupLaw, n: int, order=None) -> TruncSeries:
    """``[n](z)``: ``[0] = 0``, ``[n+1](z) = F([n](z), z)``, ``[-n] = i([n])``."""
    order = F.order if order is None else order
    if order > F.order:
        raise OrderTooSmall(f"law is only certified to order {F.order}")
    if n in F.n_table:
        return F.n_table[n].truncate(order)
    step = F.gen() if n > 0 else F.inverse
    k = max(F.n_table) if n > 0 else min(F.n_table)
    acc = F.n_table[k]
    while k != n:
        acc = F(acc, step)
        k += 1 if n > 0 else -1
    return acc.truncate(order)


def residual_v1_v2(F: FormalGroupLaw):
    """Residues of v1 and v2 read off the 2-series over a polynomial ring.

    ``v1`` is the ``z^2`` coefficient of ``[2](z)`` mod 2 and ``v2`` the ``z^4``
    coefficient mod ``(2, v1)``.  Reduction mod ``v1`` eliminates a generator
    occurring linearly in ``v1`` (enough for polynomial rings whose ``v1`` is a
    generator up to lower terms).
    """
    R = F.ring
    if not isinstance(R, PolyRing):
        raise TypeError("residual_v1_v2 needs a law over a PolyRing")
    if F.order < 5:
        raise OrderTooSmall("need the 2-series to order >= 5")
    two = n_series(F, 2, 5)
    v1 = R.mod(two[2], 2)
    v2 = reduce_mod_2_v1(R, two[4], v1)
    return v1, v2


def reduce_mod_2_v1(R: PolyRing, p, v1):
    p = R.mod(p, 2)
    if R.is_zero(v1):
        return p
    terms = R.terms(v1)
    for idx, name in enumerate(R.names):
        unit = tuple(1 if k == idx else 0 for k in range(len(R.names)))
        if terms.get(unit, 0) % 2 != 1:
            continue
        rest = {e: c for e, c in terms.items() if e != unit}
        if any(e[idx] for e in rest):
            continue
        # v1 = g + rest with rest free of g, so g = rest mod (2, v1)
        return R.mod(R.substitute(p, name, R.from_terms(rest)), 2)
    raise ValueError("v1 residue does not contain a generator linearly")


# ---------------------------------------------------------------------------
# 2-torsion and Velu


def is_two_torsion(curve: WeierstrassCurve, P: AffinePoint) -> bool:
    """``P = -P``, i.e. ``2y + a1 x + a3 = 0``; ``P`` must lie on the curve."""
    if not curve.contains(P):
        raise NotOnCurve(f"{P!r} does not satisfy the curve equation")
    return curve.ring.is_zero(2 * P.y + curve.a1 * P.x + curve.a3)


@dataclass(frozen=True, eq=False)
class VeluData:
    """Raw Velu output for a single 2-torsion kernel point."""

    codomain: WeierstrassCurve
    kernel: AffinePoint
    gx: object
    x0_inverse: object

    def map_point(self, Q: AffinePoint) -> AffinePoint:
        """Image of ``Q`` (not in the kernel)."""
        E = self.codomain
        P = self.kernel
        dx = Q.x - P.x
        if E.ring.is_zero(Q.x):
            dxi = -self.x0_inverse
        else:
            dxi = E.ring.inv(dx)
        X = Q.x + self.gx * dxi
        Y = Q.y - self.gx * (E.a1 * dx + Q.y - P.y) * dxi * dxi
        return AffinePoint(X, Y)


def velu_raw(curve: WeierstrassCurve, P: AffinePoint) -> VeluData:
    if not is_two_torsion(curve, P):
        raise KernelNotTwoTorsion("kernel point is not of order 2")
    a1, a2, a3, a4, a6 = curve.coefficients
    x0, y0 = P.x, P.y
    gx = 3 * x0 * x0 + 2 * a2 * x0 + a4 - a1 * y0
    t = gx
    w = x0 * gx
    A4 = a4 - 5 * t
    A6 = a6 - curve.b2 * t - 7 * w
    E = WeierstrassCurve(curve.ring, a1, a2, a3, A4, A6)
    x0_inv = None
    if not curve.ring.is_zero(x0) and curve.ring.is_unit(x0):
        x0_inv = curve.ring.inv(x0)
    return VeluData(E, P, gx, x0_inv)


def velu_two_isogeny(curve: WeierstrassCurve, P: AffinePoint) -> WeierstrassCurve:
    """Codomain of the 2-isogeny with kernel ``{O, P}``.

    For a curve ``y^2 + a1 xy + y = x^3`` the raw Velu model is moved back into
    the same shape: the image of the 3-torsion flex ``(0, 0)`` is translated
    to the origin with horizontal tangent and the coordinates are rescaled by
    ``u = -x0/y0`` so that ``a3 = 1`` again.  Other curves get the raw model.
    """
    data = velu_raw(curve, P)
    R = curve.ring
    if not (curve.is_gamma13_form() and R.is_zero(curve.a3 - 1)):
        return data.codomain
    if data.x0_inverse is None:
        raise KernelNotTwoTorsion("kernel x-coordinate must be invertible to normalize")
    return _normalize_gamma13(data, u_inverse=-P.y * data.x0_inverse)


def _normalize_gamma13(data: VeluData, u_inverse) -> WeierstrassCurve:
    E = data.codomain
    R = E.ring
    A1, A2, A3, A4, A6 = E.coefficients
    img = data.map_point(AffinePoint(R.zero, R.zero))
    r, w = img.x, img.y
    a3p = A3 + r * A1 + 2 * w
    a3p_inv = u_inverse * u_inverse * u_inverse
    if not R.is_zero(a3p * a3p_inv - 1):
        raise InternalMismatch("rescaling does not normalize a3 to 1")
    s = (A4 + 2 * r * A2 - w * A1 + 3 * r * r) * a3p_inv
    a1p = A1 + 2 * s
    a2p = A2 - s * A1 + 3 * r - s * s
    a4p = A4 - s * A3 + 2 * r * A2 - (w + r * s) * A1 + 3 * r * r - 2 * s * w
    a6p = A6 + r * A4 + r * r * A2 + r * r * r - w * A3 - w * w - r * w * A1
    for name, c in (("a2", a2p), ("a4", a4p), ("a6", a6p)):
        if not R.is_zero(c):
            raise InternalMismatch(f"normalized codomain has nonzero {name}")
    return WeierstrassCurve(R, a1p * u_inverse, R.zero, R.one, R.zero, R.zero)


def canonical_kernel_point(ring, d) -> AffinePoint:
    """The 2-torsion point ``(x, y) = (-d^-2, -d^-3)`` on ``y^2 + t xy + y = x^3``.

    This is the sign choice for which the point lies on the curve when
    ``d^3 = t d + 2``.
    """
    dinv = ring.inv(d)
    dinv2 = dinv * dinv
    return AffinePoint(-dinv2, -(dinv2 * dinv))


def _two_adic_residue(q, digits):
    """``q`` mod ``2^digits`` for a 2-integral rational, else ``None``."""
    from fractions import Fraction

    q = Fraction(q)
    if q.denominator % 2 == 0:
        return None
    m = 1 << digits
    return q.numerator * pow(q.denominator, -1, m) % m


def canonical_isogeny_check(order: int = 8, digits: int = 32) -> dict:
    """Velu image of ``y^2 + t xy + y = x^3`` under the 2-isogeny with the kernel point.

    Works over ``Q[[t]]/(t^order)[d]/(d^3 - t d - 2)`` (the kernel point needs
    ``d^-1``, which has a factor ``1/2``) and compares with
    ``y^2 + (t^2 + 3d - t d^2) xy + y = x^3`` both exactly and coefficientwise
    mod ``2^digits`` (every coefficient must be 2-integral).
    """
    from fgltheta.coeffdom import QQ, QuotientRing
    from fgltheta.series import SeriesRing

    base = SeriesRing(QQ, order, "t")
    t = base.gen
    Q = QuotientRing(base, t)
    d = Q.gen
    E = WeierstrassCurve.from_coefficients(Q, a1=Q(t), a3=1)
    P = canonical_kernel_point(Q, d)
    on_curve = E.contains(P)
    torsion = on_curve and is_two_torsion(E, P)
    image = velu_two_isogeny(E, P)
    target = WeierstrassCurve.from_coefficients(Q, a1=Q(t * t) + 3 * d - Q(t) * d * d, a3=1)

    def residues(curve):
        out = []
        for c in curve.coefficients:
            for series in c.coeffs:
                out.append(tuple(_two_adic_residue(series[k], digits) for k in range(order)))
        return out

    img_res, tgt_res = residues(image), residues(target)
    integral = all(r is not None for row in img_res for r in row)
    return {
        "t_order": order,
        "digits": digits,
        "kernel_on_curve": on_curve,
        "kernel_two_torsion": torsion,
        "exact_match": image.same_as(target),
        "two_adic_integral": integral,
        "two_adic_match": integral and img_res == tgt_res,
        "image_a1": [[str(series[k]) for k in range(order)] for series in image.a1.coeffs],
    }
