"""The graded ring Z_(2)[a, b], the realization-problem checker, truncated
localized rings and the Lubin-Tate ring with its group action.

The Lubin-Tate ring ``B = W(F4)[[u1]][u, u^-1]`` is modelled by elements
``{u-exponent: power series in u1 over W(F4)}``; the group
``G = F4^x semidirect Gal`` has order 6 and acts by

* ``zeta . u1 = omega u1``, ``zeta . u = omega^-1 u`` (so ``u1^k u^l`` picks up
  ``omega^(k - l)``);
* ``sigma`` is Frobenius on Witt coefficients and fixes ``u1`` and ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fgltheta.coeffdom import PolyRing, WittF4, WittRing, witt_frobenius
from fgltheta.ellfgl import (
    FormalGroupLaw,
    OrderTooSmall,
    WeierstrassCurve,
    fgl_from_curve,
    n_series,
    residual_v1_v2,
)
from fgltheta.series import BivarSeries, LaurentSeries, TruncSeries

GENERATOR_DEGREES = {"a": 2, "b": 6}


def graded_ring(names=("a", "b")) -> PolyRing:
    """``Z[names]`` with ``|a| = 2``, ``|b| = 6``."""
    return PolyRing(names, [GENERATOR_DEGREES[n] for n in names])


def gamma13_law(order: int, names=("a", "b")):
    """The law of ``y^2 + a xy + b y = x^3`` over :func:`graded_ring` (missing generators are 0)."""
    A = graded_ring(names)
    a = A.gen("a") if "a" in names else A.zero
    b = A.gen("b") if "b" in names else A.zero
    return A, fgl_from_curve(WeierstrassCurve.gamma13(A, a, b), order)


# ---------------------------------------------------------------------------
# realization-problem axioms


@dataclass
class CheckReport:
    verdicts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self):
        return {"passed": self.passed, "verdicts": dict(self.verdicts), "details": dict(self.details)}


def _linear_generator(A: PolyRing, p):
    """Name of a generator ``g`` with ``p = g + (terms free of g)`` mod 2, else ``None``."""
    terms = {e: c % 2 for e, c in A.terms(p).items() if c % 2}
    for idx, name in enumerate(A.names):
        unit = tuple(1 if k == idx else 0 for k in range(len(A.names)))
        if unit in terms and not any(e[idx] for e in terms if e != unit):
            return name
    return None


def check_realization_problem(A: PolyRing, F: FormalGroupLaw, max_degree: int = 24) -> CheckReport:
    """Check the four axioms for a law ``F`` over a graded polynomial ring ``A``.

    (i) nonnegative grading; (ii) each degree is finite free (monomial count,
    finite when all generators have positive degree); (iii) ``(2, v1, v2)``
    regular; (iv) ``A/(2, v1, v2) = F2``.

    For (iii) the residues must be homogeneous of degrees 2 and 6 and each must
    contain a generator linearly, so that quotienting by it leaves a polynomial
    ring over F2 (a domain, in which any nonzero element is regular).
    """
    rep = CheckReport()
    rep.verdicts["nonnegative_grading"] = all(d >= 0 for d in A.degrees)
    rep.details["nonnegative_grading"] = f"generator degrees {dict(zip(A.names, A.degrees))}"

    positive = all(d > 0 for d in A.degrees)
    counts = {n: len(A.monomials_of_degree(n)) for n in range(max_degree + 1)} if positive else {}
    rep.verdicts["degreewise_finite_free"] = positive
    rep.details["degreewise_finite_free"] = (
        f"monomial counts {counts}" if positive else "a degree-0 generator gives infinite rank in degree 0"
    )

    try:
        v1, v2 = residual_v1_v2(F)
    except (OrderTooSmall, TypeError, ValueError) as exc:
        rep.verdicts["regular_sequence"] = False
        rep.verdicts["quotient_is_F2"] = False
        rep.details["regular_sequence"] = str(exc)
        return rep

    # quotient by residues that contain a generator linearly: each kills that generator
    remaining = list(A.names)
    g1 = _linear_generator(A, v1)
    if g1 is not None:
        remaining.remove(g1)
    g2 = _linear_generator(A, v2)
    if g2 is not None and g2 in remaining:
        remaining.remove(g2)
    else:
        g2 = None

    ok1 = g1 is not None and A.homogeneous_degree(v1) == 2
    ok2 = ok1 and g2 is not None and A.homogeneous_degree(v2) == 6
    why = []
    if not ok1:
        why.append(f"v1 residue {v1 or 0} is not a generator of degree 2 mod 2")
    elif not ok2:
        why.append(f"v2 residue {v2 or 0} is not a generator of degree 6 mod (2, v1)")
    rep.verdicts["regular_sequence"] = ok2
    rep.details["regular_sequence"] = "; ".join(why) or f"v1 = {v1} eliminates {g1}, v2 = {v2} eliminates {g2}"
    rep.verdicts["quotient_is_F2"] = not remaining
    rep.details["quotient_is_F2"] = (
        "A/(2, v1, v2) = F2" if not remaining else f"A/(2, v1, v2) = F2[{', '.join(remaining)}]"
    )
    rep.details["v1"] = str(v1)
    rep.details["v2"] = str(v2)
    return rep


# ---------------------------------------------------------------------------
# localized rings in degree 0

KINDS = ("K1-zero", "K2-zero", "K2K1-zero")


def _forbidden(kind, degree_in_x):
    if kind == "K1-zero":
        return degree_in_x > 0
    if kind == "K2-zero":
        return degree_in_x < 0
    if kind == "K2K1-zero":
        return False
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


def membership(e, target: str = "K1-zero", variable: str = "x") -> bool:
    """Whether ``e`` lies in the truncated model ``target``.

    ``e`` is a :class:`LaurentSeries` (or :class:`TruncSeries`) in ``x`` or,
    with ``variable="s"``, in ``s = x^-1``.  Only coefficients inside the
    tracked window are inspected; they must vanish (mod ``2^N``) wherever the
    target forbids the power of ``x``.
    """
    if isinstance(e, LocalizedModel):
        e, variable = e.payload, e.variable
    if isinstance(e, TruncSeries):
        e = LaurentSeries.from_series(e)
    sign = {"x": 1, "s": -1}[variable]
    return not any(_forbidden(target, sign * k) for k, _ in e.items())


@dataclass(frozen=True)
class LocalizedModel:
    """A truncated element of ``(A_K(1))_0``, ``(A_K(2))_0`` or ``(A_K(2),K(1))_0``."""

    kind: str
    payload: LaurentSeries
    variable: str = "x"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not membership(self.payload, self.kind, self.variable):
            raise ValueError(f"payload has powers of x forbidden in {self.kind}")


# ---------------------------------------------------------------------------
# Lubin-Tate ring


class LTElement:
    """``sum_l f_l(u1) u^l`` with ``f_l`` power series over W(F4)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: LubinTateModel, terms):
        self.ring = ring
        self.terms = {l: f for l, f in terms.items() if not f.is_zero()}

    def _coerce(self, other):
        if isinstance(other, LTElement):
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for l, f in other.terms.items():
            out[l] = out[l] + f if l in out else f
        return LTElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LTElement(self.ring, {l: -f for l, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LTElement(self.ring, {l: f * other for l, f in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for l1, f1 in self.terms.items():
            for l2, f2 in other.terms.items():
                p = f1 * f2
                l = l1 + l2
                out[l] = out[l] + p if l in out else p
        return LTElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        acc = self.ring.one
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, LTElement):
            other = self.ring(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, l: int, k: int) -> WittF4:
        f = self.terms.get(l)
        return f[k] if f is not None else self.ring.witt.zero

    def __repr__(self):
        return " + ".join(f"({f!r}) u^{l}" for l, f in sorted(self.terms.items())) or "0"


def _scale_series(f: TruncSeries, fn) -> TruncSeries:
    """Apply ``fn(k, coefficient)`` to every coefficient of ``f``."""
    return TruncSeries(f.ring, [fn(k, c) for k, c in enumerate(f.coeffs)], f.order)


class LubinTateModel:
    """``W(F4)[[u1]][u^+-1]`` mod ``(2^N, u1^K)`` with the action of ``G``."""

    GROUP_ORDER = 6

    def __init__(self, precision: int = 8, order: int = 8):
        if precision < 2 or order < 4:
            raise ValueError("need precision >= 2 and u1-order >= 4")
        self.precision = precision
        self.order = order
        self.witt = WittRing(precision)

    def __eq__(self, other):
        return isinstance(other, LubinTateModel) and (self.precision, self.order) == (
            other.precision,
            other.order,
        )

    def __hash__(self):
        return hash(("LT", self.precision, self.order))

    def _series(self, terms):
        return TruncSeries.from_dict(self.witt, terms, self.order)

    def monomial(self, c, k: int = 0, l: int = 0) -> LTElement:
        """``c u1^k u^l``."""
        return LTElement(self, {l: self._series({k: self.witt(c) if isinstance(c, int) else c})})

    def __call__(self, x):
        if isinstance(x, LTElement):
            return x
        return self.monomial(x)

    @property
    def zero(self):
        return LTElement(self, {})

    @property
    def one(self):
        return self.monomial(1)

    @property
    def u1(self):
        return self.monomial(1, 1, 0)

    @property
    def u(self):
        return self.monomial(1, 0, 1)

    @property
    def omega(self):
        return self.monomial(self.witt.omega)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def is_unit(self, x) -> bool:
        return len(x.terms) == 1 and next(iter(x.terms.values()))[0].is_unit()

    def inv(self, x):
        if not self.is_unit(x):
            raise ArithmeticError("only monomial-unit inverses are supported")
        (l, f), = x.terms.items()
        return LTElement(self, {-l: f.inverse()})

    # group action ---------------------------------------------------------

    def zeta(self, x: LTElement) -> LTElement:
        w = self.witt.omega
        powers = [self.witt.one, w, w * w]
        return LTElement(
            self,
            {l: _scale_series(f, lambda k, c, l=l: c * powers[(k - l) % 3]) for l, f in x.terms.items()},
        )

    def sigma(self, x: LTElement) -> LTElement:
        return LTElement(
            self, {l: _scale_series(f, lambda k, c: witt_frobenius(c)) for l, f in x.terms.items()}
        )

    def group(self):
        """Elements ``(m, j)`` standing for ``zeta^m sigma^j``."""
        return [(m, j) for j in range(2) for m in range(3)]

    @staticmethod
    def compose(g, h):
        """``g h`` using ``sigma zeta sigma^-1 = zeta^2``."""
        (m, j), (n, k) = g, h
        return ((m + n * (2 if j else 1)) % 3, (j + k) % 2)

    def act(self, g, x: LTElement) -> LTElement:
        m, j = g
        if j:
            x = self.sigma(x)
        for _ in range(m):
            x = self.zeta(x)
        return x

    def transfer(self, x: LTElement) -> LTElement:
        """``sum_{g in G} g . x``; lands in the fixed subring."""
        out = self.zero
        for g in self.group():
            out = out + self.act(g, x)
        return out

    def is_fixed(self, x: LTElement) -> bool:
        return self.zeta(x) == x and self.sigma(x) == x

    def __repr__(self):
        return f"W(F4)[[u1]][u^+-1] mod (2^{self.precision}, u1^{self.order})"


@dataclass
class InvariantsReport:
    precision: int
    order: int
    basis_exponents: list
    expected_exponents: list
    matches: bool
    fixed_checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "certificate": {"padic": self.precision, "order": self.order},
            "basis": [f"u1^{k}" for k in self.basis_exponents],
            "expected": [f"u1^{k}" for k in self.expected_exponents],
            "matches": self.matches,
            "fixed_checks": dict(self.fixed_checks),
            "notes": list(self.notes),
        }


def lubin_tate_invariants(B: LubinTateModel) -> InvariantsReport:
    """G-fixed part of degree 0, compared with ``Z_2{u1^(3k)}``.

    |G| = 6 is even, so averaging is not available 2-adically.  Instead the
    transfer image is computed on the Z_2-basis ``{u1^k, omega u1^k}``: for
    ``3 | k`` it contains ``tr(omega) u1^k = -3 u1^k`` (a unit multiple) and
    for ``3 \\nmid k`` it vanishes.  The fixed elements listed are those
    monomial directions where the image contains a unit multiple of ``u1^k``
    and nothing off the real axis of W(F4).
    """
    basis, stray = [], []
    for k in range(B.order):
        images = [B.transfer(B.monomial(e, k, 0)) for e in (B.witt.one, B.witt.omega)]
        coeffs = []
        for img in images:
            for l, f in img.terms.items():
                for j, c in enumerate(f.coeffs):
                    if not c.is_zero() and (l, j) != (0, k):
                        stray.append((k, l, j))
            coeffs.append(img.coefficient(0, k))
        if any(not c.im.is_zero() for c in coeffs):
            stray.append((k, 0, k))
        if any(c.re.is_unit() for c in coeffs):
            basis.append(k)
        elif any(not c.is_zero() for c in coeffs):
            stray.append((k, 0, k))
    expected = [k for k in range(B.order) if k % 3 == 0]
    u1 = B.u1
    checks = {
        "u1^3 fixed": B.is_fixed(u1 ** 3),
        "u1 fixed": B.is_fixed(u1),
        "omega u1^3 fixed under sigma": B.sigma(B.omega * u1 ** 3) == B.omega * u1 ** 3,
    }
    return InvariantsReport(
        precision=B.precision,
        order=B.order,
        basis_exponents=basis,
        expected_exponents=expected,
        matches=basis == expected and not stray,
        fixed_checks=checks,
        notes=[
            "transfer image over the basis {u1^k, omega u1^k}; |G| = 6 is not invertible in Z_2",
            f"exact modulo (2^{B.precision}, u1^{B.order})",
        ],
    )


def _rank_mod2(rows) -> int:
    """Rank over F2 of 0/1 rows given as ints (bitmasks)."""
    rank, rows = 0, [r for r in rows if r]
    while rows:
        pivot = rows.pop()
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def orbit_basis_report(B: LubinTateModel):
    """Independence mod 2 of the six translates of ``omega (1 + u + u^2)``.

    Reduced mod ``(2, u1)`` each translate is a vector in ``F4^3 = F2^6``.
    Returns ranks both in total and for each ``u``-degree separately.
    """
    e = B.omega * (B.one + B.u + B.u * B.u)
    translates = [B.act(g, e) for g in B.group()]

    def bits(x, degrees):
        out = 0
        for pos, l in enumerate(degrees):
            c = x.coefficient(l, 0)
            out |= (c.re.value & 1) << (2 * pos)
            out |= (c.im.value & 1) << (2 * pos + 1)
        return out

    total = _rank_mod2([bits(x, (0, 1, 2)) for x in translates])
    per_degree = {l: _rank_mod2([bits(x, (l,)) for x in translates]) for l in range(3)}
    return {
        "translates": len(translates),
        "total_rank": total,
        "total_independent": total == 6,
        "degreewise_rank": per_degree,
        "degreewise_spanning": all(r == 2 for r in per_degree.values()),
    }


# ---------------------------------------------------------------------------
# height


def base_change(F: FormalGroupLaw, B: LubinTateModel, graded: bool = True) -> FormalGroupLaw:
    """Push a law over ``Z[a, b]`` to ``B`` via ``a -> u1 u``, ``b -> u^3`` (``u -> 1`` if not graded)."""
    A = F.ring
    names = A.names

    def image(p):
        out = B.zero
        for exps, c in A.terms(p).items():
            e = dict(zip(names, exps))
            k = e.get("a", 0)
            l = (e.get("a", 0) + 3 * e.get("b", 0)) if graded else 0
            out = out + B.monomial(c, k, l)
        return out

    G = BivarSeries.from_dict(B, {ij: image(c) for ij, c in F.F.items()}, F.order)
    inv = TruncSeries(B, [image(c) for c in F.inverse.coeffs], F.inverse.order)
    return FormalGroupLaw(G, inverse=inv)


def _even(c: WittF4) -> bool:
    return c.re.value % 2 == 0 and c.im.value % 2 == 0


def _zero_mod_2(x: LTElement) -> bool:
    return all(_even(c) for f in x.terms.values() for c in f.coeffs)


def _homogeneous_part(x: LTElement):
    nonzero = {l: f for l, f in x.terms.items() if not all(_even(c) for c in f.coeffs)}
    return next(iter(nonzero.values())) if len(nonzero) == 1 else None


def height_diagnostics(B: LubinTateModel, F: FormalGroupLaw):
    """``(h1, h2)`` read off ``[2](z)`` over ``B``.

    h1: ``[2](z) = u1 . unit . z^2 + O(z^3)`` mod 2 (the ``z`` term is even);
    h2: ``[2](z) = unit . z^4 + O(z^5)`` mod ``(2, u1)``.
    """
    if F.order < 5:
        raise OrderTooSmall("need the 2-series to order >= 5")
    two = n_series(F, 2, 5)
    c = [two[k] for k in range(5)]
    f2 = _homogeneous_part(c[2])
    h1 = (
        _zero_mod_2(c[1])
        and f2 is not None
        and _even(f2[0])
        and f2[1].norm().value % 2 == 1
    )
    low_vanish = all(_even(x.coefficient(l, 0)) for x in c[1:4] for l in x.terms)
    f4 = _homogeneous_part(c[4])
    h2 = low_vanish and f4 is not None and f4[0].norm().value % 2 == 1
    return h1, h2


def substituted_curve_law(B: LubinTateModel, order: int = 6, graded: bool = True) -> FormalGroupLaw:
    _, F = gamma13_law(order)
    return base_change(F, B, graded)


def multiplicative_law(B: LubinTateModel, order: int = 6) -> FormalGroupLaw:
    """``z1 + z2 + u1 u z1 z2``."""
    return FormalGroupLaw.multiplicative(B, order, B.u1 * B.u)


def additive_law(B: LubinTateModel, order: int = 6) -> FormalGroupLaw:
    return FormalGroupLaw.additive(B, order)


__all__ = [
    "CheckReport",
    "InvariantsReport",
    "LTElement",
    "LocalizedModel",
    "LubinTateModel",
    "additive_law",
    "base_change",
    "check_realization_problem",
    "gamma13_law",
    "graded_ring",
    "height_diagnostics",
    "lubin_tate_invariants",
    "membership",
    "multiplicative_law",
    "orbit_basis_report",
    "substituted_curve_law",
]
