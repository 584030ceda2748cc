"""The Frobenius lift psi^2 on Z_2((x))^ and the stability check for theta.

Variables: ``t`` is the curve parameter of ``y^2 + t xy + y = x^3``,
``s = t^-3 = x^-1`` is the canonical variable of the subring
``Z_2[x^-1]^`` and t-Laurent series are stored in ``u = t^-1`` so that they
have bounded principal part.  Conversions ``u <-> s`` are
:meth:`LaurentSeries.compress` / :meth:`LaurentSeries.expand` with ``m = 3``.

Pipeline:

1. ``c = -1 + 4 s c^3`` solved by fixed-point iteration (the kernel point of
   the canonical 2-isogeny has ``alpha = 2c/t`` with ``alpha^3 - t alpha - 2 = 0``);
2. ``psi2(t) = t^2 + 3 alpha - alpha^2 t``, computed twice;
3. ``psi2(s) = psi2(t)^-3`` rewritten in ``s``;
4. ``theta(s) = (psi2(s) - s^2) / 2`` and membership of ``psi2(s)`` in the
   subring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fgltheta.coeffdom import DEFAULT_DIGITS, ZZ, PadicApprox, PadicRing
from fgltheta.ellfgl import InternalMismatch
from fgltheta.realization import membership
from fgltheta.series import LaurentSeries, TruncSeries

DEFAULT_ORDER = 16

STABLE = "STABLE"
UNSTABLE = "UNSTABLE"

# 2 t^3 = 2x: a positive power of x with even coefficient, so it survives the
# mod-2 Frobenius congruence and only the membership test can reject it
NEGATIVE_CONTROL = {-3: 2}


@dataclass(frozen=True)
class CSeries:
    c: TruncSeries
    precision: int
    order: int
    iterations: int

    def residual(self) -> TruncSeries:
        """``c + 1 - 4 s c^3`` on the certified window."""
        c = self.c
        return (c + 1 - (c * c * c * 4).shift(1).truncate(c.order)).truncate(c.order)


def _check_params(N, K):
    if N < 8:
        raise ValueError(f"p-adic precision must be >= 8, got {N}")
    if K < 2:
        raise ValueError(f"series order must be >= 2, got {K}")


def solve_c(N: int = DEFAULT_DIGITS, K: int = DEFAULT_ORDER, ring=None) -> CSeries:
    """Solve ``c = -1 + 4 s c^3`` mod ``(2^N, s^K)``.

    Runs exactly ``K`` passes of ``c <- -1 + 4 s c^3`` from ``c = -1``.  The
    right side only uses ``c`` below the top degree, so each pass certifies one
    more coefficient; ``K - 1`` passes would already suffice.  Pass ``ring=ZZ``
    for the exact integer coefficients.
    """
    _check_params(N, K)
    R = PadicRing(N) if ring is None else ring
    c = TruncSeries.constant(R, -1, 1)
    for _ in range(K):
        step = (c * c * c * 4).shift(1)
        c = (step - 1).truncate(min(step.order, K))
    return CSeries(c, N if ring is None else 0, c.order, K)


def alpha_series(cs: CSeries) -> LaurentSeries:
    """``alpha = 2 c t^-1`` as a Laurent series in ``u = t^-1``."""
    return (LaurentSeries.from_series(cs.c).expand(3) * 2).shift(1)


def alpha_check(cs: CSeries) -> LaurentSeries:
    """Residual ``alpha^3 - t alpha - 2`` (a Laurent series in ``u``).

    Algebraically it equals ``2 (4 s c^3 - c - 1)``, so it vanishes on the
    window where ``c`` is certified.
    """
    a = alpha_series(cs)
    return a * a * a - a.shift(-1) - 2


def alpha_is_even(cs: CSeries) -> bool:
    return all(c.value % 2 == 0 for _, c in alpha_series(cs).items())


def _frobenius_correction(cs: CSeries) -> TruncSeries:
    c = cs.c
    return c * 6 - c * c * 4


def psi2_of_t(cs: CSeries) -> LaurentSeries:
    """``psi^2(t) = t^2 + 3 alpha - alpha^2 t`` in the variable ``u = t^-1``.

    Computed directly in Laurent arithmetic and again as
    ``t^2 (1 + (6c - 4c^2) s)``; disagreement raises :class:`InternalMismatch`.
    """
    a = alpha_series(cs)
    R = a.ring
    t2 = LaurentSeries.monomial(R, -2, a.order)
    direct = t2 + a * 3 - (a * a).shift(-1)
    inner = 1 + _frobenius_correction(cs).shift(1)
    factored = LaurentSeries.from_series(inner).expand(3).shift(-2)
    if not direct.agrees_with(factored):
        raise InternalMismatch("the two computations of psi^2(t) disagree")
    n = min(direct.order, factored.order)
    return direct.truncate(n)


def psi2_of_s_direct(cs: CSeries) -> TruncSeries:
    """``s^2 (1 + (6c - 4c^2) s)^-3`` computed only with power series in ``s``."""
    inner = 1 + _frobenius_correction(cs).shift(1)
    return (inner.inverse() ** 3).shift(2)


@dataclass
class ThetaReport:
    verdict: str
    precision: int
    order: int
    c: list
    psi2: list
    theta: list | None
    negative_powers: list = field(default_factory=list)
    stray_exponents: list = field(default_factory=list)
    odd_degrees: list = field(default_factory=list)
    residuals: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    psi2_lo: int = 0

    @property
    def stable(self) -> bool:
        return self.verdict == STABLE

    def series_rows(self, name):
        """``(degree, canonical residue, signed residue)`` for one table."""
        values = {"c": self.c, "psi2": self.psi2, "theta": self.theta}[name]
        if values is None:
            return []
        lo = self.psi2_lo if name == "psi2" else 0
        return [(lo + k, v.value, v.signed()) for k, v in enumerate(values)]

    def to_dict(self):
        def rows(name):
            return [
                {"degree": k, "residue": r, "signed": s, "precision": v.precision}
                for (k, r, s), v in zip(self.series_rows(name), getattr(self, name) or [])
            ]

        return {
            "variable": "s",
            "precision": {"padic": self.precision, "order": self.order},
            "series": {"c": rows("c"), "psi2": rows("psi2"), "theta": rows("theta")},
            "verdict": self.verdict,
            "residuals": {
                **self.residuals,
                "negative_powers": [[k, v.signed()] for k, v in self.negative_powers],
                "stray_exponents": [[k, v.signed()] for k, v in self.stray_exponents],
                "odd_degrees": list(self.odd_degrees),
            },
            "notes": list(self.notes),
        }


def _first_nonzero(series) -> int | None:
    items = series.items() if isinstance(series, LaurentSeries) else [
        (k, c) for k, c in enumerate(series.coeffs) if c.value
    ]
    return items[0][0] if items else None


def theta_pipeline(
    N: int = DEFAULT_DIGITS, K: int = DEFAULT_ORDER, perturbation=None, psi2_t_perturbation=None
) -> ThetaReport:
    """Compute ``psi^2(s)`` and ``theta(s)`` mod ``(2^N, s^K)`` and decide stability.

    Negative controls only: ``perturbation`` maps u-exponents to integers
    added to the t-Laurent series of ``psi^2(t^-3)`` before it is rewritten in
    ``s``; ``psi2_t_perturbation`` is added to ``psi^2(t)`` itself.
    """
    _check_params(N, K)
    cs = solve_c(N, K)
    R = cs.c.ring
    c_res = cs.residual()
    a_res = alpha_check(cs)
    psi_t = psi2_of_t(cs)
    if psi2_t_perturbation:
        psi_t = psi_t + LaurentSeries.from_dict(R, dict(psi2_t_perturbation), psi_t.order)
    psi_t_s = psi_t ** -3
    if perturbation:
        psi_t_s = psi_t_s + LaurentSeries.from_dict(R, dict(perturbation), psi_t_s.order)
    psi_s, stray = psi_t_s.compress(3)
    if psi_s.order < K:
        raise InternalMismatch(f"psi^2(s) only certified to s^{psi_s.order} < s^{K}")
    psi_s = psi_s.truncate(K)

    negative = psi_s.principal_part()
    in_subring = membership(psi_s, "K1-zero", variable="s")
    diff = psi_s - LaurentSeries.monomial(R, 2, K)
    odd = [k for k, v in diff.items() if v.value & 1]
    integral = not odd

    theta = None
    if integral and not negative:
        theta = [diff[k].halve() for k in range(K)]

    psi2_lo = min(psi_s.lo, 0)
    verdict = STABLE if (in_subring and not negative and not stray and integral) else UNSTABLE
    report = ThetaReport(
        verdict=verdict,
        precision=N,
        order=K,
        c=list(cs.c.coeffs),
        psi2=[psi_s[k] for k in range(psi2_lo, K)],
        psi2_lo=psi2_lo,
        theta=theta,
        negative_powers=negative,
        stray_exponents=stray,
        odd_degrees=odd,
        residuals={
            "c_equation_first_nonzero_degree": _first_nonzero(c_res),
            "c_equation_certified_order": c_res.order,
            "alpha_cubic_first_nonzero_u_degree": _first_nonzero(a_res),
            "alpha_cubic_certified_u_order": a_res.order,
            "alpha_even": alpha_is_even(cs),
            "theta_integral": integral,
            "psi2_certified_s_order": psi_t_s.compress(3)[0].order,
        },
        notes=[
            f"c from {cs.iterations} fixed-point passes of c <- -1 + 4 s c^3; "
            "each pass certifies one more s-degree",
            f"tables are exact modulo (2^{N}, s^{K}); theta carries 2^{N - 1}",
        ],
    )
    return report


def c_coefficients_exact(K: int):
    """Integer coefficients of ``c`` (no 2-adic truncation)."""
    return [int(x) for x in solve_c(64, K, ring=ZZ).c.coeffs]


def to_padic(values, N):
    return [PadicApprox.of(v, N) for v in values]


def alpha_uniqueness_certificate(cs: CSeries) -> dict:
    """Evidence that ``alpha`` is the only even root of ``X^3 - tX - 2``.

    For even roots ``a, b``: ``f(a) - f(b) = (a - b)(a^2 + ab + b^2 - t)`` and
    the second factor is ``-t`` plus terms of higher u-degree with even
    coefficients, hence a unit.  The certificate records that
    ``f'(alpha) = 3 alpha^2 - t`` has leading term ``-t`` with a unit
    coefficient and nothing below it.
    """
    a = alpha_series(cs)
    deriv = a * a * 3 - LaurentSeries.monomial(a.ring, -1, a.order)
    v = deriv.valuation()
    lead = deriv[v]
    return {
        "derivative_valuation_u": v,
        "derivative_leading_signed": lead.signed(),
        "derivative_unit": v == -1 and lead.is_unit(),
        "alpha_even": alpha_is_even(cs),
    }
