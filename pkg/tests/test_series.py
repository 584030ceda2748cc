from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgltheta.coeffdom import QQ, ZZ, PadicApprox, PadicRing
from fgltheta.series import (
    BivarSeries,
    LaurentSeries,
    NonUnitLeadingCoefficient,
    NonzeroConstantTerm,
    TruncSeries,
    UnknownCoefficient,
    compose_bivariate,
    divided_difference,
    series_compose,
)
from oracles import geometric_inverse

R = PadicRing(32)
coeff = st.integers(min_value=-1000, max_value=1000)
coeff_lists = st.lists(coeff, min_size=1, max_size=10)


def padic(values, order=None):
    return TruncSeries(R, [R(v) for v in values], order)


def signed(series):
    return [c.signed() for c in series.coeffs]


def test_inverse_of_one_minus_10s():
    f = padic([1, -10], 6)
    assert signed(f.inverse()) == [10**k for k in range(6)]


@given(coeff_lists, st.integers(min_value=1, max_value=10))
def test_inverse_matches_geometric_oracle(tail, order):
    coeffs = [1] + tail
    got = TruncSeries(QQ, [Fraction(c) for c in coeffs], order).inverse()
    assert list(got.coeffs) == geometric_inverse(coeffs, order)


@given(coeff_lists)
def test_padic_inverse_is_inverse(tail):
    f = padic([3] + tail, 8)
    one = f * f.inverse()
    assert signed(one) == [1] + [0] * 7


def test_inverse_needs_unit():
    with pytest.raises(NonUnitLeadingCoefficient):
        padic([2, 1], 4).inverse()


@given(coeff_lists, coeff_lists, coeff_lists)
def test_multiplication_associative_commutative(a, b, c):
    f, g, h = padic(a), padic(b), padic(c)
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h


@given(coeff_lists, coeff_lists)
def test_certified_order_is_minimum(a, b):
    f, g = padic(a), padic(b)
    assert (f * g).order == min(f.order, g.order)
    assert (f + g).order == min(f.order, g.order)


def test_unknown_coefficient_beyond_order():
    f = padic([1, 2, 3])
    assert f[1].signed() == 2
    with pytest.raises(UnknownCoefficient):
        f[3]


def test_compose_geometric():
    # 1/(1 - s) composed with s + s^2
    f = padic([1] * 6)
    g = padic([0, 1, 1], 6)
    assert signed(series_compose(f, g)) == [1, 1, 2, 3, 5, 8]


def test_compose_needs_zero_constant():
    with pytest.raises(NonzeroConstantTerm):
        series_compose(padic([1, 1]), padic([1, 1]))


def test_compose_order_bookkeeping():
    f = padic([0, 1, 1], 3)
    g = padic([0, 0, 1, 1], 10)  # valuation 2
    assert series_compose(f, g).order == 6


@given(coeff_lists, coeff_lists)
def test_compose_is_associative_with_linear(a, b):
    f = padic(a, 6)
    g = padic([0] + b, 6)
    lin = padic([0, 5], 6)
    assert series_compose(series_compose(f, g), lin) == series_compose(f, series_compose(g, lin))


def test_derivative_and_shift():
    f = padic([1, 2, 3, 4])
    assert signed(f.derivative()) == [2, 6, 12]
    assert signed(f.shift(2)) == [0, 0, 1, 2, 3, 4]


# Laurent ----------------------------------------------------------------------


def test_laurent_product_window():
    f = LaurentSeries(R, -2, [R(1), R(1)], 5)  # order 5, valuation -2
    g = LaurentSeries(R, 1, [R(1)], 4)  # order 4, valuation 1
    assert (f * g).order == min(5 + 1, 4 - 2)


def test_laurent_inverse_window():
    f = LaurentSeries(R, 2, [R(1), R(3)], 8)
    inv = f.inverse()
    assert inv.valuation() == -2
    assert inv.order == 8 - 4
    prod = f * inv
    assert [c.signed() for _, c in prod.items()] == [1]


@given(st.lists(coeff, min_size=2, max_size=8), st.integers(min_value=-4, max_value=4))
def test_compress_expand_roundtrip(coeffs, lo):
    f = LaurentSeries(R, lo, [R(c) for c in coeffs])
    g = f.expand(3)
    back, stray = g.compress(3)
    assert stray == []
    assert back.lo == f.lo and back.order == f.order
    assert back.agrees_with(f)


def test_compress_reports_stray_terms():
    f = LaurentSeries(R, -1, [R(1), R(2)], 5)  # 1 s^-1 + 2 s^0
    g, stray = f.compress(3)
    assert [(k, c.signed()) for k, c in stray] == [(-1, 1)]


def test_principal_part_and_to_series():
    f = LaurentSeries(R, -1, [R(7), R(1)], 3)
    assert [(k, c.signed()) for k, c in f.principal_part()] == [(-1, 7)]
    with pytest.raises(ValueError):
        f.to_series()


# bivariate --------------------------------------------------------------------


def test_divided_difference_of_cube():
    w = TruncSeries(ZZ, [0, 0, 0, 1], 6)
    dd = divided_difference(w)
    assert dd.order == 5
    assert dd.as_dict() == {(2, 0): 1, (1, 1): 1, (0, 2): 1}


@given(st.lists(coeff, min_size=4, max_size=8))
def test_divided_difference_identity(coeffs):
    """``(z2 - z1) * dd(w) = w(z2) - w(z1)`` below the certified degree."""
    w = TruncSeries(ZZ, [0] + coeffs)
    dd = divided_difference(w)
    n = dd.order
    diff = BivarSeries.from_dict(ZZ, {(0, 1): 1, (1, 0): -1}, n)
    lhs = (diff * dd).as_dict()
    rhs = {}
    for k, c in enumerate(w.coeffs):
        if 0 < k < n and c:
            rhs[(0, k)] = rhs.get((0, k), 0) + c
            rhs[(k, 0)] = rhs.get((k, 0), 0) - c
    assert lhs == {k: v for k, v in rhs.items() if v}


def test_bivariate_substitute_and_diagonal():
    F = BivarSeries.from_dict(ZZ, {(1, 0): 1, (0, 1): 1, (1, 1): 3}, 5)
    z = TruncSeries.gen(ZZ, 5)
    assert F.substitute(z, z) == F.diagonal()
    assert list(F.diagonal().coeffs) == [0, 2, 3, 0, 0]


def test_compose_bivariate():
    f = TruncSeries(ZZ, [0, 1, 1], 4)
    g = BivarSeries.from_dict(ZZ, {(1, 0): 1, (0, 1): 1}, 4)
    assert compose_bivariate(f, g).as_dict() == {(1, 0): 1, (0, 1): 1, (2, 0): 1, (1, 1): 2, (0, 2): 1}


@given(st.lists(coeff, min_size=3, max_size=10))
def test_bivariate_inverse(coeffs):
    F = BivarSeries(R, [R(1)] + [R(c) for c in coeffs], 4)
    one = F * F.inverse()
    assert {k: v.signed() for k, v in one.items()} == {(0, 0): 1}


def test_padic_bivariate_uses_kernel_consistently():
    F = BivarSeries(R, [R(c) for c in range(1, 16)], 5)
    G = BivarSeries(ZZ, list(range(1, 16)), 5)
    prod_p = {k: v.signed() for k, v in (F * F).items()}
    prod_z = {k: int(v) for k, v in (G * G).items()}
    assert prod_p == {k: (v + 2**31) % 2**32 - 2**31 for k, v in prod_z.items()}


def test_mixed_precision_drops_to_minimum():
    f = TruncSeries(PadicRing(8), [PadicApprox.of(1, 8)], 2)
    g = TruncSeries(PadicRing(16), [PadicApprox.of(1, 16)], 2)
    assert (f * g)[0].precision == 8
