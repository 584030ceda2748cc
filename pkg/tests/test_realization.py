import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgltheta.coeffdom import PadicRing, WittF4
from fgltheta.ellfgl import FormalGroupLaw
from fgltheta.realization import (
    LocalizedModel,
    LubinTateModel,
    additive_law,
    check_realization_problem,
    gamma13_law,
    graded_ring,
    height_diagnostics,
    lubin_tate_invariants,
    membership,
    multiplicative_law,
    orbit_basis_report,
    substituted_curve_law,
)
from fgltheta.series import LaurentSeries
from oracles import f4_mul, gf2_rank

R = PadicRing(16)


def x_laurent(terms, order=6):
    return LaurentSeries.from_dict(R, {k: R(v) for k, v in terms.items()}, order)


# axioms ---------------------------------------------------------------------------


def test_gamma13_ring_is_a_realization_problem():
    A, F = gamma13_law(6)
    rep = check_realization_problem(A, F)
    assert rep.verdicts == {
        "nonnegative_grading": True,
        "degreewise_finite_free": True,
        "regular_sequence": True,
        "quotient_is_F2": True,
    }


def test_additive_law_fails_regularity():
    A = graded_ring()
    rep = check_realization_problem(A, FormalGroupLaw.additive(A, 6))
    assert not rep.verdicts["regular_sequence"]
    assert not rep.verdicts["quotient_is_F2"]


def test_b_zero_specialization_fails():
    A, F = gamma13_law(6, ("a",))
    rep = check_realization_problem(A, F)
    assert not rep.passed
    assert not rep.verdicts["regular_sequence"]


def test_b_zero_inside_full_ring_leaves_b_in_quotient():
    from fgltheta.ellfgl import WeierstrassCurve, fgl_from_curve

    A = graded_ring()
    F = fgl_from_curve(WeierstrassCurve.gamma13(A, A.gen("a"), 0), 6)
    rep = check_realization_problem(A, F)
    assert not rep.verdicts["quotient_is_F2"]
    assert "F2[b]" in rep.details["quotient_is_F2"]


def test_monomial_counts_per_degree():
    A, F = gamma13_law(5)
    rep = check_realization_problem(A, F)
    assert "12: 3" in rep.details["degreewise_finite_free"]


# localized models ---------------------------------------------------------------


def test_membership_trivial_examples():
    assert membership(x_laurent({-1: 1}), "K1-zero")
    assert not membership(x_laurent({1: 1}), "K1-zero")
    assert membership(x_laurent({1: 1}), "K2-zero")
    assert not membership(x_laurent({-1: 1}), "K2-zero")
    assert membership(x_laurent({-1: 1, 1: 1}), "K2K1-zero")


def test_membership_ignores_zero_mod_2n():
    assert membership(x_laurent({2: 1 << 16, -1: 3}), "K1-zero")


def test_membership_in_s_variable():
    s_series = LaurentSeries.from_dict(R, {-1: R(2)}, 4)  # 2 s^-1 = 2x
    assert not membership(s_series, "K1-zero", variable="s")
    assert membership(s_series, "K2-zero", variable="s")


@given(st.dictionaries(st.integers(-5, 5), st.integers(-50, 50), max_size=6), st.integers(-5, 6))
def test_membership_monotone_under_truncation(terms, cut):
    e = x_laurent(terms, 6)
    cut = max(cut, e.lo)
    for kind in ("K1-zero", "K2-zero", "K2K1-zero"):
        if membership(e, kind):
            assert membership(e.truncate(cut), kind)


def test_localized_model_validates_payload():
    LocalizedModel("K1-zero", x_laurent({-2: 1, 0: 1}))
    with pytest.raises(ValueError):
        LocalizedModel("K1-zero", x_laurent({3: 1}))
    with pytest.raises(ValueError):
        LocalizedModel("K9-zero", x_laurent({0: 1}))


# Lubin-Tate -----------------------------------------------------------------------

B = LubinTateModel(8, 8)
small = st.integers(-20, 20)


@st.composite
def lt_elements(draw):
    out = B.zero
    for _ in range(draw(st.integers(0, 4))):
        c = WittF4.of(draw(small), draw(small), B.precision)
        out = out + B.monomial(c, draw(st.integers(0, 7)), draw(st.integers(-3, 3)))
    return out


group = st.sampled_from(B.group())


@given(lt_elements(), lt_elements(), group)
def test_action_is_by_ring_automorphisms(x, y, g):
    assert B.act(g, x + y) == B.act(g, x) + B.act(g, y)
    assert B.act(g, x * y) == B.act(g, x) * B.act(g, y)


@given(lt_elements(), group, group)
def test_action_composition_law(x, g, h):
    assert B.act(g, B.act(h, x)) == B.act(B.compose(g, h), x)


@given(lt_elements())
def test_semidirect_relation(x):
    # sigma zeta sigma^-1 = zeta^2, with sigma^-1 = sigma
    assert B.sigma(B.zeta(B.sigma(x))) == B.zeta(B.zeta(x))
    assert B.zeta(B.zeta(B.zeta(x))) == x
    assert B.sigma(B.sigma(x)) == x


def test_generator_actions():
    w = B.omega
    assert B.zeta(B.u1) == w * B.u1
    assert B.zeta(B.u) == w * w * B.u
    assert B.sigma(B.u1) == B.u1 and B.sigma(B.u) == B.u
    assert B.sigma(w) == w * w


def test_witt_coefficients_use_independent_product():
    x, y = WittF4.of(3, -5, 8), WittF4.of(-2, 7, 8)
    re, im = f4_mul((3, -5), (-2, 7))
    assert (B.monomial(x) * B.monomial(y)).coefficient(0, 0) == WittF4.of(re, im, 8)


def test_invariants_are_u1_cubed_image():
    rep = lubin_tate_invariants(B)
    assert rep.basis_exponents == [0, 3, 6]
    assert rep.matches
    assert rep.fixed_checks == {
        "u1^3 fixed": True,
        "u1 fixed": False,
        "omega u1^3 fixed under sigma": False,
    }


def test_invariants_small_model():
    rep = lubin_tate_invariants(LubinTateModel(2, 4))
    assert rep.basis_exponents == [0, 3] and rep.matches


def test_transfer_lands_in_fixed_part():
    x = B.omega * B.u1 ** 3 + B.u1 * B.u
    assert B.is_fixed(B.transfer(x))


def test_orbit_basis_total_and_degreewise():
    rep = orbit_basis_report(B)
    assert rep["total_rank"] == 6
    assert rep["degreewise_rank"] == {0: 2, 1: 2, 2: 2}


def test_orbit_basis_rank_by_independent_elimination():
    e = B.omega * (B.one + B.u + B.u * B.u)
    rows = []
    for g in B.group():
        x = B.act(g, e)
        row = []
        for l in range(3):
            c = x.coefficient(l, 0)
            row += [c.re.value % 2, c.im.value % 2]
        rows.append(row)
    assert gf2_rank(rows) == 6


def test_heights():
    assert height_diagnostics(B, substituted_curve_law(B)) == (True, True)
    assert height_diagnostics(B, substituted_curve_law(B, graded=False)) == (True, True)
    assert height_diagnostics(B, multiplicative_law(B)) == (True, False)
    assert height_diagnostics(B, additive_law(B)) == (False, False)


def test_substituted_two_series_against_direct_substitution():
    """[2](z) over B equals the Z[a, b] two-series with a -> u1 u, b -> u^3."""
    from fgltheta.ellfgl import n_series

    A, F = gamma13_law(6)
    two_A = n_series(F, 2, 5)
    two_B = n_series(substituted_curve_law(B, 6), 2, 5)
    a_img, b_img = B.u1 * B.u, B.u ** 3
    for k in range(5):
        expected = B.zero
        for (i, j), c in A.terms(two_A[k]).items():
            expected = expected + (a_img ** i) * (b_img ** j) * c
        assert two_B[k] == expected
