from fractions import Fraction

import pytest

from dessin import closedforms as cf
from dessin.laurent import LaurentPolynomial, binom_fraction
from dessin.report import run_comparisons

S, U, V = cf.S, cf.U, cf.V


# -- Narayana / Catalan ----------------------------------------------------------


def test_narayana_row_four():
    assert [cf.narayana(4, k) for k in range(1, 5)] == [1, 6, 6, 1]


def test_narayana_at_one_is_catalan():
    for n in range(1, 21):
        assert sum(cf.narayana(n, k) for k in range(1, n + 1)) == cf.catalan(n)


def test_narayana_poly():
    p = cf.narayana_poly(3)
    q = LaurentPolynomial.variable("q")
    assert p == q + 3 * q ** 2 + q ** 3


def test_narayana_bounds():
    assert cf.narayana(1, 1) == 1
    with pytest.raises(ValueError):
        cf.narayana(3, 0)
    with pytest.raises(ValueError):
        cf.narayana(3, 4)


# -- dessin closed forms -----------------------------------------------------------


def test_g01_matches_printed_numerators():
    g01 = cf.dessin_closed_series("G01", 7)
    printed = {
        1: S * U * V,
        2: S ** 2 * U * V * (U + V),
        3: S ** 3 * U * V * (U ** 2 + 3 * U * V + V ** 2),
        4: S ** 4 * U * V * (U ** 3 + 6 * U ** 2 * V + 6 * U * V ** 2 + V ** 3),
        5: S ** 5 * U * V * (U ** 4 + 10 * U ** 3 * V + 20 * U ** 2 * V ** 2 + 10 * U * V ** 3 + V ** 4),
    }
    for n, expected in printed.items():
        assert g01.coefficient((n,)) == expected


def test_g01_equals_recursion(vir):
    g01 = cf.dessin_closed_series("G01", 10)
    for n in range(1, 10):
        assert g01.coefficient((n,)) == vir.weighted_correlator(0, (n,))


def test_g02_symmetric_and_equals_recursion(vir):
    g02 = cf.dessin_closed_series("G02", 10)
    assert g02.coefficient((2, 4)) == g02.coefficient((4, 2))
    assert vir.npoint_series(0, 2, 10).first_difference(g02) is None


def test_g03_and_g11_equal_recursion(vir):
    assert vir.npoint_series(0, 3, 9).first_difference(cf.dessin_closed_series("G03", 9)) is None
    assert vir.npoint_series(1, 1, 9).first_difference(cf.dessin_closed_series("G11", 9)) is None


def test_g11_second_term_by_binomial_expansion():
    # u v s^3 x^{-4} Delta^{-5/2}: the x^{-5} coefficient is
    # u v s^3 * binom(-5/2, 1) * (-2 s (u + v))
    expected = U * V * S ** 3 * binom_fraction(Fraction(-5, 2), 1) * (-2 * S * (U + V))
    assert expected == 5 * U * V * (U + V) * S ** 4
    assert cf.dessin_closed_series("G11", 6).coefficient((4,)) == expected


def test_unknown_closed_form():
    with pytest.raises(ValueError):
        cf.dessin_closed_series("G99", 6)


# -- generating-function identities ---------------------------------------------------


@pytest.mark.parametrize("name", cf.identity_names())
def test_identity_passes(name):
    report = cf.gf_identity_check(name, 8)
    assert report.passed, report.first_discrepancy


def test_identity_reports_are_reports():
    report = cf.gf_identity_check("narayana-gf", 6)
    assert report.suite == "identity:narayana-gf"
    assert report.checked_count == 7
    assert report.first_discrepancy is None


def test_identity_rejects_unknown_name_and_tiny_order():
    with pytest.raises(KeyError):
        cf.gf_identity_check("nope", 6)
    with pytest.raises(ValueError):
        cf.gf_identity_check("narayana-gf", 1)


def test_collapse_u_v_to_one_gives_catalan_and_central_binomial():
    # Narayana rows at u = v = 1 are Catalan numbers; squared-binomial rows
    # sum to central binomials
    one = LaurentPolynomial.constant(1)
    for n in range(1, 16):
        row = cf._narayana_row(n).substitute({"u": one, "v": one})
        assert row == LaurentPolynomial.constant(cf.catalan(n))
        sq = cf._square_binomial_row(n).substitute({"u": one, "v": one})
        assert sq == LaurentPolynomial.constant(cf.binom(2 * n, n))


def test_type_d_row_values():
    assert cf.type_d_row(0) == LaurentPolynomial.constant(1)
    assert cf.type_d_row(1) == U + V
    assert cf.type_d_row(2) == U ** 2 + 2 * U * V + V ** 2


def test_failure_is_reported_not_raised():
    # a deliberately wrong comparison stream produces a structured failure
    report = run_comparisons("demo", {}, [(("z", 0), LaurentPolynomial.constant(1), U)])
    assert report.status == "fail"
    assert report.first_discrepancy == {"location": ["z", 0], "expected": "1", "actual": "u"}


# -- catalog ---------------------------------------------------------------------------


@pytest.mark.parametrize("key", cf.catalog_names())
def test_catalog_passes(key):
    report = cf.catalog_check(key, 6)
    assert report.passed, (key, report.first_discrepancy)


def test_catalog_hermitian_moments_are_catalan():
    report = cf.catalog_check("hermitian/one", 12)
    assert report.passed
    # 25 w-coefficients checked: both the Catalan values and the vanishing odd moments
    assert report.checked_count == 25


def test_catalog_wk_double_factorial_identity():
    # (2n+1)!!/(n+2)! = C_{n+1} / 2^{n+1}
    for n in range(11):
        lhs = Fraction(cf.odd_double_factorial(n), cf.factorial(n + 2))
        rhs = cf.catalan(n + 1) / 2 ** (n + 1)
        assert lhs == rhs


def test_catalog_rejects_unknown_key():
    with pytest.raises(KeyError):
        cf.catalog_check("wk/three", 6)
