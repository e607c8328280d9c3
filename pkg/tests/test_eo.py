from fractions import Fraction

import pytest

from dessin.eo import (
    ALPHA,
    BETA,
    EOEngine,
    EOForm,
    EOInvariantError,
    bergman_kernel,
    slot_names,
    spectral_curve,
)
from dessin.laurent import LaurentPolynomial
A = LaurentPolynomial.variable("a")
B = LaurentPolynomial.variable("b")
S = LaurentPolynomial.variable("s")

STABLE_RANGE = [(g, n) for g in range(3) for n in range(1, 7) if 0 < 2 * g - 2 + n <= 4]


def gap2_inverse(scale):
    # 1 / (scale * (alpha - beta)^2) with (alpha - beta)^2 = 16 a^2 b^2
    return LaurentPolynomial.monomial(Fraction(1, 16 * scale), {"a": -2, "b": -2})


def test_curve_data():
    curve = spectral_curve()
    assert curve.alpha == (A - B) ** 2
    assert curve.beta == (A + B) ** 2
    # alpha beta = (u - v)^2 and alpha + beta = 2(u + v) under u = a^2, v = b^2
    assert curve.alpha * curve.beta == (A ** 2 - B ** 2) ** 2
    assert curve.alpha + curve.beta == 2 * (A ** 2 + B ** 2)


def test_curve_identity_both_charts(eo):
    report = eo.curve_identity_report(20)
    assert report.passed, report.first_discrepancy


def test_involution_parity(eo):
    # x(z) is even and y(z) x(z) is odd, so sigma(z) = -z fixes x and negates y
    zsq = eo.z_square_series(6)
    assert zsq.min_exp == 0  # even data expressed through z^2 only
    kernel0 = eo.recursion_kernel_expansion("zero", 8)
    assert all(k % 2 == 1 for k, _ in kernel0.items())


def test_w03_matches_display(eo):
    expected = (
        BETA * LaurentPolynomial.monomial(1, {"z1": -2, "z2": -2, "z3": -2}) - ALPHA
    ) * gap2_inverse(1)
    assert eo.omega(0, 3).poly == expected


def test_w11_matches_display(eo):
    z1 = LaurentPolynomial.variable("z1")
    expected = gap2_inverse(8) * (
        BETA * LaurentPolynomial.monomial(1, {"z1": -4})
        - (2 * BETA + ALPHA) * LaurentPolynomial.monomial(1, {"z1": -2})
        + (2 * ALPHA + BETA)
        - ALPHA * z1 ** 2
    )
    assert eo.omega(1, 1).poly == expected


def test_unstable_forms_rejected(eo):
    for g, n in [(0, 1), (0, 2)]:
        with pytest.raises(ValueError):
            eo.omega(g, n)


def test_kernel_chart_zero_leading_residue(eo):
    # the z^{-1} coefficient of the kernel alone is -beta/(2 (alpha-beta)^2 z0^2)
    k0 = eo.recursion_kernel_expansion("zero", 6)
    expected = -BETA * gap2_inverse(2) * LaurentPolynomial.monomial(1, {"z0": -2})
    assert k0.coefficient(-1) == expected


def test_kernel_infinity_chart_simple_pole(eo):
    ki = eo.recursion_kernel_expansion("infinity", 6)
    assert ki.min_exp == -1
    assert not ki.coefficient(-1).is_zero()


def test_kernel_rejects_bad_arguments(eo):
    with pytest.raises(ValueError):
        eo.recursion_kernel_expansion("nowhere", 4)
    with pytest.raises(ValueError):
        eo.recursion_kernel_expansion("zero", -1)


def test_bergman_kernel_designated_object():
    assert str(bergman_kernel()) == "dz1 dz2 / (z1 - z2)^2"


@pytest.mark.parametrize("g,n", STABLE_RANGE)
def test_forms_even_symmetric_s_free(eo, g, n):
    form = eo.omega(g, n)
    form.check_invariants()  # evenness, slot symmetry, no s
    assert "s" not in form.poly.alphabet


def test_invariant_violation_is_hard_error():
    z1 = LaurentPolynomial.variable("z1")
    with pytest.raises(EOInvariantError):
        EOForm(0, 3, z1).check_invariants()  # odd degree
    z2 = LaurentPolynomial.variable("z2")
    with pytest.raises(EOInvariantError):
        EOForm(0, 3, z1 ** 2 + 2 * z2 ** 2).check_invariants()  # asymmetric
    with pytest.raises(EOInvariantError):
        EOForm(1, 1, S * z1 ** 2).check_invariants()  # mentions s


@pytest.mark.parametrize("g,n", [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)])
def test_chart_consistency(eo, g, n):
    """Recomputing with the two residue charts swapped gives the same form
    with alpha <-> beta and z_i <-> 1/z_i."""
    dual = EOEngine(dual=True)
    names = slot_names(n)
    w = eo.omega(g, n).poly
    w_dual = dual.omega(g, n).poly
    flipped = w_dual.substitute({nm: LaurentPolynomial.monomial(1, {nm: -1}) for nm in names})
    scale = LaurentPolynomial.monomial((-1) ** n, {nm: -2 for nm in names})
    assert w == scale * flipped


def test_z_of_x_leading_terms(eo):
    zx = eo.z_of_x_series(5)
    assert zx.coefficient(0) == LaurentPolynomial.constant(1)
    assert zx.coefficient(1) == -2 * A * B * S
    # z^2 z^{-2} = 1 through the window
    prod = eo.z_square_series(6) * eo.z_square_series(6).invert()
    assert prod.matches(eo.z_square_series(6).invert() * eo.z_square_series(6))


def test_to_x_series_leading_coefficients(eo):
    U, V = LaurentPolynomial.variable("u"), LaurentPolynomial.variable("v")
    g11 = eo.to_x_series(1, 1, 8)
    assert g11.coefficient((3,)) == U * V * S ** 3
    g03 = eo.to_x_series(0, 3, 9)
    assert g03.coefficient((1, 1, 1)) == 2 * S ** 3 * U * V


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1)])
def test_main_theorem_small(eo, vir, g, n):
    report = eo.verify_main_theorem(g, n, 9, vir)
    assert report.passed, report.first_discrepancy


@pytest.mark.parametrize("g,n", [(0, 4), (0, 5), (1, 2), (2, 1)])
def test_main_theorem_no_printed_values(eo, vir, g, n):
    """Both engines run independently where nothing is printed to copy."""
    report = eo.verify_main_theorem(g, n, 10, vir)
    assert report.passed, report.first_discrepancy


@pytest.mark.parametrize("g,n", [(3, 1), (2, 2)])
def test_main_theorem_deeper(eo, vir, g, n):
    report = eo.verify_main_theorem(g, n, 12, vir)
    assert report.passed, report.first_discrepancy


def test_to_x_series_is_symmetric(eo):
    series = eo.to_x_series(0, 4, 10)
    assert series.coefficient((1, 1, 1, 2)) == series.coefficient((2, 1, 1, 1))


def test_eoform_json_alphabet(eo):
    blob = eo.omega(1, 1).to_json()
    assert blob["form"]["alphabet"] == ["a", "b", "z1"]
    assert blob["g"] == 1 and blob["n"] == 1
    round_tripped = LaurentPolynomial.from_json(blob["form"])
    assert round_tripped == eo.omega(1, 1).poly
