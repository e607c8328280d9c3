import pytest

from dessin.laurent import LaurentPolynomial
from dessin.npoint import NPointSeries, index_tuples
from dessin.series import SeriesWindowError

U = LaurentPolynomial.variable("u")


def test_index_tuples_enumeration():
    assert list(index_tuples(1, 4)) == [(1,), (2,), (3,)]
    assert list(index_tuples(2, 6)) == [(1, 1), (1, 2), (1, 3), (2, 2)]
    assert list(index_tuples(3, 5)) == []
    # tuples are nondecreasing and within budget
    for key in index_tuples(3, 12):
        assert key == tuple(sorted(key))
        assert sum(a + 1 for a in key) <= 12


def test_symmetric_storage_and_lookup():
    series = NPointSeries(0, 2, 8)
    series.set_coefficient((3, 1), U)
    assert series.coefficient((1, 3)) == U
    assert series.coefficient((3, 1)) == U
    assert (1, 3) in series.keys()


def test_window_and_validation():
    series = NPointSeries(0, 2, 6)
    with pytest.raises(SeriesWindowError):
        series.coefficient((3, 3))
    with pytest.raises(ValueError):
        series.coefficient((1,))
    with pytest.raises(ValueError):
        series.coefficient((0, 1))


def test_first_difference_orders_align():
    a = NPointSeries(0, 1, 8)
    b = NPointSeries(0, 1, 6)
    a.set_coefficient((6,), U)  # beyond b's window: not compared
    assert a.first_difference(b) is None
    b.set_coefficient((2,), U)
    assert a.first_difference(b) == ((2,), LaurentPolynomial.zero(), U)


def test_json_round_trip():
    series = NPointSeries(1, 2, 9)
    series.set_coefficient((1, 2), U ** 2)
    blob = series.to_json()
    assert blob["alphabet"] == ["s", "u", "v"]
    back = NPointSeries.from_json(blob)
    assert back.first_difference(series) is None
    assert (back.genus, back.n, back.order) == (1, 2, 9)
