from fractions import Fraction

import pytest

from dessin.closedforms import S, U, V, dessin_closed_series, narayana_one_point_law
from dessin.series import SeriesWindowError
from dessin.virasoro import (
    CacheFormatError,
    CorrelatorTable,
    PartitionKey,
    VirasoroEngine,
)


def partitions_up_to(total):
    def rec(rem, lo):
        if rem == 0:
            yield ()
        for a in range(lo, rem + 1):
            for rest in rec(rem - a, a):
                yield (a,) + rest

    for t in range(1, total + 1):
        yield from rec(t, 1)


# -- base values ----------------------------------------------------------------


def test_seed_value(vir):
    assert vir.raw_correlator(0, [1]) == S * U * V


def test_genus_one_single_insertion_vanishes(vir):
    assert vir.raw_correlator(1, [1]).is_zero()


def test_one_step_of_the_constraint(vir):
    # eliminating the part 2 leaves only the (u+v)-term against the seed
    assert vir.raw_correlator(0, [2]) == Fraction(1, 2) * S ** 2 * U * V * (U + V)
    # cross-check: the weighted value is the x^{-3} series coefficient
    assert 2 * vir.raw_correlator(0, [2]) == S ** 2 * U * V * (U + V)


def test_genus_one_three(vir):
    assert vir.raw_correlator(1, [3]) == Fraction(1, 3) * S ** 3 * U * V
    assert vir.weighted_correlator(1, [3]) == S ** 3 * U * V


def test_weighted_values(vir):
    assert vir.weighted_correlator(0, [1, 1, 1]) == 2 * S ** 3 * U * V
    assert vir.weighted_correlator(0, [4]) == S ** 4 * U * V * (
        U ** 3 + 6 * U ** 2 * V + 6 * U * V ** 2 + V ** 3
    )
    assert vir.weighted_correlator(0, [1]) == S * U * V


def test_inputs_are_validated(vir):
    with pytest.raises(ValueError):
        vir.raw_correlator(-1, [1])
    with pytest.raises(ValueError):
        vir.raw_correlator(0, [])
    with pytest.raises(ValueError):
        vir.raw_correlator(0, [0, 2])


# -- n-point series ---------------------------------------------------------------


def test_one_point_series_matches_narayana_rows(vir):
    series = vir.npoint_series(0, 1, 6)
    for n in range(1, 6):
        assert series.coefficient((n,)) == narayana_one_point_law(n)


def test_genus_one_series_leading_term(vir):
    series = vir.npoint_series(1, 1, 7)
    assert series.coefficient((3,)) == U * V * S ** 3


def test_two_point_at_one_one(vir):
    assert vir.npoint_series(0, 2, 5).coefficient((1, 1)) == S ** 2 * U * V


def test_npoint_symmetry_and_window(vir):
    series = vir.npoint_series(0, 2, 8)
    assert series.coefficient((1, 3)) == series.coefficient((3, 1))
    with pytest.raises(SeriesWindowError):
        series.coefficient((5, 3))
    with pytest.raises(ValueError):
        vir.npoint_series(0, 3, 5)  # order below the smallest 3-slot tuple


# -- all-genus one-point oracle ----------------------------------------------------


def test_one_point_all_genus_small(vir):
    assert vir.one_point_all_genus(1) == S * U * V
    assert vir.one_point_all_genus(2) == S ** 2 * U * V * (U + V)
    assert vir.one_point_all_genus(3) == S ** 3 * U * V * (U ** 2 + 3 * U * V + V ** 2 + 1)


def test_kp_formula_values(vir):
    assert vir.kp_one_point(1) == S * U * V
    # direct two-term evaluation of the finite sum
    expected2 = Fraction(1, 2) * S ** 2 * U * V * ((U + 1) * (V + 1) - (U - 1) * (V - 1))
    assert vir.kp_one_point(2) == expected2
    assert vir.kp_one_point(3) == S ** 3 * U * V * (U ** 2 + 3 * U * V + V ** 2 + 1)


def test_oracle_equality(vir):
    for n in range(1, 13):
        assert vir.one_point_all_genus(n) == vir.kp_one_point(n), n


# -- structural laws ----------------------------------------------------------------


def test_strategy_independence():
    largest = VirasoroEngine(strategy="largest")
    smallest = VirasoroEngine(strategy="smallest")
    for parts in partitions_up_to(12):
        for g in range(3):
            assert largest.raw_correlator(g, parts) == smallest.raw_correlator(g, parts), (g, parts)


def test_degree_laws_divisibility_and_symmetry(vir):
    for parts in partitions_up_to(14):
        for g in range(4):
            value = vir.raw_correlator(g, parts)
            if value.is_zero():
                continue
            total = sum(parts)
            # s-degree law: exactly s^{sum parts}
            assert value.valuation("s") == total and value.degree("s") == total
            # divisible by u v
            assert value.valuation("u") >= 1 and value.valuation("v") >= 1
            # total (u,v)-degree law
            assert value.total_degree(("u", "v")) == total - len(parts) + 2 - 2 * g, (g, parts)
            # u <-> v symmetry
            assert value.substitute({"u": V, "v": U}) == value


def test_vanishing_bound(vir):
    for n in range(1, 15):
        for g in range(8):
            assert vir.raw_correlator(g, (n,)).is_zero() == (2 * g > n - 1), (g, n)


def test_table_is_insertion_order_independent():
    first = VirasoroEngine()
    first.raw_correlator(1, (2, 3))
    first.raw_correlator(0, (5,))
    second = VirasoroEngine()
    second.raw_correlator(0, (5,))
    second.raw_correlator(1, (2, 3))
    shared = set(first.table.entries) & set(second.table.entries)
    assert all(first.table.entries[k] == second.table.entries[k] for k in shared)


# -- operator-form assembly -----------------------------------------------------------


@pytest.mark.parametrize("g,n", [(0, 2), (1, 0), (1, 1)])
def test_operator_form_matches_direct_recursion(vir, g, n):
    report = vir.operator_form_report(g, n, 8)
    assert report.passed, report.first_discrepancy


def test_operator_form_leading_coefficient(vir):
    assembled = vir.assemble_operator_form(1, 0, 8)
    assert assembled.coefficient((3,)) == U * V * S ** 3


def test_operator_form_rejects_tiny_order(vir):
    with pytest.raises(ValueError):
        vir.assemble_operator_form(0, 2, 4)
    with pytest.raises(ValueError):
        vir.assemble_operator_form(0, 0, 8)  # target (0,1) is unstable


def test_operator_form_agrees_with_closed_three_point(vir):
    assembled = vir.assemble_operator_form(0, 2, 9)
    closed = dessin_closed_series("G03", 9)
    assert assembled.first_difference(closed) is None


# -- cache persistence -----------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    engine = VirasoroEngine()
    for g in range(3):
        for n in range(1, 4):
            if 2 * g - 2 + n > 0 or (g, n) in ((0, 1), (0, 2)):
                engine.npoint_series(g, n, 12)
    assert len(engine.table) >= 100
    path = tmp_path / "table.json"
    engine.table.save(path)
    loaded = CorrelatorTable.load(path)
    assert loaded == engine.table


def test_cache_version_mismatch(tmp_path):
    path = tmp_path / "table.json"
    path.write_text('{"version": 99, "alphabet": ["s","u","v"], "entries": []}')
    with pytest.raises(CacheFormatError):
        CorrelatorTable.load(path)


def test_cache_corrupt_file(tmp_path):
    path = tmp_path / "table.json"
    path.write_text('{"version": 1, "alphabet": ["s","u","v"], "entries": [{"g": 0}]}')
    with pytest.raises(CacheFormatError):
        CorrelatorTable.load(path)
    path.write_text("not json at all")
    with pytest.raises(CacheFormatError):
        CorrelatorTable.load(path)


def test_cache_load_extend_save_is_superset(tmp_path):
    engine = VirasoroEngine()
    engine.raw_correlator(0, (3,))
    path = tmp_path / "table.json"
    engine.table.save(path)
    before = set(CorrelatorTable.load(path).entries)

    extended = VirasoroEngine(CorrelatorTable.load(path))
    extended.raw_correlator(1, (4, 2))
    extended.table.save(path)
    after = CorrelatorTable.load(path)
    assert before <= set(after.entries)
    assert PartitionKey.make(1, (2, 4)) in after.entries


def test_cache_hit_statistics():
    engine = VirasoroEngine()
    engine.raw_correlator(0, (4,))
    misses = engine.table.misses
    engine.raw_correlator(0, (4,))
    assert engine.table.hits >= 1
    assert engine.table.misses == misses
