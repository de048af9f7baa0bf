"""
Degree tables, their identities and the conjecture probes.

Probe parameters are derived from the certified bounds actually reached at
the chosen (N, M), so the runs never ask for slopes that are not certified.
"""

from fractions import Fraction

import pytest

from unitroot.errors import InsufficientCertification
from unitroot.slopes import (
    DegreeTable,
    _assert_unit_slope_stability,
    assert_d_from_l,
    average_bound_scan,
    average_from_table,
    congruent_pairs,
    degree_table_d,
    degree_table_l,
    denominator_scan,
    denominator_stats,
    empirical_m,
    gm_probe,
    l_table_from_d_tables,
    table_is_prefix,
    tables_agree,
)

P, N, M = 5, 6, 3


def _min_bound(weights, store):
    return min(degree_table_d(P, k, N, M, store).certified_bound for k in weights)


# 1️⃣ DegreeTable

def test_degree_table_get():
    table = DegreeTable(0, {Fraction(0): 1, Fraction(1, 2): 0}, Fraction(1))
    assert table.degrees == {Fraction(0): 1}
    assert table.get(-1) == 0
    assert table.get(Fraction(1, 3)) == 0
    with pytest.raises(InsufficientCertification):
        table.get(1)


def test_degree_table_validation():
    with pytest.raises(ValueError):
        DegreeTable(0, {Fraction(2): 1}, Fraction(1))
    with pytest.raises(ValueError):
        DegreeTable(0, {Fraction(0): -1}, Fraction(1))
    assert DegreeTable(0, {Fraction(0): -1}, Fraction(1), kind="L").get(0) == -1


def test_l_table_from_synthetic_d_tables():
    d_next = DegreeTable(2, {Fraction(0): 1, Fraction(1): 2}, Fraction(2))
    d_cur = DegreeTable(0, {Fraction(0): 1, Fraction(1, 2): 2}, Fraction(1))
    l_table = l_table_from_d_tables(d_next, d_cur)
    assert l_table.kind == "L"
    assert l_table.certified_bound == 2
    assert l_table.degrees == {Fraction(0): 1, Fraction(1): 1, Fraction(3, 2): -2}
    with pytest.raises(ValueError):
        l_table_from_d_tables(d_cur, d_cur)


def test_congruent_pairs():
    assert congruent_pairs(5, 0, [8, 0, 1, 4]) == [(0, 4), (0, 8), (4, 8)]
    assert congruent_pairs(5, 1, range(0, 41, 4)) == [
        (0, 20), (0, 40), (4, 24), (8, 28), (12, 32), (16, 36), (20, 40)
    ]


def test_denominator_stats():
    assert denominator_stats([Fraction(1, 2), Fraction(2, 3), Fraction(3)]) == (3, 6)
    assert denominator_stats([]) == (1, 1)


def test_average_from_table():
    degrees = {Fraction(0): 2, Fraction(1, 2): 2, Fraction(1): 1}
    assert average_from_table(degrees, 1) == 5
    assert average_from_table(degrees, Fraction(1, 2)) == 8
    with pytest.raises(ValueError):
        average_from_table(degrees, 0)


# 2️⃣ Identities on computed tables

def test_l_tables_satisfy_both_identities(store):
    l_tables = {w: degree_table_l(P, w, N, M, store) for w in range(-10, 9)}
    for k in range(0, 9):
        assert_d_from_l(degree_table_d(P, k, N, M, store), l_tables)


def test_certified_bounds_are_positive(store):
    for k in range(0, 7):
        table = degree_table_d(P, k, N, M, store)
        assert 0 < table.certified_bound <= M + 1
        assert all(s < table.certified_bound for s in table.degrees)


def test_unit_slope_stability(store):
    tables = {k: degree_table_d(P, k, N, M, store) for k in range(0, 21)}
    _assert_unit_slope_stability(P, tables)
    for k1, k2 in congruent_pairs(P, 0, tables):
        assert tables[k1].get(0) == tables[k2].get(0)


def test_tables_grow_with_precision(store):
    for k in range(0, 7):
        low = degree_table_d(P, k, N, M, store)
        high = degree_table_d(P, k, N, M + 1, store)
        assert table_is_prefix(low, high), (k, low, high)


@pytest.mark.parametrize("p, N, M", [(5, 4, 3), (3, 3, 2), (3, 4, 3)])
def test_tables_agree_with_longer_windows(p, N, M, store):
    for k in range(0, 8):
        low = degree_table_d(p, k, N, M, store)
        high = degree_table_d(p, k, N + 2, M + 1, store)
        assert tables_agree(low, high), (k, low, high)


def test_window_below_the_unit_span_certifies_nothing(store):
    table = degree_table_d(P, 3, 3, 2, store)
    assert table.certified_bound == 0
    assert table.degrees == {}


def test_synthetic_agreement():
    low = DegreeTable(0, {Fraction(0): 2, Fraction(1, 2): 2}, Fraction(1))
    high = DegreeTable(0, {Fraction(0): 2, Fraction(1, 2): 2, Fraction(1): 1}, Fraction(2))
    assert table_is_prefix(low, high)
    assert not table_is_prefix(high, low)
    assert tables_agree(high, low)
    shorter = DegreeTable(0, {Fraction(0): 2, Fraction(1, 3): 1}, Fraction(1, 2))
    assert not tables_agree(low, shorter)


# 3️⃣ Probes

def test_gm_probe_runs(store):
    weights = range(0, 41)
    s_max = min(Fraction(1), _min_bound(weights, store) / 2)
    report = gm_probe(P, s_max, 1, weights, N, M, store)
    assert report.summary["pairs"] == 22
    assert report.summary["ceil_s_max"] == 1
    for finding in report.findings:
        assert finding["object"] in ("D", "L")
        assert finding["k2"] - finding["k1"] in (20, 40)
        assert finding["d1"] != finding["d2"]
    assert report.to_dict()["status"] == ("PASS" if not report.findings else "FINDINGS")

    levels = empirical_m(P, s_max, weights, 1, N, M, store)
    assert levels["levels"][0]["m"] == 0
    assert levels["empirical_m"] in (None, 0, 1)


def test_gm_probe_unit_slopes_agree(store):
    report = gm_probe(P, 0, 0, [0, 4, 8, 12], N, M, store)
    assert report.summary["pairs"] == 6
    assert report.findings == []
    assert report.summary["mismatch_sets_coincide"]


def test_gm_probe_refuses_uncertified_slopes(store):
    with pytest.raises(InsufficientCertification):
        gm_probe(P, M + 1, 0, [0, 4], N, M, store)


def test_gm_probe_without_pairs():
    report = gm_probe(P, 1, 1, [0, 1, 2], N, M)
    assert report.passed
    assert report.summary == {"pairs": 0}


def test_denominator_scan(store):
    report = denominator_scan(P, range(0, 7), N, M, store)
    assert report.passed
    summary = report.summary
    assert len(summary["per_weight"]) == 7
    assert summary["max_denominator"] >= 1
    assert summary["lcm_denominator"] % summary["max_denominator"] == 0
    for entry in summary["per_weight"]:
        dens = [Fraction(s).denominator for s in entry["slopes"]]
        assert entry["max_denominator"] == max(dens, default=1)


def test_average_bound_scan(store):
    weights = range(0, 7)
    A = _min_bound(weights, store) / 2
    report = average_bound_scan(P, weights, A, N, M, store)
    c_hat = Fraction(report.summary["c_hat"])
    assert c_hat == max(Fraction(r["average"]) for r in report.summary["records"])
    for finding in report.findings:
        assert finding["d"] > c_hat * Fraction(finding["slope"])
    for record in report.summary["records"]:
        assert Fraction(record["average"]) == Fraction(record["sum_degrees"]) / A


def test_average_bound_refuses_uncertified_range(store):
    with pytest.raises(InsufficientCertification):
        average_bound_scan(P, [0], M + 1, N, M, store)
