from math import e

import pytest

from dwise.constructors import FamilyId
from dwise.rank import (
    _ceil_e_times,
    chain_threshold,
    clauses,
    ranking_consistency,
    expected_ranking,
    n0,
    n1,
    n2,
    rank_table,
    catalogue_families,
    thresholds,
    verify_orderings,
)
from dwise.setcore import ParameterError


def by_id(reports):
    return {r.cid: r for r in reports}


def test_ceil_e_small_values():
    assert _ceil_e_times(1) == 3
    for N in (7, 1000, 10**6, 123456789):
        assert _ceil_e_times(N) == int(e * N) + 1


def test_thresholds():
    assert n2(4, 3) == 16
    assert n1(5, 3) == 7644119043
    assert n2(5, 3) == n1(5, 3)
    rep = thresholds(4, 3)
    assert rep.maximality_bound == 12
    # 3 + ceil(e * 2**128)
    assert rep.n0 == n0(4, 3)
    assert abs(rep.n0 - 3 - e * 2**128) < 1e-12 * 2**128
    data = rep.to_json()
    assert isinstance(data["n0"], str) and data["n0_is_ceiling"]
    with pytest.raises(ParameterError):
        thresholds(3, 3)


def test_clause_thresholds_at_5_3():
    t = thresholds(5, 3).clause_thresholds
    assert t["LB.A"] == 2 * 5 * 2**3 + 3 == 83
    assert t["LB.G"] == 23
    assert t["HH.step(l=3)"] == 12
    assert t["HS.1b"] == 8


def test_clause_min_n_is_least_solution():
    for k, d in [(5, 3), (7, 3), (6, 4), (8, 4)]:
        for c in clauses(k, d):
            assert c.holds(c.min_n)
            reports = by_id(verify_orderings(k, d, c.min_n - 1))
            assert not reports[c.cid].applicable


def test_rank_table_5_3_12():
    t = rank_table(5, 3, 12)
    assert t.cross_checked
    assert t.order() == ["H(2)", "H(4)", "H(3)", "G", "S1", "S"]
    # H(2) is 120 by formula and by construction
    assert [e.size for e in t.entries] == [120, 102, 99, 84, 75, 71]
    assert t.csv_rows()[0] == ["family", "l", "size", "rank", "tie-group"]
    assert t.csv_rows()[1] == ["H", 2, 120, 1, 1]


def test_rank_table_ties():
    t = rank_table(6, 3, 14)
    assert t.size_of(FamilyId("S2")) == t.size_of(FamilyId("S3")) == 376
    groups = t.groups()
    assert sorted(f.label() for f in groups[-1]) == ["S2", "S3"]
    assert t.entries[-1].tie_group == t.entries[-2].tie_group


def test_rank_table_k_d_plus_1():
    t = rank_table(4, 3, 17)
    assert [(e.label, e.size) for e in t.entries] == [("H(2)", 53), ("H(3)", 41)]


def test_rank_table_reports_invalid():
    t = rank_table(5, 3, 7)
    assert "S" in t.invalid and "S" not in t.order()


def test_catalogue_families():
    assert [f.label() for f in catalogue_families(4, 3)] == ["H(2)", "H(3)"]
    assert [f.label() for f in catalogue_families(9, 3)] == ["H(6)", "H(7)", "H(8)", "G", "S", "S1", "S2", "S3"]
    assert "H(2)" in [f.label() for f in catalogue_families(9, 4)]


def test_orderings_examples():
    r = by_id(verify_orderings(5, 3, 12))
    assert (r["HH.step(l=3)"].lhs, r["HH.step(l=3)"].rhs, r["HH.step(l=3)"].passed) == (102, 99, True)
    lb = r["LB.A"]
    assert not lb.applicable and lb.passed is None
    assert (lb.lhs, lb.rhs) == (240, 108)
    assert lb.to_json()["clause"] == "LB.A"
    hs3 = by_id(verify_orderings(8, 3, 22))["HS.3"]
    assert (hs3.lhs, hs3.rhs, hs3.passed) == (33965, 33981, True)


def test_ordering_boundary_tie_at_5_3_8():
    # the condition n >= 2k-2 admits n = 8, where S and S1 coincide in size
    r = by_id(verify_orderings(5, 3, 8))["HS.1b"]
    assert r.applicable and r.lhs == r.rhs == 23 and r.passed is False


def test_unconditional_clause_ties_at_k_plus_1():
    # at n = k+1 both families consist of all k+1 sets of size k
    r = by_id(verify_orderings(5, 3, 6))["HA.1a(l=3)"]
    assert r.applicable and r.lhs == r.rhs and r.passed is False


@pytest.mark.parametrize("k,d", [(4, 3), (5, 3), (6, 3), (7, 3), (8, 3), (9, 3), (5, 4), (8, 4), (9, 4), (10, 4)])
def test_ranking_consistency_beyond_chain(k, d):
    n = chain_threshold(k, d)
    for m in (n, n + 1, 2 * n):
        ok, exp, got = ranking_consistency(k, d, m)
        assert ok, (k, d, m, exp, got)


def test_expected_ranking_shapes():
    assert len(expected_ranking(4, 3)) == 2
    assert len(expected_ranking(6, 4)) == 4
    assert expected_ranking(9, 3)[-1] == [FamilyId("S2"), FamilyId("S3")]
    with pytest.raises(ParameterError):
        expected_ranking(4, 2)
