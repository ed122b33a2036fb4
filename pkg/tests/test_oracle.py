import pytest

from dwise.constructors import FamilyId, construct
from dwise.iso import canonical_form
from dwise.oracle import brute_force_classes, enumerate_maximal, labeled_counts, top_m_maximal
from dwise.setcore import ParameterError, Params
from dwise.verify import is_d_wise_intersecting, is_maximal, is_t_intersecting, is_trivial


def canon(res):
    return {c.representative.members for c in res.classes}


def test_base_case_663():
    res = enumerate_maximal(Params(6, 3, 3))
    assert res.exhausted and len(res.classes) == 1
    fam = res.classes[0].representative
    assert is_maximal(fam, 3).verdict and is_trivial(fam) is None
    assert fam.members == canonical_form(fam).canonical.members


@pytest.mark.parametrize("n,k,d", [(5, 3, 3), (6, 2, 2), (5, 2, 2), (6, 5, 3), (5, 3, 2)])
def test_agrees_with_brute_force(n, k, d):
    p = Params(n, k, d)
    assert canon(enumerate_maximal(p)) == brute_force_classes(p)
    assert canon(enumerate_maximal(p, nontrivial=False)) == brute_force_classes(p, nontrivial=False)


def test_brute_force_limit():
    with pytest.raises(ParameterError):
        brute_force_classes(Params(7, 3, 3))


def test_representatives_certified():
    res = enumerate_maximal(Params(7, 3, 3))
    assert res.exhausted
    for c in res.classes:
        fam = c.representative
        assert is_d_wise_intersecting(fam, 3).verdict
        assert is_maximal(fam, 3).verdict
        assert is_trivial(fam) is None
        assert c.multiplicity >= 1


def test_t_mode():
    res = enumerate_maximal(Params(6, 3, 2), t=2)
    assert len(res.classes) == 1
    assert is_t_intersecting(res.classes[0].representative, 2).verdict
    both = enumerate_maximal(Params(6, 3, 2), t=2, nontrivial=False)
    assert len(both.classes) == 2
    with pytest.raises(ParameterError):
        enumerate_maximal(Params(6, 3, 2), t=0)


def test_deterministic():
    a = enumerate_maximal(Params(6, 3, 2))
    b = enumerate_maximal(Params(6, 3, 2))
    assert a.to_json()["classes"] == b.to_json()["classes"]
    assert a.nodes == b.nodes


def test_node_cap_gives_lower_bound():
    res = enumerate_maximal(Params(7, 3, 3), node_cap=50)
    assert not res.exhausted and res.lower_bound_only
    assert "lower bound" in res.note
    assert res.to_json()["exhausted"] is False


def test_min_size_filter():
    full = enumerate_maximal(Params(6, 3, 2), nontrivial=False)
    top = max(c.size for c in full.classes)
    res = enumerate_maximal(Params(6, 3, 2), min_size=top, nontrivial=False)
    assert {c.size for c in res.classes} == {top}


def test_top_m():
    p = Params(6, 3, 2)
    assert top_m_maximal(p, 0).classes == []
    full = enumerate_maximal(p)
    top = top_m_maximal(p, 3)
    assert [(c.size, c.multiplicity) for c in top.classes] == [(c.size, c.multiplicity) for c in full.classes[:3]]
    with pytest.raises(ParameterError):
        top_m_maximal(p, -1)


def test_labeled_counts_sum_to_orbits():
    res = enumerate_maximal(Params(5, 2, 2), nontrivial=False)
    counts = labeled_counts(res)
    # stars (4 members) at each of 5 points, triangles (3 members) on C(5,3) triples
    assert counts == {4: 5, 3: 10}
