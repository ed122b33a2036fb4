import json
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dwise.setcore import (
    IntersectionClosure,
    ParameterError,
    Params,
    Permutation,
    ResourceCapError,
    SetFamily,
    apply_permutation,
    binomial,
    build_closure,
    dump_family,
    elements_of,
    full_mask,
    intersection_closure,
    interval,
    k_subsets,
    load_family,
    mask_of,
    minimal_elements,
    verify_pascal_identity,
)


def test_mask_round_trip():
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b101) == [1, 3]
    assert interval(2, 4) == mask_of([2, 3, 4])
    assert interval(5, 4) == 0
    assert full_mask(3) == 0b111


def test_mask_rejects_non_positive():
    with pytest.raises(ParameterError):
        mask_of([0, 1])


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (6, 0), (6, 6), (7, 3)])
def test_k_subsets_count_and_order(n, k):
    subs = list(k_subsets(n, k))
    assert len(subs) == comb(n, k)
    assert subs == sorted(subs)
    assert all(s.bit_count() == k and s < 1 << n for s in subs)


def test_k_subsets_degenerate():
    assert list(k_subsets(3, 5)) == []


def test_binomial_edges():
    assert binomial(5, -1) == 0
    assert binomial(3, 5) == 0
    assert binomial(10, 3) == 120


@given(st.integers(1, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n), st.integers(1, 60))))
def test_pascal_recurrence(t):
    assert verify_pascal_identity(*t)


def test_pascal_rejects_bad_triples():
    with pytest.raises(ParameterError):
        verify_pascal_identity(5, 6, 2)
    with pytest.raises(ParameterError):
        verify_pascal_identity(5, 2, 0)


def test_params_violations():
    assert Params(8, 4, 3, 3).violation() is None
    with pytest.raises(ParameterError, match="l > k-d\\+2"):
        Params(8, 4, 3, 4)
    with pytest.raises(ParameterError):
        Params(3, 4, 3)
    with pytest.raises(ParameterError):
        Params(200, 4, 3)


class TestSetFamily:
    def test_members_sorted_and_checked(self):
        f = SetFamily.from_sets(5, 2, [[3, 4], [1, 2]])
        assert f.as_lists() == [[1, 2], [3, 4]]
        assert mask_of([1, 2]) in f
        assert mask_of([1, 3]) not in f
        with pytest.raises(ParameterError):
            SetFamily.from_sets(5, 2, [[1, 2, 3]])
        with pytest.raises(ParameterError):
            SetFamily.from_sets(3, 2, [[1, 4]])

    def test_json_round_trip(self, tmp_path, c43):
        path = tmp_path / "f.json"
        dump_family(c43, path)
        data = json.loads(path.read_text())
        assert data == {"n": 5, "k": 3, "sets": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]}
        assert load_family(path) == c43

    @pytest.mark.parametrize(
        "bad",
        [
            {"n": 4, "k": 2, "sets": [[1, 2], [1, 2]]},
            {"n": 4, "k": 2, "sets": [[1, 2, 3]]},
            {"n": 4, "k": 2, "sets": [[2, 1]]},
            {"n": 4, "k": 2, "sets": [[1, 5]]},
            {"n": 4, "sets": []},
        ],
    )
    def test_json_rejects(self, bad):
        with pytest.raises(ParameterError):
            SetFamily.from_json(bad)


perms = st.integers(1, 8).flatmap(lambda n: st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p))))


class TestPermutation:
    @given(perms)
    def test_inverse(self, p):
        assert p.then(p.inverse()) == Permutation.identity(p.n)

    @given(st.data())
    def test_action_is_compatible_with_composition(self, data):
        n = data.draw(st.integers(2, 7))
        p = Permutation(tuple(data.draw(st.permutations(range(1, n + 1)))))
        q = Permutation(tuple(data.draw(st.permutations(range(1, n + 1)))))
        k = data.draw(st.integers(1, n))
        subs = list(k_subsets(n, k))
        fam = SetFamily.from_masks(n, k, data.draw(st.lists(st.sampled_from(subs), unique=True)))
        assert apply_permutation(apply_permutation(fam, p), q) == apply_permutation(fam, p.then(q))

    def test_transposition(self):
        t = Permutation.transposition(4, 1, 3)
        assert t.map_mask(mask_of([1, 2])) == mask_of([2, 3])
        assert t.then(t) == Permutation.identity(4)

    def test_rejects_non_bijection(self):
        with pytest.raises(ParameterError):
            Permutation((1, 1, 2))


def test_minimal_elements():
    masks = [0b111, 0b011, 0b110, 0b010, 0b101]
    assert minimal_elements(masks) == [0b010, 0b101]


def brute_closure(members, depth):
    out = set()
    for r in range(1, depth + 1):
        for combo in combinations(members, r):
            x = combo[0]
            for m in combo[1:]:
                x &= m
            out.add(x)
    return sorted(minimal_elements(out))


@settings(max_examples=60)
@given(st.data())
def test_closure_matches_brute_force(data):
    n = data.draw(st.integers(3, 7))
    k = data.draw(st.integers(1, n))
    subs = list(k_subsets(n, k))
    members = data.draw(st.lists(st.sampled_from(subs), min_size=1, max_size=8, unique=True))
    depth = data.draw(st.integers(1, 4))
    fam = SetFamily.from_masks(n, k, members)
    want = brute_closure(fam.members, depth)
    assert intersection_closure(fam, depth) == want
    inc = IntersectionClosure(n, depth)
    for m in fam.members:
        inc.add(m)
    assert sorted(inc.antichain()) == want
    # every origin tuple reproduces its value
    cl = build_closure(fam, depth)
    for x in cl.antichain():
        src = cl.origin[x]
        acc = full_mask(n)
        for m in src:
            acc &= m
        assert acc == x and len(src) <= depth


def test_closure_depth_and_empty(c43):
    with pytest.raises(ParameterError):
        intersection_closure(c43, 0)
    assert intersection_closure(SetFamily(5, 3, ()), 2) == []
    assert intersection_closure(c43, 4) == [0]


def test_closure_cap():
    fam = SetFamily.from_masks(8, 4, k_subsets(8, 4))
    with pytest.raises(ResourceCapError):
        build_closure(fam, 3, cap=100)
