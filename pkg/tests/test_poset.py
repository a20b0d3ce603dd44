import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxball.matching import match_stack
from boxball.poset import (
    Partition,
    PermutationPoset,
    PosetTooLarge,
    antichain_decomposition,
    depth_chains,
    greene_D,
    greene_I,
    lambda_of,
    lambda_prime_of,
    pair_points,
    poset_of_word,
    stack_poset,
    transpose,
)
from boxball.state import parse_state
from conftest import naive_greene, states


def test_example_word_poset():
    P = poset_of_word([3, 1, 2, 1, 4, 3])
    assert P.sorted_points() == [(1, 4), (2, 1), (3, 3), (4, 2), (5, 6), (6, 5)]
    assert [greene_I(P, k) for k in range(1, 5)] == [3, 5, 6, 6]
    assert lambda_of(P) == (3, 2, 1)
    assert lambda_prime_of(P) == (3, 2, 1)


def test_example_word_poset_relations():
    # arrows drawn for 312143
    P = poset_of_word([3, 1, 2, 1, 4, 3])
    covers = set(P.covers())
    assert covers == {
        ((2, 1), (3, 3)), ((2, 1), (4, 2)),
        ((4, 2), (5, 6)), ((4, 2), (6, 5)),
        ((3, 3), (5, 6)), ((3, 3), (6, 5)),
        ((1, 4), (5, 6)), ((1, 4), (6, 5)),
    }


def test_permutation_word_is_literal():
    assert poset_of_word([2, 3, 1]).sorted_points() == [(1, 2), (2, 3), (3, 1)]


def test_equal_letters_form_a_chain():
    P = poset_of_word([1, 1])
    assert P.is_chain(P.points)
    assert greene_I(P, 1) == 2


def test_antichain_invariants():
    P = poset_of_word([5, 4, 3, 2, 1])
    assert greene_I(P, 1) == 1
    assert greene_D(P, 1) == 5
    assert lambda_of(P) == (1, 1, 1, 1, 1)


def test_13542():
    P = poset_of_word([1, 3, 5, 4, 2])
    assert [greene_I(P, k) for k in (1, 2, 3)] == [3, 4, 5]
    assert lambda_of(P) == (3, 1, 1)


def test_empty_poset():
    P = poset_of_word([])
    assert lambda_of(P) == ()
    assert greene_I(P, 3) == 0


def test_size_cap():
    with pytest.raises(PosetTooLarge):
        greene_I(poset_of_word(range(15, 0, -1)), 1)


def test_distinct_coordinates_required():
    with pytest.raises(ValueError):
        PermutationPoset(frozenset({(1, 1), (1, 2)}))


def test_partition_validation():
    assert Partition([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(ValueError):
        Partition([1, 2])


@pytest.mark.parametrize("lam, conj", [((3, 2, 1), (3, 2, 1)), ((3, 1, 1), (3, 1, 1)), ((4,), (1, 1, 1, 1)), ((), ())])
def test_transpose(lam, conj):
    assert transpose(lam) == conj


@given(st.lists(st.integers(1, 6), max_size=12).map(lambda ps: sorted(ps, reverse=True)))
def test_transpose_involution(lam):
    assert transpose(transpose(lam)) == Partition(lam)


permutations = st.integers(0, 7).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


@settings(max_examples=60, deadline=None)
@given(permutations)
def test_dp_matches_labeling_oracle(w):
    P = poset_of_word(w)
    for k in range(1, 4):
        assert greene_I(P, k) == naive_greene(P.points, k)
        assert greene_D(P, k) == naive_greene(P.points, k, antichains=True)


@settings(deadline=None)
@given(st.lists(st.integers(1, 4), max_size=12))
def test_greene_fomin_duality(x):
    P = poset_of_word(x)
    assert lambda_prime_of(P) == transpose(lambda_of(P))


EXAMPLE = parse_state("0010011011")


def test_example_depth_chains():
    family = depth_chains(match_stack(EXAMPLE))
    assert family.sizes() == (3, 1, 1)
    assert family.chains[0] == ((1, 1), (2, 3), (3, 5))


def test_example_antichains():
    anti = antichain_decomposition(match_stack(EXAMPLE))
    assert anti.sizes() == (1, 1, 3)
    pts = pair_points(match_stack(EXAMPLE))
    assert anti.antichains[2] == (pts[5], pts[4], pts[2])


@pytest.mark.parametrize(
    "text, chains, antichains",
    [("101010", (3,), (1, 1, 1)), ("111000", (1, 1, 1), (3,))],
)
def test_depth_structure_extremes(text, chains, antichains):
    seq = match_stack(parse_state(text))
    assert depth_chains(seq).sizes() == chains
    assert antichain_decomposition(seq).sizes() == antichains


@settings(deadline=None)
@given(states(max_balls=9))
def test_depth_chains_are_optimal(p):
    seq = match_stack(p)
    P = stack_poset(seq)
    family = depth_chains(seq)
    for k in range(1, p.n_balls + 1):
        assert family.union_size(k) == greene_I(P, k)


@given(states())
def test_lemma_outer_comparable_inner_not(p):
    seq = match_stack(p)
    P = stack_poset(seq)
    pts = pair_points(seq)
    for a in seq.pairs:
        for b in seq.pairs:
            if a.pair_id < b.pair_id:
                assert P.comparable(pts[a.pair_id], pts[b.pair_id]) == a.disjoint(b)


@given(states())
def test_antichain_decomposition_valid(p):
    seq = match_stack(p)
    P = stack_poset(seq)
    depth = {pair_points(seq)[q.pair_id]: q.depth for q in seq.pairs}
    anti = antichain_decomposition(seq)
    flat = sorted(x for a in anti.antichains for x in a)
    assert flat == sorted(P.points)
    for a in anti.antichains:
        assert P.is_antichain(a)
        assert sorted(depth[x] for x in a) == list(range(1, len(a) + 1))


def test_poset_json():
    data = poset_of_word([2, 1]).to_json()
    assert data == {"points": [[1, 2], [2, 1]], "covers": []}
