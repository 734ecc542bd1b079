import json

import pytest

from symsep.collection import (
    WSCollection,
    addable_symmetric_pair,
    complete_to_maximal,
    enumerate_maximal,
    enumerate_maximal_bruteforce,
    enumerate_maximal_symmetric,
    find_spine,
    is_max_by_inclusion,
    is_max_symmetric_by_inclusion,
    is_symmetric,
    max_size,
    mutate,
    necklace_collection,
    square_move_candidates,
    validate,
)
from symsep.config import Budget
from symsep.cyclic import CyclicSet, bar, handedness, Handedness, is_pair_free, is_weakly_separated
from symsep.errors import BudgetError, DomainError
from symsep.positroid import (
    Positroid,
    decorated_permutations,
    top_cell_perm,
    type_c_permutations,
    uniform_perm,
)

from oracles import maximal_ws_oracle

TOP2 = Positroid.from_perm(top_cell_perm(2))
TOP3 = Positroid.from_perm(top_cell_perm(3))


def coll(*labels, m, anchor=None):
    return WSCollection.of([[int(c) for c in s] for s in labels], m=m, anchor=anchor)


C13 = coll("12", "23", "34", "14", "13", m=4, anchor=TOP2)
C24 = coll("12", "23", "34", "14", "24", m=4, anchor=TOP2)


def test_validate():
    assert validate(coll("12", "23", "34", "14", "13", m=4))
    assert not validate(coll("13", "24", m=4))
    assert validate(WSCollection.of([], m=4, k=2))


def test_construction_rejects_mixed_sizes():
    with pytest.raises(DomainError):
        WSCollection.of([[1], [1, 2]], m=4)


def test_anchor_membership_enforced():
    outside = Positroid.from_perm(uniform_perm(1, 4))
    with pytest.raises(DomainError):
        coll("12", m=4, anchor=outside)


def test_json_round_trip():
    obj = C13.to_json()
    assert obj["members"] == [[1, 2], [1, 3], [2, 3], [1, 4], [3, 4]]
    assert obj["anchor"]["image"] == [3, 4, 1, 2]
    again = WSCollection.from_json(json.dumps(obj))
    assert again.mask_set == C13.mask_set and again.anchor == TOP2


def test_symmetry():
    assert is_symmetric(C13)
    assert not is_symmetric(coll("12", "23", m=4))
    assert is_symmetric(WSCollection.of([], m=4, k=2))


def test_inclusion_maximality():
    assert is_max_by_inclusion(C13)
    assert not is_max_by_inclusion(necklace_collection(TOP2))


def test_symmetric_maximality():
    assert is_max_symmetric_by_inclusion(C13)
    bare = necklace_collection(TOP2)
    witness = addable_symmetric_pair(bare)
    assert witness is not None
    J, barJ = witness
    assert barJ == bar(J) and not is_max_symmetric_by_inclusion(bare)


def test_symmetric_maximal_agrees_with_plain_maximality():
    for n in (1, 2, 3):
        M = Positroid.from_perm(top_cell_perm(n))
        for C in enumerate_maximal(M):
            if is_symmetric(C):
                assert is_max_symmetric_by_inclusion(C) == is_max_by_inclusion(C)


def test_find_spine():
    assert [str(I) for I in find_spine(C13).chain] == ["{1,2}", "{1,3}", "{3,4}"]
    assert [str(I) for I in find_spine(C24).chain] == ["{1,2}", "{2,4}", "{3,4}"]
    assert find_spine(necklace_collection(TOP2)) is None


def test_find_spine_needs_type_c():
    M = Positroid.from_perm(uniform_perm(2, 5))
    with pytest.raises(DomainError):
        find_spine(complete_to_maximal(necklace_collection(M)))


def test_square_moves():
    assert square_move_candidates(C13) == [(CyclicSet.of([1, 3], 4), CyclicSet.of([2, 4], 4))]
    assert square_move_candidates(C24) == [(CyclicSet.of([2, 4], 4), CyclicSet.of([1, 3], 4))]
    M = Positroid.from_perm(uniform_perm(1, 4))
    assert square_move_candidates(enumerate_maximal(M)[0]) == []
    with pytest.raises(DomainError):
        square_move_candidates(necklace_collection(TOP2))


def test_mutate_round_trip():
    old, new = square_move_candidates(C13)[0]
    D = mutate(C13, old, new)
    assert D.mask_set == C24.mask_set
    assert mutate(D, new, old).mask_set == C13.mask_set


def test_necklace_never_mutates():
    for n in (1, 2, 3):
        for f in type_c_permutations(n):
            M = Positroid.from_perm(f)
            frozen = set(M.necklace.masks)
            for C in enumerate_maximal(M):
                for old, _ in square_move_candidates(C):
                    assert old.mask not in frozen


def test_complete():
    C = complete_to_maximal(necklace_collection(TOP2))
    assert C.mask_set == C13.mask_set
    assert complete_to_maximal(C13).mask_set == C13.mask_set
    S = complete_to_maximal(necklace_collection(TOP3), symmetric=True)
    assert len(S) == 10 and is_symmetric(S) and is_max_by_inclusion(S)


def test_complete_symmetric_rejects_asymmetric_input():
    with pytest.raises(DomainError):
        complete_to_maximal(coll("12", "23", m=4, anchor=TOP2), symmetric=True)


@pytest.mark.parametrize("k,m,count,size", [(1, 2, 1, 2), (2, 4, 2, 5), (2, 5, 5, 7), (2, 6, 14, 9),
                                            (3, 6, 34, 10)])
def test_top_cell_counts(k, m, count, size):
    M = Positroid.from_perm(uniform_perm(k, m))
    found = enumerate_maximal(M)
    assert len(found) == count
    assert {len(C) for C in found} == {size} and max_size(M) == size


def test_moves_match_bruteforce_and_networkx():
    for m in range(1, 7):
        for f in decorated_permutations(m):
            M = Positroid.from_perm(f)
            moves = {C.mask_set for C in enumerate_maximal(M)}
            assert moves == {C.mask_set for C in enumerate_maximal_bruteforce(M)}
            if m <= 5:
                oracle = maximal_ws_oracle([J.members for J in M.members()], [e.members for e in M.necklace], m)
                got = {frozenset(frozenset(I.members) for I in C.members) for C in enumerate_maximal(M)}
                assert got == oracle


def test_enumeration_budget():
    M = Positroid.from_perm(uniform_perm(3, 6))
    with pytest.raises(BudgetError):
        enumerate_maximal(M, Budget(max_collections=5))


def test_symmetric_enumeration():
    sym = enumerate_maximal_symmetric(TOP2)
    assert [C.mask_set for C in sym] == sorted([C13.mask_set, C24.mask_set], key=sorted)
    sym3 = enumerate_maximal_symmetric(TOP3)
    assert len(sym3) == 12
    for C in sym3:
        assert len(C) == 10 and find_spine(C) is not None and len(find_spine(C)) == 4


def test_symmetric_members_ws_with_bars():
    for n in (1, 2, 3):
        for f in type_c_permutations(n):
            for C in enumerate_maximal_symmetric(Positroid.from_perm(f)):
                for I in C:
                    assert all(is_weakly_separated(I, bar(J)) for J in C)


def test_left_plus_pair_free_count():
    for n in (1, 2, 3):
        for C in enumerate_maximal_symmetric(Positroid.from_perm(top_cell_perm(n))):
            kept = [I for I in C if handedness(I) is not Handedness.RIGHT]
            assert len(kept) == (n * n + n + 2) // 2
            assert sum(is_pair_free(I) for I in C) == n + 1
