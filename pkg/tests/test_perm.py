"""Permutations, subgroup lattices, closures, series and factor actions."""
from math import factorial

import pytest
from hypothesis import given, strategies as st

from realrad.perm import (CapExceeded, Group, GroupError, Perm, affine_group, affine_map,
                          all_subgroups, alternating_group, closure, cyclic_group, direct_product,
                          factor_action, intermediate_subgroups, invariant_closure,
                          invariant_subnormal_series, is_subnormal, join, normal_closure,
                          product_set_order, symmetric_group)

perm5 = st.permutations(range(5)).map(Perm)


@given(perm5, perm5, perm5)
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Perm.identity(5)
    assert (a * b)(0) == a(b(0))
    assert a.conj(b) == a * b * a.inverse()
    assert (a ** a.order()).is_identity()


@given(perm5)
def test_cycle_notation_roundtrip(a):
    assert Perm.parse(str(a), 5) == a
    assert Perm.from_cycles(a.cycles(), 5) == a


def test_parse_rejects_garbage():
    for bad in ["(0 1", "(0 0)", "(a b)", "(0 7)"]:
        with pytest.raises(ValueError):
            Perm.parse(bad, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_symmetric_and_alternating_orders(n):
    assert symmetric_group(n).order == factorial(n)
    if n >= 2:
        assert alternating_group(n).order == factorial(n) // 2


def test_affine_and_product_orders():
    assert affine_group(7).order == 42
    assert affine_group(9).order == 54
    assert affine_group(7, [1, 2, 4]).order == 21
    assert direct_product(symmetric_group(3), symmetric_group(3)).order == 36


def test_closure_cap():
    with pytest.raises(CapExceeded):
        closure([Perm.from_cycles([tuple(range(8))], 8), Perm.from_cycles([(0, 1)], 8)], 8, cap=1000)


def _brute_subgroups(G: Group) -> set:
    """Subgroups as closures of all pairs of elements: complete for groups
    whose subgroups are all 2-generated (true for S4)."""
    out = set()
    els = sorted(G.elements)
    for a in els:
        for b in els:
            out.add(closure([a, b], G.degree).elements)
    return out


def test_subgroup_count_s4():
    S4 = symmetric_group(4)
    subs = all_subgroups(S4)
    assert len(subs) == 30
    assert {H.elements for H in subs} == _brute_subgroups(S4)


def test_subgroup_count_s5():
    assert len(all_subgroups(symmetric_group(5))) == 156


def test_normal_closure_is_least_normal_overgroup():
    S4 = symmetric_group(4)
    subs = all_subgroups(S4)
    for M in subs:
        containing = [H for H in subs if M.is_subgroup_of(H) and H.is_normal_in(S4)]
        least = min(containing, key=lambda H: H.order)
        assert normal_closure(M, S4) == least
        assert all(least.is_subgroup_of(H) for H in containing)


def _subnormal_brute(M: Group, N: Group, subs) -> bool:
    frontier = {M.elements}
    seen = set(frontier)
    while frontier:
        if N.elements in frontier:
            return True
        nxt = set()
        for S in frontier:
            SG = next(H for H in subs if H.elements == S)
            for H in subs:
                if H.elements not in seen and SG.is_subgroup_of(H) and SG.is_normal_in(H):
                    nxt.add(H.elements)
        seen |= nxt
        frontier = nxt
    return False


def test_subnormal_against_chain_search():
    S4 = symmetric_group(4)
    subs = all_subgroups(S4)
    for M in subs:
        assert is_subnormal(M, S4) == _subnormal_brute(M, S4, subs)


def test_transposition_not_subnormal_in_s3():
    S3 = symmetric_group(3)
    assert not is_subnormal(closure([Perm.parse("(0 1)", 3)], 3), S3)


def test_intermediate_subgroups():
    G = affine_group(7)
    U = Group.from_elements([g for g in G if g(0) == 0], 7)
    mids = intermediate_subgroups(U, G)
    assert sorted(H.order for H in mids) == [6, 42]
    S4 = symmetric_group(4)
    assert len(intermediate_subgroups(Group.trivial(4), S4)) == 30


def test_invariant_closure_and_join():
    G = affine_group(7)
    T = closure([affine_map(1, 1, 7)], 7)
    H = closure([affine_map(2, 0, 7)], 7)
    assert invariant_closure(H, list(T.gens)).order == 21
    assert join(H, [affine_map(1, 1, 7)]).order == 21
    assert product_set_order(H, T) == 21
    assert G.index_in(G) == 1


def test_series_examples():
    S3 = symmetric_group(3)
    assert [H.order for H in invariant_subnormal_series(Group.trivial(3), S3)] == [1, 6]
    assert [H.order for H in invariant_subnormal_series(Group.trivial(3), S3, refine=True)] == [1, 3, 6]
    F42 = affine_group(7)
    C7 = closure([affine_map(1, 1, 7)], 7)
    assert [H.order for H in invariant_subnormal_series(C7, F42)] == [7, 42]
    with pytest.raises(GroupError):
        invariant_subnormal_series(closure([Perm.parse("(0 1)", 3)], 3), S3)


def test_refined_series_steps_are_normal_and_invariant():
    N = closure([affine_map(1, 1, 9)], 9)
    auts = [affine_map(2, 0, 9)]
    series = invariant_subnormal_series(Group.trivial(9), N, auts, refine=True)
    assert [H.order for H in series] == [1, 3, 9]
    for S, R in zip(series, series[1:]):
        assert S.is_normal_in(R) and S.is_invariant(auts)


@pytest.mark.parametrize("p,c", [(5, 2), (7, 3), (7, 6), (11, 2), (13, 4)])
def test_factor_action_on_translations(p, c):
    T = closure([affine_map(1, 1, p)], p)
    fa = factor_action(T, Group.trivial(p), [affine_map(c, 0, p)])
    # x -> cx conjugates the translation x -> x + 1 to x -> x + c
    assert fa.exponents == (c,)


def test_factor_action_rejects_bad_input():
    S3 = symmetric_group(3)
    with pytest.raises(GroupError):
        factor_action(S3, Group.trivial(3), [])
    C6 = cyclic_group(6)
    with pytest.raises(GroupError):
        factor_action(C6, Group.trivial(6), [])


def test_bounded_subgroup_enumeration_is_complete():
    S5 = symmetric_group(5)
    full = [H for H in all_subgroups(S5) if H.order <= 12]
    assert {H.elements for H in all_subgroups(S5, 12)} == {H.elements for H in full}
