"""Chain search for repeated radical extensions at the group level."""
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from realrad.galois import (GaloisDatum, build_binomial, build_cyclotomic, build_pure_radical,
                            extend_character, theorem_a_witness)
from realrad.perm import intermediate_subgroups
from realrad.rre import (CHAIN_FOUND, CONDITION_I_FAILED, NO_CHAIN, NOT_APPLICABLE, ChainWitness,
                         check_condition_i, check_prime_degree_radical, find_rre_chain,
                         intermediate_preservation, verify_chain)


def _squared_character_datum(p: int) -> GaloisDatum:
    """Binomial group shape with the character replaced by c -> c^2: the
    factor action no longer matches, so no chain exists."""
    d = build_binomial(p, 2)
    on = {g: (g(1) - g(0)) ** 2 % p for g in d.G.gens}
    return GaloisDatum(d.G, d.U, d.N, {p: extend_character(d.G, on, p)}, quasireal=True)


def _brute_chain_exists(datum: GaloisDatum) -> bool:
    """Depth-first over all U-invariant subgroups between M and N."""
    ugens = list(datum.U.gens)
    mids = intermediate_subgroups(datum.M, datum.N, ugens)

    def ok_step(S, R):
        p = R.order // S.order
        if R.order % S.order or not S.elements < R.elements or not S.is_normal_in(R):
            return False
        if any(p % q == 0 for q in range(2, p)):
            return False
        if p == 2:
            return True
        chi = datum.characters.get(p)
        if chi is None:
            return False
        tau = next(g for g in sorted(R.elements) if g not in S.elements)
        for u in datum.U.elements:
            img = u * tau * u.inverse()
            target = tau ** chi[u]
            if target.inverse() * img not in S.elements:
                return False
        return True

    @lru_cache(maxsize=None)
    def reach(key):
        S = next(H for H in mids if H.elements == key)
        if S == datum.N:
            return True
        return any(reach(R.elements) for R in mids if ok_step(S, R))

    return reach(datum.M.elements)


DATA = {
    "binomial 3": lambda: build_binomial(3, 2),
    "binomial 5": lambda: build_binomial(5, 3),
    "binomial 7": lambda: build_binomial(7, 2),
    "pure 9": lambda: build_pure_radical(9, 2),
    "pure 25": lambda: build_pure_radical(25, 2),
    "squared character 5": lambda: _squared_character_datum(5),
    "squared character 7": lambda: _squared_character_datum(7),
}


@pytest.mark.parametrize("name", sorted(DATA))
def test_chain_search_matches_brute_force(name):
    d = DATA[name]()
    v = find_rre_chain(d)
    assert v.found == _brute_chain_exists(d)
    assert find_rre_chain(d, reverse=True).found == v.found
    if v.found:
        assert verify_chain(d, v.witness)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19])
def test_binomial_single_step(p):
    d = build_binomial(p, 2)
    v = find_rre_chain(d)
    assert v.outcome == CHAIN_FOUND and v.witness.primes == [p]
    pd = check_prime_degree_radical(d)
    assert pd.found and pd.details["exponents"] == pd.details["character"]


def test_squared_character_has_no_chain():
    d = _squared_character_datum(7)
    assert find_rre_chain(d).outcome == NO_CHAIN
    assert check_prime_degree_radical(d).outcome == NO_CHAIN


def test_pure_radical_chain_primes():
    assert find_rre_chain(build_pure_radical(9, 2)).witness.primes == [3, 3]
    assert find_rre_chain(build_pure_radical(27, 2)).witness.primes == [3, 3, 3]


def test_condition_i_failure():
    v = find_rre_chain(build_cyclotomic(19, 9, 3))
    assert v.outcome == CONDITION_I_FAILED and v.index == 3


def test_cyclotomic_outcomes():
    assert find_rre_chain(build_cyclotomic(7, 6, 1)).outcome == NOT_APPLICABLE
    # real subfield of Q(zeta_17) of degree 4: empty chain, index a power of 2
    v = find_rre_chain(theorem_a_witness(4))
    assert v.found and v.witness.primes == [] and v.index == 4
    # cubic subfield of Q(zeta_7): index 3 over Q
    assert find_rre_chain(build_cyclotomic(7, 6, 2)).outcome == CONDITION_I_FAILED


@given(st.sampled_from([(5, 2), (5, 4), (7, 2), (7, 3), (7, 6), (11, 10), (13, 4)]))
def test_condition_i_index(pair):
    n, h = pair
    d = build_cyclotomic(n, n - 1, h)
    ok, index = check_condition_i(d)
    assert index == (n - 1) // h
    assert ok == (index & (index - 1) == 0)


def test_verify_chain_rejects_tampering():
    d = build_pure_radical(9, 2)
    w = find_rre_chain(d).witness
    assert verify_chain(d, w)
    skipped = ChainWitness((w.chain[0], w.chain[-1]), w.steps[:1])
    assert not verify_chain(d, skipped)
    reversed_chain = ChainWitness(tuple(reversed(w.chain)), w.steps)
    assert not verify_chain(d, reversed_chain)
    wrong = _squared_character_datum(7)
    good = find_rre_chain(build_binomial(7, 2)).witness
    assert not verify_chain(wrong, good)


@pytest.mark.parametrize("build", [lambda: build_binomial(7, 2), lambda: build_pure_radical(9, 2),
                                   lambda: build_binomial(5, 2)])
def test_every_intermediate_field_keeps_a_chain(build):
    d = build()
    mids = intermediate_subgroups(d.U, d.G)
    assert len(mids) >= 2
    for V in mids:
        v = intermediate_preservation(d, V)
        assert v.found, (V.order, v.describe())
        assert verify_chain(d.with_field(V), v.witness)


def test_preservation_requires_a_base_chain():
    d = _squared_character_datum(7)
    with pytest.raises(ValueError):
        intermediate_preservation(d, d.G)


def test_verdict_json():
    v = find_rre_chain(build_pure_radical(9, 2))
    data = v.to_json()
    assert data["outcome"] == CHAIN_FOUND and data["witness"]["primes"] == [3, 3]
    assert data["witness"]["orders"] == [1, 3, 9]
