"""Group-level decision kernel for repeated radical extensions.

A quasireal L is a repeated radical extension of the ground field exactly
when |G : UN| is a power of 2 and there is a chain of U-invariant
subgroups from M = U & N up to N with prime indices, each normal in the
next, and U acting on each factor exactly as it acts on the p-th roots of
unity (the character at p). Factors of order 2 are always admissible,
since the only automorphism of a group of order 2 is trivial.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .galois import GaloisDatum
from .perm import (Group, Perm, factor_action, invariant_closure, join,
                   product_set_order)
from .quadfield import is_prime

CHAIN_FOUND = "ChainFound"
NO_CHAIN = "NoChain"
CONDITION_I_FAILED = "ConditionIFailed"
NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class ChainStep:
    lower: Group
    upper: Group
    prime: int
    u_invariant: bool
    normal: bool
    character_match: bool


@dataclass(frozen=True)
class ChainWitness:
    chain: tuple  # M = M_0 < M_1 < ... < M_r = N
    steps: tuple  # ChainStep per consecutive pair

    @property
    def primes(self) -> list[int]:
        return [s.prime for s in self.steps]

    def to_json(self) -> dict:
        return {
            "orders": [H.order for H in self.chain],
            "subgroups": [[str(g) for g in H.sorted_elements()] for H in self.chain],
            "primes": self.primes,
            "flags": [{"u_invariant": s.u_invariant, "normal": s.normal,
                       "character_match": s.character_match} for s in self.steps],
        }


@dataclass(frozen=True)
class RreVerdict:
    outcome: str
    reason: str = ""
    index: Optional[int] = None
    explored: int = 0
    witness: Optional[ChainWitness] = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def found(self) -> bool:
        return self.outcome == CHAIN_FOUND

    def describe(self) -> str:
        if self.outcome == CHAIN_FOUND:
            return f"ChainFound (length {len(self.witness.steps)}, primes {self.witness.primes})"
        if self.outcome == CONDITION_I_FAILED:
            return f"ConditionIFailed({self.index})"
        if self.outcome == NO_CHAIN:
            return f"NoChain ({self.reason}; {self.explored} subgroups explored)"
        return f"NotApplicable ({self.reason})"

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "reason": self.reason, "explored": self.explored}
        if self.index is not None:
            out["index"] = self.index
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.details:
            out["details"] = dict(self.details)
        return out


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def check_condition_i(datum: GaloisDatum) -> tuple[bool, int]:
    """|G : UN| (the degree of L & F over the ground field) and whether it is a 2-power."""
    index = datum.G.order // product_set_order(datum.U, datum.N)
    return _is_power_of_two(index), index


def _step_admissible(datum: GaloisDatum, S: Group, R: Group) -> Optional[ChainStep]:
    p = R.order // S.order
    if R.order % S.order or not is_prime(p) or not S.is_normal_in(R):
        return None
    ugens = list(datum.U.gens)
    if p == 2:
        return ChainStep(S, R, 2, True, True, True)
    chi = datum.characters.get(p)
    if chi is None:
        return None
    fa = factor_action(R, S, ugens)
    if any(e != chi[u] for u, e in zip(ugens, fa.exponents)):
        return None
    return ChainStep(S, R, p, True, True, True)


def check_prime_degree_radical(datum: GaloisDatum) -> RreVerdict:
    """Prime degree test: |N:M| = p, M normal in N and U acting on N/M by
    the character at p."""
    p = datum.G.order // datum.U.order
    if not (is_prime(p) and p % 2 == 1):
        raise ValueError(f"|G:U| = {p} is not an odd prime")
    M, N = datum.M, datum.N
    if N.order // M.order != p:
        return RreVerdict(NO_CHAIN, f"|N:M| = {N.order // M.order}, not {p}", index=p)
    if not M.is_normal_in(N):
        return RreVerdict(NO_CHAIN, "M is not normal in N", index=p)
    chi = datum.characters.get(p)
    if chi is None:
        return RreVerdict(NOT_APPLICABLE, f"no primitive {p}-th roots of unity in E", index=p)
    ugens = list(datum.U.gens)
    fa = factor_action(N, M, ugens)
    match = all(e == chi[u] for u, e in zip(ugens, fa.exponents))
    details = {"exponents": list(fa.exponents), "character": [chi[u] for u in ugens]}
    if not match:
        return RreVerdict(NO_CHAIN, "U acts on N/M differently from the character", index=p,
                          details=details)
    step = ChainStep(M, N, p, True, True, True)
    return RreVerdict(CHAIN_FOUND, index=p, explored=2,
                      witness=ChainWitness((M, N), (step,)), details=details)


def find_rre_chain(datum: GaloisDatum, reverse: bool = False) -> RreVerdict:
    """Breadth-first search for an admissible chain from M to N."""
    if not datum.quasireal:
        return RreVerdict(NOT_APPLICABLE, "L is not quasireal")
    ok, index = check_condition_i(datum)
    if not ok:
        return RreVerdict(CONDITION_I_FAILED, f"|G:UN| = {index} is not a power of 2", index=index)
    M, N = datum.M, datum.N
    ugens = list(datum.U.gens)
    parent: dict = {M.elements: None}
    groups = {M.elements: M}
    queue = deque([M])
    while queue:
        S = queue.popleft()
        if S == N:
            chain = [S]
            steps = []
            key = S.elements
            while parent[key] is not None:
                prev_key, step = parent[key]
                steps.append(step)
                chain.append(groups[prev_key])
                key = prev_key
            chain.reverse()
            steps.reverse()
            return RreVerdict(CHAIN_FOUND, index=index, explored=len(groups),
                              witness=ChainWitness(tuple(chain), tuple(steps)))
        reps = N.coset_reps(S)
        if reverse:
            reps.reverse()
        for x in reps:
            if x in S:
                continue
            R = invariant_closure(join(S, [x]), ugens)
            if R.elements in groups:
                continue
            step = _step_admissible(datum, S, R)
            if step is None:
                continue
            groups[R.elements] = R
            parent[R.elements] = (S.elements, step)
            queue.append(R)
    return RreVerdict(NO_CHAIN, "no admissible chain from M to N", index=index,
                      explored=len(groups))


def verify_chain(datum: GaloisDatum, witness: ChainWitness) -> bool:
    """Re-check a chain from raw element sets, independently of the search."""
    chain = list(witness.chain)
    if chain[0] != datum.M or chain[-1] != datum.N:
        return False
    if not check_condition_i(datum)[0]:
        return False
    U = sorted(datum.U.elements)
    for S, R in zip(chain, chain[1:]):
        if not S.elements < R.elements:
            return False
        p = len(R.elements) // len(S.elements)
        if len(R.elements) % len(S.elements) or not is_prime(p):
            return False
        for g in R.elements:
            gi = g.inverse()
            if any(g * h * gi not in S.elements for h in S.elements):
                return False
        for u in U:
            ui = u.inverse()
            if any(u * h * ui not in R.elements for h in R.elements):
                return False
            if any(u * h * ui not in S.elements for h in S.elements):
                return False
        if p == 2:
            continue
        chi = datum.characters.get(p)
        if chi is None:
            return False
        tau = min(R.elements - S.elements)
        for u in U:
            img = u * tau * u.inverse()
            t = Perm.identity(tau.degree)
            s_found = None
            for s in range(p):
                # img in t S  <=>  t^-1 img in S
                if t.inverse() * img in S.elements:
                    s_found = s
                    break
                t = t * tau
            if s_found != chi[u] % p:
                return False
    return True


def intermediate_preservation(datum: GaloisDatum, V: Group) -> RreVerdict:
    """Run the chain search for the field K fixed by V, U <= V <= G, when L
    has a chain and one of the preservation hypotheses holds: |G:U| odd
    with a designated involution of U inverting every character, or
    |G:U| a prime power with L quasireal."""
    if not (datum.U.is_subgroup_of(V) and V.is_subgroup_of(datum.G)):
        raise ValueError("V must lie between U and G")
    base = find_rre_chain(datum)
    if not base.found:
        raise ValueError(f"L has no chain: {base.describe()}")
    n = datum.G.order // datum.U.order
    sigma = datum.involution
    odd_branch = (n % 2 == 1 and sigma is not None and sigma in datum.U
                  and all(chi[sigma] == p - 1 for p, chi in datum.characters.items()))
    from .quadfield import prime_factors
    ps = prime_factors(n) if n > 1 else []
    pp_branch = datum.quasireal and len(ps) <= 1
    if not (odd_branch or pp_branch):
        raise ValueError("neither the odd-degree nor the prime-power hypotheses hold")
    verdict = find_rre_chain(datum.with_field(V))
    branch = "odd degree, inverting involution" if odd_branch else "prime-power degree"
    return RreVerdict(verdict.outcome, verdict.reason, verdict.index, verdict.explored,
                      verdict.witness, {"branch": branch, "index_of_V": datum.G.order // V.order})
