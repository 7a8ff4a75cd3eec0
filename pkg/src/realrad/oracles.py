"""Brute-force oracles for the group-theoretic lemmas behind the radical
criteria.

Each oracle first verifies the hypotheses of its lemma on the given
instance (raising ``PreconditionError`` when they fail) and then checks
the conclusion directly by exhaustive enumeration. A ``False`` return
therefore means a genuine counterexample or a bug in this library.
"""
from __future__ import annotations

from collections import deque
from itertools import product
from typing import Iterable, Optional, Sequence

from .perm import (Group, GroupError, Perm, invariant_subnormal_series, is_subnormal,
                   all_subgroups)
from .quadfield import is_prime

Matrix = tuple  # tuple of row tuples, entries in 0..m-1
Vector = tuple


class PreconditionError(GroupError):
    """The instance does not satisfy the hypotheses of the lemma."""


# --- matrices over Z/m --------------------------------------------------------

def mat_identity(k: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def mat_mul(A: Matrix, B: Matrix, m: int) -> Matrix:
    k = len(A)
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(A[i], c)) % m for c in cols) for i in range(k))


def mat_vec(A: Matrix, v: Vector, m: int) -> Vector:
    return tuple(sum(a * x for a, x in zip(row, v)) % m for row in A)


def mat_pow(A: Matrix, e: int, m: int) -> Matrix:
    out = mat_identity(len(A))
    for _ in range(e):
        out = mat_mul(out, A, m)
    return out


def mat_order(A: Matrix, m: int, cap: int = 10000) -> int:
    ident = mat_identity(len(A))
    B, n = A, 1
    while B != ident:
        B = mat_mul(B, A, m)
        n += 1
        if n > cap:
            raise ValueError("matrix order too large")
    return n


def mat_det(A: Matrix, p: int) -> int:
    """Determinant mod a prime by elimination."""
    M = [list(r) for r in A]
    k, det = len(M), 1
    for c in range(k):
        piv = next((r for r in range(c, k) if M[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for r in range(c + 1, k):
            f = M[r][c] * inv % p
            M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return det % p


def all_vectors(m: int, k: int) -> list[Vector]:
    return list(product(range(m), repeat=k))


def general_linear_group(p: int, k: int) -> list[Matrix]:
    vals = range(p)
    out = []
    for entries in product(vals, repeat=k * k):
        A = tuple(tuple(entries[i * k:(i + 1) * k]) for i in range(k))
        if mat_det(A, p):
            out.append(A)
    return out


class ModuleAction:
    """A group acting linearly on (Z/m)^k, one matrix per group element."""

    def __init__(self, G: Group, m: int, k: int, gen_matrices: dict):
        self.G, self.m, self.k = G, m, k
        self.matrices = extend_action(G, gen_matrices, m, k)

    def act(self, g: Perm, v: Vector) -> Vector:
        return mat_vec(self.matrices[g], v, self.m)

    def fixed_points(self, H: Group) -> list[Vector]:
        gens = [self.matrices[h] for h in H.gens]
        return [v for v in all_vectors(self.m, self.k)
                if all(mat_vec(A, v, self.m) == v for A in gens)]


def extend_action(G: Group, gen_matrices: dict, m: int, k: int) -> dict:
    """Extend matrices given on a generating set of G to a homomorphism on
    all of G. Raises ``GroupError`` if the assignment is not well defined."""
    gens = list(gen_matrices)
    ident = G.identity()
    mats = {ident: mat_identity(k)}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in G.elements:
                raise GroupError("matrix assigned to an element outside G")
            M = mat_mul(mats[g], gen_matrices[s], m)
            if h in mats:
                if mats[h] != M:
                    raise GroupError("generator matrices do not define an action")
            else:
                mats[h] = M
                queue.append(h)
    if len(mats) != G.order:
        raise GroupError("given elements do not generate G")
    return mats


# --- partitions ---------------------------------------------------------------

def is_partition(G: Group, parts: Sequence[Group]) -> bool:
    ident = G.identity()
    seen: set = set()
    for H in parts:
        if not H.is_subgroup_of(G):
            return False
        rest = H.elements - {ident}
        if rest & seen:
            return False
        seen |= rest
    return len(seen) == G.order - 1


def subgroup_partitions(G: Group) -> list[list[Group]]:
    """Every partition of G into nontrivial subgroups (exact cover search)."""
    ident = G.identity()
    subs = [H for H in all_subgroups(G) if H.order > 1]
    out: list[list[Group]] = []

    def search(uncovered: frozenset, chosen: list[Group]):
        if not uncovered:
            out.append(list(chosen))
            return
        x = min(uncovered)
        for H in subs:
            body = H.elements - {ident}
            if x in body and body <= uncovered:
                chosen.append(H)
                search(uncovered - body, chosen)
                chosen.pop()

    search(G.elements - {ident}, [])
    return out


def _element_order(v: Vector, m: int) -> int:
    from math import gcd
    g = m
    for x in v:
        g = gcd(g, x)
    return m // g


def oracle_partition_lemma(G: Group, partition: Sequence[Group], action: ModuleAction) -> bool:
    """Some member of the partition fixes a nonzero element of the module,
    provided some module element has order not dividing |partition| - 1."""
    if not is_partition(G, partition):
        raise GroupError("not a partition of G")
    n = len(partition) - 1
    if not any(n % _element_order(v, action.m) for v in all_vectors(action.m, action.k)):
        raise PreconditionError(f"every module element has order dividing {n}")
    zero = (0,) * action.k
    return any(any(v != zero for v in action.fixed_points(H)) for H in partition)


# --- sections and subnormality ------------------------------------------------

def automorphism_order(a: Perm, N: Group) -> int:
    """Order of the automorphism h -> a h a^-1 of N."""
    if not N.normalizes(a):
        raise GroupError("element does not normalize N")
    b, k = a, 1
    while not all(b.conj(h) == h for h in N.gens):
        b = b * a
        k += 1
    return k


def fixes_nontrivial_coset(sigma: Perm, R: Group, S: Group) -> bool:
    """Does conjugation by sigma fix some coset rS != S of R/S?"""
    for r in R.coset_reps(S):
        if r in S.elements:
            continue
        y = sigma.conj(r)
        if r.inverse() * y in S.elements:
            return True
    return False


def _check_fpf_hypotheses(N: Group, M: Group, sigma: Perm,
                          series: Optional[Sequence[Group]]) -> tuple[int, list[Group]]:
    if not M.is_subgroup_of(N):
        raise PreconditionError("M is not a subgroup of N")
    if not (N.normalizes(sigma) and M.normalizes(sigma)):
        raise PreconditionError("sigma does not stabilize M and N")
    p = automorphism_order(sigma, N)
    if not is_prime(p):
        raise PreconditionError(f"sigma induces an automorphism of order {p}, not prime")
    if not is_subnormal(M, N):
        raise PreconditionError("M is not subnormal in N")
    if series is None:
        series = invariant_subnormal_series(M, N, [sigma])
    else:
        series = list(series)
        if series[0] != M or series[-1] != N:
            raise PreconditionError("series does not run from M to N")
        for X, Y in zip(series, series[1:]):
            if not X.is_normal_in(Y):
                raise PreconditionError("series is not subnormal")
            if not Y.normalizes(sigma):
                raise PreconditionError("series term is not sigma-invariant")
    for X, Y in zip(series, series[1:]):
        if fixes_nontrivial_coset(sigma, Y, X):
            raise PreconditionError("sigma has a fixed point on a factor of the series")
    return p, list(series)


def oracle_fpf_section(N: Group, M: Group, sigma: Perm, R: Group, S: Group,
                       series: Optional[Sequence[Group]] = None) -> bool:
    """Sigma acts fixed-point-freely on R/S for invariant M <= S normal in R <= N."""
    _check_fpf_hypotheses(N, M, sigma, series)
    if not (M.is_subgroup_of(S) and S.is_subgroup_of(R) and R.is_subgroup_of(N)):
        raise PreconditionError("need M <= S <= R <= N")
    if not S.is_normal_in(R):
        raise PreconditionError("S is not normal in R")
    if not (R.normalizes(sigma) and S.normalizes(sigma)):
        raise PreconditionError("R or S is not sigma-invariant")
    return not fixes_nontrivial_coset(sigma, R, S)


def oracle_thm52(N: Group, M: Group, sigma: Perm, R: Group,
                 series: Optional[Sequence[Group]] = None) -> bool:
    """Every R between M and N is subnormal (and sigma-invariant when sigma has order 2)."""
    p, _ = _check_fpf_hypotheses(N, M, sigma, series)
    if not (M.is_subgroup_of(R) and R.is_subgroup_of(N)):
        raise PreconditionError("need M <= R <= N")
    if p > 2 and not R.normalizes(sigma):
        raise PreconditionError("R must be sigma-invariant for odd order sigma")
    return is_subnormal(R, N) and R.normalizes(sigma)


# --- modules in characteristic p -------------------------------------------------

def _rref(vectors: Iterable[Vector], p: int) -> list[list[int]]:
    rows: list[list[int]] = []
    pivots: list[int] = []
    for v in vectors:
        r = _reduce(list(v), rows, pivots, p)
        if any(r):
            c = next(i for i, x in enumerate(r) if x)
            inv = pow(r[c], -1, p)
            r = [x * inv % p for x in r]
            for i, row in enumerate(rows):
                if row[c]:
                    f = row[c]
                    rows[i] = [(a - f * b) % p for a, b in zip(row, r)]
            rows.append(r)
            pivots.append(c)
    return rows


def _reduce(v: list[int], rows: list[list[int]], pivots: list[int], p: int) -> list[int]:
    v = list(v)
    for row, c in zip(rows, pivots):
        if v[c]:
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return v


class Subspace:
    def __init__(self, vectors: Iterable[Vector], p: int, k: int):
        self.p, self.k = p, k
        self.rows = _rref(vectors, p)
        self.pivots = [next(i for i, x in enumerate(r) if x) for r in self.rows]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __contains__(self, v: Vector) -> bool:
        return not any(_reduce(list(v), self.rows, self.pivots, self.p))

    def basis(self) -> list[Vector]:
        return [tuple(r) for r in self.rows]


def invariant_span(vectors: Iterable[Vector], mats: Sequence[Matrix], p: int, k: int) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under ``mats``."""
    W = Subspace(vectors, p, k)
    while True:
        new = [mat_vec(A, b, p) for A in mats for b in W.basis()]
        new = [v for v in new if v not in W]
        if not new:
            return W
        W = Subspace(W.basis() + new, p, k)


def is_simple_module(mats: Sequence[Matrix], p: int, k: int) -> bool:
    zero = (0,) * k
    return all(invariant_span([v], mats, p, k).dim == k
               for v in all_vectors(p, k) if v != zero)


def composition_series(mats: Sequence[Matrix], p: int, k: int) -> list[Subspace]:
    """0 = W_0 < W_1 < ... = F_p^k, each W_i minimal invariant over W_{i-1}."""
    W = Subspace([], p, k)
    series = [W]
    vecs = all_vectors(p, k)
    while W.dim < k:
        best = None
        for v in vecs:
            if v in W:
                continue
            X = invariant_span(W.basis() + [v], mats, p, k)
            if best is None or X.dim < best.dim:
                best = X
                if X.dim == W.dim + 1:
                    break
        W = best
        series.append(W)
    return series


def _one_dim_character(mats: Sequence[Matrix], lower: Subspace, upper: Subspace, p: int) -> tuple:
    v = next(b for b in upper.basis() if b not in lower)
    out = []
    for A in mats:
        w = mat_vec(A, v, p)
        lam = next(c for c in range(1, p)
                   if tuple((x - c * y) % p for x, y in zip(w, v)) in lower)
        out.append(lam)
    return tuple(out)


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def oracle_lemma82(V: Group, U: Group, p: int, gen_matrices: dict, k: int) -> bool:
    """A simple F_p V-module whose U-composition factors are isomorphic and
    one-dimensional, with |V:U| a power of p, is itself one-dimensional."""
    if p not in (2, 3, 5, 7) or not 1 <= k <= 4:
        raise PreconditionError("supported sizes: p in {2,3,5,7}, k <= 4")
    if not U.is_subgroup_of(V):
        raise PreconditionError("U is not a subgroup of V")
    if not _is_power_of(V.order // U.order, p):
        raise PreconditionError("|V:U| is not a power of p")
    action = ModuleAction(V, p, k, gen_matrices)
    vmats = [action.matrices[g] for g in V.gens]
    if not is_simple_module(vmats, p, k):
        raise PreconditionError("module is not simple for V")
    umats = [action.matrices[u] for u in U.gens]
    series = composition_series(umats, p, k)
    if any(Y.dim != X.dim + 1 for X, Y in zip(series, series[1:])):
        raise PreconditionError("a U-composition factor is not one-dimensional")
    chars = {_one_dim_character(umats, X, Y, p) for X, Y in zip(series, series[1:])}
    if len(chars) > 1:
        raise PreconditionError("U-composition factors are not isomorphic")
    return k == 1


# --- matrix groups as permutation groups ------------------------------------------

def matrix_group_elements(gens: Sequence[Matrix], p: int, cap: int = 100) -> Optional[list[Matrix]]:
    """All elements of the group generated by ``gens``, or None beyond ``cap``."""
    k = len(gens[0])
    ident = mat_identity(k)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mat_mul(g, s, p)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    return None
                queue.append(h)
    return sorted(seen)


def matrix_to_perm(A: Matrix, p: int) -> Perm:
    """The permutation of F_p^k (vectors indexed lexicographically) induced by A."""
    k = len(A)
    vecs = all_vectors(p, k)
    index = {v: i for i, v in enumerate(vecs)}
    return Perm([index[mat_vec(A, v, p)] for v in vecs])
