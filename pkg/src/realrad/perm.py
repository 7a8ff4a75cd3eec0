"""Permutation groups materialized as explicit element sets.

Every group in scope is small (order at most ``ORDER_CAP``), so closure,
normality and subgroup enumeration are done by brute force over elements.
Automorphisms are always inner to some ambient permutation group: an
"automorphism" is a permutation ``a`` acting by ``h -> a h a^-1``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .quadfield import is_prime

ORDER_CAP = 10000


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


class Perm:
    """Bijection of {0, ..., n-1}; ``(p * q)(x) == p(q(x))``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise GroupError(f"not a permutation: {imgs}")
        self.images = imgs
        self._hash = hash(imgs)

    @classmethod
    def _raw(cls, imgs: tuple) -> "Perm":
        p = object.__new__(cls)
        p.images = imgs
        p._hash = hash(imgs)
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Perm":
        imgs = list(range(n))
        for cyc in cycles:
            cyc = list(cyc)
            for i, x in enumerate(cyc):
                imgs[x] = cyc[(i + 1) % len(cyc)]
        return cls(imgs)

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "Perm":
        """Parse cycle notation such as ``(0 1 2)(3 4)``; ``()`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\)\s*)+", text):
            raise GroupError(f"bad cycle notation: {text!r}")
        cycles = [[int(t) for t in re.split(r"[\s,]+", c.strip()) if t]
                  for c in re.findall(r"\(([^)]*)\)", text)]
        pts = [x for c in cycles for x in c]
        for c in cycles:
            if len(set(c)) != len(c):
                raise GroupError(f"repeated point in cycle: {text!r}")
        size = max(pts, default=-1) + 1
        if n is None:
            n = size
        elif size > n:
            raise GroupError(f"point out of range for degree {n}: {text!r}")
        return cls.from_cycles(cycles, n)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        a = self.images
        return Perm._raw(tuple(a[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._raw(tuple(inv))

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Perm.identity(self.degree), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self, h: "Perm") -> "Perm":
        """self * h * self^-1."""
        return self * h * self.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        from math import lcm
        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            c, j = [], i
            while j not in seen:
                seen.add(j)
                c.append(j)
                j = self.images[j]
            out.append(tuple(c))
        return out

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Perm"):
        return self.images < other.images

    def __repr__(self):
        return f"Perm({self})"

    def __str__(self):
        cs = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs) or "()"


def _close(gens: Sequence[Perm], n: int, cap: int, start: Iterable[Perm] = ()) -> frozenset:
    ident = Perm.identity(n)
    elems = set(start) | {ident}
    queue = deque(elems)
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in elems:
                elems.add(h)
                if len(elems) > cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                queue.append(h)
    return frozenset(elems)


class Group:
    """Finite permutation group with its full element set."""

    __slots__ = ("degree", "gens", "elements", "_hash")

    def __init__(self, degree: int, gens: Sequence[Perm], elements: frozenset):
        self.degree = degree
        self.gens = tuple(gens)
        self.elements = elements
        self._hash = hash(elements)

    # construction -------------------------------------------------------
    @classmethod
    def from_elements(cls, elements: Iterable[Perm], degree: int) -> "Group":
        """Wrap a set already known to be a group; picks a small generating set."""
        elems = frozenset(elements)
        gens: list[Perm] = []
        span = frozenset([Perm.identity(degree)])
        for g in sorted(elems, key=lambda p: (-p.order(), p.images)):
            if g not in span:
                gens.append(g)
                span = _close(gens, degree, ORDER_CAP)
                if len(span) == len(elems):
                    break
        if span != elems:
            raise GroupError("element set is not a group")
        return cls(degree, gens, elems)

    @classmethod
    def trivial(cls, degree: int) -> "Group":
        return cls(degree, (), frozenset([Perm.identity(degree)]))

    # basic queries --------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, g):
        return g in self.elements

    def __eq__(self, other):
        return isinstance(other, Group) and self.elements == other.elements

    def __hash__(self):
        return self._hash

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def is_subgroup_of(self, other: "Group") -> bool:
        return self.elements <= other.elements

    def index_in(self, other: "Group") -> int:
        if not self.is_subgroup_of(other):
            raise GroupError("not a subgroup")
        return other.order // self.order

    def is_normal_in(self, other: "Group") -> bool:
        if not self.is_subgroup_of(other):
            return False
        return all(g.conj(h) in self.elements for g in other.gens for h in self.gens)

    def normalizes(self, a: Perm) -> bool:
        return all(a.conj(h) in self.elements for h in self.gens)

    def is_invariant(self, auts: Iterable[Perm]) -> bool:
        return all(self.normalizes(a) for a in auts)

    def conjugate(self, a: Perm) -> "Group":
        return Group(self.degree, [a.conj(h) for h in self.gens],
                     frozenset(a.conj(h) for h in self.elements))

    def intersection(self, other: "Group") -> "Group":
        return Group.from_elements(self.elements & other.elements, self.degree)

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a in self.gens for b in self.gens)

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)

    def coset_reps(self, sub: "Group") -> list[Perm]:
        """Left coset representatives g of ``sub`` (cosets g*sub), sorted."""
        seen: set = set()
        reps = []
        for g in sorted(self.elements):
            if g in seen:
                continue
            reps.append(g)
            seen.update(g * h for h in sub.elements)
        return reps

    def __repr__(self):
        gens = ", ".join(map(str, self.gens)) or "()"
        return f"Group(order={self.order}, gens=[{gens}])"


def closure(gens: Sequence[Perm], degree: Optional[int] = None, cap: int = ORDER_CAP) -> Group:
    gens = [g for g in gens]
    if degree is None:
        if not gens:
            raise GroupError("degree needed for an empty generator list")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise GroupError("generators of different degrees")
    gens = [g for g in dict.fromkeys(gens) if not g.is_identity()]
    return Group(degree, gens, _close(gens, degree, cap))


def join(H: Group, extra: Iterable[Perm]) -> Group:
    extra = [x for x in extra if x not in H.elements]
    if not extra:
        return H
    gens = list(H.gens) + extra
    return Group(H.degree, gens, _close(gens, H.degree, ORDER_CAP, H.elements))


def product_set_order(A: Group, B: Group) -> int:
    """|AB| = |A||B| / |A & B|."""
    return A.order * B.order // len(A.elements & B.elements)


def _require_subgroup(M: Group, N: Group):
    if not M.is_subgroup_of(N):
        raise GroupError("first argument is not a subgroup of the second")


def normal_closure(M: Group, N: Group) -> Group:
    """Smallest normal subgroup of N containing M."""
    _require_subgroup(M, N)
    H = M
    while True:
        new = [n.conj(h) for n in N.gens for h in H.gens]
        new = [x for x in dict.fromkeys(new) if x not in H.elements]
        if not new:
            return H
        H = join(H, new)


def invariant_closure(H: Group, auts: Sequence[Perm]) -> Group:
    """Smallest subgroup containing H and stable under conjugation by ``auts``."""
    while True:
        new = [a.conj(h) for a in auts for h in H.gens]
        new = [x for x in dict.fromkeys(new) if x not in H.elements]
        if not new:
            return H
        H = join(H, new)


def is_subnormal(M: Group, N: Group) -> bool:
    _require_subgroup(M, N)
    cur = N
    while True:
        if cur == M:
            return True
        nxt = normal_closure(M, cur)
        if nxt == cur:
            return False
        cur = nxt


def intermediate_subgroups(M: Group, N: Group, auts: Sequence[Perm] = (),
                           max_order: Optional[int] = None) -> list[Group]:
    """All subgroups H with M <= H <= N (stable under ``auts`` if given, of
    order at most ``max_order`` if given), by closing M under single extra
    elements until a fixpoint. Pruning by order is complete: H is reached
    through subgroups of H only."""
    _require_subgroup(M, N)
    found = {M.elements: M}
    frontier = [M]
    while frontier:
        nxt = []
        for H in frontier:
            for x in N.coset_reps(H):
                if x in H.elements:
                    continue
                K = join(H, [x])
                if auts:
                    K = invariant_closure(K, auts)
                if max_order is not None and K.order > max_order:
                    continue
                if K.elements not in found:
                    found[K.elements] = K
                    nxt.append(K)
        frontier = nxt
    out = list(found.values())
    if auts:
        out = [H for H in out if H.is_invariant(auts)]
    return sorted(out, key=lambda H: (H.order, H.sorted_elements()))


def all_subgroups(G: Group, max_order: Optional[int] = None) -> list[Group]:
    return intermediate_subgroups(Group.trivial(G.degree), G, max_order=max_order)


def _minimal_insertion(S: Group, R: Group, auts: Sequence[Perm]) -> Optional[Group]:
    best = None
    for x in R.coset_reps(S):
        if x in S.elements:
            continue
        T = join(S, [x])
        while True:
            T2 = invariant_closure(normal_closure(T, R), auts)
            if T2 == T:
                break
            T = T2
        if T.order < R.order and (best is None or (T.order, T.sorted_elements()) <
                                  (best.order, best.sorted_elements())):
            best = T
    return best


def _refine(S: Group, R: Group, auts: Sequence[Perm]) -> list[Group]:
    T = _minimal_insertion(S, R, auts)
    if T is None:
        return [S, R]
    return _refine(S, T, auts)[:-1] + _refine(T, R, auts)


def invariant_subnormal_series(M: Group, N: Group, auts: Sequence[Perm] = (),
                               refine: bool = False) -> list[Group]:
    """M = M_0 < M_1 < ... < M_r = N, each normal in the next and stable under
    conjugation by every element of ``auts``.

    Built by descending normal closures: the series for M inside M^N,
    followed by N. With ``refine`` every step is refined as far as
    possible by invariant subgroups normal in the step above.
    """
    _require_subgroup(M, N)
    for a in auts:
        if not (M.normalizes(a) and N.normalizes(a)):
            raise GroupError(f"automorphism {a} does not stabilize both M and N")
    if not is_subnormal(M, N):
        raise GroupError("M is not subnormal in N")

    def build(M, N):
        if M == N:
            return [N]
        H = normal_closure(M, N)
        if H == N:
            return [M, N]
        return build(M, H) + [N]

    series = build(M, N)
    if refine and len(series) > 1:
        out = [series[0]]
        for S, R in zip(series, series[1:]):
            out += _refine(S, R, auts)[1:]
        series = out
    return series


@dataclass(frozen=True)
class FactorAction:
    """Conjugation action of ``actors`` on a prime-order factor R/S.

    ``exponents[i]`` is the unit s mod p with a tau a^-1 = tau^s (mod S)
    for the i-th actor ``a``, where ``tau`` generates R/S.
    """
    p: int
    generator: Perm
    actors: tuple
    exponents: tuple

    def exponent(self, a: Perm) -> int:
        return self.exponents[self.actors.index(a)]


def coset_power_exponent(R: Group, S: Group, tau: Perm, y: Perm, p: int) -> Optional[int]:
    """The s in 0..p-1 with y in tau^s S, or None if y lies outside R."""
    if y not in R.elements:
        return None
    tinv = tau.inverse()
    t = Perm.identity(R.degree)
    for s in range(p):
        # y = tau^s m  <=>  tau^-s y in S
        if t * y in S.elements:
            return s
        t = t * tinv
    return None


def factor_action(R: Group, S: Group, actors: Sequence[Perm]) -> FactorAction:
    _require_subgroup(S, R)
    if not S.is_normal_in(R):
        raise GroupError("S is not normal in R")
    p = R.order // S.order
    if not is_prime(p):
        raise GroupError(f"index {p} is not prime")
    tau = next(g for g in sorted(R.elements) if g not in S.elements)
    exps = []
    for a in actors:
        if not (R.normalizes(a) and S.normalizes(a)):
            raise GroupError(f"actor {a} does not normalize R and S")
        s = coset_power_exponent(R, S, tau, a.conj(tau), p)
        if not s:
            raise GroupError("conjugate of the generator left R/S")
        # well-defined on every coset representative
        for r in R.gens:
            k = coset_power_exponent(R, S, tau, r, p)
            img = coset_power_exponent(R, S, tau, a.conj(r), p)
            if img != (k * s) % p:
                raise GroupError("action on R/S is ill-defined")
        exps.append(s)
    return FactorAction(p, tau, tuple(actors), tuple(exps))


# --- standard constructions -----------------------------------------------

def symmetric_group(n: int) -> Group:
    if n <= 1:
        return Group.trivial(max(n, 1))
    gens = [Perm.from_cycles([tuple(range(n))], n), Perm.from_cycles([(0, 1)], n)]
    return closure(gens)


def alternating_group(n: int) -> Group:
    gens = [Perm.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return closure(gens, n)


def cyclic_group(n: int) -> Group:
    return closure([Perm.from_cycles([tuple(range(n))], n)], n) if n > 1 else Group.trivial(1)


def affine_map(c: int, b: int, n: int) -> Perm:
    """x -> c x + b on Z/n."""
    return Perm([(c * x + b) % n for x in range(n)])


def affine_group(n: int, units: Optional[Sequence[int]] = None) -> Group:
    """Maps x -> c x + b on Z/n with c in ``units`` (default: all units)."""
    from math import gcd
    if units is None:
        units = [c for c in range(1, n) if gcd(c, n) == 1]
    gens = [affine_map(1, 1, n)] + [affine_map(c, 0, n) for c in units if c != 1]
    return closure(gens, n)


def direct_product(A: Group, B: Group) -> Group:
    n, m = A.degree, B.degree

    def lift_a(g):
        return Perm(list(g.images) + [n + i for i in range(m)])

    def lift_b(g):
        return Perm(list(range(n)) + [n + i for i in g.images])

    return closure([lift_a(g) for g in A.gens] + [lift_b(g) for g in B.gens], n + m)
