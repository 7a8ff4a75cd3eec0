"""Galois data (G, U, N, characters) for families where the Galois group
is explicitly known, plus Galois groups of irreducible cubics and quartics.

Notation: E is a Galois extension of the ground field, L the field of
interest and F an abelian-over-ground subfield of E holding all roots of
unity of E. Then G = Gal(E/ground), U = Gal(E/L), N = Gal(E/F) and
M = U & N. The character at a prime p records how G moves the p-th roots
of unity: zeta -> zeta^chi(g).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .irreducible import irreducibility_certificate, rational_roots
from .perm import Group, Perm, affine_group, affine_map, closure
from .poly import Poly, discriminant
from .quadfield import is_prime, is_pth_power, prime_factors, rational_sqrt

SCHEMA = 1
MAX_CYCLOTOMIC = 100
MAX_BINOMIAL_PRIME = 19


class DatumError(ValueError):
    pass


def extend_character(G: Group, on_gens: dict, p: int) -> dict:
    """Extend a map generators -> (Z/p)^x to a homomorphism on G."""
    ident = G.identity()
    vals = {ident: 1}
    queue = deque([ident])
    gens = list(on_gens)
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            v = vals[g] * on_gens[s] % p
            if h in vals:
                if vals[h] != v:
                    raise DatumError(f"character at {p} is not a homomorphism")
            else:
                vals[h] = v
                queue.append(h)
    if len(vals) != G.order:
        raise DatumError("character generators do not generate G")
    return vals


@dataclass
class GaloisDatum:
    G: Group
    U: Group
    N: Group
    characters: dict  # p -> {element: unit mod p}
    labels: dict = field(default_factory=dict)
    quasireal: bool = False
    involution: Optional[Perm] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        G, U, N = self.G, self.U, self.N
        if not U.is_subgroup_of(G):
            raise DatumError("U is not a subgroup of G")
        if not N.is_normal_in(G):
            raise DatumError("N is not normal in G")
        for a in G.gens:
            for b in G.gens:
                if a * b * a.inverse() * b.inverse() not in N:
                    raise DatumError("G/N is not abelian")
        for p, chi in self.characters.items():
            if not is_prime(p):
                raise DatumError(f"character key {p} is not prime")
            if set(chi) != G.elements:
                raise DatumError(f"character at {p} not defined on all of G")
            for a in G.gens:
                for b in G.gens:
                    if chi[a * b] != chi[a] * chi[b] % p:
                        raise DatumError(f"character at {p} is not multiplicative")
            if any(chi[n] != 1 for n in N.gens):
                raise DatumError(f"character at {p} does not vanish on N")
        if self.involution is not None:
            if self.involution not in U or not (self.involution * self.involution).is_identity():
                raise DatumError("designated involution must be an element of U of order <= 2")

    @property
    def M(self) -> Group:
        return self.U.intersection(self.N)

    def with_field(self, V: Group, label: Optional[str] = None) -> "GaloisDatum":
        """The datum for the intermediate field fixed by V (U <= V <= G)."""
        if not (self.U.is_subgroup_of(V) and V.is_subgroup_of(self.G)):
            raise DatumError("V must lie between U and G")
        labels = dict(self.labels)
        labels["L"] = label or f"fixed field of a subgroup of order {V.order}"
        inv = self.involution if self.involution is not None and self.involution in V else None
        return GaloisDatum(self.G, V, self.N, self.characters, labels, self.quasireal,
                           inv, dict(self.metadata))

    def to_json(self) -> dict:
        def grp(H):
            return {"order": H.order, "generators": [str(g) for g in H.gens]}
        return {
            "schema": SCHEMA,
            "degree": self.G.degree,
            "G": grp(self.G), "U": grp(self.U), "N": grp(self.N), "M": grp(self.M),
            "characters": {str(p): {str(g): chi[g] for g in self.G.gens}
                           for p, chi in sorted(self.characters.items())},
            "labels": dict(self.labels),
            "quasireal": self.quasireal,
            "involution": None if self.involution is None else str(self.involution),
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_json(cls, data: dict) -> "GaloisDatum":
        if data.get("schema") != SCHEMA:
            raise DatumError("unsupported schema")
        n = data["degree"]

        def grp(d):
            return closure([Perm.parse(s, n) for s in d["generators"]], n)
        G = grp(data["G"])
        chars = {}
        for p, on in data["characters"].items():
            on_gens = {Perm.parse(s, n): v for s, v in on.items()}
            chars[int(p)] = extend_character(G, on_gens, int(p))
        inv = data.get("involution")
        return cls(G, grp(data["U"]), grp(data["N"]), chars, data.get("labels", {}),
                   data.get("quasireal", False), Perm.parse(inv, n) if inv else None,
                   data.get("metadata", {}))


# --- pure radicals X^n - a ------------------------------------------------------

def _affine_datum(n: int, a: Fraction) -> GaloisDatum:
    """Splitting field of X^n - a for odd n: the affine maps x -> cx + b of Z/n.

    Point k of Z/n stands for the root zeta^k * alpha with alpha the real
    n-th root of a; the map x -> cx + b sends zeta -> zeta^c and
    alpha -> zeta^b alpha. Translations fix Q(zeta_n); the stabilizer of 0
    fixes Q(alpha).
    """
    G = affine_group(n)
    N = closure([affine_map(1, 1, n)], n)
    U = Group.from_elements([g for g in G.elements if g(0) == 0], n)
    chars = {}
    for p in prime_factors(n):
        on = {g: (g(1) - g(0)) % p for g in G.gens}
        chars[p] = extend_character(G, on, p)
    inv = affine_map(n - 1, 0, n)
    labels = {"Q": "Q", "L": f"Q(real {n}-th root of {a})", "F": f"Q(zeta_{n})",
              "E": f"splitting field of x^{n} - {a}"}
    return GaloisDatum(G, U, N, chars, labels, quasireal=True, involution=inv,
                       metadata={"family": "binomial", "n": n, "a": str(a)})


def build_binomial(p: int, a) -> GaloisDatum:
    """Galois datum of X^p - a over Q for an odd prime p <= 19."""
    if not (is_prime(p) and p % 2 == 1 and p <= MAX_BINOMIAL_PRIME):
        raise DatumError(f"p must be an odd prime <= {MAX_BINOMIAL_PRIME}, got {p}")
    a = Fraction(a)
    if a == 0 or is_pth_power(a, p) is not None:
        raise DatumError(f"x^{p} - {a} is reducible: {a} is a {p}-th power")
    return _affine_datum(p, a)


def build_pure_radical(n: int, a) -> GaloisDatum:
    """Datum of X^n - a for an odd prime power n <= 27, used as the model
    with a composite index |G:U| = n (Hol(C_9) for n = 9)."""
    ps = prime_factors(n) if n > 1 else []
    if n % 2 == 0 or n > 27 or len(ps) != 1:
        raise DatumError("n must be an odd prime power <= 27")
    a = Fraction(a)
    if a == 0 or is_pth_power(a, ps[0]) is not None:
        raise DatumError(f"x^{n} - {a} is reducible")
    return _affine_datum(n, a)


# --- cyclotomic fields -----------------------------------------------------------

def units(n: int) -> list[int]:
    return [a for a in range(1, n) if gcd(a, n) == 1] if n > 1 else [0]


def unit_subgroup(n: int, gens: Sequence[int]) -> list[int]:
    out = {1 % n}
    frontier = [1 % n]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in out:
                out.add(y)
                frontier.append(y)
    return sorted(out)


def unit_subgroups_of_order(n: int, order: int) -> list[list[int]]:
    """All subgroups of (Z/n)^x of the given order (cyclic ones suffice to
    detect uniqueness; non-cyclic subgroups are joins of cyclic ones)."""
    us = units(n)
    found: set = set()
    frontier = [frozenset({1 % n})]
    found.add(frontier[0])
    while frontier:
        nxt = []
        for H in frontier:
            for g in us:
                if g in H:
                    continue
                K = frozenset(unit_subgroup(n, sorted(H) + [g]))
                if K not in found and len(K) <= order:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(sorted(H) for H in found if len(H) == order)


def resolve_unit_subgroup(n: int, spec) -> list[int]:
    """A subgroup of (Z/n)^x from an order (must be unique) or a generator list."""
    if isinstance(spec, int):
        cands = unit_subgroups_of_order(n, spec)
        if not cands:
            raise DatumError(f"(Z/{n})^x has no subgroup of order {spec}")
        if len(cands) > 1:
            raise DatumError(f"(Z/{n})^x has {len(cands)} subgroups of order {spec}; "
                             "give generators instead")
        return cands[0]
    gens = [int(g) % n for g in spec]
    if any(gcd(g, n) != 1 for g in gens):
        raise DatumError("generators must be units mod n")
    return unit_subgroup(n, gens)


def _quadratic_label(n: int, ground: list[int]) -> Optional[str]:
    if is_prime(n) and n > 2 and len(ground) * 2 == n - 1:
        return f"Q(sqrt({n if n % 4 == 1 else -n}))"
    return None


def build_cyclotomic(n: int, H_ground, H_field) -> GaloisDatum:
    """Datum for E = Q(zeta_n) over the fixed field of H_ground, with L the
    fixed field of H_field. E is abelian so F = E and N = 1."""
    if not 2 < n <= MAX_CYCLOTOMIC:
        raise DatumError(f"n must be in 3..{MAX_CYCLOTOMIC}")
    Hg = resolve_unit_subgroup(n, H_ground)
    Hf = resolve_unit_subgroup(n, H_field)
    if not set(Hf) <= set(Hg):
        raise DatumError("H_field is not contained in H_ground")
    us = units(n)
    index = {u: i for i, u in enumerate(us)}
    deg = len(us)

    def mult(c):
        return Perm([index[c * u % n] for u in us])

    def grp(H):
        return closure([mult(c) for c in H], deg) if len(H) > 1 else Group.trivial(deg)

    G, U = grp(Hg), grp(Hf)
    chars = {}
    for p in prime_factors(n):
        if p == 2:
            continue
        on = {g: us[g(index[1])] % p for g in G.gens}
        chars[p] = extend_character(G, on, p) if G.gens else {G.identity(): 1}
    # L holds a root of unity beyond +-1 iff H_field fixes zeta_q (odd q | n) or i
    bad = [q for q in prime_factors(n) if q > 2 and all(c % q == 1 for c in Hf)]
    if n % 4 == 0 and all(c % 4 == 1 for c in Hf):
        bad.append(4)
    ground_label = _quadratic_label(n, Hg) or f"fixed field of <{','.join(map(str, Hg[:6]))}{',...' if len(Hg) > 6 else ''}>"
    if len(Hg) == deg:
        ground_label = "Q"
    labels = {"Q": ground_label, "E": f"Q(zeta_{n})", "F": f"Q(zeta_{n})",
              "L": f"Q(zeta_{n})" if len(Hf) == 1 else f"fixed field of a subgroup of order {len(Hf)}"}
    inv = mult(n - 1) if (n - 1) in Hf else None
    meta = {"family": "cyclotomic", "n": n, "H_ground": Hg, "H_field": Hf,
            "degree_L_over_ground": len(Hg) // len(Hf),
            "roots_of_unity_in_L": bad}
    if len(Hf) == 1:
        meta["radical_by_construction"] = True
        meta["radical_note"] = f"L = ground(zeta_{n}) with zeta_{n}^{n} = 1"
    return GaloisDatum(G, U, Group.trivial(deg), chars, labels, quasireal=not bad,
                       involution=inv, metadata=meta)


def _least_prime_1_mod(m: int) -> int:
    p = m + 1
    while not is_prime(p):
        p += m
    return p


def theorem_a_witness(n: int) -> GaloisDatum:
    """The degree-n subfield of Q(zeta_p), p the least prime = 1 mod 2n:
    a real field whose Galois group over Q is cyclic of order n."""
    if n not in (2, 4, 8, 16):
        raise DatumError("n must be one of 2, 4, 8, 16")
    p = _least_prime_1_mod(2 * n)
    us = units(p)
    # (Z/p)^x is cyclic; the index-n subgroup is the set of n-th powers
    sub = sorted({pow(u, n, p) for u in us})
    if (p - 1) not in sub:
        raise DatumError("subfield is not real")  # cannot happen for p = 1 mod 2n
    d = build_cyclotomic(p, us, sub)
    G, U = d.G, d.U
    reps = G.coset_reps(U)
    quotient_cyclic = any(all(any(g ** k * r.inverse() in U for k in range(n)) for r in reps)
                          for g in G.gens)
    if not quotient_cyclic or G.order // U.order != n:
        raise DatumError("quotient is not cyclic of order n")
    d.labels["L"] = f"real subfield of degree {n} in Q(zeta_{p})"
    d.metadata.update({"prime": p, "real": True, "galois_cyclic_2_group": True})
    return d


# --- small-degree Galois groups -----------------------------------------------------

@dataclass(frozen=True)
class GaloisGroupLabel:
    label: str
    order: int
    degree: int
    discriminant: Fraction
    discriminant_square: bool
    resolvent: Optional[Poly] = None
    resolvent_rational_roots: tuple = ()

    @property
    def is_two_group(self) -> bool:
        return self.order & (self.order - 1) == 0

    def to_json(self) -> dict:
        out = {"label": self.label, "order": self.order, "degree": self.degree,
               "discriminant": str(self.discriminant),
               "discriminant_square": self.discriminant_square}
        if self.resolvent is not None:
            out["resolvent"] = str(self.resolvent)
            out["resolvent_rational_roots"] = [str(r) for r in self.resolvent_rational_roots]
        return out


ORDERS = {"C1": 1, "C2": 2, "C3": 3, "A3": 3, "S3": 6, "V4": 4, "C4": 4, "D4": 8,
          "A4": 12, "S4": 24}


def quartic_resolvent_cubic(f: Poly) -> Poly:
    """Cubic with roots ab+cd, ac+bd, ad+bc for the roots a, b, c, d of a monic
    quartic x^4 + A x^3 + B x^2 + C x + D:
    z^3 - B z^2 + (AC - 4D) z - (A^2 D - 4BD + C^2)."""
    if f.degree != 4:
        raise ValueError("quartic expected")
    if f.lc != 1:
        raise ValueError("monic quartic expected")
    D, C, B, A = f.coeffs[0], f.coeffs[1], f.coeffs[2], f.coeffs[3]
    return Poly([-(A * A * D - 4 * B * D + C * C), A * C - 4 * D, -B, 1], f.d)


def _splits_over_sqrt(disc_quad: Fraction, delta: Fraction) -> bool:
    """Is a rational q a square in Q(sqrt delta)?"""
    return rational_sqrt(disc_quad) is not None or rational_sqrt(disc_quad * delta) is not None


def galois_group_small_degree(f: Poly) -> GaloisGroupLabel:
    if not f.is_rational():
        raise ValueError("rational polynomial expected")
    f = f.to_rational()
    if f.degree not in (2, 3, 4):
        raise ValueError("degree must be 2, 3 or 4")
    cert = irreducibility_certificate(f)
    if not cert.irreducible:
        raise ValueError(f"irreducible polynomial expected ({cert.describe()})")
    g = f.monic()
    delta = discriminant(g)
    square = rational_sqrt(delta) is not None
    n = g.degree
    if n == 2:
        return GaloisGroupLabel("C2", 2, 2, delta, square)
    if n == 3:
        lab = "A3" if square else "S3"
        return GaloisGroupLabel(lab, ORDERS[lab], 3, delta, square)
    res = quartic_resolvent_cubic(g)
    roots = tuple(rational_roots(res))
    if not roots:
        lab = "A4" if square else "S4"
    elif len(roots) == 3:
        lab = "V4"
    else:
        r = roots[0]
        A, B, D = g.coeffs[3], g.coeffs[2], g.coeffs[0]
        # C4 iff x^2 - r x + D and x^2 + A x + (B - r) both split over Q(sqrt delta)
        c4 = (_splits_over_sqrt(r * r - 4 * D, delta)
              and _splits_over_sqrt(A * A - 4 * (B - r), delta))
        lab = "C4" if c4 else "D4"
    return GaloisGroupLabel(lab, ORDERS[lab], 4, delta, square, res, roots)
