"""Irreducibility certificates for polynomials over Q (and, through norms,
over Q(sqrt d)).

The cascade is sound but incomplete: whenever no method applies the
answer is ``UNKNOWN``, never a guess.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .poly import Poly
from .quadfield import is_pth_power, is_prime, prime_factors, primes_upto, rational_sqrt

EISENSTEIN_SHIFT_BOUND = 10
MOD_P_BOUND = 100

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
UNKNOWN = "Unknown"

# method tags
DEGREE_ONE = "DegreeOne"
ROOT_ABSENT_LE3 = "RationalRootAbsent+DegreeLe3"
EISENSTEIN = "Eisenstein"
MOD_P = "ModPIrreducible"
QUARTIC = "QuarticExhaustive"
BINOMIAL = "BinomialPthPower"
NORM = "NormIrreducible"
ODD_DEGREE_LIFT = "OddDegreeRationalIrreducible"


@dataclass(frozen=True)
class IrreducibilityCertificate:
    status: str
    method: Optional[str] = None
    prime: Optional[int] = None
    shift: Optional[int] = None
    factor: Optional[Poly] = None
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def irreducible(self) -> bool:
        return self.status == IRREDUCIBLE

    def describe(self) -> str:
        if self.status == REDUCIBLE:
            return f"reducible: factor {self.factor}"
        if self.status == UNKNOWN:
            return "irreducibility unknown"
        if self.method == EISENSTEIN:
            return f"irreducible (Eisenstein p={self.prime}, shift {self.shift})"
        if self.method == MOD_P:
            return f"irreducible (irreducible mod {self.prime})"
        return f"irreducible ({self.method})"

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.method:
            out["method"] = self.method
        if self.prime is not None:
            out["prime"] = self.prime
        if self.shift is not None:
            out["shift"] = self.shift
        if self.factor is not None:
            out["factor"] = str(self.factor)
        return out


# --- rational roots ---------------------------------------------------------

def rational_roots(f: Poly) -> list[Fraction]:
    """All rational roots of a rational polynomial, sorted.

    Uses exact real-root isolation and ``limit_denominator``: a root p/q in
    lowest terms has q | lc(f), and distinct fractions with denominators at
    most lc are at least 1/lc^2 apart.
    """
    from .realroots import isolate_real_roots

    ints = f.integer_primitive()
    if not ints:
        raise ValueError("zero polynomial")
    g = Poly(ints)
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        k = 0
        while ints[k] == 0:
            k += 1
        g = Poly(ints[k:])
    if g.degree < 1:
        return roots
    lc = abs(ints[-1])
    width = Fraction(1, 4 * lc * lc)
    for iv in isolate_real_roots(g, width=width):
        mid = (iv.lo + iv.hi) / 2
        cand = mid.limit_denominator(lc)
        if g(cand) == 0:
            roots.append(cand)
    return sorted(set(roots))


# --- Eisenstein -------------------------------------------------------------

def _eisenstein_prime(ints: list[int]) -> Optional[int]:
    from math import gcd
    g = 0
    for c in ints[:-1]:
        g = gcd(g, c)
    if g in (0, 1):
        return None
    ps = prime_factors(g)
    if ps is None:
        return None
    for p in ps:
        if ints[-1] % p != 0 and ints[0] % (p * p) != 0:
            return p
    return None


def eisenstein_holds(f: Poly, p: int, shift: int = 0) -> bool:
    """Re-check Eisenstein at ``p`` for f(x + shift)."""
    ints = f.shift(shift).integer_primitive()
    return (all(c % p == 0 for c in ints[:-1]) and ints[-1] % p != 0
            and ints[0] % (p * p) != 0)


def _shifts():
    yield 0
    for k in range(1, EISENSTEIN_SHIFT_BOUND + 1):
        yield k
        yield -k


# --- arithmetic over F_p ----------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] = (a[k + j] - c * bj) % p
        _trim(a)
    return _trim(q), a


def fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def fp_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def fp_is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p of degree >= 1."""
    f = _trim([x % p for x in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob(k):
        # x^(p^k) mod f
        r = x
        for _ in range(k):
            r = fp_powmod(r, p, f, p)
        return r

    def sub_x(a):
        a = a + [0] * max(0, 2 - len(a))
        a[1] = (a[1] - 1) % p
        return _trim(a)

    if sub_x(frob(n)):
        return False
    for q in prime_factors(n):
        g = fp_gcd(f, sub_x(frob(n // q)), p)
        if len(g) > 1:
            return False
    return True


def mod_p_irreducible(f: Poly, p: int) -> bool:
    ints = f.integer_primitive()
    if ints[-1] % p == 0:
        return False
    return fp_is_irreducible(ints, p)


# --- quartics -----------------------------------------------------------------

def quartic_quadratic_factor(f: Poly) -> Optional[Poly]:
    """A monic quadratic factor over Q of a rational quartic with no rational
    roots, or None if it is irreducible.

    Depress to y^4 + P y^2 + Q y + R; a factorization (y^2+ky+l)(y^2-ky+m)
    with k != 0 needs z = k^2 to be a nonzero rational square root of
    z^3 + 2P z^2 + (P^2 - 4R) z - Q^2, and k = 0 needs Q = 0 with
    P^2 - 4R a rational square.
    """
    g = f.to_rational().monic()
    if g.degree != 4:
        raise ValueError("quartic expected")
    a3 = g.coeffs[3]
    h = g.shift(-a3 / 4)
    _, Q, P = h.coeffs[0], h.coeffs[1], h.coeffs[2]
    R = h.coeffs[0]
    y = Poly.x()
    cands = []
    if Q == 0:
        s = rational_sqrt(P * P - 4 * R)
        if s is not None:
            cands.append(y * y + (P - s) / 2)
    cubic = Poly([-Q * Q, P * P - 4 * R, 2 * P, 1])
    for z in rational_roots(cubic):
        if z <= 0:
            continue
        k = rational_sqrt(z)
        if k is None:
            continue
        l = (P + z - Q / k) / 2
        cands.append(y * y + k * y + l)
    for c in cands:
        if (h % c).is_zero():
            return c.shift(a3 / 4)
    return None


# --- main cascade -----------------------------------------------------------

def irreducibility_certificate(f: Poly) -> IrreducibilityCertificate:
    """Certificate for a polynomial over Q; see module docstring."""
    if f.d is not None:
        return irreducibility_certificate_quadratic(f)
    if f.degree < 1:
        raise ValueError("irreducibility of a zero or constant polynomial")
    if f.degree == 1:
        return IrreducibilityCertificate(IRREDUCIBLE, DEGREE_ONE)
    roots = rational_roots(f)
    if roots:
        r = min(roots, key=lambda t: (abs(t), t < 0))
        return IrreducibilityCertificate(REDUCIBLE, factor=Poly([-r, 1]))
    ints = f.integer_primitive()
    for k in _shifts():
        sh = Poly(ints).shift(k).integer_primitive()
        p = _eisenstein_prime(sh)
        if p is not None:
            return IrreducibilityCertificate(IRREDUCIBLE, EISENSTEIN, prime=p, shift=k)
    n = f.degree
    if is_prime(n) and all(c == 0 for c in ints[1:-1]):
        a = Fraction(-ints[0], ints[-1])
        if is_pth_power(a, n) is None:
            return IrreducibilityCertificate(IRREDUCIBLE, BINOMIAL, prime=n)
    if n <= 3:
        return IrreducibilityCertificate(IRREDUCIBLE, ROOT_ABSENT_LE3)
    for p in primes_upto(MOD_P_BOUND):
        if ints[-1] % p and fp_is_irreducible(ints, p):
            return IrreducibilityCertificate(IRREDUCIBLE, MOD_P, prime=p)
    if n == 4:
        q = quartic_quadratic_factor(f)
        if q is None:
            return IrreducibilityCertificate(IRREDUCIBLE, QUARTIC)
        return IrreducibilityCertificate(REDUCIBLE, factor=q)
    return IrreducibilityCertificate(UNKNOWN)


def irreducibility_certificate_quadratic(f: Poly) -> IrreducibilityCertificate:
    """Over Q(sqrt d): irreducible if the norm f * conj(f) is irreducible
    over Q, or if f is rational, odd degree and irreducible over Q."""
    if f.degree < 1:
        raise ValueError("irreducibility of a zero or constant polynomial")
    if f.degree == 1:
        return IrreducibilityCertificate(IRREDUCIBLE, DEGREE_ONE)
    if f.is_rational():
        base = irreducibility_certificate(f.to_rational())
        if base.status == REDUCIBLE:
            return IrreducibilityCertificate(REDUCIBLE, factor=base.factor.over(f.d))
        if base.irreducible and f.degree % 2 == 1:
            return IrreducibilityCertificate(IRREDUCIBLE, ODD_DEGREE_LIFT,
                                             detail={"over_Q": base})
        return IrreducibilityCertificate(UNKNOWN)
    norm = (f * f.conj()).to_rational()
    base = irreducibility_certificate(norm)
    if base.irreducible:
        return IrreducibilityCertificate(IRREDUCIBLE, NORM, prime=base.prime,
                                         shift=base.shift, detail={"norm": norm, "over_Q": base})
    return IrreducibilityCertificate(UNKNOWN)


def verify_certificate(f: Poly, cert: IrreducibilityCertificate) -> bool:
    """Independent re-check of the hypotheses a certificate names."""
    if cert.status == REDUCIBLE:
        fac = cert.factor
        return 0 < fac.degree < f.degree and (f % fac).is_zero()
    if cert.status == UNKNOWN:
        return True
    m = cert.method
    if m == DEGREE_ONE:
        return f.degree == 1
    if m == EISENSTEIN:
        return eisenstein_holds(f, cert.prime, cert.shift)
    if m == MOD_P:
        return mod_p_irreducible(f, cert.prime)
    if m == ROOT_ABSENT_LE3:
        return f.degree <= 3 and not rational_roots(f)
    if m == BINOMIAL:
        ints = f.integer_primitive()
        return (f.degree == cert.prime and all(c == 0 for c in ints[1:-1])
                and is_pth_power(Fraction(-ints[0], ints[-1]), cert.prime) is None)
    if m == QUARTIC:
        return f.degree == 4 and not rational_roots(f) and quartic_quadratic_factor(f) is None
    if m == NORM:
        norm = (f * f.conj()).to_rational()
        return verify_certificate(norm, cert.detail["over_Q"]) and cert.detail["over_Q"].irreducible
    if m == ODD_DEGREE_LIFT:
        return (f.degree % 2 == 1 and f.is_rational()
                and verify_certificate(f.to_rational(), cert.detail["over_Q"]))
    return False
