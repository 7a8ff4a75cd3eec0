"""Exact real-root counting and isolation with Sturm sequences.

Works over Q and over Q(sqrt d) embedded in the reals with sqrt d > 0;
all signs are decided exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from .poly import Poly, squarefree_part
from .quadfield import QuadElem, sign

DEFAULT_WIDTH = Fraction(1, 2 ** 20)


@dataclass(frozen=True)
class IsolatingInterval:
    """Half-open (lo, hi] holding exactly one real root of ``poly``."""
    lo: Fraction
    hi: Fraction
    poly: Poly

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def as_json(self) -> list[str]:
        return [str(self.lo), str(self.hi)]

    def __str__(self):
        return f"({self.lo}, {self.hi}] ~ {float(self.mid):.10g}"


def _is_squarefree(f: Poly) -> bool:
    from .poly import poly_gcd
    return poly_gcd(f, f.derivative()).degree == 0


def sturm_chain(f: Poly) -> list[Poly]:
    if f.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    if not _is_squarefree(f):
        raise ValueError("Sturm chain needs a squarefree polynomial")
    chain = [f, f.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return chain


def _variations(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _signs_at(chain: list[Poly], x) -> list[int]:
    return [sign(p(x)) for p in chain]


def _signs_at_inf(chain: list[Poly], positive: bool) -> list[int]:
    out = []
    for p in chain:
        s = sign(p.lc)
        if not positive and p.degree % 2:
            s = -s
        out.append(s)
    return out


def _variation_at(chain, x) -> int:
    if x is None:
        raise TypeError
    return _variations(_signs_at(chain, x))


def count_real_roots(f: Poly, lo=None, hi=None) -> int:
    """Distinct real roots of ``f`` in (lo, hi]; ``None`` bounds are infinite."""
    if f.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError("empty interval")
    if f.degree == 0:
        return 0
    chain = sturm_chain(squarefree_part(f))
    v_lo = _variations(_signs_at_inf(chain, False)) if lo is None else _variation_at(chain, lo)
    v_hi = _variations(_signs_at_inf(chain, True)) if hi is None else _variation_at(chain, hi)
    return v_lo - v_hi


def _abs_upper(c) -> Fraction:
    """Rational upper bound for |c|."""
    if isinstance(c, QuadElem):
        return abs(c.a) + abs(c.b) * (isqrt(c.d) + 1)
    return abs(c)


def _abs_lower(c) -> Fraction:
    """Positive rational lower bound for |c|, c != 0."""
    if isinstance(c, QuadElem):
        if c.b == 0:
            return abs(c.a)
        # |c| = |N(c)| / |conj(c)|
        return abs(c.norm()) / _abs_upper(c.conj())
    return abs(c)


def root_bound(f: Poly) -> Fraction:
    """Cauchy bound 1 + max|a_i| / |a_n| (rationally over-approximated over Q(sqrt d))."""
    lead = _abs_lower(f.lc)
    m = max((_abs_upper(c) for c in f.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lead


def isolate_real_roots(f: Poly, width=None) -> list[IsolatingInterval]:
    """One interval per distinct real root, in increasing order, each of
    width below ``width`` (default 2^-20)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    width = DEFAULT_WIDTH if width is None else Fraction(width)
    if f.degree == 0:
        return []
    g = squarefree_part(f)
    chain = sturm_chain(g)
    b = root_bound(g)
    out: list[IsolatingInterval] = []
    stack = [(-b, b, _variation_at(chain, -b), _variation_at(chain, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1 and hi - lo < width:
            out.append(IsolatingInterval(lo, hi, g))
            continue
        mid = (lo + hi) / 2
        vm = _variation_at(chain, mid)
        stack.append((mid, hi, vm, vhi))
        stack.append((lo, mid, vlo, vm))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine(iv: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect an isolating interval until narrower than ``width``."""
    width = Fraction(width)
    chain = sturm_chain(iv.poly)
    lo, hi = iv.lo, iv.hi
    vlo = _variation_at(chain, lo)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        vm = _variation_at(chain, mid)
        if vlo - vm == 1:
            hi = mid
        else:
            lo, vlo = mid, vm
    return IsolatingInterval(lo, hi, iv.poly)


def cubic_three_root_criterion(a) -> bool:
    """x^3 - 3x + a has three distinct real roots iff -2 < a < 2.

    The local extrema sit at x = -1 and x = 1 with values a + 2 and a - 2.
    """
    return sign(a + 2) > 0 and sign(a - 2) < 0


def h_cubic(a, d: Optional[int] = None) -> Poly:
    """The cubic x^3 - 3x + a."""
    return Poly([a, -3, 0, 1], d)
