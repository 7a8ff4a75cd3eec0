"""Exact scalars: rationals (``fractions.Fraction``) and elements of real
quadratic fields Q(sqrt d).

Everything here is exact; no floating point is used anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Optional, Union


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer ``n``."""
    if n < 0:
        raise ValueError("iroot of a negative integer")
    if k < 1:
        raise ValueError("root index must be positive")
    if n < 2 or k == 1:
        return n
    # Newton iteration from an overestimate
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, trial division below 1000."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def prime_factors(n: int, bound: int = 10 ** 6) -> Optional[list[int]]:
    """Distinct prime factors of ``|n|`` by trial division.

    Returns None when a cofactor above ``bound**2`` is left that is not
    provably prime (the caller must then treat the result as unknown).
    """
    n = abs(n)
    if n == 0:
        return None
    out = []
    f = 2
    while f * f <= n and f <= bound:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        if f * f > n or is_prime(n):
            out.append(n)
        else:
            return None
    return out


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class QuadElem:
    """The element ``a + b*sqrt(d)`` of Q(sqrt d), d > 1 squarefree.

    ``sqrt(d)`` always means the positive real square root, so every
    element has a well-defined real sign.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 2):
        if not isinstance(d, int) or d < 2 or not is_squarefree(d):
            raise ValueError(f"field tag must be a squarefree integer > 1, got {d!r}")
        self.a = _as_fraction(a)
        self.b = _as_fraction(b)
        self.d = d

    @classmethod
    def sqrt_d(cls, d: int) -> "QuadElem":
        return cls(0, 1, d)

    # coercion helpers -------------------------------------------------
    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise ValueError(f"field mismatch: Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        return QuadElem(_as_fraction(other), 0, self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a * o.a + self.d * self.b * o.b,
                        self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        return QuadElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadElem(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # sign and order ---------------------------------------------------
    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        return (self - self._coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.a == other.a and self.b == other.b
        try:
            return self.b == 0 and self.a == _as_fraction(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            rad = f"sqrt({self.d})"
        elif self.b == -1:
            rad = f"-sqrt({self.d})"
        else:
            rad = f"{self.b}*sqrt({self.d})"
        if self.a == 0:
            return rad
        if rad.startswith("-"):
            return f"{self.a} - {rad[1:]}"
        return f"{self.a} + {rad}"


Scalar = Union[Fraction, QuadElem]


def sign(x) -> int:
    if isinstance(x, QuadElem):
        return x.sign()
    return (x > 0) - (x < 0)


def field_tag(x) -> Optional[int]:
    return x.d if isinstance(x, QuadElem) else None


def is_pth_power(a, p: int) -> Optional[Fraction]:
    """Return r in Q with r**p == a, or None when no such rational exists.

    For even ``p`` the nonnegative root is returned and negative ``a`` has
    none.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = _as_fraction(a)
    if a == 0:
        return Fraction(0)
    neg = a < 0
    if neg and p == 2:
        return None
    num, den = abs(a.numerator), a.denominator
    rn, rd = iroot(num, p), iroot(den, p)
    if rn ** p != num or rd ** p != den:
        return None
    r = Fraction(rn, rd)
    return -r if neg else r


def rational_sqrt(a) -> Optional[Fraction]:
    a = _as_fraction(a)
    if a < 0:
        return None
    return is_pth_power(a, 2)


def sqrt_in_field(x: Scalar, d: Optional[int] = None) -> Optional[Scalar]:
    """A square root of ``x`` inside Q or Q(sqrt d), or None.

    The nonnegative root is returned.
    """
    if d is None and isinstance(x, QuadElem):
        d = x.d
    if d is None:
        return rational_sqrt(x)
    x = x if isinstance(x, QuadElem) else QuadElem(x, 0, d)
    if x.sign() < 0:
        return None
    if x == 0:
        return QuadElem(0, 0, d)
    # (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d
    n = rational_sqrt(x.norm())
    if n is None:
        return None
    for u2 in ((x.a + n) / 2, (x.a - n) / 2):
        u = rational_sqrt(u2)
        if u is None:
            continue
        if u == 0:
            # x = d v^2
            v = rational_sqrt(x.a / d) if x.b == 0 else None
            if v is not None:
                return QuadElem(0, v, d)
            continue
        cand = QuadElem(u, x.b / (2 * u), d)
        if cand * cand == x:
            return abs(cand)
    return None
