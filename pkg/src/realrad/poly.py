"""Dense univariate polynomials over Q or a real quadratic field Q(sqrt d)."""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence

from .quadfield import QuadElem, Scalar, field_tag


class FieldMismatch(ValueError):
    pass


def _field_label(d: Optional[int]) -> str:
    return "Q" if d is None else f"Q(sqrt({d}))"


class Poly:
    """Polynomial with coefficients ``coeffs[i]`` of ``x**i``.

    Over Q the coefficients are ``Fraction``; over Q(sqrt d) they are
    ``QuadElem`` with the same tag. Trailing zeros are stripped, so the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "d")

    def __init__(self, coeffs: Iterable = (), d: Optional[int] = None):
        cs = list(coeffs)
        if d is None:
            for c in cs:
                t = field_tag(c)
                if t is not None:
                    d = t
                    break
        if d is None:
            cs = [Fraction(c) for c in cs]
        else:
            out = []
            for c in cs:
                if isinstance(c, QuadElem):
                    if c.d != d:
                        raise FieldMismatch(f"coefficient in Q(sqrt {c.d}) for Q(sqrt {d}) polynomial")
                    out.append(c)
                else:
                    out.append(QuadElem(c, 0, d))
            cs = out
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.d = d

    # constructors ------------------------------------------------------
    @classmethod
    def x(cls, d: Optional[int] = None) -> "Poly":
        return cls([0, 1], d)

    @classmethod
    def const(cls, c, d: Optional[int] = None) -> "Poly":
        return cls([c], d)

    @classmethod
    def from_roots(cls, roots: Sequence, d: Optional[int] = None) -> "Poly":
        out = cls([1], d)
        for r in roots:
            out = out * cls([-r, 1], d)
        return out

    # basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def field(self) -> str:
        return _field_label(self.d)

    def zero(self):
        return Fraction(0) if self.d is None else QuadElem(0, 0, self.d)

    def one(self):
        return Fraction(1) if self.d is None else QuadElem(1, 0, self.d)

    def is_rational(self) -> bool:
        return self.d is None or all(c.b == 0 for c in self.coeffs)

    def to_rational(self) -> "Poly":
        if self.d is None:
            return self
        if not self.is_rational():
            raise FieldMismatch("polynomial has irrational coefficients")
        return Poly([c.a for c in self.coeffs])

    def over(self, d: Optional[int]) -> "Poly":
        """View a rational polynomial over Q(sqrt d)."""
        if d == self.d:
            return self
        if d is None:
            return self.to_rational()
        if self.d is not None:
            raise FieldMismatch(f"cannot move {self.field()} polynomial to {_field_label(d)}")
        return Poly([QuadElem(c, 0, d) for c in self.coeffs], d)

    def conj(self) -> "Poly":
        if self.d is None:
            return self
        return Poly([c.conj() for c in self.coeffs], self.d)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly") -> Optional[int]:
        if self.d == other.d:
            return self.d
        raise FieldMismatch(f"{self.field()} vs {other.field()}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], self.d)

    def __add__(self, other):
        other = self._lift(other)
        d = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.zero()
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], d)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.d)
        d = self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly([], d)
        out = [self.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly([1], self.d), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        d = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dg = other.degree
        inv = 1 / other.lc
        q = [self.zero()] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1 - dg, -1, -1):
            c = rem[k + dg] * inv
            q[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(q, d), Poly(rem[:dg] if dg > 0 else [], d)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        if isinstance(c, Poly):
            q, r = divmod(self, c)
            if not r.is_zero():
                raise ValueError("inexact polynomial division")
            return q
        inv = 1 / c
        return Poly([x * inv for x in self.coeffs], self.d)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.d == other.d and self.coeffs == other.coeffs
        if self.degree <= 0:
            return (self.coeffs[0] if self.coeffs else 0) == other
        return False

    def __hash__(self):
        return hash((self.coeffs, self.d))

    # calculus / evaluation ------------------------------------------------
    def __call__(self, x):
        acc = self.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.d)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lc

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly([], self.d)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def shift(self, k) -> "Poly":
        """f(x + k)."""
        return self.compose(Poly([k, 1], self.d))

    def scale_var(self, c) -> "Poly":
        """f(c x)."""
        return self.compose(Poly([0, c], self.d))

    # rational helpers ---------------------------------------------------------
    def integer_primitive(self) -> list[int]:
        """Primitive integer coefficients of a rational polynomial, positive lc."""
        p = self.to_rational()
        if p.is_zero():
            return []
        den = lcm(*(c.denominator for c in p.coeffs))
        ints = [int(c * den) for c in p.coeffs]
        from math import gcd
        g = 0
        for c in ints:
            g = gcd(g, c)
        ints = [c // g for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return ints

    # printing -----------------------------------------------------------------
    def __repr__(self):
        return f"Poly({self})" if self.d is None else f"Poly({self}, d={self.d})"

    def __str__(self, var: str = "x"):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if isinstance(c, QuadElem) and not c.is_rational() and not mono:
                # constant term: emit a and b*sqrt(d) as separate signed parts
                if c.a != 0:
                    parts.append((c.a < 0, str(abs(c.a))))
                b = abs(c.b)
                root = f"sqrt({c.d})"
                parts.append((c.b < 0, root if b == 1 else
                              (f"{b}*{root}" if b.denominator == 1 else f"({b})*{root}")))
                continue
            if isinstance(c, QuadElem) and not c.is_rational():
                body = f"({c})" if mono else str(c)
                if c.a == 0 and str(c).startswith("-"):
                    neg, body = True, (f"({-c})" if mono else str(-c))
                else:
                    neg = False
                parts.append((neg, body + mono))
                continue
            r = c.a if isinstance(c, QuadElem) else c
            neg = r < 0
            r = abs(r)
            if mono and r == 1:
                body = mono
            elif mono:
                body = f"{r}{mono}" if r.denominator == 1 else f"({r}){mono}"
            else:
                body = str(r)
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out


def poly_arith(f: Poly, g: Poly, op: str):
    """Named dispatch for add, sub, mul, divmod (a pair) and gcd."""
    ops = {"add": lambda: f + g, "sub": lambda: f - g, "mul": lambda: f * g,
           "divmod": lambda: divmod(f, g), "gcd": lambda: poly_gcd(f, g)}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op]()


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    f._check(g)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: Poly) -> Poly:
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def resultant(f: Poly, g: Poly) -> Scalar:
    """Res(f, g) = lc(f)^deg g * prod g(roots of f), by the Euclidean recursion."""
    f._check(g)
    if f.is_zero() or g.is_zero():
        return f.zero()
    sign_acc = f.one()
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return sign_acc * g.lc ** m
        r = f % g
        if r.is_zero():
            return f.zero()
        if (m * n) % 2:
            sign_acc = -sign_acc
        sign_acc = sign_acc * g.lc ** (m - r.degree)
        f, g = g, r


def discriminant(f: Poly) -> Scalar:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f); equals -4b^3 - 27c^2 on x^3 + bx + c."""
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = resultant(f, f.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * r / f.lc


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = Poly([-1] + [0] * (n - 1) + [1])
    for k in range(1, n):
        if n % k == 0:
            num = num // cyclotomic_poly(k)
    return num


# ---------------------------------------------------------------------------
# text format

class PolyParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


class _Parser:
    """Recursive-descent parser for sums/products/powers in one variable.

    Accepted: integers, decimals are rejected, ``a/b`` rationals via
    division by constants, ``x`` (or any single letter given as ``var``),
    ``^`` or ``**`` with nonnegative integer exponents, parentheses,
    implicit multiplication (``3x``, ``2(x+1)``) and ``sqrt(d)`` for the
    generator of a quadratic ground field.
    """

    def __init__(self, text: str, d: Optional[int], var: str):
        self.s = text
        self.i = 0
        self.d = d
        self.var = var

    def error(self, msg: str):
        raise PolyParseError(msg, self.i, self.s)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self) -> Poly:
        ch = self.peek()
        neg = False
        if ch in "+-":
            neg = ch == "-"
            self.i += 1
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek() in ("+", "-") and self.peek():
            op = self.s[self.i]
            self.i += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while True:
            ch = self.peek()
            if ch == "*" and not self.s.startswith("**", self.i):
                self.i += 1
                acc = acc * self.power()
            elif ch == "/":
                self.i += 1
                pos = self.i
                den = self.power()
                if den.degree != 0:
                    self.i = pos
                    self.error("division only by nonzero constants")
                acc = acc / den.coeffs[0]
            elif ch and (ch.isdigit() or ch.isalpha() or ch == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> Poly:
        base = self.atom()
        self.ws()
        if self.s.startswith("**", self.i):
            self.i += 2
        elif self.peek() == "^":
            self.i += 1
        else:
            return base
        self.ws()
        start = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected a nonnegative integer exponent")
        return base ** int(self.s[start:self.i])

    def atom(self) -> Poly:
        ch = self.peek()
        if not ch:
            self.error("unexpected end of input")
        if ch == "(":
            self.i += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            return inner
        if ch.isdigit():
            start = self.i
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            if self.i < len(self.s) and self.s[self.i] == ".":
                self.error("decimal literals are not exact; use a/b")
            return Poly([int(self.s[start:self.i])], self.d)
        if self.s.startswith("sqrt", self.i):
            self.i += 4
            if self.peek() == "(":
                self.i += 1
                self.ws()
                start = self.i
                while self.i < len(self.s) and self.s[self.i].isdigit():
                    self.i += 1
                if start == self.i:
                    self.error("expected integer under sqrt")
                n = int(self.s[start:self.i])
                if self.peek() != ")":
                    self.error("expected ')'")
                self.i += 1
            else:
                start = self.i
                while self.i < len(self.s) and self.s[self.i].isdigit():
                    self.i += 1
                if start == self.i:
                    self.error("expected integer after sqrt")
                n = int(self.s[start:self.i])
            if n != self.d:
                self.error(f"sqrt({n}) outside ground field Q(sqrt({self.d}))")
            return Poly([QuadElem(0, 1, n)], n)
        if ch.lower() == self.var.lower():
            self.i += 1
            return Poly.x(self.d)
        self.error(f"unexpected {ch!r}")


def parse_poly(text: str, d: Optional[int] = None, var: str = "x") -> Poly:
    """Parse e.g. ``"x^3 - 3x + 3"`` or ``"x^3 - 3x + 3 + sqrt(3)"``."""
    if d is None:
        m = re.search(r"sqrt\s*\(?\s*(\d+)", text)
        if m:
            d = int(m.group(1))
    return _Parser(text, d, var).parse()
