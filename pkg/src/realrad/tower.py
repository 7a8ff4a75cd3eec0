"""Real radical towers: symbolic expressions over Q or Q(sqrt d) built
from successively adjoined real n-th roots, verified with outward-rounded
interval arithmetic against exactly isolated roots."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .interval import Interval, as_interval, eval_poly
from .irreducible import rational_roots
from .poly import Poly, discriminant
from .quadfield import QuadElem, iroot, is_prime, prime_factors, sign, sqrt_in_field
from .realroots import IsolatingInterval, count_real_roots, isolate_real_roots, refine

VERIFY_WIDTH = Fraction(1, 2 ** 30)
MAX_BITS = 4096


class TowerError(ValueError):
    pass


class PrecisionError(ArithmeticError):
    """Interval evaluation could not decide a sign at the current precision."""


# --- expressions ---------------------------------------------------------------------

class Expr:
    def __add__(self, o):
        return add(self, lift(o))

    def __radd__(self, o):
        return add(lift(o), self)

    def __sub__(self, o):
        return add(self, neg(lift(o)))

    def __rsub__(self, o):
        return add(lift(o), neg(self))

    def __mul__(self, o):
        return mul(self, lift(o))

    def __rmul__(self, o):
        return mul(lift(o), self)

    def __truediv__(self, o):
        return mul(self, inv(lift(o)))

    def __rtruediv__(self, o):
        return mul(lift(o), inv(self))

    def __neg__(self):
        return neg(self)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: object  # Fraction or QuadElem

    def __str__(self):
        v = self.value
        if isinstance(v, QuadElem):
            return f"({v})" if v.b != 0 and v.a != 0 else str(v)
        return str(v) if v.denominator == 1 else f"({v})"


@dataclass(frozen=True, eq=True)
class Ref(Expr):
    step: int

    def __str__(self):
        return f"a{self.step + 1}"


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr

    def __str__(self):
        r = self.right
        if isinstance(r, Neg):
            return f"{self.left} - {_paren(r.arg, Add)}"
        if isinstance(r, Mul) and _is_const(r.left) and sign(r.left.value) < 0:
            return f"{self.left} - {mul(lift(-r.left.value), r.right)}"
        if _is_const(r) and sign(r.value) < 0:
            return f"{self.left} - {lift(-r.value)}"
        return f"{self.left} + {r}"


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def __str__(self):
        if isinstance(self.right, Inv):
            return f"{_paren(self.left, Add, Neg)}/{_paren(self.right.arg, Add, Mul, Neg, Inv)}"
        return f"{_paren(self.left, Add, Neg)}*{_paren(self.right, Add, Neg)}"


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr

    def __str__(self):
        return f"-{_paren(self.arg, Add, Neg)}"


@dataclass(frozen=True, eq=True)
class Inv(Expr):
    arg: Expr

    def __str__(self):
        return f"1/{_paren(self.arg, Add, Mul, Neg, Inv)}"


def _paren(e: Expr, *kinds) -> str:
    return f"({e})" if isinstance(e, kinds) else str(e)


def lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, QuadElem):
        return Const(x.a if x.b == 0 else x)
    return Const(Fraction(x))


def _is_const(e, value=None) -> bool:
    return isinstance(e, Const) and (value is None or e.value == value)


def add(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return lift(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return lift(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return Const(Fraction(0))
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(b) and not _is_const(a):
        a, b = b, a
    if _is_const(a):
        if isinstance(b, Neg):
            return mul(lift(-a.value), b.arg)
        if isinstance(b, Mul) and _is_const(b.left):
            return mul(lift(a.value * b.left.value), b.right)
    return Mul(a, b)


def neg(a: Expr) -> Expr:
    if _is_const(a):
        return lift(-a.value)
    if isinstance(a, Neg):
        return a.arg
    if isinstance(a, Mul) and _is_const(a.left):
        return mul(lift(-a.left.value), a.right)
    return Neg(a)


def inv(a: Expr) -> Expr:
    if _is_const(a):
        if a.value == 0:
            raise ZeroDivisionError("division by zero in radical expression")
        return lift(1 / a.value)
    if isinstance(a, Inv):
        return a.arg
    return Inv(a)


def remap(e: Expr, fn) -> Expr:
    """Rebuild ``e`` with ``fn`` applied to every Ref and Const leaf."""
    if isinstance(e, (Ref, Const)):
        return fn(e)
    if isinstance(e, Add):
        return add(remap(e.left, fn), remap(e.right, fn))
    if isinstance(e, Mul):
        return mul(remap(e.left, fn), remap(e.right, fn))
    if isinstance(e, Neg):
        return neg(remap(e.arg, fn))
    return inv(remap(e.arg, fn))


def refs(e: Expr) -> set[int]:
    if isinstance(e, Ref):
        return {e.step}
    if isinstance(e, Const):
        return set()
    if isinstance(e, (Add, Mul)):
        return refs(e.left) | refs(e.right)
    return refs(e.arg)


def eval_interval(e: Expr, steps: Sequence[Interval], bits: int) -> Interval:
    if isinstance(e, Const):
        return as_interval(e.value, bits + 8).rounded(bits + 8)
    if isinstance(e, Ref):
        return steps[e.step]
    if isinstance(e, Add):
        out = eval_interval(e.left, steps, bits) + eval_interval(e.right, steps, bits)
    elif isinstance(e, Mul):
        out = eval_interval(e.left, steps, bits) * eval_interval(e.right, steps, bits)
    elif isinstance(e, Neg):
        out = -eval_interval(e.arg, steps, bits)
    else:
        x = eval_interval(e.arg, steps, bits)
        if x.sign() == 0:
            raise PrecisionError("cannot invert an interval containing zero")
        out = x.reciprocal()
    return out.rounded(bits + 8)


# --- towers -----------------------------------------------------------------------------

_ROOT_NAMES = {2: "sqrt", 3: "cbrt"}


@dataclass(frozen=True)
class Step:
    index: int
    radicand: Expr

    def describe(self, i: int) -> str:
        name = _ROOT_NAMES.get(self.index, f"root{self.index}")
        return f"a{i + 1} = {name}({self.radicand})"


@dataclass
class TowerCheck:
    ok: bool
    bits: int
    root: Interval
    value: Interval
    isolating: Optional[IsolatingInterval]
    radicand_signs: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "bits": self.bits,
                "root_interval": [str(self.root.lo), str(self.root.hi)],
                "root_width_log2_bound": -30,
                "f_interval": [str(self.value.lo), str(self.value.hi)],
                "f_contains_zero": self.value.contains(0)}


class RadicalTower:
    """Real radicals a_1, ..., a_k adjoined to the ground field in order, and
    an expression for a root of ``poly`` in terms of them. Step i is the
    real n-th root of its radicand (the positive one for even n)."""

    def __init__(self, d: Optional[int] = None):
        self.d = d
        self.steps: list[Step] = []
        self.root: Optional[Expr] = None
        self.poly: Optional[Poly] = None
        self.root_index: Optional[int] = None

    def copy(self) -> "RadicalTower":
        t = RadicalTower(self.d)
        t.steps = list(self.steps)
        t.root, t.poly, t.root_index = self.root, self.poly, self.root_index
        return t

    # construction -------------------------------------------------------------
    def adjoin(self, n: int, radicand) -> Expr:
        """Expression for the real n-th root of ``radicand``, adding a step only
        when the root is not already a ground-field multiple of a simpler radical."""
        if n < 2:
            raise TowerError("root index must be at least 2")
        rad = lift(radicand)
        if isinstance(rad, Const):
            return self._adjoin_const(n, rad.value)
        if isinstance(rad, Mul) and isinstance(rad.left, Const):
            c = rad.left.value
            k = _exact_rational_root(c, n)
            if k is not None and k > 0:
                return mul(lift(k), self.adjoin(n, rad.right))
        self.steps.append(Step(n, rad))
        return Ref(len(self.steps) - 1)

    def _adjoin_const(self, n: int, c) -> Expr:
        if c == 0:
            return Const(Fraction(0))
        if isinstance(c, QuadElem):
            if c.b == 0:
                c = c.a
            else:
                if n == 2:
                    r = sqrt_in_field(c)
                    if r is not None:
                        return lift(r)
                self.steps.append(Step(n, Const(c)))
                return Ref(len(self.steps) - 1)
        c = Fraction(c)
        if n % 2 == 0 and c < 0:
            raise TowerError("even root of a negative number is not real")
        k = _exact_rational_root(c, n)
        if k is not None:
            return lift(k)
        # c = num/den = num*den^(n-1) / den^n; pull n-th powers out of the integer
        s = -1 if c < 0 else 1
        num, den = abs(c.numerator), c.denominator
        outer, inner = _extract_power(num * den ** (n - 1), n)
        coeff = Fraction(s * outer, den)
        self.steps.append(Step(n, Const(Fraction(inner))))
        return mul(lift(coeff), Ref(len(self.steps) - 1))

    # evaluation -------------------------------------------------------------------
    def step_intervals(self, bits: int) -> list[Interval]:
        vals: list[Interval] = []
        for st in self.steps:
            r = eval_interval(st.radicand, vals, bits)
            if st.index % 2 == 0:
                if r.sign() <= 0:
                    if r.hi < 0:
                        raise TowerError("even root of a negative radicand")
                    raise PrecisionError("radicand sign undecided")
            vals.append(r.root(st.index, bits + 8))
        return vals

    def evaluate(self, expr: Optional[Expr] = None, bits: int = 64) -> Interval:
        expr = self.root if expr is None else expr
        return eval_interval(expr, self.step_intervals(bits), bits)

    def radicand_signs(self, bits: int = 128) -> list[int]:
        vals: list[Interval] = []
        out = []
        for st in self.steps:
            r = eval_interval(st.radicand, vals, bits)
            out.append(r.sign())
            if st.index % 2 == 0 and r.sign() <= 0:
                raise PrecisionError("radicand sign undecided")
            vals.append(r.root(st.index, bits + 8))
        return out

    def verify(self, width: Fraction = VERIFY_WIDTH) -> TowerCheck:
        """Evaluate the root expression until its enclosure and the enclosure of
        poly(root) are both at most ``width`` wide; succeed if the latter
        contains 0 and the former meets the isolating interval of the
        intended root and no other."""
        if self.root is None or self.poly is None:
            raise TowerError("tower has no target root")
        isos = isolate_real_roots(self.poly, width=width)
        bits = 64
        while bits <= MAX_BITS:
            try:
                vals = self.step_intervals(bits)
                x = eval_interval(self.root, vals, bits)
                y = eval_poly(self.poly, x, bits)
            except PrecisionError:
                bits *= 2
                continue
            if x.width <= width and y.width <= width:
                hits = [i for i, iv in enumerate(isos) if not (x.hi < iv.lo or x.lo > iv.hi)]
                iso = isos[self.root_index] if self.root_index is not None else None
                ok = y.contains(0) and (self.root_index is None or hits == [self.root_index])
                signs = [1 if st.index % 2 == 0 else 0 for st in self.steps]
                return TowerCheck(ok, bits, x, y, iso, signs)
            bits *= 2
        raise TowerError("verification did not converge")

    # transformations -----------------------------------------------------------------
    def normalized(self) -> "RadicalTower":
        """Equivalent tower in which every index is prime: an n = p*m step is
        replaced by a p-th root followed by an m-th root of it (smallest p first)."""
        out = RadicalTower(self.d)
        where: dict[int, Expr] = {}

        def fix(e: Expr) -> Expr:
            return remap(e, lambda leaf: where[leaf.step] if isinstance(leaf, Ref) else leaf)

        for i, st in enumerate(self.steps):
            rad = fix(st.radicand)
            n = st.index
            cur = rad
            while not is_prime(n):
                p = min(prime_factors(n))
                out.steps.append(Step(p, cur))
                cur = Ref(len(out.steps) - 1)
                n //= p
            out.steps.append(Step(n, cur))
            where[i] = Ref(len(out.steps) - 1)
        out.root = fix(self.root) if self.root is not None else None
        out.poly, out.root_index = self.poly, self.root_index
        return out

    def over_rationals(self) -> "RadicalTower":
        """The same tower over Q, with sqrt(d) adjoined as the first step."""
        if self.d is None:
            return self.copy()
        d = self.d
        out = RadicalTower(None)
        out.steps.append(Step(2, Const(Fraction(d))))

        def fix(leaf):
            if isinstance(leaf, Ref):
                return Ref(leaf.step + 1)
            v = leaf.value
            if isinstance(v, QuadElem):
                return add(lift(v.a), mul(lift(v.b), Ref(0)))
            return leaf

        for st in self.steps:
            out.steps.append(Step(st.index, remap(st.radicand, fix)))
        out.root = remap(self.root, fix) if self.root is not None else None
        out.poly, out.root_index = self.poly, self.root_index
        return out

    # output -----------------------------------------------------------------------------
    @property
    def indices(self) -> list[int]:
        return [s.index for s in self.steps]

    def describe(self) -> list[str]:
        ground = "Q" if self.d is None else f"Q(sqrt({self.d}))"
        lines = [f"ground field {ground}"]
        lines += [st.describe(i) for i, st in enumerate(self.steps)]
        if self.root is not None:
            lines.append(f"root = {self.root}")
        return lines

    def to_json(self) -> dict:
        return {
            "ground_field": "Q" if self.d is None else f"Q(sqrt({self.d}))",
            "steps": [{"index": st.index, "radicand": str(st.radicand), "real": True}
                      for st in self.steps],
            "root": None if self.root is None else str(self.root),
        }


def _exact_rational_root(c, n: int) -> Optional[Fraction]:
    if isinstance(c, QuadElem):
        if c.b != 0:
            return None
        c = c.a
    c = Fraction(c)
    if c < 0:
        if n % 2 == 0:
            return None
        r = _exact_rational_root(-c, n)
        return None if r is None else -r
    rn, rd = iroot(c.numerator, n), iroot(c.denominator, n)
    if rn ** n == c.numerator and rd ** n == c.denominator:
        return Fraction(rn, rd)
    return None


def _extract_power(m: int, n: int) -> tuple[int, int]:
    """m = outer^n * inner with inner free of n-th powers (as far as factoring allows)."""
    ps = prime_factors(m) if m > 1 else []
    if ps is None:
        return 1, m
    outer, inner = 1, m
    for p in ps:
        e = 0
        while inner % p == 0:
            inner //= p
            e += 1
        outer *= p ** (e // n)
        inner *= p ** (e % n)
    return outer, inner


# --- constructions -------------------------------------------------------------------------

def _monic(f: Poly) -> Poly:
    return f.monic()


def _ground(f: Poly) -> Optional[int]:
    return f.d


def cardano_real_root(tower: RadicalTower, coeffs: Sequence) -> Expr:
    """Expression for the unique real root of z^3 + c2 z^2 + c1 z + c0
    (negative discriminant), adjoining a square root and a cube root."""
    c0, c1, c2 = coeffs
    shift = c2 / 3
    P = c1 - c2 * c2 / 3
    Q = 2 * c2 ** 3 / 27 - c2 * c1 / 3 + c0
    s2 = Q * Q / 4 + P ** 3 / 27
    if sign(s2) <= 0:
        raise TowerError("cubic has three real roots; no real Cardano tower")
    s = tower.adjoin(2, s2)
    A = lift(-Q / 2) + s
    if _is_const(A, 0):
        A = lift(-Q / 2) - s
    w = tower.adjoin(3, A)
    y = w if P == 0 else w - lift(P / 3) * inv(w)
    return y - lift(shift)


def build_cubic_tower(f: Poly) -> RadicalTower:
    """Real Cardano tower for the real root of a cubic with negative discriminant."""
    if f.degree != 3:
        raise TowerError("cubic expected")
    if sign(discriminant(f)) >= 0:
        raise TowerError("discriminant is not negative: the cubic has three real roots")
    g = _monic(f)
    t = RadicalTower(_ground(f))
    t.root = cardano_real_root(t, g.coeffs[:3])
    t.poly, t.root_index = f, 0
    return t


def _choose(t: RadicalTower, cands: Sequence[Expr], target) -> Expr:
    """The unique candidate whose enclosure meets target(bits)."""
    bits = 64
    while bits <= MAX_BITS:
        try:
            vals = t.step_intervals(bits)
            encl = [eval_interval(c, vals, bits) for c in cands]
        except PrecisionError:
            bits *= 2
            continue
        tgt = target(bits)
        hits = [c for c, e in zip(cands, encl) if not (e.hi < tgt.lo or e.lo > tgt.hi)]
        if len(hits) == 1:
            return hits[0]
        bits *= 2
    raise TowerError("could not separate the quadratic branches")


def _root_interval(iv: IsolatingInterval, bits: int) -> Interval:
    r = refine(iv, Fraction(1, 2 ** bits))
    return Interval(r.lo, r.hi)


def _pair_towers(f: Poly, t: RadicalTower, r: Expr, pair: tuple) -> list[RadicalTower]:
    """Towers for the two roots in ``pair`` (indices into the isolated real
    roots of f) whose product plus the product of the other two roots is r."""
    g = _monic(f)
    e, A, B = g.coeffs[0], g.coeffs[3], g.coeffs[2]
    isos = isolate_real_roots(f)
    i, j = pair

    def prod_target(bits):
        return _root_interval(isos[i], bits + 4) * _root_interval(isos[j], bits + 4)

    def sum_target(bits):
        return _root_interval(isos[i], bits + 4) + _root_interval(isos[j], bits + 4)

    # the pair product is a root of Z^2 - r Z + e
    s1 = t.adjoin(2, r * r - 4 * lift(e))
    cands = [(r + s1) / 2, (r - s1) / 2] if not _is_const(s1, 0) else [r / 2]
    prod = _choose(t, cands, prod_target) if len(cands) > 1 else cands[0]
    # the pair sum is a root of S^2 + A S + (B - r)
    s2 = t.adjoin(2, lift(A * A - 4 * B) + 4 * r)
    cands = [(-lift(A) + s2) / 2, (-lift(A) - s2) / 2] if not _is_const(s2, 0) else [-lift(A) / 2]
    total = _choose(t, cands, sum_target) if len(cands) > 1 else cands[0]
    s3 = t.adjoin(2, total * total - 4 * prod)
    out = []
    for idx, root in ((i, (total - s3) / 2), (j, (total + s3) / 2)):
        tw = t.copy()
        tw.root, tw.poly, tw.root_index = root, f, idx
        out.append(tw)
    return out


def build_quartic_tower(f: Poly) -> list[RadicalTower]:
    """Towers for the two real roots of a quartic with exactly two real roots.

    With roots a, b real and c, d non-real: r = ab + cd is the real root of
    the resolvent cubic; ab is a root of Z^2 - r Z + e; a + b is a root of
    S^2 + A S + (B - r); then a, b are the roots of Z^2 - (a+b) Z + ab.
    """
    from .galois import quartic_resolvent_cubic

    if f.degree != 4:
        raise TowerError("quartic expected")
    if count_real_roots(f) != 2:
        raise TowerError("quartic must have exactly two real roots")
    res = quartic_resolvent_cubic(_monic(f))
    if count_real_roots(res) != 1:
        raise TowerError("resolvent cubic has three real roots; this contradicts "
                         "two real roots of the quartic")
    t = RadicalTower(_ground(f))
    rat = rational_roots(res.to_rational()) if res.is_rational() else []
    r = lift(rat[0]) if rat else cardano_real_root(t, res.coeffs[:3])
    return _pair_towers(f, t, r, (0, 1))


def build_real_quartic_tower(f: Poly) -> list[RadicalTower]:
    """Towers for all four roots of a totally real rational quartic whose
    resolvent cubic has a rational root r (the 2-group case).

    r = x_i x_j + x_k x_l for one pairing of the roots; each pair is then
    recovered from its product and sum by square roots only."""
    from .galois import quartic_resolvent_cubic

    if f.degree != 4 or not f.is_rational():
        raise TowerError("rational quartic expected")
    if count_real_roots(f) != 4:
        raise TowerError("quartic must have four real roots")
    res = quartic_resolvent_cubic(_monic(f).to_rational())
    rat = rational_roots(res)
    if not rat:
        raise TowerError("resolvent cubic has no rational root")
    r = rat[0]
    isos = isolate_real_roots(f)
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    bits = 32
    while True:
        iv = [_root_interval(x, bits) for x in isos]
        hits = [pp for pp in pairings
                if (iv[pp[0][0]] * iv[pp[0][1]] + iv[pp[1][0]] * iv[pp[1][1]]).contains(r)]
        if len(hits) == 1:
            break
        if bits > MAX_BITS:
            raise TowerError("could not identify the root pairing")
        bits *= 2
    t = RadicalTower(None)
    towers = []
    for pair in hits[0]:
        towers += _pair_towers(f, t.copy(), lift(r), pair)
    return sorted(towers, key=lambda tw: tw.root_index)


def normalize_tower(t: RadicalTower) -> RadicalTower:
    """Equivalent tower with prime indices only."""
    return t.normalized()
