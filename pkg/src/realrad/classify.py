"""Decide, root by root, whether the real roots of an irreducible polynomial
over Q or a real quadratic field Q(sqrt d) lie in real repeated radical
extensions, and build verified radical towers where possible.

Theorem tags in verdicts:
  ThmA            irreducible, splits over R, degree (or splitting field
                  degree) not a power of 2: no real root is a real radical.
  ThmC            odd degree with two or more real roots: none of them is.
  Thm9.1          cubic with one real root: it is a real radical.
  Thm9.5          quartic with two real roots: both are real radicals.
  GaloisTwoGroup  totally real quartic with 2-group Galois group.
  Cor3.4          supporting tag: a Galois extension of 2-power degree is a
                  repeated quadratic extension.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .galois import galois_group_small_degree
from .irreducible import (IrreducibilityCertificate, REDUCIBLE, UNKNOWN,
                          irreducibility_certificate, irreducibility_certificate_quadratic)
from .poly import Poly, discriminant, parse_poly
from .quadfield import QuadElem, sqrt_in_field
from .realroots import IsolatingInterval, count_real_roots, cubic_three_root_criterion, isolate_real_roots
from .tower import (RadicalTower, TowerError, build_cubic_tower, build_quartic_tower,
                    build_real_quartic_tower, lift)

SCHEMA = 1

IN_REAL_RRE = "InRealRRE"
NOT_IN_REAL_RRE = "NotInRealRRE"
NO_REAL_ROOTS = "NoRealRoots"
UNSUPPORTED = "Unsupported"

OBSTRUCTION_PRESENT = "ObstructionPresent"
OBSTRUCTION_ABSENT = "ObstructionAbsent"


class ReducibleInput(ValueError):
    def __init__(self, cert: IrreducibilityCertificate):
        super().__init__(f"polynomial is reducible: factor {cert.factor}")
        self.certificate = cert


@dataclass
class RootStatus:
    interval: IsolatingInterval
    status: str
    theorem: Optional[str] = None
    supporting: tuple = ()
    reason: str = ""
    tower: Optional[RadicalTower] = None
    tower_check: Optional[object] = None

    def to_json(self) -> dict:
        out = {"interval": self.interval.as_json(), "approx": float(self.interval.mid),
               "status": self.status, "theorem": self.theorem,
               "supporting": list(self.supporting)}
        if self.reason:
            out["reason"] = self.reason
        if self.tower is not None:
            out["tower"] = self.tower.to_json()
            out["tower_check"] = self.tower_check.to_json()
        return out


@dataclass
class Verdict:
    polynomial: Poly
    ground: Optional[int]
    real_root_count: int
    roots: list
    certificates: dict = field(default_factory=dict)
    outcome: str = ""
    reason: str = ""

    @property
    def ground_field(self) -> str:
        return "Q" if self.ground is None else f"Q(sqrt({self.ground}))"

    @property
    def statuses(self) -> list[str]:
        return [r.status for r in self.roots]

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "polynomial": str(self.polynomial),
                "ground_field": self.ground_field, "outcome": self.outcome,
                "reason": self.reason, "real_root_count": self.real_root_count,
                "real_roots": [r.to_json() for r in self.roots],
                "certificates": dict(self.certificates)}


@dataclass(frozen=True)
class CubicObstruction:
    status: str
    discriminant: object
    ratio: object  # discriminant / -3

    def to_json(self) -> dict:
        return {"status": self.status, "discriminant": str(self.discriminant),
                "discriminant_over_minus_3": str(self.ratio)}


def cubic_radical_obstruction(f: Poly) -> CubicObstruction:
    """A cubic generating a repeated radical extension of a quasireal field
    has discriminant -3 m^2. Present means that form fails (certainly not
    radical); absent is inconclusive."""
    if f.degree != 3:
        raise ValueError("cubic expected")
    cert = _certificate(f)
    if cert.status == REDUCIBLE:
        raise ReducibleInput(cert)
    delta = discriminant(f.monic())
    ratio = delta / -3
    root = sqrt_in_field(ratio, f.d)
    return CubicObstruction(OBSTRUCTION_ABSENT if root is not None else OBSTRUCTION_PRESENT,
                            delta, ratio)


def _certificate(f: Poly) -> IrreducibilityCertificate:
    if f.d is None:
        return irreducibility_certificate(f)
    return irreducibility_certificate_quadratic(f)


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _with_towers(roots: list[RootStatus], towers: list[RadicalTower]) -> None:
    for tw in towers:
        st = roots[tw.root_index]
        st.tower = tw.normalized()
        st.tower_check = st.tower.verify()
        if not st.tower_check.ok:
            raise TowerError(f"tower for root {tw.root_index} failed verification")


def _linear_or_quadratic_towers(f: Poly) -> list[RadicalTower]:
    g = f.monic()
    if g.degree == 1:
        t = RadicalTower(f.d)
        t.root, t.poly, t.root_index = lift(-g.coeffs[0]), f, 0
        return [t]
    b, c = g.coeffs[1], g.coeffs[0]
    t = RadicalTower(f.d)
    s = t.adjoin(2, b * b - 4 * c)
    out = []
    for idx, root in ((0, (lift(-b) - s) / 2), (1, (lift(-b) + s) / 2)):
        tw = t.copy()
        tw.root, tw.poly, tw.root_index = root, f, idx
        out.append(tw)
    return out


def classify(f: Poly, d: Optional[int] = None, towers: bool = True, width=None) -> Verdict:
    if d is not None and f.d is None:
        f = f.over(d)
    if f.degree < 1:
        raise ValueError("polynomial of degree at least 1 expected")
    cert = _certificate(f)
    if cert.status == REDUCIBLE:
        raise ReducibleInput(cert)
    n = f.degree
    isos = isolate_real_roots(f, width)
    k = len(isos)
    certs: dict = {"irreducibility": cert.to_json()}
    if n >= 2:
        certs["discriminant"] = str(discriminant(f.monic()))
    roots = [RootStatus(iv, UNSUPPORTED) for iv in isos]
    v = Verdict(f, f.d, k, roots, certs)

    def mark(status, theorem=None, supporting=(), reason=""):
        for r in roots:
            r.status, r.theorem, r.supporting, r.reason = status, theorem, tuple(supporting), reason
        v.outcome, v.reason = status, reason

    if cert.status == UNKNOWN:
        mark(UNSUPPORTED, reason="irreducibility could not be certified")
        if k == 0:
            v.outcome = UNSUPPORTED
        return v
    if k == 0:
        v.outcome, v.reason = NO_REAL_ROOTS, "no real roots"
        return v
    if n <= 2:
        mark(IN_REAL_RRE, reason="root of a polynomial of degree at most 2")
        if towers:
            _with_towers(roots, _linear_or_quadratic_towers(f))
        return v
    if n == 3:
        certs["cubic_obstruction"] = cubic_radical_obstruction(f).to_json()
    if n % 2 == 1 and k >= 2:
        supporting = ("ThmA",) if k == n else ()
        mark(NOT_IN_REAL_RRE, "ThmC", supporting,
             f"odd degree {n} with {k} real roots")
        return v
    if n == 3 and k == 1:
        mark(IN_REAL_RRE, "Thm9.1", reason="cubic with exactly one real root")
        if towers:
            _with_towers(roots, [build_cubic_tower(f)])
        return v
    if n == 4 and k == 2:
        mark(IN_REAL_RRE, "Thm9.5", reason="quartic with exactly two real roots")
        if towers:
            _with_towers(roots, build_quartic_tower(f))
        return v
    if n == 4 and k == 4:
        if f.d is not None and not f.is_rational():
            mark(UNSUPPORTED, reason="Galois groups of quartics over Q(sqrt d) are not computed")
            return v
        gal = galois_group_small_degree(f.to_rational())
        certs["galois_group"] = gal.to_json()
        if gal.is_two_group:
            mark(IN_REAL_RRE, "GaloisTwoGroup", ("Cor3.4",),
                 f"splitting field has degree {gal.order}, a power of 2")
            if towers:
                _with_towers(roots, build_real_quartic_tower(f.to_rational()))
        else:
            mark(NOT_IN_REAL_RRE, "ThmA", ("Thm4.1",),
                 f"Galois group {gal.label}: splitting field degree {gal.order} is not a power of 2")
        return v
    if k == n and not _is_power_of_two(n):
        mark(NOT_IN_REAL_RRE, "ThmA", (), f"splits over R with degree {n}, not a power of 2")
        return v
    mark(UNSUPPORTED, reason=f"degree {n} with {k} real roots is outside the decided cases")
    return v


# --- worked example: (x^3 - 3x + 3)^2 - 3 ---------------------------------------------------

@dataclass
class SexticReport:
    polynomial: Poly
    irreducibility: IrreducibilityCertificate
    real_root_count: int
    u: Poly
    v: Poly
    factor_product_check: bool
    u_criterion: bool
    v_criterion: bool
    u_real_roots: int
    v_real_roots: int
    u_verdict: Verdict
    v_verdict: Verdict
    u_tower_over_q: RadicalTower
    u_tower_check: object
    roots_in_rre: int

    def lines(self) -> list[str]:
        out = [
            f"f = {self.polynomial}",
            f"irreducible over Q: {self.irreducibility.describe()}",
            f"real roots of f (Sturm): {self.real_root_count}",
            f"u = {self.u}",
            f"v = {self.v}",
            f"u * v == f exactly: {self.factor_product_check}",
            f"u: -2 < a < 2 with a = 3 + sqrt(3)? {self.u_criterion} -> {self.u_real_roots} real root(s)",
            f"v: -2 < a < 2 with a = 3 - sqrt(3)? {self.v_criterion} -> {self.v_real_roots} real root(s)",
            f"u over Q(sqrt(3)): {_summary(self.u_verdict)}",
            f"v over Q(sqrt(3)): {_summary(self.v_verdict)}",
            "tower over Q for the real root of u:",
        ]
        out += ["  " + line for line in self.u_tower_over_q.describe()]
        out.append(f"  verified against f at width 2^-30: {self.u_tower_check.ok}")
        out.append(f"real roots of f in a real repeated radical extension: "
                   f"{self.roots_in_rre} of {self.real_root_count}")
        return out

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "polynomial": str(self.polynomial),
                "irreducibility": self.irreducibility.to_json(),
                "real_root_count": self.real_root_count,
                "u": str(self.u), "v": str(self.v),
                "factor_product_check": self.factor_product_check,
                "u_criterion": self.u_criterion, "v_criterion": self.v_criterion,
                "u_real_roots": self.u_real_roots, "v_real_roots": self.v_real_roots,
                "u_verdict": self.u_verdict.to_json(), "v_verdict": self.v_verdict.to_json(),
                "u_tower_over_q": self.u_tower_over_q.to_json(),
                "u_tower_check": self.u_tower_check.to_json(),
                "roots_in_rre": self.roots_in_rre}


def _summary(v: Verdict) -> str:
    parts = [f"{r.status}({r.theorem})" if r.theorem else r.status for r in v.roots]
    return f"{v.real_root_count} real root(s): " + ", ".join(parts or [v.outcome])


def analyze_sextic_case_study() -> SexticReport:
    f = parse_poly("(x^3 - 3x + 3)^2 - 3")
    cert = irreducibility_certificate(f)
    k = count_real_roots(f)
    u = parse_poly("x^3 - 3x + 3 + sqrt(3)")
    v = parse_poly("x^3 - 3x + 3 - sqrt(3)")
    product_ok = (u * v) == f.over(3)
    s3 = QuadElem(0, 1, 3)
    uc, vc = cubic_three_root_criterion(3 + s3), cubic_three_root_criterion(3 - s3)
    uv, vv = classify(u), classify(v)
    # lift the tower of u's real root to Q and aim it at the matching root of f
    tw = uv.roots[0].tower.over_rationals()
    tw.poly = f
    u_iv = uv.roots[0].interval
    f_isos = isolate_real_roots(f)
    tw.root_index = next(i for i, iv in enumerate(f_isos)
                         if not (iv.hi < u_iv.lo or iv.lo > u_iv.hi))
    check = tw.verify()
    in_rre = sum(1 for r in uv.roots + vv.roots if r.status == IN_REAL_RRE)
    return SexticReport(f, cert, k, u, v, product_ok, uc, vc, uv.real_root_count,
                        vv.real_root_count, uv, vv, tw, check, in_rre)
