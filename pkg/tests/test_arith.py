"""Exact scalars, polynomials, parsing and irreducibility certificates."""
from decimal import Decimal, getcontext
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import fractions, int_coeffs
from realrad.irreducible import (IRREDUCIBLE, REDUCIBLE, fp_is_irreducible,
                                 irreducibility_certificate, irreducibility_certificate_quadratic,
                                 rational_roots, verify_certificate)
from realrad.poly import (FieldMismatch, Poly, PolyParseError, cyclotomic_poly, discriminant, poly_arith,
                          parse_poly, resultant)
from realrad.quadfield import QuadElem, iroot, is_prime, is_pth_power, sign, sqrt_in_field

getcontext().prec = 80

quad = st.builds(lambda a, b, d: QuadElem(a, b, d), fractions, fractions, st.just(3))


def _decimal(x: QuadElem) -> Decimal:
    a, b = Fraction(x.a), Fraction(x.b)
    return (Decimal(a.numerator) / Decimal(a.denominator)
            + Decimal(b.numerator) / Decimal(b.denominator) * Decimal(x.d).sqrt())


# --- scalars -----------------------------------------------------------------------------

@given(st.integers(0, 10 ** 30), st.integers(1, 7))
def test_iroot_brackets(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


def test_is_prime_against_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 2000):
        if sieve[i]:
            for j in range(i * i, 2000, i):
                sieve[j] = False
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if sieve[n]]


@given(quad, quad, quad)
def test_quadratic_field_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0


@given(quad)
def test_quadratic_inverse(x):
    if x != 0:
        assert x * x.inverse() == 1
        assert x.norm() == x * x.conj()


@given(quad)
def test_sign_matches_high_precision_decimal(x):
    approx = _decimal(x)
    if abs(approx) > Decimal(10) ** -60:
        assert sign(x) == (1 if approx > 0 else -1)
    if x == 0:
        assert sign(x) == 0


@given(quad)
def test_sqrt_in_field_of_squares(x):
    r = sqrt_in_field(x * x, 3)
    assert r is not None and r * r == x * x and sign(r) >= 0


def test_sqrt_in_field_rejects_nonsquares():
    assert sqrt_in_field(QuadElem(2, 0, 3), 3) is None
    assert sqrt_in_field(QuadElem(0, 1, 3), 3) is None
    assert sqrt_in_field(QuadElem(-1, 0, 3), 3) is None
    assert sqrt_in_field(QuadElem(3, 0, 3), 3) == QuadElem(0, 1, 3)
    assert sqrt_in_field(QuadElem(7, 4, 3), 3) == QuadElem(2, 1, 3)


@given(fractions, st.sampled_from([2, 3, 5]))
def test_is_pth_power_roundtrip(r, p):
    assert is_pth_power(r ** p, p) ** p == r ** p


# --- polynomials -------------------------------------------------------------------------

@given(int_coeffs(0, 5), int_coeffs(1, 3))
def test_divmod_identity(a, b):
    f, g = Poly(a), Poly(b)
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


def _sylvester_resultant(f: Poly, g: Poly) -> Fraction:
    """Determinant of the Sylvester matrix by fraction Gaussian elimination."""
    m, n = f.degree, g.degree
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    size = m + n
    rows = [[Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i) for i in range(n)]
    rows += [[Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i) for i in range(m)]
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, size):
            k = rows[r][c] / rows[c][c]
            rows[r] = [x - k * y for x, y in zip(rows[r], rows[c])]
    return det


@given(int_coeffs(1, 4), int_coeffs(1, 4))
def test_resultant_matches_sylvester_determinant(a, b):
    f, g = Poly(a), Poly(b)
    assert resultant(f, g) == _sylvester_resultant(f, g)


@given(st.lists(fractions, min_size=2, max_size=4, unique=True))
def test_discriminant_from_roots(roots):
    f = Poly.from_roots(roots)
    expected = Fraction(1)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            expected *= (roots[i] - roots[j]) ** 2
    assert discriminant(f) == expected


def test_discriminant_examples():
    assert discriminant(parse_poly("x^3 - 3x + 3")) == -135
    assert discriminant(parse_poly("x^3 - 6x + 2")) == 756
    assert discriminant(parse_poly("x^3 - 2")) == -108


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(5) == parse_poly("x^4 + x^3 + x^2 + x + 1")
    assert cyclotomic_poly(12) == parse_poly("x^4 - x^2 + 1")
    prod = Poly([1])
    for k in (1, 2, 3, 4, 6, 12):
        prod = prod * cyclotomic_poly(k)
    assert prod == parse_poly("x^12 - 1")


# --- parsing -----------------------------------------------------------------------------

@given(int_coeffs(0, 6))
def test_parse_roundtrip_rational(a):
    f = Poly(a)
    assert parse_poly(str(f)) == f


@given(st.lists(quad, min_size=1, max_size=4).filter(lambda cs: cs[-1] != 0))
def test_parse_roundtrip_quadratic(cs):
    f = Poly(cs, 3)
    assert parse_poly(str(f), 3) == f


def test_parse_forms():
    assert parse_poly("(x^3 - 3x + 3)^2 - 3") == parse_poly("x^6 - 6x^4 + 6x^3 + 9x^2 - 18x + 6")
    assert parse_poly("X^2 - 1/2") == Poly([Fraction(-1, 2), 0, 1])
    f = parse_poly("x^3 - 3x + 3 - sqrt(3)")
    assert f.d == 3 and f.coeffs[0] == QuadElem(3, -1, 3)
    assert parse_poly("2*x*x") == parse_poly("2x^2")


@pytest.mark.parametrize("text,pos", [("x^3 + (2", 7), ("x^^2", 2), ("x + y", 4), ("", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(PolyParseError) as err:
        parse_poly(text)
    assert abs(err.value.pos - pos) <= 1


def test_parse_rejects_foreign_sqrt():
    with pytest.raises((PolyParseError, FieldMismatch)):
        parse_poly("x^2 - sqrt(2)", 3)


# --- rational roots and irreducibility ---------------------------------------------------

def _brute_rational_roots(ints: list[int]) -> set[Fraction]:
    out = set()
    if ints[0] == 0:
        out.add(Fraction(0))
        while ints[0] == 0:
            ints = ints[1:]
    if len(ints) == 1:
        return out
    divs = lambda n: [k for k in range(1, abs(n) + 1) if n % k == 0]
    for p in divs(ints[0]):
        for q in divs(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    out.add(r)
    return out


@given(int_coeffs(1, 5))
def test_rational_roots_brute_force(a):
    assert set(rational_roots(Poly(a))) == _brute_rational_roots(list(a))


def _has_factor_mod_p(ints: list[int], p: int) -> bool:
    """Brute force: does some monic polynomial of degree 1..n/2 divide f mod p."""
    f = [c % p for c in ints]
    n = len(f) - 1
    for k in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=k):
            g = list(tail) + [1]
            r = f[:]
            for i in range(n - k, -1, -1):
                c = r[i + k] * pow(g[-1], -1, p) % p
                for j in range(k + 1):
                    r[i + j] = (r[i + j] - c * g[j]) % p
            if not any(r[:k]):
                return True
    return False


@given(st.lists(st.integers(0, 4), min_size=2, max_size=5), st.sampled_from([2, 3, 5]))
def test_fp_irreducible_brute_force(tail, p):
    ints = tail + [1]
    assert fp_is_irreducible(ints, p) == (not _has_factor_mod_p(ints, p))


@given(int_coeffs(1, 3), int_coeffs(1, 3))
def test_certificate_never_claims_product_irreducible(a, b):
    f = Poly(a) * Poly(b)
    cert = irreducibility_certificate(f)
    assert cert.status != IRREDUCIBLE
    if cert.status == REDUCIBLE:
        assert verify_certificate(f, cert)


@pytest.mark.parametrize("text,method,prime", [
    ("x^3 - 6x + 2", "Eisenstein", 2),
    ("x^3 - 3x + 3", "Eisenstein", 3),
    ("(x^3 - 3x + 3)^2 - 3", "Eisenstein", 3),
    ("x^4 + 1", None, None),
    ("x^4 - x - 1", None, None),
])
def test_known_irreducible(text, method, prime):
    f = parse_poly(text)
    cert = irreducibility_certificate(f)
    assert cert.status == IRREDUCIBLE and verify_certificate(f, cert)
    if method:
        assert cert.method == method and cert.prime == prime


def test_reducible_reports_factor():
    cert = irreducibility_certificate(parse_poly("x^4 - 1"))
    assert cert.status == REDUCIBLE and cert.factor == parse_poly("x - 1")
    cert = irreducibility_certificate(parse_poly("x^4 + 4"))
    assert cert.status == REDUCIBLE and (parse_poly("x^4 + 4") % cert.factor).is_zero()


def test_quadratic_field_certificates():
    u = parse_poly("x^3 - 3x + 3 + sqrt(3)")
    cert = irreducibility_certificate_quadratic(u)
    assert cert.status == IRREDUCIBLE
    split = parse_poly("x^2 - 3", 3)
    assert irreducibility_certificate_quadratic(split).status != IRREDUCIBLE


def test_poly_arith_dispatch():
    f, g = parse_poly("x^3 - 1"), parse_poly("x^2 - 1")
    assert poly_arith(f, g, "gcd") == parse_poly("x - 1")
    q, r = poly_arith(f, g, "divmod")
    assert q * g + r == f
    assert poly_arith(f, g, "sub") == parse_poly("x^3 - x^2")
    with pytest.raises(ValueError):
        poly_arith(f, g, "pow")
