"""Galois data for the radical and cyclotomic families, and small-degree groups."""
import json

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from conftest import small_int
from realrad.galois import (DatumError, GaloisDatum, build_binomial, build_cyclotomic,
                            build_pure_radical, galois_group_small_degree, quartic_resolvent_cubic,
                            resolve_unit_subgroup, theorem_a_witness, unit_subgroup,
                            unit_subgroups_of_order, units)
from realrad.irreducible import irreducibility_certificate
from realrad.poly import Poly, parse_poly


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19])
def test_binomial_datum_shape(p):
    d = build_binomial(p, 2)
    assert d.G.order == p * (p - 1)
    assert d.U.order == p - 1 and d.N.order == p and d.M.order == 1
    assert d.quasireal and set(d.characters) == {p}
    # the character is the multiplier c of x -> cx + b, a surjection onto (Z/p)^x
    assert sorted(set(d.characters[p].values())) == list(range(1, p))


def test_binomial_rejects_bad_input():
    with pytest.raises(DatumError):
        build_binomial(5, 32)
    with pytest.raises((DatumError, ValueError)):
        build_binomial(4, 2)
    with pytest.raises((DatumError, ValueError)):
        build_binomial(23, 2)


def test_pure_radical_nine():
    d = build_pure_radical(9, 2)
    assert (d.G.order, d.U.order, d.N.order) == (54, 6, 9)
    assert set(d.characters) == {3}


def test_datum_validation():
    d = build_binomial(5, 2)
    with pytest.raises(DatumError):
        GaloisDatum(d.G, d.U, d.U, {})  # U is not normal in G
    bad = {g: 1 for g in d.G.elements}
    bad[d.G.gens[-1]] = 2
    with pytest.raises(DatumError):
        GaloisDatum(d.G, d.U, d.N, {5: bad})


@pytest.mark.parametrize("build", [lambda: build_binomial(7, 2), lambda: build_pure_radical(9, 3),
                                   lambda: build_cyclotomic(19, 9, 3), lambda: theorem_a_witness(8)])
def test_json_roundtrip(build):
    d = build()
    data = json.loads(json.dumps(d.to_json()))
    back = GaloisDatum.from_json(data)
    assert (back.G, back.U, back.N) == (d.G, d.U, d.N)
    assert back.characters == d.characters
    assert back.quasireal == d.quasireal and back.involution == d.involution


def test_units_and_subgroups():
    assert units(12) == [1, 5, 7, 11]
    assert unit_subgroup(19, [7]) == [1, 7, 11]
    assert unit_subgroups_of_order(19, 9) == [[1, 4, 5, 6, 7, 9, 11, 16, 17]]
    assert resolve_unit_subgroup(19, 3) == [1, 7, 11]
    assert len(unit_subgroups_of_order(8, 2)) == 3
    with pytest.raises(DatumError):
        resolve_unit_subgroup(8, 2)  # ambiguous in a non-cyclic group
    assert resolve_unit_subgroup(8, [3]) == [1, 3]


def test_cyclotomic_examples():
    d = build_cyclotomic(5, 4, 1)
    assert d.G.order == 4 and d.G.is_abelian() and d.metadata["radical_by_construction"]
    k = build_cyclotomic(19, 9, 3)
    assert k.labels["Q"] == "Q(sqrt(-19))"
    assert k.metadata["degree_L_over_ground"] == 3 and k.quasireal
    full = build_cyclotomic(19, 9, 1)
    assert full.metadata["radical_by_construction"] and full.metadata["degree_L_over_ground"] == 9
    assert not full.quasireal
    with pytest.raises(DatumError):
        build_cyclotomic(19, 3, 9)


@pytest.mark.parametrize("n,p", [(2, 5), (4, 17), (8, 17), (16, 97)])
def test_theorem_a_witness(n, p):
    d = theorem_a_witness(n)
    assert d.metadata["prime"] == p
    assert d.G.order // d.U.order == n
    assert d.involution is not None and d.involution in d.U  # complex conjugation fixes L


# --- small-degree Galois groups ------------------------------------------------------------

VECTORS = [("x^4 + 1", "V4"), ("x^4 - 2", "D4"), ("x^4 + x^3 + x^2 + x + 1", "C4"),
           ("x^4 - 4x^2 + 2", "C4"), ("x^4 - x - 1", "S4"), ("x^4 + 8x + 12", "A4"),
           ("x^4 - 10x^2 + 1", "V4"), ("x^4 + 5x + 5", "C4"), ("x^3 - 3x + 1", "A3"),
           ("x^3 - 2", "S3"), ("x^2 - 2", "C2")]


@pytest.mark.parametrize("text,label", VECTORS)
def test_galois_vectors(text, label):
    assert galois_group_small_degree(parse_poly(text)).label == label


def _sympy_label(coeffs) -> str:
    x = sympy.symbols("x")
    G, _ = sympy.galois_group(sympy.Poly(list(reversed(coeffs)), x))
    n, order = len(coeffs) - 1, G.order()
    if n == 3:
        return "A3" if order == 3 else "S3"
    return {4: "C4" if G.is_cyclic else "V4", 8: "D4", 12: "A4", 24: "S4"}[order]


@settings(max_examples=40)
@given(st.lists(small_int, min_size=3, max_size=4))
def test_galois_group_against_sympy(tail):
    coeffs = tail + [1]
    f = Poly(coeffs)
    assume(irreducibility_certificate(f).irreducible)
    assert galois_group_small_degree(f).label == _sympy_label(coeffs)


@pytest.mark.parametrize("text", ["x^4 - 2", "x^4 - x^3 - 3x^2 + x + 1", "x^4 + 3x + 3",
                                  "x^4 + x^3 + 2x^2 - x + 1", "x^4 - 6x^2 + 4"])
def test_sympy_agrees_on_structured_quartics(text):
    f = parse_poly(text)
    ints = [int(c) for c in f.coeffs]
    assert galois_group_small_degree(f).label == _sympy_label(ints)


def test_resolvent_matches_numeric_pair_sums():
    rng = np.random.default_rng(7)
    for _ in range(20):
        ints = [int(c) for c in rng.integers(-9, 10, size=4)] + [1]
        f = Poly(ints)
        r = np.roots(list(reversed(ints)))
        pairs = [r[0] * r[1] + r[2] * r[3], r[0] * r[2] + r[1] * r[3], r[0] * r[3] + r[1] * r[2]]
        expected = np.poly(pairs).real
        got = [float(c) for c in reversed(quartic_resolvent_cubic(f).coeffs)]
        assert np.allclose(got, expected, rtol=1e-7, atol=1e-6)


def test_galois_rejects_reducible_and_degree():
    with pytest.raises(ValueError):
        galois_group_small_degree(parse_poly("x^4 - 1"))
    with pytest.raises(ValueError):
        galois_group_small_degree(parse_poly("x^5 - 2"))
