import math

import pytest

from cremlat.salem import (
    GOLDEN_POLYNOMIAL,
    LEHMER_POLYNOMIAL,
    PLASTIC_POLYNOMIAL,
    IntPolynomial,
    SearchSpaceError,
    classify_number,
    count_real_roots,
    cyclotomic,
    dominant_real_root,
    enumerate_salem,
    format_poly,
    from_trace_poly,
    lehmer_number,
    named_constants,
    parse_poly,
    roots,
    spectral_gap_assert,
    strip_cyclotomic,
    to_trace_poly,
    yun_decomposition,
)


# -- polynomials and text -------------------------------------------------------


def test_parse_format_round_trip():
    text = "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1"
    p = parse_poly(text)
    assert p == LEHMER_POLYNOMIAL
    assert parse_poly(format_poly(p)) == p
    assert parse_poly("x^2 - 3*x + 1").coeffs == (1, -3, 1)
    with pytest.raises(ValueError):
        parse_poly("2*x^2 - 1")  # not monic
    with pytest.raises(ValueError):
        IntPolynomial([5])


# -- roots ------------------------------------------------------------------------


def test_quadratic_roots():
    rs = sorted(z.real for z, _ in roots(parse_poly("x^2 - 3*x + 1")))
    assert abs(rs[0] - (3 - math.sqrt(5)) / 2) < 1e-9
    assert abs(rs[1] - (3 + math.sqrt(5)) / 2) < 1e-9


def test_plastic_and_lehmer_roots():
    assert abs(dominant_real_root(PLASTIC_POLYNOMIAL) - 1.324717957244746) < 1e-10
    assert abs(dominant_real_root(LEHMER_POLYNOMIAL, 1e-13) - 1.176280818259917) < 1e-11


def test_roots_multiplicity_aware():
    p = parse_poly("x^2 - 3*x + 1") * parse_poly("x^2 - 3*x + 1")
    rs = roots(p)
    assert sorted(m for _, m in rs) == [2, 2]
    assert yun_decomposition(p) == [(parse_poly("x^2 - 3*x + 1"), 2)]


def test_roots_residuals():
    p = LEHMER_POLYNOMIAL
    for z, _ in roots(p, 1e-10):
        val = abs(p(complex(z)))
        assert val < 1e-6


def test_vieta_residuals():
    p = parse_poly("x^4 - 2*x^3 + x - 5")
    rs = [z for z, m in roots(p) for _ in range(m)]
    prod = 1
    total = 0
    for z in rs:
        prod *= z
        total += z
    assert abs(total - 2) < 1e-8          # -c3
    assert abs(prod - (-5)) < 1e-8        # (-1)^4 c0


# -- cyclotomic stripping ------------------------------------------------------------


def test_strip_pure_cyclotomic_product():
    assert strip_cyclotomic(parse_poly("x^4 - 1")) is None


def test_strip_keeps_the_interesting_part():
    rq = parse_poly("x^2 - 3*x + 1")
    assert strip_cyclotomic(rq * parse_poly("x - 1")) == rq
    assert strip_cyclotomic(LEHMER_POLYNOMIAL) == LEHMER_POLYNOMIAL


def test_strip_repeated_factors():
    rq = parse_poly("x^2 - 3*x + 1")
    prod = rq * cyclotomic(1) * cyclotomic(1) * cyclotomic(12)
    assert strip_cyclotomic(prod) == rq


# -- trace transform -------------------------------------------------------------------


def test_trace_transform_round_trip():
    q = to_trace_poly(LEHMER_POLYNOMIAL)
    assert q.degree == 5
    assert from_trace_poly(q) == LEHMER_POLYNOMIAL
    with pytest.raises(ValueError):
        to_trace_poly(parse_poly("x^3 - x - 1"))


def test_real_root_counting():
    p = parse_poly("x^3 - x")  # roots -1, 0, 1
    assert count_real_roots(p, -2, 2) == 3
    assert count_real_roots(p, 0, 2) == 1
    q = parse_poly("x^2 + 1")
    assert count_real_roots(q, -10, 10) == 0


# -- classification -----------------------------------------------------------------------


def test_classify_the_three_reference_kinds():
    lehmer = classify_number(LEHMER_POLYNOMIAL)
    assert lehmer.kind == "salem"
    assert abs(lehmer.dominant_root - 1.176281) < 1e-6
    plastic = classify_number(PLASTIC_POLYNOMIAL)
    assert plastic.kind == "pisot"
    assert abs(plastic.dominant_root - 1.324718) < 1e-6
    rq = classify_number(parse_poly("x^2 - 3*x + 1"))
    assert rq.kind == "reciprocal_quadratic"
    assert abs(rq.dominant_root - (3 + math.sqrt(5)) / 2) < 1e-9


def test_classify_cyclotomic_and_no_root():
    assert classify_number(parse_poly("x^4 - 1")).kind == "cyclotomic_product"
    assert classify_number(parse_poly("x^2 + 3*x + 1")).kind == "no_root_gt_one"


def test_classify_is_invariant_under_cyclotomic_factors(rng):
    base = {
        "salem": LEHMER_POLYNOMIAL,
        "pisot": PLASTIC_POLYNOMIAL,
        "reciprocal_quadratic": parse_poly("x^2 - 3*x + 1"),
    }
    orders = [1, 2, 3, 4, 5, 6, 8, 12]
    for kind, poly in base.items():
        p = poly
        for n in rng.sample(orders, 3):
            p = p * cyclotomic(n)
        cls = classify_number(p)
        assert cls.kind == kind
        assert cls.stripped == poly
        assert abs(cls.dominant_root - classify_number(poly).dominant_root) < 1e-9


def test_classify_mixed_product_is_other_perron():
    cls = classify_number(PLASTIC_POLYNOMIAL * LEHMER_POLYNOMIAL)
    assert cls.kind == "other_perron"


def test_reciprocity_is_exact():
    assert LEHMER_POLYNOMIAL.is_reciprocal()
    assert not PLASTIC_POLYNOMIAL.is_reciprocal()


# -- named constants --------------------------------------------------------------------------


def test_named_constants():
    consts = named_constants()
    lam_g = consts["lambda_golden"]["value"]
    lam_p = consts["lambda_plastic"]["value"]
    lam_l = consts["lambda_lehmer"]["value"]
    assert abs(lam_g - (1 + math.sqrt(5)) / 2) < 1e-12
    assert abs(lam_p ** 3 - (lam_p + 1)) < 1e-12
    assert lam_l < lam_p < lam_g
    assert consts["lambda_golden"]["polynomial"] == GOLDEN_POLYNOMIAL


def test_spectral_gap_assert():
    assert spectral_gap_assert(1.0)
    assert not spectral_gap_assert(1.1)
    assert spectral_gap_assert(((1 + math.sqrt(5)) / 2) ** 2)
    assert spectral_gap_assert(lehmer_number())
    with pytest.raises(ValueError):
        spectral_gap_assert(0.5)


# -- enumeration ---------------------------------------------------------------------------------


def test_enumerate_salem_small_degrees():
    assert enumerate_salem(4, 1.7) == []
    found = enumerate_salem(4, 1.8)
    assert len(found) == 1
    poly, root = found[0]
    assert poly == parse_poly("x^4 - x^3 - x^2 - x + 1")
    assert abs(root - 1.7220838) < 1e-6


def test_enumerate_salem_degree_six():
    found = enumerate_salem(6, 1.45)
    assert [format_poly(p) for p, _ in found] == ["x^6 - x^4 - x^3 - x^2 + 1"]
    assert abs(found[0][1] - 1.4012684) < 1e-6


def test_enumeration_postconditions():
    found = enumerate_salem(6, 1.55)
    assert [r for _, r in found] == sorted(r for _, r in found)
    for poly, root in found:
        assert poly.is_reciprocal()
        assert 1 < root <= 1.55 + 1e-9
        assert classify_number(poly).kind == "salem"


def test_enumeration_resource_guard():
    with pytest.raises(SearchSpaceError):
        enumerate_salem(10, 1.18, node_limit=10)


def test_enumerate_salem_rejects_bad_input():
    with pytest.raises(ValueError):
        enumerate_salem(5, 1.3)
    with pytest.raises(ValueError):
        enumerate_salem(4, 0.9)
