import math

import pytest

from conftest import loxodromic_ten, random_word, sigma_product
from cremlat.lattice import e, e0, intersect, norm_sq, points
from cremlat.salem import lehmer_number
from cremlat.spectral import (
    THREE_19,
    axis_data,
    axis_displacement_check,
    char_polynomial,
    classify,
    cosh_distance_to_axis,
    criterion_degrees,
    degree_sequence,
    dynamical_degree,
    growth_type_oracle,
    loxodromy_criterion,
    spectrum_report,
)
from cremlat.weyl import (
    apply,
    compose,
    coxeter_generators,
    degree,
    identity_element,
    inverse,
    realize,
    sigma0,
    tau,
    word,
)


def coxeter_element():
    gens = coxeter_generators(10)
    h = realize(gens[0])
    for w in gens[1:]:
        h = compose(h, realize(w))
    return h


# -- classification -----------------------------------------------------------


def test_sigma0_is_elliptic():
    p = points(3)
    cls = classify(realize(word(sigma0(*p))))
    assert cls.kind == "elliptic"


def test_small_sigma_products_are_elliptic():
    # products of two quadratic involutions live in a finite reflection
    # group whenever they touch at most eight points, so both the shared
    # and the disjoint configuration have periodic degree sequences
    p = points(6)
    shared = sigma_product((p[0], p[1], p[2]), (p[0], p[3], p[4]))
    disjoint = sigma_product((p[0], p[1], p[2]), (p[3], p[4], p[5]))
    assert degree_sequence(shared, 6) == [3, 1, 3, 1, 3, 1]
    assert degree_sequence(disjoint, 6) == [4, 4, 1, 4, 4, 1]
    assert classify(shared).kind == "elliptic"
    assert classify(disjoint).kind == "elliptic"
    assert growth_type_oracle(shared) == "bounded"
    assert growth_type_oracle(disjoint) == "bounded"


def test_nine_point_product_is_halphen_parabolic():
    p = points(9)
    h = sigma_product((p[0], p[1], p[2]), (p[3], p[4], p[5]), (p[6], p[7], p[8]))
    cls = classify(h)
    assert cls.kind == "parabolic_quadratic"
    assert growth_type_oracle(h) == "quadratic"
    assert dynamical_degree(h) == 1.0


def test_ten_point_product_is_loxodromic(pts12):
    h = loxodromic_ten(pts12)
    cls = classify(h)
    assert cls.kind == "loxodromic"
    assert growth_type_oracle(h) == "exponential"
    assert dynamical_degree(h) > 1


def test_classification_matches_growth_oracle(rng):
    pts = points(11)
    kinds = {"elliptic": "bounded", "parabolic_quadratic": "quadratic",
             "parabolic_linear": "linear", "loxodromic": "exponential"}
    for _ in range(40):
        h = realize(random_word(rng, rng.randint(1, 12), pts))
        assert kinds[classify(h).kind] == growth_type_oracle(h)


# -- dynamical degree -----------------------------------------------------------


def test_dynamical_degree_of_involution_is_exactly_one():
    p = points(3)
    assert dynamical_degree(realize(word(sigma0(*p)))) == 1.0


def test_coxeter_element_realizes_the_lehmer_number():
    lam = dynamical_degree(coxeter_element(), 1e-12)
    assert abs(lam - lehmer_number()) < 1e-10


def test_no_degree_in_the_gap(rng):
    pts = points(11)
    lam_l = lehmer_number()
    for _ in range(100):
        h = realize(random_word(rng, rng.randint(1, 20), pts))
        lam = dynamical_degree(h)
        assert lam == 1.0 or lam >= lam_l - 1e-9


def test_conjugacy_and_inverse_invariance(pts12, rng):
    h = loxodromic_ten(pts12)
    lam = dynamical_degree(h)
    assert abs(dynamical_degree(inverse(h)) - lam) < 1e-9
    g = realize(random_word(rng, 4, pts12))
    assert abs(dynamical_degree(compose(compose(g, h), inverse(g))) - lam) < 1e-9


def test_translation_length_below_displacement(pts12):
    h = loxodromic_ten(pts12)
    assert math.log(dynamical_degree(h)) <= math.acosh(degree(h)) + 1e-12


# -- degree sequences -------------------------------------------------------------


def test_degree_sequence_examples():
    p = points(3)
    s = realize(word(sigma0(*p)))
    assert degree_sequence(s, 6) == [2, 1, 2, 1, 2, 1]
    assert degree_sequence(identity_element(), 4) == [1, 1, 1, 1]


def test_degree_sequence_converges_to_lambda(pts12):
    # deg(h^n) ~ c lambda^n with c comparable to the axis distance, so the
    # n-th root misses lambda by about lambda*log(c)/n while successive
    # ratios converge geometrically; both rates are asserted here
    h = loxodromic_ten(pts12)
    lam = dynamical_degree(h)
    c = axis_data(h).cosh_axis_distance
    seq = degree_sequence(h, 200)
    envelope = lam * (2 * math.log(c) + 0.5) / 200  # deg(h^n) ~ (cosh^2/2) lambda^n
    assert abs(seq[-1] ** (1 / 200) - lam) < envelope
    assert abs(seq[-1] / seq[-2] - lam) < 1e-9


def test_degree_submultiplicativity(pts12):
    h = loxodromic_ten(pts12)
    seq = degree_sequence(h, 24)
    for n in range(1, 12):
        for m in range(1, 12):
            assert seq[n + m - 1] <= seq[n - 1] * seq[m - 1]


# -- eigenvectors and the axis -----------------------------------------------------


def test_axis_data_rejects_non_loxodromic():
    p = points(3)
    with pytest.raises(ValueError):
        axis_data(realize(word(sigma0(*p))))


def test_axis_data_quality(pts12):
    h = loxodromic_ten(pts12)
    data = axis_data(h, 1e-9)
    lam, d = data.lam, degree(h)
    assert data.residual_plus < 1e-9 and data.residual_minus < 1e-9
    assert abs(intersect(data.v_plus, data.v_plus)) < 1e-9
    assert abs(intersect(data.v_minus, data.v_minus)) < 1e-9
    assert abs(intersect(data.E, data.E) - 1) < 1e-9
    assert data.cosh_axis_distance >= 1
    # the eigenvector normalization v . e0 = 1
    assert data.v_plus.e0 == 1.0 and data.v_minus.e0 == 1.0
    # sandwich between degree and dynamical degree
    assert math.sqrt(2 * d / (1 / lam + lam + 2)) < data.cosh_axis_distance
    assert data.cosh_axis_distance < 2 * d / (lam - 1 / lam)
    # eigenvector approximation by normalized images of e0
    hinv_e0 = apply(inverse(h), e0())
    assert math.sqrt(norm_sq((1.0 / d) * hinv_e0 - data.v_minus)) < math.sqrt(2 / (lam * d))
    h_e0 = apply(h, e0())
    assert math.sqrt(norm_sq((1.0 / d) * h_e0 - data.v_plus)) < math.sqrt(2 / (lam * d))
    # the pairing bounds
    assert (lam - 1 / lam) ** 2 / (2 * d * d) < data.vplus_dot_vminus < (1 / lam + lam + 2) / d


def test_displacement_bound_at_e0(pts12):
    h = loxodromic_ten(pts12)
    rep = axis_displacement_check(h, e0())
    assert rep.bound_ok
    assert rep.displacement >= math.log(lehmer_number()) - 1e-9
    data = axis_data(h)
    # a point on the axis is at distance zero from it
    assert abs(cosh_distance_to_axis(data, data.E) - 1) < 1e-6


# -- the big-power criterion ---------------------------------------------------------


def test_criterion_on_the_three_types(pts12):
    p = points(9)
    s = realize(word(sigma0(*p[:3])))
    assert not loxodromy_criterion(s)
    assert criterion_degrees(s) == (1, 1)
    halphen = sigma_product((p[0], p[1], p[2]), (p[3], p[4], p[5]), (p[6], p[7], p[8]))
    d200, d400 = criterion_degrees(halphen)
    assert not loxodromy_criterion(halphen)
    assert d400 < THREE_19 * d200
    lox = loxodromic_ten(pts12)
    assert loxodromy_criterion(lox)


def test_spectrum_report_schema(pts12):
    h = loxodromic_ten(pts12)
    rep = spectrum_report(h)
    assert rep["class"] == "loxodromic"
    assert set(rep) >= {"degree", "class", "lambda", "criteria", "cosh_axis_distance", "residuals"}
    s = realize(word(sigma0(*points(3))))
    rep2 = spectrum_report(s)
    assert rep2["lambda"] == 1.0 and "cosh_axis_distance" not in rep2


def test_char_polynomial_is_reciprocal_up_to_sign(pts12):
    # isometries are conjugate to their inverses' transposes through the form
    h = loxodromic_ten(pts12)
    cp = char_polynomial(h).coeffs
    assert cp == cp[::-1] or cp == tuple(-c for c in cp[::-1])
