import math
from fractions import Fraction

import pytest

from conftest import random_word, sigma_product
from cremlat.lattice import ClassVector, canonical_form, e, e0, intersect, points
from cremlat.weyl import (
    WeylWord,
    apply,
    compose,
    conjugate,
    coxeter_generators,
    degree,
    halphen_class,
    halphen_test,
    identity_element,
    increasing_degrees,
    inverse,
    jonquieres_center,
    multiplicity_profile,
    noether_report,
    normalize_increasing,
    parse_word,
    permutation,
    print_word,
    quadratic_decompose,
    realize,
    sigma0,
    sigma_omega,
    sigma_omega_word,
    tau,
    word,
)


# -- generators and realization ------------------------------------------------


def test_sigma0_action():
    p1, p2, p3, q = points(4)
    h = realize(word(sigma0(p1, p2, p3)))
    assert apply(h, e0()) == ClassVector(2, {p1: -1, p2: -1, p3: -1})
    assert apply(h, e(p1)) == ClassVector(1, {p2: -1, p3: -1})
    assert apply(h, e(q)) == e(q)
    assert compose(h, h) == identity_element()


def test_tau_swaps():
    p, q = points(2)
    h = realize(word(tau(p, q)))
    assert apply(h, e(p)) == e(q)
    assert apply(h, e(q)) == e(p)
    assert apply(h, e0()) == e0()


def test_sigma0_fixes_its_pencil_classes():
    p1, p2, p3 = points(3)
    h = realize(word(sigma0(p1, p2, p3)))
    for p in (p1, p2, p3):
        v = e0() - e(p)
        assert apply(h, v) == v


def test_realize_prunes_to_minimal_support():
    p1, p2, p3 = points(3)
    w = word(sigma0(p1, p2, p3), sigma0(p1, p2, p3))
    assert realize(w) == identity_element()
    assert realize(w).support == ()


def test_compose_and_inverse():
    p = points(6)
    h3 = compose(realize(word(sigma0(p[0], p[1], p[2]))), realize(word(sigma0(p[0], p[3], p[4]))))
    assert degree(h3) == 3
    assert apply(h3, e0()) == ClassVector(3, {p[0]: -2, p[1]: -1, p[2]: -1, p[3]: -1, p[4]: -1})
    s = realize(word(sigma0(p[0], p[1], p[2])))
    assert inverse(s) == s
    assert degree(compose(h3, inverse(h3))) == 1
    assert compose(h3, inverse(h3)) == identity_element()


def test_degree_examples():
    p = points(6)
    assert degree(realize(word(sigma0(p[0], p[1], p[2])))) == 2
    assert degree(realize(word(permutation([(p[0], p[1])])))) == 1
    h4 = sigma_product((p[0], p[1], p[2]), (p[3], p[4], p[5]))
    assert degree(h4) == 4
    assert degree(h4) == degree(inverse(h4))


def test_form_preservation_checked_on_construction():
    from cremlat.weyl import WeylElement

    with pytest.raises(ValueError):
        WeylElement((), ((2,),))  # scales the form
    p = points(1)
    with pytest.raises(ValueError):
        WeylElement(p, ((1, 0), (0, -1)))  # sends e(p) to -e(p): breaks omega


# -- profiles and degree identities ---------------------------------------------


def test_profile_of_sigma0():
    p1, p2, p3 = points(3)
    prof = multiplicity_profile(realize(word(sigma0(p1, p2, p3))))
    assert prof.degree == 2
    assert prof.a == (1, 1, 1) and prof.b == (1, 1, 1)
    assert prof.c == (1, 1, 1)


def test_profile_of_jonquieres_element():
    # degree-m pencil element: multiplicities (m-1, 1, ..., 1)
    p = points(7)
    h = sigma_product((p[0], p[1], p[2]), (p[0], p[3], p[4]), (p[0], p[5], p[6]))
    prof = multiplicity_profile(h)
    m = prof.degree
    assert m == 4
    assert sorted(prof.a, reverse=True) == [m - 1] + [1] * (2 * m - 2)


def test_profile_of_identity():
    prof = multiplicity_profile(identity_element())
    assert prof.degree == 1 and prof.points == ()


def test_noether_report_sigma0():
    p1, p2, p3 = points(3)
    rep = noether_report(realize(word(sigma0(p1, p2, p3))))
    assert rep.applicable and rep.ok


def test_noether_report_degree3():
    p = points(5)
    h = sigma_product((p[0], p[1], p[2]), (p[0], p[3], p[4]))
    rep = noether_report(h)
    assert rep.ok
    prof = multiplicity_profile(h)
    a = sorted(prof.a, reverse=True)
    assert a == [2, 1, 1, 1, 1]
    assert a[0] + a[1] + a[2] == rep.degree + 1


def test_noether_report_not_applicable_for_degree_one():
    rep = noether_report(identity_element())
    assert not rep.applicable


def test_noether_property_sweep(rng):
    pts = points(10)
    for _ in range(120):
        h = realize(random_word(rng, rng.randint(1, 10), pts))
        rep = noether_report(h)
        if rep.applicable:
            assert rep.ok, rep


# -- special families -----------------------------------------------------------


def test_sigma_omega_formulas():
    p1, q2, q3 = points(3)
    so = sigma_omega(p1, [q2, q3])
    assert apply(so, e0()) == ClassVector(2, {p1: -1, q2: -1, q3: -1})
    assert apply(so, e(q2)) == e0() - e(p1) - e(q2)
    assert compose(so, so) == identity_element()
    assert sigma_omega(p1, []) == identity_element()


def test_sigma_omega_larger_and_word_form(rng):
    pts = points(9)
    root, omega = pts[0], pts[1:9]
    so = sigma_omega(root, omega)
    m = len(omega) // 2 + 1
    img = apply(so, e0())
    assert img.e0 == m and img.coeff(root) == -(m - 1)
    assert compose(so, so) == identity_element()
    assert realize(sigma_omega_word(root, omega)) == so


def test_sigma_omega_rejects_bad_input():
    pts = points(4)
    with pytest.raises(ValueError):
        sigma_omega(pts[0], [pts[1]])
    with pytest.raises(ValueError):
        sigma_omega(pts[0], [pts[0], pts[1]])


def test_jonquieres_center():
    p = points(6)
    s = realize(word(sigma0(p[0], p[1], p[2])))
    assert jonquieres_center(s) == p[0]  # ties broken by smallest id
    shared = compose(s, realize(word(sigma0(p[0], p[3], p[4]))))
    assert jonquieres_center(shared) == p[0]
    disjoint = sigma_product((p[0], p[1], p[2]), (p[3], p[4], p[5]))
    assert jonquieres_center(disjoint) is None


def test_jonquieres_linear_growth(rng):
    # same-center elements compose subadditively; powers grow at most linearly
    p = points(9)
    h1 = sigma_product((p[0], p[1], p[2]), (p[0], p[3], p[4]))
    h2 = sigma_product((p[0], p[5], p[6]), (p[0], p[7], p[8]))
    assert jonquieres_center(h1) == p[0] and jonquieres_center(h2) == p[0]
    assert degree(compose(h1, h2)) < degree(h1) + degree(h2)
    d = degree(h1)
    cur = h1
    for n in range(2, 8):
        cur = compose(cur, h1)
        assert degree(cur) <= n * (d - 1) + 1


def test_halphen_subadditivity():
    p = points(9)
    K = halphen_class(p)
    h1 = sigma_product((p[0], p[1], p[2]), (p[3], p[4], p[5]))
    h2 = sigma_product((p[6], p[7], p[8]), (p[0], p[3], p[6]))
    for h in (h1, h2):
        assert apply(h, K) == K
    d12 = degree(compose(h1, h2))
    assert math.sqrt(d12) < math.sqrt(degree(h1)) + math.sqrt(degree(h2))


def test_halphen_test_with_candidate():
    p = points(9)
    K = halphen_class(p)
    assert halphen_test(identity_element(), p) == K
    s = realize(word(sigma0(p[0], p[1], p[2])))
    assert halphen_test(s, p) == K  # any triple among the nine fixes K


def test_halphen_test_search():
    p = points(9)
    h = sigma_product((p[0], p[1], p[2]), (p[3], p[4], p[5]), (p[6], p[7], p[8]))
    K = halphen_class(p)
    assert halphen_test(h) == K


def test_halphen_test_loxodromic_is_none(pts12):
    from conftest import loxodromic_ten

    h = loxodromic_ten(pts12)
    assert halphen_test(h) is None


def test_non_jonquieres_multiplicity_gap(rng):
    # without a fixed pencil class, d - (a_i + b_i)/2 > sqrt(d/3) for every i
    pts = points(10)
    checked = 0
    for _ in range(200):
        h = realize(random_word(rng, rng.randint(2, 8), pts))
        d = degree(h)
        if d < 3 or jonquieres_center(h) is not None:
            continue
        prof = multiplicity_profile(h)
        for ci in prof.c:
            assert d - ci > math.sqrt(d / 3)
        checked += 1
    assert checked > 20


def test_degree_one_elements_are_permutations(rng):
    pts = points(8)
    for _ in range(60):
        h = realize(random_word(rng, rng.randint(1, 6), pts))
        if degree(h) != 1:
            continue
        assert apply(h, e0()) == e0()
        for p in h.support:
            img = apply(h, e(p))
            assert img.e0 == 0 and sorted(img.point_coeffs.values()) == [1]


# -- coxeter generators ----------------------------------------------------------


def test_coxeter_relations():
    gens = [realize(w) for w in coxeter_generators(10)]
    ident = identity_element()

    def order(h, cap=12):
        cur = h
        for k in range(1, cap + 1):
            if cur == ident:
                return k
            cur = compose(cur, h)
        return None

    for g in gens:
        assert compose(g, g) == ident
    assert order(compose(gens[1], gens[2])) == 3  # adjacent transpositions braid
    assert order(compose(gens[0], gens[1])) == 2  # s0 commutes with s1
    assert order(compose(gens[0], gens[3])) == 3  # the branch edge
    for i in range(4, 10):
        assert order(compose(gens[0], gens[i])) == 2
    with pytest.raises(ValueError):
        coxeter_generators(2)


# -- quadratic decomposition ------------------------------------------------------


def test_quadratic_decompose_sigma0():
    p1, p2, p3 = points(3)
    h = realize(word(sigma0(p1, p2, p3)))
    s, mid, sp = quadratic_decompose(h)
    assert s == identity_element()
    assert compose(compose(s, realize(word(mid))), sp) == h


def test_quadratic_decompose_with_permutation():
    p = points(4)
    h = compose(realize(word(tau(p[2], p[3]))), realize(word(sigma0(p[0], p[1], p[2]))))
    s, mid, sp = quadratic_decompose(h)
    assert degree(sp) == 1
    assert compose(compose(s, realize(word(mid))), sp) == h


def test_quadratic_decompose_rejects_other_degrees():
    p = points(5)
    h3 = sigma_product((p[0], p[1], p[2]), (p[0], p[3], p[4]))
    with pytest.raises(ValueError):
        quadratic_decompose(h3)


# -- the increasing normal form ----------------------------------------------------


def test_normalize_trivial_word():
    p1, p2, p3 = points(3)
    w = word(sigma0(p1, p2, p3), sigma0(p1, p2, p3))
    nw = normalize_increasing(w, e0())
    assert len(nw.letters) == 1
    assert realize(nw) == identity_element() or apply(realize(nw), e0()) == e0()


def test_normalize_images_have_nonnegative_multiplicities(rng):
    pts = points(10)
    for _ in range(40):
        w = random_word(rng, rng.randint(0, 8), pts)
        nw = normalize_increasing(w, e0())
        u = nw.apply(e0())
        assert all(c <= 0 for c in u.point_coeffs.values())


def test_normalize_matches_matrix_images(rng):
    pts = points(10)
    vectors = [
        e0(),
        e(pts[0]),
        e0() - e(pts[1]),
        ClassVector(3, {q: -1 for q in pts[:9]}),
    ]
    for _ in range(120):
        w = random_word(rng, rng.randint(0, 8), pts)
        for v in vectors:
            nw = normalize_increasing(w, v)
            assert apply(realize(nw), v) == apply(realize(w), v)
            degs = increasing_degrees(nw, v)
            assert all(x < y for x, y in zip(degs, degs[1:]))


def test_normalize_rejects_other_shapes():
    p1, p2, p3 = points(3)
    with pytest.raises(ValueError):
        normalize_increasing(word(sigma0(p1, p2, p3)), ClassVector(2, {p1: -1}))


# -- the word grammar ---------------------------------------------------------------


def test_grammar_round_trip():
    text = "q(p1,p2,p3) * t(p1,p4) * s(p2 p3)(p4 p5)"
    w, names = parse_word(text)
    w2, _ = parse_word(print_word(w), names)
    assert realize(w) == realize(w2)


def test_grammar_right_to_left_composition():
    w, names = parse_word("t(a,b) * q(a,c,d)")
    h = realize(w)
    direct = compose(
        realize(word(tau(names["a"], names["b"]))),
        realize(word(sigma0(names["a"], names["c"], names["d"]))),
    )
    assert h == direct


def test_grammar_errors_carry_positions():
    from cremlat.weyl import WordSyntaxError

    for bad in ["q(p1,p2)", "t(p1,p1)", "q(p1,p2,p3) q(p4,p5,p6)", "* q(p1,p2,p3)", "x(p1)"]:
        with pytest.raises(WordSyntaxError) as err:
            parse_word(bad)
        assert "position" in str(err.value)
