import math
import random

import pytest

from cremlat.birmap import (
    DEFAULT_PRIME,
    BudgetExceeded,
    HomogeneousTriple,
    compose,
    henon_triple,
    identity_triple,
    iterate_degrees,
    linear_triple,
    monomial_degree,
    monomial_iterates,
    monomial_lambda,
    monomial_map,
    monomial_triple,
    parse_triple,
    projectively_equal,
    sigma_triple,
    triple,
)


def test_sigma_is_an_involution_with_full_cancellation():
    s = sigma_triple()
    ss = compose(s, s)
    assert ss.degree == 1
    assert ss == identity_triple()


def test_sigma_degree_sequence():
    degs, truncated = iterate_degrees(sigma_triple(), 6)
    assert degs == [2, 1, 2, 1, 2, 1] and not truncated


@pytest.mark.parametrize("d", [2, 3])
def test_henon_grows_without_cancellation(d):
    degs, truncated = iterate_degrees(henon_triple(d), 5)
    assert degs == [d ** n for n in range(1, 6)] and not truncated


def test_compose_with_identity():
    h = henon_triple(2)
    assert compose(h, identity_triple()) == h
    assert compose(identity_triple(), h) == h


def test_linear_map_validation():
    assert linear_triple([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == identity_triple()
    with pytest.raises(ValueError):
        linear_triple([[1, 0, 0], [0, 1, 0], [1, 1, 0]])


def test_structured_cancellation_of_a_conjugated_involution():
    # the common factor here is a product of lines, not a monomial
    s = sigma_triple()
    a = linear_triple([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    a_inv = linear_triple([[1, -1, 1], [1, 1, -1], [-1, 1, 1]])
    conj = compose(compose(a, s), a_inv)
    assert conj.degree == 2
    assert compose(conj, conj) == identity_triple()


def test_common_factor_certified_on_construction():
    # components with a shared line are reduced at construction time
    t = triple("x*y", "x*z", "x*x")
    assert t.degree == 1


def test_degenerate_composition_rejected():
    t = triple("x*y", "x*z", "x*x")
    assert t == triple("y", "z", "x")
    with pytest.raises(ValueError):
        HomogeneousTriple([{}, {}, {}])


def test_budget_guard():
    h = henon_triple(3)
    degs, truncated = iterate_degrees(h, 8)
    assert truncated and degs[-1] <= 512
    with pytest.raises(BudgetExceeded):
        big = henon_triple(3)
        cur = big
        for _ in range(8):
            cur = compose(big, cur)


def test_associativity_over_a_prime_field():
    rng = random.Random(3)
    p = DEFAULT_PRIME

    def rand_triple(deg=2):
        comps = []
        for _ in range(3):
            poly = {}
            for i in range(deg + 1):
                for j in range(deg + 1 - i):
                    c = rng.randint(0, 4)
                    if c:
                        poly[(i, j, deg - i - j)] = c
            comps.append(poly)
        return HomogeneousTriple(comps, p)

    for _ in range(4):
        a, b, c = rand_triple(), rand_triple(), rand_triple()
        assert projectively_equal(compose(compose(a, b), c), compose(a, compose(b, c)))


def test_submultiplicativity_of_degrees():
    rng = random.Random(9)
    p = DEFAULT_PRIME
    s = sigma_triple(p)
    h = henon_triple(2, p)
    for f, g in [(s, s), (h, h), (s, h), (h, s)]:
        assert compose(f, g).degree <= f.degree * g.degree


# -- monomial maps ------------------------------------------------------------------


def test_monomial_degree_example():
    f = monomial_map([[1, 1], [1, 0]])
    assert monomial_degree(f) == 2
    t = monomial_triple(f)
    assert t == triple("x*y", "x*z", "z^2")


def test_monomial_lambda_is_the_spectral_radius():
    f = monomial_map([[1, 1], [1, 0]])
    golden = (1 + math.sqrt(5)) / 2
    assert abs(monomial_lambda(f) - golden) < 1e-12
    assert abs(monomial_lambda(f * f) - golden ** 2) < 1e-12
    rotation = monomial_map([[0, -1], [1, 0]])
    assert monomial_lambda(rotation) == 1.0


def test_monomial_iterates_converge():
    f = monomial_map([[1, 1], [1, 0]])
    seq = monomial_iterates(f, 40)
    assert abs(seq[-1] ** (1 / 40) - monomial_lambda(f)) < 1e-2


def test_monomial_validation():
    with pytest.raises(ValueError):
        monomial_map([[2, 0], [0, 1]])


def test_monomial_vs_polynomial_path():
    rng = random.Random(11)
    p = DEFAULT_PRIME
    for _ in range(6):
        while True:
            a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
            if abs(a * d - b * c) == 1:
                break
        f = monomial_map([[a, b], [c, d]])
        fast = monomial_iterates(f, 4)
        slow, _ = iterate_degrees(monomial_triple(f, p), 4)
        assert fast[: len(slow)] == slow


# -- text format ----------------------------------------------------------------------


def test_triple_parsing_round_trip():
    t = parse_triple("[y*z : z*x : x*y]")
    assert t == sigma_triple()
    assert parse_triple(repr(t)) == t
    with pytest.raises(ValueError):
        parse_triple("y*z : z*x")
    with pytest.raises(ValueError):
        parse_triple("[y*z : z*x]")
