import random
from fractions import Fraction

import pytest

from waring.errors import DimensionMismatch, ParseFormError
from waring.forms import (
    Form,
    ProjectivePoint,
    chordal_distance,
    contract,
    distinct_points,
    evaluate,
    form_to_string,
    parse_form,
    power_of_linear,
    random_form,
    same_point,
    substitute,
)
from waring.monomials import exponents, space_dim


def test_exponent_order_is_descending_lex():
    assert exponents(2, 3) == ((3, 0), (2, 1), (1, 2), (0, 3))
    assert exponents(3, 2) == (
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_space_dim_matches_enumeration():
    for n in (2, 3, 4):
        for d in range(1, 7):
            assert space_dim(n, d) == len(exponents(n, d))


def test_parse_round_trip():
    texts = [
        "x0^4",
        "x0^3*x1 + x1^4",
        "2*x0^2*x1^2 - 7*x1^4",
        "x0*x1*x2",
        "-x0^5 + 3/2*x0^2*x1^3",
    ]
    for text in texts:
        n = 3 if "x2" in text else 2
        f = parse_form(text, n)
        again = parse_form(form_to_string(f), n)
        assert again.coeffs == f.coeffs


def test_parse_rejects_garbage():
    with pytest.raises(ParseFormError):
        parse_form("x0 + ", 2)
    with pytest.raises(ParseFormError):
        parse_form("x0^2 + x1", 2)  # mixed degrees
    with pytest.raises(ParseFormError):
        parse_form("x5^2", 2)


def test_addition_needs_matching_shape():
    f = parse_form("x0^2", 2)
    g = parse_form("x0^3", 2)
    with pytest.raises(DimensionMismatch):
        f + g


def test_contract_is_falling_factorial_differentiation():
    f = parse_form("x1^4", 2)
    t = parse_form("x1^2", 2)
    assert form_to_string(contract(t, f)) == "12*x1^2"
    # d/dy0 on x0^3*x1 gives 3*x0^2*x1
    g = contract(parse_form("x0", 2), parse_form("x0^3*x1", 2))
    assert form_to_string(g) == "3*x0^2*x1"


def test_contract_degree_drop_and_zero():
    f = parse_form("x0^2*x1", 2)
    assert contract(parse_form("x1^2", 2), f).is_zero()
    h = contract(parse_form("x0*x1", 2), f)
    assert h.degree == 1 and not h.is_zero()


def test_contract_product_rule_composes():
    # contracting by a product equals contracting twice, either order
    rng = random.Random(3)
    for _ in range(20):
        f = random_form(3, 5, seed=rng.randint(0, 10**6))
        a = random_form(3, 1, seed=rng.randint(0, 10**6))
        b = random_form(3, 2, seed=rng.randint(0, 10**6))
        lhs = contract(a * b, f)
        rhs = contract(a, contract(b, f))
        assert (lhs + rhs.scale(-1)).is_zero()
        assert (lhs + contract(b, contract(a, f)).scale(-1)).is_zero()


def test_power_of_linear_carries_multinomials():
    p = power_of_linear((1, 2), 2)
    assert p.coeffs == (Fraction(1), Fraction(4), Fraction(4))
    q = power_of_linear((1, 1, 1), 3)
    assert q.coeff((1, 1, 1)) == 6


def test_power_contraction_identity():
    # t ⌟ l^d = d!/(d-e)! * t(l) * l^(d-e), checked on samples
    rng = random.Random(11)
    for _ in range(10):
        pt = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
        if all(x == 0 for x in pt):
            continue
        f = power_of_linear(pt, 5)
        t = random_form(3, 2, seed=rng.randint(0, 10**6))
        lhs = contract(t, f)
        scalar = evaluate(t, pt) * 20  # 5*4
        rhs = power_of_linear(pt, 3).scale(scalar)
        assert (lhs + rhs.scale(-1)).is_zero()


def test_evaluate_agrees_with_substitution():
    f = parse_form("x0^3*x1 + x1^4", 2)
    assert evaluate(f, (2, 1)) == 9
    assert evaluate(f, (1, -1)) == 0


def test_substitute_linear_change():
    f = parse_form("x0^2", 2)
    images = [parse_form("x0 + x1", 2, degree=1), parse_form("x1", 2, degree=1)]
    g = substitute(f, images)
    assert form_to_string(g) == "x0^2 + 2*x0*x1 + x1^2"


def test_float_backend_round_trip():
    f = parse_form("x0^3*x1 + x1^4", 2).to_float()
    assert not f.is_exact
    assert not f.is_zero()
    assert abs(evaluate(f, (2.0, 1.0)) - 9.0) < 1e-12


def test_projective_point_normalization():
    p = ProjectivePoint((Fraction(2), Fraction(4), Fraction(0)))
    q = ProjectivePoint((1, 2, 0))
    assert same_point(p, q)
    assert chordal_distance(p, q) < 1e-12
    assert not same_point(p, ProjectivePoint((1, 2, 1)))


def test_distinct_points_catches_collisions():
    pts = [ProjectivePoint((1, 0)), ProjectivePoint((0, 1)),
           ProjectivePoint((2, 0))]
    assert not distinct_points(pts)
    assert distinct_points(pts[:2])


def test_random_form_is_deterministic():
    assert random_form(2, 4, seed=9).coeffs == random_form(2, 4, seed=9).coeffs
    assert random_form(2, 4, seed=9).coeffs != random_form(2, 4, seed=10).coeffs
