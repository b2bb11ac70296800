import random
from fractions import Fraction

import pytest

from waring.errors import PreconditionError
from waring.forms import Form, evaluate, parse_form, substitute
from waring.plane import (
    adjugate3,
    conic_contains,
    conic_parametrization,
    cross,
    det3,
    factor_rank_two_quadric,
    float_point_on_conic,
    plane_basis,
    quadric_matrix,
    quadric_rank_exact,
    quadric_rank_numeric,
    rational_point_on_conic,
    rational_sqrt,
)

F = Fraction


def test_cross_incidence():
    rng = random.Random(16)
    for _ in range(20):
        a = tuple(F(rng.randint(-9, 9)) for _ in range(3))
        b = tuple(F(rng.randint(-9, 9)) for _ in range(3))
        c = cross(a, b)
        assert sum(x * y for x, y in zip(a, c)) == 0
        assert sum(x * y for x, y in zip(b, c)) == 0


def test_plane_basis_spans_orthogonal():
    u, v = plane_basis((F(2), F(0), F(-3)))
    for w in (u, v):
        assert 2 * w[0] - 3 * w[2] == 0
    # independence
    assert any(x != 0 for x in cross(u, v))
    with pytest.raises(PreconditionError):
        plane_basis((0, 0, 0))


def test_adjugate_and_det():
    rng = random.Random(17)
    for _ in range(20):
        m = [[F(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        adj = adjugate3(m)
        d = det3(m)
        # m . adj = det * identity
        for i in range(3):
            for j in range(3):
                got = sum(m[i][k] * adj[k][j] for k in range(3))
                assert got == (d if i == j else 0)


def test_quadric_matrix_splits_cross_terms():
    q = parse_form("x0^2 + 4*x0*x1 + 2*x1*x2 + 5*x2^2", 3)
    m = quadric_matrix(q)
    assert m[0][0] == 1 and m[2][2] == 5 and m[1][1] == 0
    assert m[0][1] == m[1][0] == 2
    assert m[1][2] == m[2][1] == 1
    assert m[0][2] == m[2][0] == 0
    with pytest.raises(PreconditionError):
        quadric_matrix(parse_form("x0^3", 3))


def test_quadric_ranks():
    assert quadric_rank_exact(parse_form("x0^2 + x1^2 + x2^2", 3)) == 3
    assert quadric_rank_exact(parse_form("x0*x1", 3)) == 2
    assert quadric_rank_exact(parse_form("x0^2", 3)) == 1
    zero = Form(3, 2, (F(0),) * 6)
    assert quadric_rank_exact(zero) == 0
    for text, want in (("x0^2 + x1^2 + x2^2", 3), ("x0*x1", 2), ("x1^2", 1)):
        assert quadric_rank_numeric(parse_form(text, 3).to_float()) == want


def test_rational_sqrt():
    assert rational_sqrt(F(49, 64)) == F(7, 8)
    assert rational_sqrt(F(0)) == F(0)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-4)) is None


def check_product(q, l1, l2, tol=1e-9):
    prod = l1 * l2
    if q.is_exact and prod.is_exact:
        # equality up to the scale baked into the factors
        assert prod.coeffs == q.coeffs
    else:
        scale = max(abs(complex(c)) for c in q.coeffs)
        diffs = [abs(complex(a) - complex(b)) for a, b in zip(prod.coeffs, q.coeffs)]
        assert max(diffs) <= tol * max(1.0, scale)


def test_factor_rank_two_rational_split():
    # (x0 + x1)(x0 - 2x2) has a rational singular point
    l1 = Form(3, 1, (F(1), F(1), F(0)))
    l2 = Form(3, 1, (F(1), F(0), F(-2)))
    q = l1 * l2
    g1, g2 = factor_rank_two_quadric(q)
    check_product(q, g1, g2)
    assert g1.is_exact and g2.is_exact


def test_factor_rank_two_irrational_split_goes_float():
    # x0^2 - 2 x1^2 = (x0 - sqrt2 x1)(x0 + sqrt2 x1): discriminant not a square
    q = parse_form("x0^2 - 2*x1^2", 3)
    g1, g2 = factor_rank_two_quadric(q)
    check_product(q, g1, g2)


def test_factor_rank_two_complex_split():
    # x0^2 + x1^2 needs complex lines
    q = parse_form("x0^2 + x1^2", 3)
    g1, g2 = factor_rank_two_quadric(q)
    check_product(q, g1, g2)
    assert any(abs(complex(c).imag) > 1e-8 for c in list(g1.coeffs) + list(g2.coeffs))


def test_factor_rank_two_random_products():
    rng = random.Random(18)
    for _ in range(20):
        a = Form(3, 1, tuple(F(rng.randint(-6, 6)) for _ in range(3)))
        b = Form(3, 1, tuple(F(rng.randint(-6, 6)) for _ in range(3)))
        if a.is_zero() or b.is_zero():
            continue
        if all(a.coeffs[i] * b.coeffs[j] == a.coeffs[j] * b.coeffs[i]
               for i in range(3) for j in range(3)):
            continue  # proportional: rank 1
        q = a * b
        g1, g2 = factor_rank_two_quadric(q)
        check_product(q, g1, g2)


def test_factor_rejects_rank_one():
    with pytest.raises(PreconditionError):
        factor_rank_two_quadric(parse_form("x0^2", 3))


def test_rational_point_on_conic_found_and_missed():
    # x0^2 + x1^2 - 2 x2^2 contains (1, 1, 1)
    q = parse_form("x0^2 + x1^2 - 2*x2^2", 3)
    pt = rational_point_on_conic(q)
    assert pt is not None
    assert evaluate(q, pt) == 0
    # x0^2 + x1^2 + x2^2 has no real points at all
    assert rational_point_on_conic(parse_form("x0^2 + x1^2 + x2^2", 3), height=6) is None


def test_float_point_on_conic():
    q = parse_form("x0^2 + x1^2 + x2^2", 3)  # only complex points
    pt = float_point_on_conic(q, seed=3)
    assert conic_contains(q, pt, tol=1e-8)


def test_conic_parametrization_traces_the_conic():
    # smooth conic with a nice point
    q = parse_form("x0*x2 - x1^2", 3)
    base = (F(1), F(0), F(0))
    phi = conic_parametrization(q, base)
    image = substitute(q, list(phi))
    assert image.is_zero()
    # the map hits points other than the base point
    rng = random.Random(19)
    hits = set()
    for _ in range(8):
        s, t = F(rng.randint(-5, 5)), F(rng.randint(1, 5))
        pt = tuple(evaluate(p, (s, t)) for p in phi)
        if all(c == 0 for c in pt):
            continue
        assert evaluate(q, pt) == 0
        # normalize for dedup
        nz = next(c for c in pt if c != 0)
        hits.add(tuple(c / nz for c in pt))
    assert len(hits) >= 4


def test_conic_parametrization_rejects_off_conic_point():
    q = parse_form("x0*x2 - x1^2", 3)
    with pytest.raises(PreconditionError):
        conic_parametrization(q, (F(1), F(1), F(0)))


def test_conic_parametrization_float_backend():
    q = parse_form("x0^2 + x1^2 + x2^2", 3)
    base = float_point_on_conic(q, seed=5)
    phi = conic_parametrization(q.to_float(), base)
    image = substitute(q.to_float(), list(phi))
    assert max(abs(complex(c)) for c in image.coeffs) < 1e-7 * max(
        1.0, max(abs(complex(c)) for c in phi[0].coeffs) ** 2
    )
