import random
from fractions import Fraction

import numpy as np
import pytest

from waring.apolarity import (
    apolar_component,
    apolar_initial_degree,
    cat_rank_table,
    catalecticant,
    essential_subspace,
    essential_variables,
    numeric_catalecticant,
    rank_lower_bound,
)
from waring.errors import PreconditionError, ZeroFormError
from waring.forms import Form, contract, parse_form, power_of_linear, random_form


def test_catalecticant_frozen_binary_example():
    # x0^3 x1 + x1^4, delta = 2: rows y0^2, y0 y1, y1^2 against cols
    # x0^2, x0 x1, x1^2.  Entries worked out by hand with falling factorials.
    f = parse_form("x0^3*x1 + x1^4", 2)
    cat = catalecticant(f, 2)
    assert cat.entries == (
        (Fraction(0), Fraction(6), Fraction(0)),
        (Fraction(3), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(12)),
    )
    assert cat.rank == 3
    assert cat.kernel == ()


def test_catalecticant_frozen_ternary_example():
    # f = x0^2 x1 on three variables, delta = 1.  Rows y0, y1, y2; columns
    # the six quadratic monomials in lex-descending order.
    f = parse_form("x0^2*x1", 3)
    cat = catalecticant(f, 1)
    cols = cat.col_monomials
    assert cols == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    # y0 . f = 2 x0 x1, y1 . f = x0^2, y2 . f = 0
    expected = [
        {(1, 1, 0): 2},
        {(2, 0, 0): 1},
        {},
    ]
    for row, want in zip(cat.entries, expected):
        got = {c: x for c, x in zip(cols, row) if x != 0}
        assert got == {k: Fraction(v) for k, v in want.items()}
    assert cat.rank == 2
    assert len(cat.kernel) == 1
    # kernel generator is y2 up to scale
    (k,) = cat.kernel
    nz = [(e, c) for e, c in zip((( 1, 0, 0), (0, 1, 0), (0, 0, 1)), k.coeffs) if c != 0]
    assert len(nz) == 1 and nz[0][0] == (0, 0, 1)


def test_kernel_annihilates_form():
    rng = random.Random(13)
    for _ in range(15):
        n = rng.choice([2, 3])
        d = rng.randint(2, 5)
        f = random_form(n, d, seed=rng.randint(0, 10**6))
        if f.is_zero():
            continue
        for delta in range(1, d):
            cat = catalecticant(f, delta)
            for t in cat.kernel:
                assert contract(t, f).is_zero()
            # rank + kernel size fills the row space
            assert cat.rank + len(cat.kernel) == len(cat.row_monomials)


def test_catalecticant_middle_scaled_symmetry():
    # with the falling-factorial normalization the middle catalecticant
    # satisfies m[r][c] * c! == m[c][r] * r!  (both equal coeff * (r+c)!)
    import math

    def mfact(e):
        out = 1
        for a in e:
            out *= math.factorial(a)
        return out

    f = random_form(3, 4, seed=99)
    cat = catalecticant(f, 2)
    m = cat.entries
    mons = cat.row_monomials
    assert mons == cat.col_monomials
    for i in range(len(m)):
        for j in range(len(m)):
            assert m[i][j] * mfact(mons[j]) == m[j][i] * mfact(mons[i])


def test_numeric_catalecticant_matches_exact():
    f = random_form(3, 5, seed=21)
    for delta in (1, 2, 3, 4):
        exact = catalecticant(f, delta).as_numpy()
        approx = numeric_catalecticant(f, delta)
        assert np.max(np.abs(exact - approx)) < 1e-12


def test_catalecticant_rejects_float_backend_and_bad_delta():
    f = parse_form("x0^2 + x1^2", 2).to_float()
    with pytest.raises(PreconditionError):
        catalecticant(f, 1)
    g = parse_form("x0^2 + x1^2", 2)
    with pytest.raises(PreconditionError):
        catalecticant(g, 3)


def test_apolar_component_beyond_degree_is_everything():
    f = parse_form("x0^2", 2)
    basis = apolar_component(f, 3)
    assert len(basis) == 4  # all cubic dual monomials
    for t in basis:
        assert t.degree == 3


def test_apolar_component_zero_form():
    z = Form(2, 3, (Fraction(0),) * 4)
    with pytest.raises(ZeroFormError):
        apolar_component(z, 1)


def test_apolar_initial_degree_binary_border_rank():
    # x0^d: degree 1 (y1 annihilates)
    assert apolar_initial_degree(parse_form("x0^5", 2)) == 1
    # x0^3 x1: smallest annihilator is y1^2, so 2
    assert apolar_initial_degree(parse_form("x0^3*x1", 2)) == 2
    # generic binary quartic: 3
    f = parse_form("x0^4 + x0^3*x1 + 3*x1^4", 2)
    assert apolar_initial_degree(f) == 3


def test_apolar_initial_degree_matches_kernel_scan():
    rng = random.Random(14)
    for _ in range(20):
        f = random_form(2, rng.randint(2, 8), seed=rng.randint(0, 10**6))
        if f.is_zero():
            continue
        e = apolar_initial_degree(f)
        for delta in range(1, e):
            assert not catalecticant(f, delta).kernel
        if e <= f.degree:
            assert catalecticant(f, e).kernel


def test_essential_variables():
    assert essential_variables(parse_form("x0^4", 3)) == 1
    assert essential_variables(parse_form("x0^3*x1 + x1^4", 3)) == 2
    assert essential_variables(parse_form("x0^2*x1 + x2^3", 3)) == 3
    # (x0 + x1)^4 uses one variable after a change of coordinates
    assert essential_variables(power_of_linear((1, 1, 0), 4)) == 1


def test_essential_subspace_spans_the_form():
    # for (x0 + 2x1)^3 + (x0 - x2)^3 the space is spanned by the two
    # linear forms themselves
    a = power_of_linear((1, 2, 0), 3)
    b = power_of_linear((1, 0, -1), 3)
    f = Form(3, 3, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))
    basis = essential_subspace(f)
    assert len(basis) == 2
    # both defining linear forms lie in the span: rank doesn't grow
    from waring.linalg import exact_rank
    for extra in ([1, 2, 0], [1, 0, -1]):
        stacked = [list(map(Fraction, v)) for v in basis] + [list(map(Fraction, extra))]
        assert exact_rank(stacked) == 2


def test_rank_lower_bound_and_table():
    f = parse_form("x0^3*x1 + x1^4", 2)
    assert cat_rank_table(f) == [(1, 2), (2, 3), (3, 2)]
    assert rank_lower_bound(f) == 3
    g = parse_form("x0^2", 2)
    assert rank_lower_bound(g) == 1
    assert cat_rank_table(g) == [(1, 1)]


def test_rank_lower_bound_is_a_lower_bound_on_points():
    # sums of r distinct powers have every catalecticant rank at most r
    rng = random.Random(15)
    for _ in range(10):
        r = rng.randint(1, 4)
        n, d = 3, 4
        coeffs = [Fraction(0)] * len(power_of_linear((1, 0, 0), d).coeffs)
        for _ in range(r):
            pt = (rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(1, 4))
            for i, c in enumerate(power_of_linear(pt, d).coeffs):
                coeffs[i] += c
        f = Form(n, d, tuple(coeffs))
        if f.is_zero():
            continue
        assert rank_lower_bound(f) <= r
