import math
import random
from fractions import Fraction

import pytest

from waring.errors import (
    DegenerateSystemError,
    PreconditionError,
    ZeroFormError,
)
from waring.forms import (
    Form,
    ProjectivePoint,
    contract,
    parse_form,
    power_of_linear,
    random_form,
)
from waring.ternary import (
    LineSystem,
    annihilating_lines,
    bound_B1,
    decompose_ternary_odd,
    minimize_annihilating,
    reducible_kernel_pair,
    split_on_lines,
)

F = Fraction


def lin(*coeffs):
    return Form(3, 1, tuple(F(c) for c in coeffs))


# -- line systems --------------------------------------------------------------


def test_line_system_validation():
    with pytest.raises(PreconditionError):
        LineSystem((Form(2, 1, (F(1), F(0))),))
    with pytest.raises(ZeroFormError):
        LineSystem((lin(0, 0, 0),))
    with pytest.raises(PreconditionError):
        LineSystem((lin(1, 0, 0), lin(2, 0, 0)))  # same line twice


def test_line_system_geometry():
    sys = LineSystem((lin(1, 0, 0), lin(0, 1, 0), lin(0, 0, 1)))
    assert sys.k == 2
    assert sys.is_exact
    # spans solve the incidence equations
    for i in range(3):
        u, v = sys.span(i)
        ell = sys.lines[i].coeffs
        for w in (u, v):
            assert sum(a * b for a, b in zip(ell, w)) == 0
    # intersection of x0 = 0 and x1 = 0 is the point (0, 0, 1)
    p = sys.intersection(0, 1)
    nz = next(c for c in p if c != 0)
    assert tuple(F(c) / nz for c in p) == (F(0), F(0), F(1))
    assert sys.product().degree == 3
    assert sys.in_general_position()


def test_line_system_concurrency_detected():
    # three lines through (0, 0, 1)
    sys = LineSystem((lin(1, 0, 0), lin(0, 1, 0), lin(1, 1, 0)))
    assert not sys.in_general_position()


def test_line_system_annihilates():
    f = parse_form("x0^5 + x1^5", 3)
    assert LineSystem((lin(1, 0, 0), lin(0, 1, 0))).annihilates(f)
    assert not LineSystem((lin(1, 0, 0), lin(1, 1, 0))).annihilates(f)


# -- reducible members of apolar nets ------------------------------------------


def test_reducible_kernel_pair_fermat_cubic():
    f = parse_form("x0^3 + x1^3 + x2^3", 3)
    pair = reducible_kernel_pair(f, seed=1)
    assert not pair.from_sigma
    prod = pair.first * pair.second
    assert contract(prod, f).is_zero()


def test_reducible_kernel_pair_respects_sigma():
    f = parse_form("x0^3 + x1^3 + x2^3", 3)
    # (y0+y1+y2)^2 does not kill f, so the search must run and stay off it
    sigma = [ProjectivePoint((F(1), F(1), F(1)))]
    pair = reducible_kernel_pair(f, sigma=sigma, seed=2)
    assert not pair.from_sigma
    for ell in (pair.first, pair.second):
        p = ProjectivePoint(ell.coeffs)
        for s in sigma:
            a, b = p.as_floats(), s.as_floats()
            crossed = [a[1] * b[2] - a[2] * b[1],
                       a[2] * b[0] - a[0] * b[2],
                       a[0] * b[1] - a[1] * b[0]]
            assert max(abs(complex(x)) for x in crossed) > 1e-9
    assert contract(pair.first * pair.second, f).is_zero()


def test_reducible_kernel_pair_flags_sigma_hits():
    # a pair of forbidden duals that already annihilates comes back flagged
    f = parse_form("x0^3 + x1^3 + x2^3", 3)
    sigma = [ProjectivePoint((F(1), F(0), F(0))),
             ProjectivePoint((F(0), F(1), F(0)))]
    pair = reducible_kernel_pair(f, sigma=sigma, seed=2)
    assert pair.from_sigma
    assert contract(pair.first * pair.second, f).is_zero()


# -- annihilating systems -------------------------------------------------------


def test_annihilating_lines_quintic():
    f = random_form(3, 5, seed=31)
    sys = annihilating_lines(f, seed=0)
    assert len(sys.lines) == 4
    assert sys.annihilates(f)
    assert sys.in_general_position()


def test_annihilating_lines_triple_product():
    f = parse_form("x0*x1*x2", 3)
    sys = annihilating_lines(f, seed=0)
    assert len(sys.lines) == 2
    assert sys.annihilates(f)


def test_annihilating_lines_validates_input():
    with pytest.raises(PreconditionError):
        annihilating_lines(parse_form("x0^2", 3))
    with pytest.raises(PreconditionError):
        annihilating_lines(random_form(3, 5, seed=3).to_float())
    with pytest.raises(PreconditionError):
        annihilating_lines(parse_form("x0^2 + x1^2", 2))


def test_minimize_annihilating_drops_redundant_line():
    f = parse_form("x0^5 + x1^5", 3)
    fat = LineSystem((lin(1, 0, 0), lin(0, 1, 0), lin(1, 1, 0)))
    slim = minimize_annihilating(f, fat)
    assert len(slim.lines) == 2
    assert slim.annihilates(f)
    duals = {tuple(ell.coeffs) for ell in slim.lines}
    assert duals == {(F(1), F(0), F(0)), (F(0), F(1), F(0))}


def test_minimize_requires_annihilation():
    # y0 * (y0 + y1) leaves 20 x0^3 alive on the Fermat quintic
    f = parse_form("x0^5 + x1^5 + x2^5", 3)
    with pytest.raises(PreconditionError):
        minimize_annihilating(f, LineSystem((lin(1, 0, 0), lin(1, 1, 0))))


# -- the splitting system -------------------------------------------------------


def test_split_on_lines_solution_space():
    f = random_form(3, 5, seed=41)
    sys = minimize_annihilating(f, annihilating_lines(f, seed=5))
    split = split_on_lines(f, sys)
    k = sys.k
    assert split.solution_dim == math.comb(k + 1, 2)
    assert len(split.kernel) == split.solution_dim
    # the particular solution assembles back to f
    zero = [F(0)] * len(split.kernel)
    assert (split.assemble(split.pieces(zero)) - f).is_zero()
    # and so does every kernel perturbation
    rng = random.Random(42)
    for _ in range(3):
        coeffs = [F(rng.randint(-5, 5)) for _ in split.kernel]
        pieces = split.pieces(coeffs)
        assert (split.assemble(pieces) - f).is_zero()


def test_split_on_lines_rejects_non_annihilating():
    f = parse_form("x0^5 + x1^5 + x2^5", 3)
    sys = LineSystem((lin(1, 0, 0), lin(1, 1, 0)))
    with pytest.raises(PreconditionError):
        split_on_lines(f, sys)


def test_split_on_lines_two_planted_lines():
    # f built from powers on the lines x2 = 0 and x0 = 0
    f = (power_of_linear((1, 1, 0), 5) + power_of_linear((1, -2, 0), 5)
         + power_of_linear((0, 1, 3), 5))
    fsum = Form(3, 5, tuple(a + b + c for a, b, c in zip(
        power_of_linear((1, 1, 0), 5).coeffs,
        power_of_linear((1, -2, 0), 5).coeffs,
        power_of_linear((0, 1, 3), 5).coeffs)))
    sys = LineSystem((lin(0, 0, 1), lin(1, 0, 0)))
    assert sys.annihilates(fsum)
    split = split_on_lines(fsum, sys)
    assert split.solution_dim == 1
    zero = [F(0)]
    assert (split.assemble(split.pieces(zero)) - fsum).is_zero()


# -- full odd-degree decompositions ---------------------------------------------


def check_ternary(f, dec, tol=1e-7):
    assert dec.residual(f) <= tol
    pts = dec.points()
    seen = set()
    for p in pts:
        a = p.as_floats()
        nz = max(a, key=abs)
        seen.add(tuple(round(complex(c / nz).real, 6) for c in a)
                 + tuple(round(complex(c / nz).imag, 6) for c in a))
    assert len(seen) == len(pts)


def test_decompose_quintic_respects_global_cap():
    for seed in (51, 52, 53):
        f = random_form(3, 5, seed=seed)
        dec = decompose_ternary_odd(f, seed=1)
        assert dec.size <= 12  # (5^2 - 1) / 2
        check_ternary(f, dec)
        prov = dec.provenance
        assert prov["route"] == "odd-line-split"
        assert all(s <= prov["cap"] for s in prov["piece_sizes"])


def test_decompose_septic_respects_global_cap():
    f = random_form(3, 7, seed=61)
    dec = decompose_ternary_odd(f, seed=1)
    assert dec.size <= 24  # (7^2 - 1) / 2
    check_ternary(f, dec)


def test_decompose_single_power():
    f = power_of_linear((2, -1, 3), 5, F(7))
    dec = decompose_ternary_odd(f)
    assert dec.size == 1
    assert dec.is_exact
    assert dec.synthesize_exact().coeffs == f.coeffs


def test_decompose_essentially_binary():
    # three powers on the line spanned by (1,0,2) and (0,1,-1)
    f = Form(3, 5, tuple(a + b + c for a, b, c in zip(*(x.coeffs for x in (
        power_of_linear((1, 0, 2), 5),
        power_of_linear((1, 1, 1), 5),
        power_of_linear((2, 1, 3), 5))))))
    dec = decompose_ternary_odd(f, seed=2)
    assert dec.provenance["route"] == "binary-subspace"
    assert dec.size <= 3
    check_ternary(f, dec)


def test_decompose_rejects_bad_degrees_and_backends():
    with pytest.raises(PreconditionError):
        decompose_ternary_odd(random_form(3, 4, seed=7))
    with pytest.raises(PreconditionError):
        decompose_ternary_odd(random_form(3, 6, seed=7))
    with pytest.raises(PreconditionError):
        decompose_ternary_odd(parse_form("x0^3 + x1^3", 3))
    with pytest.raises(PreconditionError):
        decompose_ternary_odd(random_form(3, 5, seed=7).to_float())
    with pytest.raises(PreconditionError):
        decompose_ternary_odd(random_form(2, 5, seed=7))
    with pytest.raises(ZeroFormError):
        decompose_ternary_odd(Form.zero(3, 5))


# -- the avoidance-length bound --------------------------------------------------


def test_bound_values_frozen():
    # hand-expanded binomial sums
    assert bound_B1(3, 4) == 8
    assert bound_B1(3, 5) == 13
    assert bound_B1(3, 6) == math.comb(7, 5) - math.comb(2, 2) - math.comb(3, 3)
    assert bound_B1(4, 4) == 17  # C(6,3) - C(1,0) - C(2,1)


def test_bound_dominates_odd_degree_totals():
    for d in range(5, 40, 2):
        assert bound_B1(3, d) > (d * d - 1) // 2


def test_bound_validates_range():
    with pytest.raises(PreconditionError):
        bound_B1(2, 5)
    with pytest.raises(PreconditionError):
        bound_B1(3, 3)
