"""Monomial bookkeeping for dense homogeneous polynomials.

A degree-d form in n variables is stored as a dense coefficient tuple over
the monomials of degree d, ordered lexicographically with x0 heaviest.  For
n = 3, d = 2 the order is

    x0^2, x0*x1, x0*x2, x1^2, x1*x2, x2^2.

Exponent tuple <-> flat index conversion round-trips exactly; both
directions are table lookups cached per (n, d).
"""

from __future__ import annotations

import math
from functools import lru_cache


def space_dim(num_vars: int, degree: int) -> int:
    """Dimension of the space of degree-`degree` forms in `num_vars` variables."""
    if num_vars < 1 or degree < 0:
        return 0
    return math.comb(num_vars - 1 + degree, degree)


@lru_cache(maxsize=None)
def exponents(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of total degree `degree`, lex-descending."""
    if num_vars == 1:
        return ((degree,),)
    out: list[tuple[int, ...]] = []
    for e0 in range(degree, -1, -1):
        for rest in exponents(num_vars - 1, degree - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _index_table(num_vars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(exponents(num_vars, degree))}


def index_of(expo: tuple[int, ...]) -> int:
    """Flat index of an exponent tuple within its (n, d) monomial basis."""
    return _index_table(len(expo), sum(expo))[expo]


def multinomial(expo: tuple[int, ...]) -> int:
    """d! / prod(e_i!) for d = sum(expo)."""
    out = math.factorial(sum(expo))
    for e in expo:
        out //= math.factorial(e)
    return out


def falling_product(beta: tuple[int, ...], alpha: tuple[int, ...]) -> int:
    """prod_i beta_i * (beta_i - 1) * ... * (beta_i - alpha_i + 1).

    This is the integer produced when the monomial x^beta is differentiated
    alpha_i times in each variable; zero when any alpha_i exceeds beta_i.
    """
    out = 1
    for b, a in zip(beta, alpha):
        if a > b:
            return 0
        for j in range(a):
            out *= b - j
    return out


def sub_exponents(beta: tuple[int, ...], alpha: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(b - a for b, a in zip(beta, alpha))


def monomial_string(expo: tuple[int, ...]) -> str:
    """Render an exponent tuple in the input grammar, e.g. (2,1,0) -> 'x0^2*x1'."""
    parts = []
    for i, e in enumerate(expo):
        if e == 0:
            continue
        parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return "*".join(parts)
