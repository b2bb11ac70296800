"""Apolarity: catalecticant matrices and the apolar ideal.

The partial polarization of a degree-d form f at step delta is the linear
map S^delta -> S_(d-delta), t |-> contract(t, f).  Its matrix here has rows
indexed by the dual monomials of S^delta and columns by the monomials of
S_(d-delta); the entry at (m, m') is the coefficient of m' in contract(m, f),
which works out to f_(m+m') times the falling factorial of (m+m') over m.
The row orientation is fixed so certificates reproduce byte for byte.

Ranks and kernels of these matrices decide border rank (binary), essential
variables, and the catalecticant lower bound for Waring rank; all of that
runs on the exact backend.  Float pipelines use `numeric_catalecticant`
and make their own tolerance calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError, ZeroFormError
from .forms import Form, DualForm
from .linalg import exact_column_space_basis, exact_nullspace, exact_rank
from .monomials import exponents, falling_product, index_of, space_dim


def _entry(f: Form, row: tuple[int, ...], col: tuple[int, ...]):
    beta = tuple(a + b for a, b in zip(row, col))
    fall = falling_product(beta, row)
    if fall == 0:
        return Fraction(0) if f.is_exact else 0j
    return f.coeffs[index_of(beta)] * fall


@dataclass(frozen=True)
class CatalecticantMatrix:
    """Exact partial polarization with its rank and kernel precomputed."""

    form: Form
    delta: int
    row_monomials: tuple[tuple[int, ...], ...]
    col_monomials: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[Fraction, ...], ...]
    rank: int
    kernel: tuple[DualForm, ...]

    def as_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.entries],
                        dtype=complex)


def catalecticant(f: Form, delta: int) -> CatalecticantMatrix:
    """The delta-th catalecticant of an exact form, with rank and kernel.

    The kernel consists of the dual degree-delta forms annihilating f: the
    degree-delta piece of the apolar ideal.
    """
    if not f.is_exact:
        raise PreconditionError("catalecticant ranks require the exact backend")
    if not 0 <= delta <= f.degree:
        raise PreconditionError(f"delta must lie in 0..{f.degree}, got {delta}")
    rows = exponents(f.num_vars, delta)
    cols = exponents(f.num_vars, f.degree - delta)
    entries = tuple(
        tuple(_entry(f, r, c) for c in cols) for r in rows
    )
    # kernel vectors live on the row side: solve M^T v = 0
    transpose = [[entries[i][j] for i in range(len(rows))] for j in range(len(cols))]
    kernel_vectors = exact_nullspace(transpose) if rows else []
    rank = len(rows) - len(kernel_vectors)
    kernel = tuple(Form(f.num_vars, delta, tuple(v)) for v in kernel_vectors)
    return CatalecticantMatrix(
        form=f, delta=delta, row_monomials=rows, col_monomials=cols,
        entries=entries, rank=rank, kernel=kernel,
    )


def numeric_catalecticant(f: Form, delta: int) -> np.ndarray:
    """Float catalecticant matrix, same orientation as the exact one."""
    rows = exponents(f.num_vars, delta)
    cols = exponents(f.num_vars, f.degree - delta)
    return np.array(
        [[complex(_entry(f, r, c)) for c in cols] for r in rows], dtype=complex
    )


def apolar_component(f: Form, degree: int) -> list[DualForm]:
    """Basis of the degree-`degree` component of the apolar ideal of f.

    Beyond deg f every dual form annihilates, so the full monomial basis
    comes back.
    """
    if f.is_zero():
        raise ZeroFormError("the apolar ideal of the zero form is everything")
    if degree > f.degree:
        basis = []
        for expo in exponents(f.num_vars, degree):
            basis.append(Form.from_dict(f.num_vars, degree, {expo: Fraction(1)}))
        return basis
    return list(catalecticant(f, degree).kernel)


def apolar_initial_degree(f: Form) -> int:
    """Smallest e >= 1 whose apolar component is nonzero.

    For binary forms this is the border rank.
    """
    if f.is_zero():
        raise ZeroFormError("zero form has no apolar initial degree")
    for e in range(1, f.degree + 2):
        if e > f.degree:
            return e  # everything annihilates beyond the degree
        if catalecticant(f, e).kernel:
            return e
    raise AssertionError("unreachable: top degree always has a kernel")


def essential_variables(f: Form) -> int:
    """Number of independent linear forms needed to write f."""
    if f.is_zero():
        return 0
    return catalecticant(f, 1).rank


def essential_subspace(f: Form) -> list[list[Fraction]]:
    """Exact basis (coordinate vectors in S_1) of the span of the
    (d-1)-fold partial derivatives of f: the smallest subspace whose
    symmetric power contains f."""
    if f.is_zero():
        return []
    rows = exponents(f.num_vars, f.degree - 1)
    cols = exponents(f.num_vars, 1)
    matrix = [[_entry(f, r, c) for c in cols] for r in rows]
    transpose = [[matrix[i][j] for i in range(len(rows))] for j in range(len(cols))]
    keep = exact_column_space_basis(transpose)
    return [list(matrix[i]) for i in keep]


def rank_lower_bound(f: Form) -> int:
    """max_delta rank of the delta-th catalecticant: a Waring rank bound."""
    if f.is_zero():
        return 0
    if f.degree <= 1:
        return 1
    return max(catalecticant(f, delta).rank for delta in range(1, f.degree))


def cat_rank_table(f: Form) -> list[tuple[int, int]]:
    """[(delta, rank)] for delta = 1..d-1, as recorded in certificates."""
    if f.degree <= 1:
        return []
    return [(delta, catalecticant(f, delta).rank) for delta in range(1, f.degree)]
