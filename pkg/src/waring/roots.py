"""Polynomial root finding.

Complex roots come from Aberth-Ehrlich simultaneous iteration followed by a
few Newton polish steps; that is robust for the moderate degrees (up to
roughly 25) that apolar generators reach here.  Binary forms are
dehomogenized at x0 = 1; a drop in the dehomogenized degree corresponds to
roots at the point (0 : 1), which are reinstated explicitly.

Exact helpers live here too: rational roots of integer polynomials (used to
keep determinant-locus searches on the exact backend when luck allows) and
squarefree tests via Fraction gcd.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

from .errors import RootFindingError

#: float coefficients below this times the largest are treated as zero
#: when trimming degree
COEFF_TRIM_TOL = 1e-12


def _trim(coeffs: list[complex]) -> list[complex]:
    scale = max((abs(c) for c in coeffs), default=0.0)
    if scale == 0.0:
        return []
    out = list(coeffs)
    while out and abs(out[-1]) <= COEFF_TRIM_TOL * scale:
        out.pop()
    return out


def _horner(coeffs: Sequence[complex], z: complex) -> tuple[complex, complex]:
    """Evaluate p and p' at z in one pass (coefficients ascending)."""
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth_roots(coeffs: Sequence, max_iter: int = 400, tol: float = 1e-13) -> list[complex]:
    """All complex roots of sum(coeffs[i] * t^i), multiplicities repeated.

    Raises RootFindingError if the simultaneous iteration stalls; callers
    treat that as a resampling event, not a hard failure.
    """
    work = _trim([complex(c) for c in coeffs])
    if len(work) <= 1:
        return []
    # factor out roots at the origin exactly
    zeros_at_origin = 0
    scale = max(abs(c) for c in work)
    while abs(work[0]) <= COEFF_TRIM_TOL * scale:
        work.pop(0)
        zeros_at_origin += 1
    n = len(work) - 1
    roots = [0j] * zeros_at_origin
    if n == 0:
        return roots
    if n == 1:
        return roots + [-work[0] / work[1]]
    if n == 2:
        a, b, c = work[2], work[1], work[0]
        disc = cmath.sqrt(b * b - 4 * a * c)
        if abs(b + disc) < abs(b - disc):
            disc = -disc
        r1 = (-b - disc) / (2 * a)
        r2 = c / (a * r1) if r1 != 0 else -b / a - r1
        return roots + [r1, r2]

    lead = work[-1]
    radius = 1.0 + max(abs(c / lead) for c in work[:-1])
    # deterministic staggered start on a circle inside the Cauchy bound
    z = [
        0.7 * radius * cmath.exp(2j * math.pi * (k / n + 0.371))
        * (1.0 + 0.05 * math.cos(3.13 * k))
        for k in range(n)
    ]
    for _ in range(max_iter):
        moved = 0.0
        for i in range(n):
            p, dp = _horner(work, z[i])
            if p == 0:
                continue
            if dp == 0:
                z[i] += 1e-6 * radius * (1 + 1j)
                moved = math.inf
                continue
            w = p / dp
            s = 0j
            for j in range(n):
                if j != i:
                    diff = z[i] - z[j]
                    if diff == 0:
                        diff = 1e-14 * radius * (1 + 1j)
                    s += 1.0 / diff
            denom = 1.0 - w * s
            step = w if denom == 0 else w / denom
            z[i] -= step
            moved = max(moved, abs(step))
        if moved <= tol * max(1.0, radius):
            break
    else:
        residual = max(abs(_horner(work, zi)[0]) for zi in z)
        if residual > 1e-6 * max(abs(c) for c in work):
            raise RootFindingError(
                f"Aberth iteration did not converge (residual {residual:.2e})")
    # Newton polish sharpens simple roots to full precision
    for i in range(n):
        for _ in range(3):
            p, dp = _horner(work, z[i])
            if dp != 0:
                z[i] -= p / dp
    return roots + z


def binary_form_roots(coeffs: Sequence, exact_degree_drop: int | None = None) -> list[tuple[complex, complex]]:
    """Projective roots of a binary form, as coordinate pairs.

    `coeffs` is indexed by the exponent of x1 (so coeffs[i] multiplies
    x0^(d-i) * x1^i).  Finite roots come back as (1, t); the root at
    (0, 1) appears once per unit of degree drop.  For exact input pass
    `exact_degree_drop` so the drop is decided exactly instead of by
    float tolerance.
    """
    vals = [complex(c) for c in coeffs]
    d = len(vals) - 1
    scale = max((abs(c) for c in vals), default=0.0)
    if scale == 0.0:
        return []
    if exact_degree_drop is not None:
        drop = exact_degree_drop
        poly = vals[: len(vals) - drop]
    else:
        poly = list(vals)
        drop = 0
        while poly and abs(poly[-1]) <= COEFF_TRIM_TOL * scale:
            poly.pop()
            drop += 1
    points = [(0j, 1 + 0j)] * drop
    points.extend((1 + 0j, t) for t in aberth_roots(poly))
    return points


# -- exact univariate helpers ----------------------------------------------


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd of two rational polynomials (ascending coefficients)."""

    def strip(u: list[Fraction]) -> list[Fraction]:
        while u and u[-1] == 0:
            u.pop()
        return u

    a = strip([Fraction(c) for c in p])
    b = strip([Fraction(c) for c in q])
    while b:
        # remainder of a by b
        while len(a) >= len(b) and a:
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= factor * c
            a = strip(a)
        a, b = b, a
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def is_squarefree_binary(coeffs: Sequence[Fraction], degree: int) -> bool:
    """Whether an exact binary form has d distinct projective roots.

    Checks the dehomogenization against its derivative and caps the
    multiplicity of the root at infinity (degree drop) at one.
    """
    vals = [Fraction(c) for c in coeffs]
    if all(c == 0 for c in vals):
        return False
    poly = list(vals)
    drop = 0
    while poly and poly[-1] == 0:
        poly.pop()
        drop += 1
    if drop >= 2:
        return False
    if len(poly) <= 1:
        return True  # constant after a single drop: degree <= 1 overall
    deriv = [i * c for i, c in enumerate(poly)][1:]
    return len(poly_gcd(poly, deriv)) <= 1


def exact_degree_drop(coeffs: Sequence[Fraction]) -> int:
    vals = list(coeffs)
    drop = 0
    while vals and vals[-1] == 0:
        vals.pop()
        drop += 1
    return drop


def cubic_from_samples(d0, d1, dm1, d2) -> list:
    """Ascending coefficients of the cubic with values d0, d1, dm1, d2.

    The samples sit at t = 0, 1, -1, 2; works over any field containing
    halves and sixths (Fractions or complex floats).
    """
    c0 = d0
    c2 = (d1 + dm1) / 2 - d0
    odd = (d1 - dm1) / 2  # c1 + c3
    c3 = (d2 - c0 - 2 * odd - 4 * c2) / 6
    c1 = odd - c3
    return [c0, c1, c2, c3]


# trial division above this is slower than finding the roots numerically
_DIVISOR_ENUM_LIMIT = 10**12


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of a rational polynomial, without multiplicity.

    Clears denominators and applies the rational root theorem to the
    primitive integer polynomial; intended for the small cubics and
    quadratics produced by determinant-locus searches.
    """
    vals = [Fraction(c) for c in coeffs]
    while vals and vals[-1] == 0:
        vals.pop()
    if len(vals) <= 1:
        return []
    denom = 1
    for c in vals:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in vals]
    roots: list[Fraction] = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    if len(ints) <= 1:
        return roots
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    ints = [c // g for c in ints]

    def value(cand: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * cand + c
        return acc

    lead, trail = ints[-1], ints[0]
    if abs(lead) <= _DIVISOR_ENUM_LIMIT and abs(trail) <= _DIVISOR_ENUM_LIMIT:
        for p in _divisors(trail):
            for q in _divisors(lead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand not in roots and value(cand) == 0:
                        roots.append(cand)
        return roots
    # coefficients too large to factor: snap numeric roots to nearby
    # rationals and keep only the ones that verify exactly
    try:
        numeric = aberth_roots(ints)
    except RootFindingError:
        return roots
    scale = max(abs(complex(z)) for z in numeric) if numeric else 1.0
    for z in numeric:
        if abs(z.imag) > 1e-9 * max(1.0, scale):
            continue
        for bound in (10**4, 10**9):
            cand = Fraction(z.real).limit_denominator(bound)
            if cand not in roots and value(cand) == 0:
                roots.append(cand)
                break
    return roots
