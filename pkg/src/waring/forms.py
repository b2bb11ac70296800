"""Dense homogeneous forms over exact rationals or complex floats.

Every form carries a scalar backend: either all coefficients are
`fractions.Fraction` (exact) or all are `complex` (float).  Exact arithmetic
is authoritative for every rank and kernel decision in the library; complex
floats appear where roots of polynomials do.  Mixing backends in an
operation silently promotes to complex.

The same class stores both polynomials (the symmetric algebra S, spanned by
monomials in x0..x{n-1}) and their duals (the divided-power side, acting by
differentiation).  Which role a form plays is decided by the operation:
`contract(t, f)` differentiates f by t, so t is dual and f is primal.

Points of the projective space P(S_1) are `ProjectivePoint`s.  Exact points
normalize their first nonzero coordinate to 1; float points normalize the
largest-magnitude coordinate to 1.  Comparisons use a normalization-free
chordal distance, so they do not depend on which coordinate was scaled.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, ParseFormError, ZeroFormError
from .monomials import (
    exponents,
    falling_product,
    index_of,
    monomial_string,
    multinomial,
    space_dim,
    sub_exponents,
)

Scalar = Union[Fraction, complex]

#: tolerance for treating a float scalar as zero in structural checks
FLOAT_ZERO_TOL = 1e-9


def is_exact_scalar(value) -> bool:
    return isinstance(value, (Fraction, int))


def _normalize_coeffs(values: Iterable) -> tuple[tuple, bool]:
    vals = list(values)
    if all(is_exact_scalar(v) for v in vals):
        return tuple(Fraction(v) for v in vals), True
    return tuple(complex(v) for v in vals), False


@dataclass(frozen=True)
class Form:
    """A homogeneous polynomial with a dense coefficient tuple.

    Coefficients follow the monomial order of :func:`waring.monomials.exponents`.
    """

    num_vars: int
    degree: int
    coeffs: tuple

    def __post_init__(self):
        expected = space_dim(self.num_vars, self.degree)
        if len(self.coeffs) != expected:
            raise DimensionMismatch(
                f"form in {self.num_vars} variables of degree {self.degree} "
                f"needs {expected} coefficients, got {len(self.coeffs)}"
            )
        coeffs, _ = _normalize_coeffs(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, degree: int, exact: bool = True) -> "Form":
        n = space_dim(num_vars, degree)
        fill = Fraction(0) if exact else 0j
        return cls(num_vars, degree, (fill,) * n)

    @classmethod
    def from_dict(cls, num_vars: int, degree: int, entries: dict) -> "Form":
        coeffs = [0] * space_dim(num_vars, degree)
        for expo, value in entries.items():
            if len(expo) != num_vars or sum(expo) != degree:
                raise DimensionMismatch(f"exponent {expo} does not fit (n={num_vars}, d={degree})")
            coeffs[index_of(tuple(expo))] = value
        return cls(num_vars, degree, tuple(coeffs))

    # -- backend ----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def to_float(self) -> "Form":
        return Form(self.num_vars, self.degree, tuple(complex(c) for c in self.coeffs))

    # -- inspection -------------------------------------------------------

    def coeff(self, expo: tuple[int, ...]) -> Scalar:
        return self.coeffs[index_of(tuple(expo))]

    def items(self):
        """Yield (exponent, coefficient) pairs for nonzero coefficients."""
        for expo, c in zip(exponents(self.num_vars, self.degree), self.coeffs):
            if c != 0:
                yield expo, c

    def is_zero(self, tol: float = FLOAT_ZERO_TOL) -> bool:
        if self.is_exact:
            return all(c == 0 for c in self.coeffs)
        return all(abs(c) <= tol for c in self.coeffs)

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.coeffs), default=0.0)

    # -- arithmetic -------------------------------------------------------

    def _check_same_space(self, other: "Form"):
        if self.num_vars != other.num_vars or self.degree != other.degree:
            raise DimensionMismatch(
                f"cannot combine (n={self.num_vars}, d={self.degree}) "
                f"with (n={other.num_vars}, d={other.degree})"
            )

    def __add__(self, other: "Form") -> "Form":
        self._check_same_space(other)
        return Form(self.num_vars, self.degree,
                    tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Form") -> "Form":
        self._check_same_space(other)
        return Form(self.num_vars, self.degree,
                    tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Form":
        return Form(self.num_vars, self.degree, tuple(-a for a in self.coeffs))

    def scale(self, scalar) -> "Form":
        return Form(self.num_vars, self.degree, tuple(c * scalar for c in self.coeffs))

    def __mul__(self, other: "Form") -> "Form":
        """Polynomial product within the same variable set."""
        if not isinstance(other, Form):
            return NotImplemented
        if self.num_vars != other.num_vars:
            raise DimensionMismatch("product needs matching variable counts")
        out: dict[tuple[int, ...], Scalar] = {}
        for ea, ca in self.items():
            for eb, cb in other.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        result = Form.zero(self.num_vars, self.degree + other.degree,
                           exact=self.is_exact and other.is_exact)
        coeffs = list(result.coeffs)
        for expo, value in out.items():
            coeffs[index_of(expo)] = value
        return Form(self.num_vars, result.degree, tuple(coeffs))


#: alias used where a form acts by differentiation (the apolarity pairing)
DualForm = Form


def contract(t: Form, f: Form) -> Form:
    """Apply the dual form t to f by repeated partial differentiation.

    For t = x^alpha (a dual monomial) and f = x^beta this is the honest
    derivative d^|alpha| f / dx^alpha, with the falling-factorial integers
    that differentiation produces; the result has degree deg f - deg t.
    """
    if t.num_vars != f.num_vars:
        raise DimensionMismatch("contraction needs matching variable counts")
    if t.degree > f.degree:
        raise DimensionMismatch(
            f"cannot contract degree {f.degree} by degree {t.degree}")
    out_degree = f.degree - t.degree
    acc: dict[tuple[int, ...], Scalar] = {}
    for alpha, ta in t.items():
        for beta, fb in f.items():
            fall = falling_product(beta, alpha)
            if fall == 0:
                continue
            key = sub_exponents(beta, alpha)
            acc[key] = acc.get(key, 0) + ta * fb * fall
    base = Form.zero(f.num_vars, out_degree, exact=t.is_exact and f.is_exact)
    coeffs = list(base.coeffs)
    for expo, value in acc.items():
        coeffs[index_of(expo)] = value
    return Form(f.num_vars, out_degree, tuple(coeffs))


def power_of_linear(point: Sequence, degree: int, coeff=1) -> Form:
    """coeff * (p0*x0 + ... + p_{n-1}*x_{n-1})^degree, expanded densely."""
    n = len(point)
    coeffs = []
    for expo in exponents(n, degree):
        term = coeff * multinomial(expo)
        for p, e in zip(point, expo):
            if e:
                term = term * (p ** e)
        coeffs.append(term)
    return Form(n, degree, tuple(coeffs))


def evaluate(f: Form, point: Sequence) -> Scalar:
    """Evaluate f at coordinates (substituting x_i := point[i])."""
    if len(point) != f.num_vars:
        raise DimensionMismatch("point length must match variable count")
    total = Fraction(0) if f.is_exact and all(is_exact_scalar(p) for p in point) else 0j
    for expo, c in f.items():
        term = c
        for p, e in zip(point, expo):
            if e:
                term = term * (p ** e)
        total = total + term
    return total


def substitute(f: Form, images: Sequence[Form]) -> Form:
    """Substitute x_i := images[i], a list of equal-degree forms.

    With linear images this restricts f to a subspace or changes
    coordinates; with quadratic images it pulls f back along a conic
    parametrization.  The result has degree deg(f) * deg(images).
    """
    if len(images) != f.num_vars:
        raise DimensionMismatch("need one image per variable")
    m = images[0].num_vars
    e = images[0].degree
    for g in images:
        if g.num_vars != m or g.degree != e:
            raise DimensionMismatch("images must share variable count and degree")
    exact = f.is_exact and all(g.is_exact for g in images)
    # memoized powers of each image form, starting at the constant 1
    one = Form(m, 0, (Fraction(1),))
    powers: list[list[Form]] = [[one] for _ in images]
    result = Form.zero(m, f.degree * e, exact=exact)
    for expo, c in f.items():
        term = Form(m, 0, (c,))
        for i, k in enumerate(expo):
            while len(powers[i]) <= k:
                powers[i].append(powers[i][-1] * images[i])
            term = term * powers[i][k]
        result = result + term
    return result


def random_form(num_vars: int, degree: int, seed: int, height: int = 9) -> Form:
    """Random exact form with integer coefficients uniform in [-height, height].

    Deterministic per seed; resamples internally rather than return zero.
    """
    rng = random.Random(seed)
    n = space_dim(num_vars, degree)
    while True:
        coeffs = tuple(Fraction(rng.randint(-height, height)) for _ in range(n))
        if any(c != 0 for c in coeffs):
            return Form(num_vars, degree, coeffs)


# -- projective points ----------------------------------------------------


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P(S_1), stored with normalized homogeneous coordinates."""

    coords: tuple

    def __post_init__(self):
        coords, exact = _normalize_coeffs(self.coords)
        if all(c == 0 for c in coords):
            raise ZeroFormError("projective point needs a nonzero coordinate vector")
        if exact:
            pivot = next(c for c in coords if c != 0)
        else:
            pivot = max(coords, key=abs)
        object.__setattr__(self, "coords", tuple(c / pivot for c in coords))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def as_floats(self) -> tuple[complex, ...]:
        return tuple(complex(c) for c in self.coords)


def chordal_distance(p: ProjectivePoint | Sequence, q: ProjectivePoint | Sequence) -> float:
    """Normalization-free projective distance: |p wedge q| / (|p| |q|).

    Zero exactly when the points coincide; 1 when orthogonal.  Computed in
    floats regardless of backend.
    """
    a = p.as_floats() if isinstance(p, ProjectivePoint) else tuple(complex(c) for c in p)
    b = q.as_floats() if isinstance(q, ProjectivePoint) else tuple(complex(c) for c in q)
    if len(a) != len(b):
        raise DimensionMismatch("points live in different spaces")
    wedge = 0.0
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            wedge += abs(a[i] * b[j] - a[j] * b[i]) ** 2
    na = math.sqrt(sum(abs(x) ** 2 for x in a))
    nb = math.sqrt(sum(abs(x) ** 2 for x in b))
    return math.sqrt(wedge) / (na * nb)


def same_point(p, q, tol: float = 1e-8) -> bool:
    return chordal_distance(p, q) <= tol


def distinct_points(points: Sequence, tol: float = 1e-6) -> bool:
    """Pairwise distinctness at the library's separation tolerance."""
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if chordal_distance(pts[i], pts[j]) <= tol:
                return False
    return True


# -- parsing and printing -------------------------------------------------

_COEFF_RE = re.compile(r"^(\d+)(?:/(\d+)|\.(\d*))?$|^(\.\d+)$")
_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _parse_coeff(text: str) -> Fraction:
    if not _COEFF_RE.match(text):
        raise ParseFormError(f"malformed coefficient {text!r}")
    return Fraction(text)


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split '-a+b-c' into [(-1,'a'), (1,'b'), (-1,'c')]."""
    terms = []
    sign = 1
    chunk: list[str] = []
    for pos, ch in enumerate(text):
        if ch in "+-" and pos > 0:
            if not chunk:
                raise ParseFormError("empty term")
            terms.append((sign, "".join(chunk)))
            sign, chunk = (1 if ch == "+" else -1), []
        elif ch in "+-":
            sign = 1 if ch == "+" else -1
        else:
            chunk.append(ch)
    if not chunk:
        raise ParseFormError("trailing sign or empty input")
    terms.append((sign, "".join(chunk)))
    return terms


def parse_form(text: str, num_vars: int, degree: int | None = None) -> Form:
    """Parse a homogeneous polynomial in the grammar

        term   := [coeff '*'] factor ('*' factor)*  |  coeff
        factor := 'x' index ['^' exponent]
        coeff  := integer | integer '/' integer | decimal

    Terms are joined by '+' or '-'; whitespace is insignificant.  Decimal
    coefficients are read exactly as rationals.  The result is always on the
    exact backend.  Non-homogeneous input is rejected.  Input that cancels
    to zero is accepted when its degree can be inferred from the terms (or
    is supplied via `degree`); otherwise it is an error.
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ParseFormError("empty input")
    acc: dict[tuple[int, ...], Fraction] = {}
    seen_degree: int | None = None
    for sign, chunk in _split_terms(stripped):
        coeff = Fraction(sign)
        expo = [0] * num_vars
        saw_factor = False
        for piece in chunk.split("*"):
            if not piece:
                raise ParseFormError(f"empty factor in term {chunk!r}")
            m = _FACTOR_RE.match(piece)
            if m:
                idx = int(m.group(1))
                if idx >= num_vars:
                    raise ParseFormError(
                        f"variable x{idx} out of range for {num_vars} variables")
                expo[idx] += int(m.group(2)) if m.group(2) else 1
                saw_factor = True
            else:
                coeff *= _parse_coeff(piece)
        term_degree = sum(expo)
        if not saw_factor and coeff == 0:
            continue  # a literal zero term constrains nothing
        if seen_degree is None:
            seen_degree = term_degree
        elif seen_degree != term_degree:
            raise ParseFormError(
                f"non-homogeneous input: saw degrees {seen_degree} and {term_degree}")
        key = tuple(expo)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    if seen_degree is None:
        if degree is None:
            raise ParseFormError("cannot infer the degree of a zero form; pass degree=")
        seen_degree = degree
    if degree is not None and degree != seen_degree:
        raise ParseFormError(f"input has degree {seen_degree}, expected {degree}")
    return Form.from_dict(num_vars, seen_degree, acc)


def _scalar_string(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    z = complex(c)
    if abs(z.imag) <= FLOAT_ZERO_TOL * max(1.0, abs(z.real)):
        return repr(z.real)
    return repr(z)


def form_to_string(f: Form) -> str:
    """Inverse of parse_form on the exact backend, up to term order.

    Float forms print with repr coefficients for inspection; only exact
    output is guaranteed to re-parse to an equal form.
    """
    parts: list[str] = []
    for expo, c in f.items():
        mono = monomial_string(expo)
        if isinstance(c, Fraction):
            negative = c < 0
            mag = -c if negative else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
        else:
            z = complex(c)
            negative = z.imag == 0 and z.real < 0
            zmag = -z if negative else z
            coeff = _scalar_string(zmag)
            body = f"{coeff}*{mono}" if mono else coeff
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    if not parts:
        return "0"
    return " ".join(parts)
