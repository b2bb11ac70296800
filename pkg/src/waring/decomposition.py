"""Power-sum decompositions as verifiable value objects.

A decomposition stores its terms (scalar coefficient, projective point)
plus a provenance dict recording which pipeline produced it and any
sampling data needed to replay the run.  Synthesis and residual live
here so every pipeline and the certificate layer measure quality the
same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError
from .forms import Form, ProjectivePoint, is_exact_scalar, power_of_linear


@dataclass(frozen=True, eq=False)
class Term:
    coeff: object
    point: ProjectivePoint

    @property
    def is_exact(self) -> bool:
        return isinstance(self.coeff, Fraction) and self.point.is_exact


def term_from_vector(coeff, vector, degree: int) -> Term:
    """Build a term from an unnormalized coordinate vector.

    The point gets normalized; the coefficient absorbs pivot**degree so
    that coeff * point**degree stays equal to the original summand.  The
    pivot rule below must match ProjectivePoint's normalization.
    """
    vec = list(vector)
    if all(is_exact_scalar(c) for c in vec):
        pivot = next((Fraction(c) for c in vec if c != 0), None)
    else:
        vec = [complex(c) for c in vec]
        pivot = max(vec, key=abs)
        if pivot == 0:
            pivot = None
    if pivot is None:
        raise PreconditionError("term point needs a nonzero coordinate vector")
    return Term(coeff * pivot ** degree, ProjectivePoint(tuple(vec)))


@dataclass(frozen=True, eq=False)
class Decomposition:
    num_vars: int
    degree: int
    terms: tuple[Term, ...]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        for t in self.terms:
            if len(t.point) != self.num_vars:
                raise PreconditionError("term point dimension mismatch")

    @property
    def size(self) -> int:
        return len(self.terms)

    @property
    def is_exact(self) -> bool:
        return all(t.is_exact for t in self.terms)

    def points(self) -> list[ProjectivePoint]:
        return [t.point for t in self.terms]

    def synthesize(self) -> Form:
        """Float sum of the powered terms."""
        total = Form.zero(self.num_vars, self.degree).to_float()
        for t in self.terms:
            total = total + power_of_linear(t.point.as_floats(), self.degree,
                                            complex(t.coeff))
        return total

    def synthesize_exact(self) -> Form | None:
        """Exact sum when every term is exact, else None."""
        if not self.is_exact:
            return None
        total = Form.zero(self.num_vars, self.degree)
        for t in self.terms:
            total = total + power_of_linear(t.point.coords, self.degree, t.coeff)
        return total

    def residual(self, f: Form) -> float:
        if f.num_vars != self.num_vars or f.degree != self.degree:
            raise PreconditionError("decomposition does not match the form's space")
        diff = f.to_float() - self.synthesize()
        return diff.max_abs() / max(1.0, f.max_abs())
