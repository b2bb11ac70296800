"""Verification layer: every decomposition ships as a JSON certificate.

A certificate records the input form, the terms, a relative max-norm
residual, the catalecticant rank table, the claimed length bound with
its source tag, per-point avoidance evaluations, and the outcome of
every check.  It is valid exactly when all checks pass; the JSON text is
byte-stable for a fixed (input, seed, version) triple so replays can be
compared literally.

The residual is always `max-norm(f - sum) / max(1, max-norm(f))`,
computed in floating point even for exact data, so one number means the
same thing across backends.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .apolarity import cat_rank_table, rank_lower_bound
from .avoidance import AvoidanceSet
from .binary import RESIDUAL_TOL, decompose_binary, rank_binary
from .decomposition import Decomposition, Term
from .errors import (
    DimensionMismatch,
    ParseFormError,
    PreconditionError,
    ZeroFormError,
)
from .forms import (
    Form,
    ProjectivePoint,
    distinct_points,
    evaluate,
    form_to_string,
    parse_form,
)

VERSION = "0.1.0"

# length-bound tags; anything ending in "-claim" is a recorded assertion
# that the verifier does not re-check
BOUND_WITNESSED = "witnessed-by-decomposition"
BOUND_BINARY_RANK = "binary-rank-exact"
BOUND_BINARY_OPEN = "binary-open-rank-formula"
BOUND_ODD_SPLIT = "odd-degree-line-split"
BOUND_QUARTIC_EIGHT = "plane-quartic-avoiding-eight"
BOUND_CONIC_PULLBACK = "rank-three-conic-pullback"
BOUND_WITNESS_CLAIM = "witness-minimum-eight-claim"


@dataclass
class Certificate:
    """All data needed to re-check one decomposition, JSON-serializable."""

    input_text: str
    num_vars: int
    degree: int
    decomposition: Decomposition
    residual: float
    cat_ranks: list[tuple[int, int]]
    bound_value: int
    bound_source: str
    avoidance: dict | None
    checks: list[dict] = field(default_factory=list)
    seed: int = 0
    version: str = VERSION

    @property
    def valid(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def summary(self) -> str:
        lines = [
            f"input: {self.input_text}",
            f"space: {self.num_vars} variables, degree {self.degree}",
            f"terms: {self.decomposition.size}",
            f"residual: {self.residual!r}",
            f"bound: {self.bound_value} [{self.bound_source}]",
        ]
        for c in self.checks:
            mark = "pass" if c["pass"] else "FAIL"
            lines.append(f"check {c['name']}: {mark} ({c['detail']})")
        lines.append("VALID" if self.valid else "INVALID")
        return "\n".join(lines)


def _encode_scalar(value) -> list:
    if isinstance(value, (int, Fraction)):
        q = Fraction(value)
        return [q.numerator, q.denominator]
    z = complex(value)
    # canonicalize signed zeros: point normalization on replay may flip
    # -0.0 to 0.0, and the bytes must not depend on that
    return [z.real + 0.0, z.imag + 0.0]


def _decode_scalar(pair):
    a, b = pair
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return complex(a, b)


def _avoidance_report(avoid: AvoidanceSet, points) -> dict:
    """Generator values at every decomposition point, exact when possible."""
    evaluations = []
    for p in points:
        exact = p.is_exact and all(g.is_exact for g in avoid.generators)
        row = []
        for g in avoid.generators:
            value = evaluate(g, p.coords if exact else p.as_floats())
            row.append(_encode_scalar(value))
        evaluations.append(row)
    return {
        "generators": [form_to_string(g) for g in avoid.generators],
        "evaluations": evaluations,
    }


def verify_decomposition(f: Form, dec: Decomposition,
                         tol: float = RESIDUAL_TOL,
                         avoid: AvoidanceSet | None = None,
                         seed: int = 0,
                         bound: tuple[int, str] | None = None) -> Certificate:
    """Re-check a decomposition against f and package the result.

    Checks: nonzero coefficients, pairwise distinct points, residual at
    most `tol`, all points off `avoid` when one is attached, and size
    within the claimed bound unless the bound tag marks an unchecked
    claim.  The certificate is valid exactly when every check passes.
    """
    if f.num_vars != dec.num_vars or f.degree != dec.degree:
        raise DimensionMismatch("decomposition does not match the form's space")
    checks: list[dict] = []

    zero_coeffs = sum(1 for t in dec.terms if complex(t.coeff) == 0)
    checks.append({
        "name": "nonzero-coefficients",
        "pass": zero_coeffs == 0,
        "detail": f"{dec.size - zero_coeffs} of {dec.size} nonzero",
    })

    distinct = distinct_points(dec.points())
    checks.append({
        "name": "distinct-points",
        "pass": distinct,
        "detail": f"{dec.size} points pairwise distinct" if distinct
                  else "at least two points coincide",
    })

    residual = dec.residual(f)
    checks.append({
        "name": "residual",
        "pass": residual <= tol,
        "detail": f"{residual!r} vs tolerance {tol!r}",
    })

    avoidance = None
    if avoid is not None and not avoid.is_trivial:
        hits = sum(1 for p in dec.points() if avoid.contains(p))
        checks.append({
            "name": "avoidance",
            "pass": hits == 0,
            "detail": f"{hits} of {dec.size} points inside the forbidden set",
        })
        avoidance = _avoidance_report(avoid, dec.points())

    if bound is None:
        bound = (dec.size, BOUND_WITNESSED)
    bound_value, bound_source = bound
    if not bound_source.endswith("-claim"):
        checks.append({
            "name": "size-within-bound",
            "pass": dec.size <= bound_value,
            "detail": f"{dec.size} terms vs bound {bound_value}",
        })

    return Certificate(
        input_text=form_to_string(f),
        num_vars=f.num_vars,
        degree=f.degree,
        decomposition=dec,
        residual=residual,
        cat_ranks=cat_rank_table(f) if f.is_exact else [],
        bound_value=bound_value,
        bound_source=bound_source,
        avoidance=avoidance,
        checks=checks,
        seed=seed,
    )


def rank_bracket(f: Form) -> tuple[int, int, Decomposition]:
    """Catalecticant lower bound and a witnessed upper bound for the rank.

    Binary forms get the exact rank on both sides of the witness; ternary
    forms go through the quartic route (degree four) or the odd-degree
    line split.  Other shapes are not covered.
    """
    if f.is_zero():
        raise ZeroFormError("the zero form has no rank bracket")
    if f.num_vars == 1:
        idx = next(i for i, c in enumerate(f.coeffs) if c != 0)
        dec = Decomposition(1, f.degree,
                            (Term(f.coeffs[idx], ProjectivePoint((Fraction(1),))),),
                            {"route": "single-variable"})
        return 1, 1, dec
    lower = rank_lower_bound(f)
    if f.num_vars == 2:
        upper = rank_binary(f)
        dec = decompose_binary(f)
        return lower, upper, dec
    if f.num_vars == 3:
        if f.degree == 4:
            from .quartic import quartic_decompose_open
            dec = quartic_decompose_open(f)
        elif f.degree >= 5 and f.degree % 2 == 1:
            from .ternary import decompose_ternary_odd
            dec = decompose_ternary_odd(f)
        else:
            raise PreconditionError(
                "ternary brackets cover degree four and odd degrees five and up")
        return lower, dec.size, dec
    raise PreconditionError("rank brackets cover at most three variables")


# -- serialization -------------------------------------------------------------


def to_json(cert: Certificate) -> str:
    """Canonical JSON: sorted keys, no whitespace, repr floats."""
    payload = {
        "input": cert.input_text,
        "n": cert.num_vars,
        "d": cert.degree,
        "terms": [
            {
                "coeff": _encode_scalar(t.coeff),
                "point": [_encode_scalar(c) for c in t.point.coords],
            }
            for t in cert.decomposition.terms
        ],
        "residual": cert.residual,
        "cat_ranks": [[delta, r] for delta, r in cert.cat_ranks],
        "bound": {"value": cert.bound_value, "source_tag": cert.bound_source},
        "avoidance": cert.avoidance,
        "checks": cert.checks,
        "seed": cert.seed,
        "version": cert.version,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> dict:
    """Parse certificate JSON, validating the field skeleton."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseFormError(f"certificate is not valid JSON: {err}") from err
    required = {"input", "n", "d", "terms", "residual", "cat_ranks",
                "bound", "avoidance", "checks", "seed", "version"}
    if not isinstance(payload, dict) or not required.issubset(payload):
        missing = required - set(payload) if isinstance(payload, dict) else required
        raise ParseFormError(
            f"certificate is missing fields: {', '.join(sorted(missing))}")
    return payload


def replay(payload: dict, tol: float = RESIDUAL_TOL) -> Certificate:
    """Re-run every check of a parsed certificate from its raw data.

    The input form is re-parsed, the terms are rebuilt, the avoidance
    generators are re-parsed, and verify_decomposition runs afresh; the
    recorded bound rides along unchanged.  The caller compares validity
    (and, if it wants, the serialized bytes).
    """
    n = int(payload["n"])
    d = int(payload["d"])
    f = parse_form(payload["input"], n, d)
    terms = []
    for entry in payload["terms"]:
        coeff = _decode_scalar(entry["coeff"])
        coords = tuple(_decode_scalar(c) for c in entry["point"])
        terms.append(Term(coeff, ProjectivePoint(coords)))
    dec = Decomposition(n, d, tuple(terms), {"route": "replayed"})
    avoid = None
    if payload["avoidance"] is not None:
        gens = tuple(parse_form(g, n) for g in payload["avoidance"]["generators"])
        avoid = AvoidanceSet(n, gens)
    bound = (int(payload["bound"]["value"]), str(payload["bound"]["source_tag"]))
    return verify_decomposition(f, dec, tol=tol, avoid=avoid,
                                seed=int(payload["seed"]), bound=bound)
