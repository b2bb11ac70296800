import json
from fractions import Fraction

import pytest

from waring.avoidance import AvoidanceSet
from waring.binary import decompose_binary, decompose_binary_avoiding, rank_binary
from waring.certify import (
    BOUND_BINARY_OPEN,
    BOUND_WITNESS_CLAIM,
    Certificate,
    from_json,
    rank_bracket,
    replay,
    to_json,
    verify_decomposition,
)
from waring.decomposition import Decomposition, Term
from waring.errors import DimensionMismatch, ParseFormError, PreconditionError
from waring.forms import Form, ProjectivePoint, parse_form, random_form

F = Fraction


def make_cert(seed=0):
    # rational kernel roots, so the whole pipeline stays exact
    f = parse_form("x0^3 + x1^3", 2)
    dec = decompose_binary(f, seed=seed)
    return f, dec, verify_decomposition(f, dec, seed=seed)


def make_float_cert(seed=0):
    # irrational kernel roots force the float backend
    f = parse_form("x0^3 + 6*x0*x1^2", 2)
    dec = decompose_binary(f, seed=seed)
    return f, dec, verify_decomposition(f, dec, seed=seed)


# -- verification ----------------------------------------------------------------


def test_valid_certificate_checks():
    f, dec, cert = make_cert()
    assert cert.valid
    names = [c["name"] for c in cert.checks]
    assert names == ["nonzero-coefficients", "distinct-points", "residual",
                     "size-within-bound"]
    assert cert.residual <= 1e-8
    assert cert.decomposition is dec
    assert cert.cat_ranks == [(1, 2), (2, 2)]
    assert "VALID" in cert.summary()


def test_invalid_when_perturbed():
    f, dec, _ = make_cert()
    bad_terms = (Term(dec.terms[0].coeff + F(1, 1000), dec.terms[0].point),) \
        + dec.terms[1:]
    bad = Decomposition(2, 3, bad_terms)
    cert = verify_decomposition(f, bad)
    assert not cert.valid
    failed = {c["name"] for c in cert.checks if not c["pass"]}
    assert failed == {"residual"}
    assert "INVALID" in cert.summary()


def test_zero_coefficient_detected():
    f = parse_form("x0^2", 2)
    dec = Decomposition(2, 2, (
        Term(F(1), ProjectivePoint((F(1), F(0)))),
        Term(F(0), ProjectivePoint((F(1), F(1)))),
    ))
    cert = verify_decomposition(f, dec)
    failed = {c["name"] for c in cert.checks if not c["pass"]}
    assert "nonzero-coefficients" in failed


def test_coincident_points_detected():
    f = parse_form("x0^2", 2)
    dec = Decomposition(2, 2, (
        Term(F(1, 2), ProjectivePoint((F(1), F(0)))),
        Term(F(1, 2), ProjectivePoint((F(2), F(0)))),
    ))
    cert = verify_decomposition(f, dec)
    failed = {c["name"] for c in cert.checks if not c["pass"]}
    assert "distinct-points" in failed


def test_avoidance_check_and_report():
    f = parse_form("x0^5 + x1^5", 2)
    X = AvoidanceSet.from_points([(F(1), F(3))])
    dec = decompose_binary_avoiding(f, X, seed=1)
    cert = verify_decomposition(f, dec, avoid=X)
    assert cert.valid
    assert cert.avoidance is not None
    assert len(cert.avoidance["evaluations"]) == dec.size
    # planting a forbidden point flips the avoidance check
    bad = Decomposition(2, 5, dec.terms[:-1] + (
        Term(F(1), ProjectivePoint((F(1), F(3)))),))
    cert2 = verify_decomposition(f, bad, avoid=X)
    failed = {c["name"] for c in cert2.checks if not c["pass"]}
    assert "avoidance" in failed


def test_trivial_avoidance_not_reported():
    f, dec, _ = make_cert()
    cert = verify_decomposition(f, dec, avoid=AvoidanceSet.none(2))
    assert cert.avoidance is None
    assert all(c["name"] != "avoidance" for c in cert.checks)


def test_bound_check_and_claim_tags():
    f, dec, _ = make_cert()
    tight = verify_decomposition(f, dec, bound=(dec.size, BOUND_BINARY_OPEN))
    assert tight.valid
    broken = verify_decomposition(f, dec, bound=(dec.size - 1, BOUND_BINARY_OPEN))
    assert not broken.valid
    # claim tags are recorded but never size-checked
    claimed = verify_decomposition(f, dec, bound=(dec.size - 1, BOUND_WITNESS_CLAIM))
    assert claimed.valid
    assert all(c["name"] != "size-within-bound" for c in claimed.checks)
    assert claimed.bound_source == BOUND_WITNESS_CLAIM


def test_dimension_mismatch():
    f = parse_form("x0^2 + x1^2", 2)
    dec = Decomposition(2, 3, (Term(F(1), ProjectivePoint((F(1), F(0)))),))
    with pytest.raises(DimensionMismatch):
        verify_decomposition(f, dec)


# -- rank bracket ------------------------------------------------------------------


def test_rank_bracket_binary():
    f = parse_form("x0^3*x1", 2)
    lower, upper, dec = rank_bracket(f)
    assert lower == 2  # every catalecticant of a cusp form has rank two
    assert upper == rank_binary(f) == 4
    assert dec.size == 4


def test_rank_bracket_ternary_quartic():
    f = random_form(3, 4, seed=91)
    lower, upper, dec = rank_bracket(f)
    assert lower <= upper == dec.size <= 8
    assert dec.residual(f) <= 1e-7


def test_rank_bracket_rejects_even_ternary_degrees():
    with pytest.raises(PreconditionError):
        rank_bracket(random_form(3, 6, seed=92))


# -- serialization ------------------------------------------------------------------


def test_json_round_trip_and_byte_stability():
    f, dec, cert = make_cert(seed=5)
    text = to_json(cert)
    # canonical form: no whitespace, sorted keys
    assert " " not in text
    payload = from_json(text)
    assert payload["n"] == 2 and payload["d"] == 3
    # replay reproduces validity and the exact bytes
    cert2 = replay(payload)
    assert cert2.valid == cert.valid
    assert to_json(cert2) == text
    # a second serialization of the original is identical too
    assert to_json(cert) == text


def test_json_schema_keys():
    _, _, cert = make_cert()
    payload = json.loads(to_json(cert))
    assert set(payload) == {"input", "n", "d", "terms", "residual", "cat_ranks",
                            "bound", "avoidance", "checks", "seed", "version"}
    assert set(payload["bound"]) == {"value", "source_tag"}
    for term in payload["terms"]:
        assert set(term) == {"coeff", "point"}
        num, den = term["coeff"]
        assert isinstance(num, int) and isinstance(den, int)


def test_scalar_codec_floats_vs_fractions():
    # exact decomposition round-trips Fractions; floats become [re, im]
    f = parse_form("x0^4 + x1^4", 2)
    dec = decompose_binary(f)
    cert = verify_decomposition(f, dec)
    payload = json.loads(to_json(cert))
    kinds = set()
    for term in payload["terms"]:
        for pair in term["point"]:
            kinds.add("int" if isinstance(pair[0], int) else "float")
    assert kinds  # at least one point serialized
    text = to_json(cert)
    assert to_json(replay(from_json(text))) == text


def test_from_json_rejects_garbage():
    with pytest.raises(ParseFormError):
        from_json("not json at all {")
    with pytest.raises(ParseFormError):
        from_json(json.dumps({"n": 2, "d": 3}))


def test_replay_detects_tampered_terms():
    f, dec, cert = make_cert()
    payload = from_json(to_json(cert))
    payload["terms"][0]["coeff"] = [3, 1]
    tampered = replay(payload)
    assert not tampered.valid


def test_certificate_with_avoidance_round_trips():
    f = parse_form("x0^5 + x1^5", 2)
    X = AvoidanceSet.from_points([(F(1), F(3)), (F(2), F(-1))])
    dec = decompose_binary_avoiding(f, X, seed=3)
    cert = verify_decomposition(f, dec, avoid=X, seed=3)
    text = to_json(cert)
    cert2 = replay(from_json(text))
    assert cert2.valid
    assert to_json(cert2) == text
