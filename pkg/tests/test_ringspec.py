"""Ring description files: grammar, error positions, and sample generation."""

import random

import pytest

from lambdakit.lambdaring import verify_lambda
from lambdakit.ringspec import (
    RingSpecError,
    description_algebra,
    load_ring_spec,
    parse_ring_spec,
    seeded_samples,
)

Z3_TEXT = """\
kind: group-ring
name: R(Z/3)
torsion: 3
"""

TP_TEXT = """\
kind: truncated-polynomial
variable: h
power: 2
sample: 1 + h
"""


def test_group_ring_description_passes_verification():
    desc = parse_ring_spec(Z3_TEXT)
    assert desc.kind == "group-ring"
    assert desc.name == "R(Z/3)"
    report = verify_lambda(desc.spec, desc.samples, k_max=3, l_max=2)
    assert report.passed


def test_integers_description():
    desc = parse_ring_spec("kind: integers\n")
    report = verify_lambda(desc.spec, desc.samples, k_max=3, l_max=2)
    assert report.passed


def test_truncated_polynomial_description():
    desc = parse_ring_spec(TP_TEXT)
    report = verify_lambda(desc.spec, desc.samples, k_max=3, l_max=2)
    assert report.passed
    # the explicit sample line lands in the pool alongside the defaults
    texts = {str(s) for s in desc.samples}
    assert "h + 1" in texts


def test_free_generators_and_explicit_samples():
    desc = parse_ring_spec("kind: group-ring\nfree: 2\nsample: t1*t2 - 1\n")
    report = verify_lambda(desc.spec, desc.samples, k_max=2, l_max=2)
    assert report.passed


def test_comments_and_blank_lines_ignored():
    text = "# header\n\nkind: integers\n  # indented comment\n"
    assert parse_ring_spec(text).kind == "integers"


def test_declared_lambda_value_overrides_structure():
    # a wrong declared value must surface as a verification failure
    desc = parse_ring_spec(
        "kind: group-ring\ntorsion: 2\nlambda 2 of s1: 1\n"
    )
    report = verify_lambda(desc.spec, desc.samples, k_max=2, l_max=2)
    assert not report.passed
    assert "FAIL" in report.format()


def test_declared_lambda_value_matching_structure_still_passes():
    # lambda^2 of a one-dimensional class is zero, so declaring it is harmless
    desc = parse_ring_spec(
        "kind: group-ring\ntorsion: 2\nlambda 2 of s1: 0\n"
    )
    report = verify_lambda(desc.spec, desc.samples, k_max=2, l_max=2)
    assert report.passed


def test_parse_error_carries_line_and_column():
    with pytest.raises(RingSpecError) as exc:
        parse_ring_spec("kind: group-ring\nfree: x\n")
    assert exc.value.line == 2
    assert exc.value.column == 7
    assert "line 2, column 7" in str(exc.value)


def test_unknown_kind_rejected():
    with pytest.raises(RingSpecError) as exc:
        parse_ring_spec("kind: matrix\n")
    assert exc.value.line == 1


def test_missing_kind_rejected():
    with pytest.raises(RingSpecError):
        parse_ring_spec("name: nothing\n")


def test_keys_must_match_kind():
    with pytest.raises(RingSpecError):
        parse_ring_spec("kind: integers\ntorsion: 2\n")
    with pytest.raises(RingSpecError):
        parse_ring_spec("kind: truncated-polynomial\nfree: 1\n")


def test_bad_sample_polynomial_positions():
    with pytest.raises(RingSpecError) as exc:
        parse_ring_spec("kind: group-ring\ntorsion: 2\nsample: s1 +\n")
    assert exc.value.line == 3


def test_load_ring_spec_roundtrip(tmp_path):
    path = tmp_path / "z3.ring"
    path.write_text(Z3_TEXT)
    desc = load_ring_spec(path)
    assert desc.name == "R(Z/3)"


def test_load_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_ring_spec(tmp_path / "absent.ring")


def test_description_algebra_group_ring():
    algebra = description_algebra(parse_ring_spec(Z3_TEXT))
    assert len(algebra.basis) == 3


def test_description_algebra_truncated_polynomial():
    algebra = description_algebra(parse_ring_spec(TP_TEXT))
    assert len(algebra.basis) == 2


def test_description_algebra_rejects_free_part():
    desc = parse_ring_spec("kind: group-ring\nfree: 1\n")
    with pytest.raises(ValueError):
        description_algebra(desc)


def test_seeded_samples_deterministic():
    desc = parse_ring_spec(Z3_TEXT)
    first = seeded_samples(desc, random.Random(99), 6)
    second = seeded_samples(desc, random.Random(99), 6)
    assert [str(s) for s in first] == [str(s) for s in second]
    assert len(first) == 6


def test_seeded_samples_verify():
    desc = parse_ring_spec(Z3_TEXT)
    extra = seeded_samples(desc, random.Random(5), 8)
    report = verify_lambda(desc.spec, desc.samples + extra, k_max=2, l_max=2)
    assert report.passed
