import json
from fractions import Fraction

import pytest

from isopair.classify import (
    InternalInconsistencyError,
    MultiplicityVector,
    conjugated_model,
    invariants,
    multiplicities,
    pair_from_multiplicities,
    random_pair,
)
from isopair.instances import (
    ClassificationReport,
    DocumentError,
    InstanceDocument,
    format_rational,
    parse_rational,
)
from isopair.presymplectic import LinearMap
from isopair.linalg import Matrix


# -- rational strings -----------------------------------------------------------

def test_parse_rational_accepted_forms():
    assert parse_rational("3") == 3
    assert parse_rational("-7") == -7
    assert parse_rational("3/7") == Fraction(3, 7)
    assert parse_rational("-10/4") == Fraction(-5, 2)


@pytest.mark.parametrize("bad", ["", "1.5", "1e3", "3/-7", "+-2", "a", "1/0", "2/ 3"])
def test_parse_rational_rejected_forms(bad):
    with pytest.raises(DocumentError):
        parse_rational(bad)


def test_format_round_trip():
    for q in (Fraction(0), Fraction(-3), Fraction(22, 7), Fraction(-9, 4)):
        assert parse_rational(format_rational(q)) == q


# -- documents -------------------------------------------------------------------

def test_document_round_trip_is_byte_exact():
    for seed in range(20):
        dim = seed % 9
        pair, _ = random_pair(dim, 2 * min(seed % 3, dim // 2), seed=seed)
        doc = InstanceDocument.from_pair(pair)
        text = doc.to_json_text()
        assert InstanceDocument.from_json_text(text).to_json_text() == text


def test_poisson_document_round_trip():
    pair, truth = random_pair(6, 4, seed="pd")
    doc = InstanceDocument.from_pair_dualized(pair)
    assert doc.mode == "poisson"
    text = doc.to_json_text()
    again = InstanceDocument.from_json_text(text)
    assert again.to_json_text() == text
    dual = again.classified_pair()
    assert multiplicities(dual).entries == truth.entries


def test_document_field_order_is_canonical():
    pair = pair_from_multiplicities(MultiplicityVector.unit(5))
    doc = InstanceDocument.from_pair(pair)
    scrambled = json.dumps({
        "b": [["1", "0", "1"]],
        "form": [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]],
        "a": [["1", "0", "0"]],
        "dim": 3,
        "mode": "presymplectic",
    })
    assert InstanceDocument.from_json_text(scrambled).to_json_text() == doc.to_json_text()


def test_document_is_valid_json():
    pair, _ = random_pair(5, 2, seed=3)
    text = InstanceDocument.from_pair(pair).to_json_text()
    raw = json.loads(text)
    assert raw["mode"] == "presymplectic" and raw["dim"] == 5


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.pop("mode"), "mode"),
    (lambda d: d.update(mode="sympl"), "mode"),
    (lambda d: d.update(dim=-1), "dim"),
    (lambda d: d.pop("a"), "'a'"),
    (lambda d: d.update(form=[["0"]]), "form"),
    (lambda d: d.update(extra=1), "unknown"),
    (lambda d: d["a"].append(["1", "0"]), "'a'"),
])
def test_document_validation_names_the_field(mutate, message):
    pair = pair_from_multiplicities(MultiplicityVector.unit(5))
    raw = json.loads(InstanceDocument.from_pair(pair).to_json_text())
    mutate(raw)
    with pytest.raises(DocumentError, match=message):
        InstanceDocument.from_json_text(json.dumps(raw))


def test_json_syntax_error_reports_position():
    with pytest.raises(DocumentError, match="line"):
        InstanceDocument.from_json_text('{"mode": "presymplectic",')


def test_non_isotropic_document_is_rejected_when_converted():
    text = json.dumps({
        "mode": "presymplectic", "dim": 2,
        "form": [["0", "1"], ["-1", "0"]],
        "a": [["1", "0"], ["0", "1"]],
        "b": [],
    })
    doc = InstanceDocument.from_json_text(text)
    from isopair.presymplectic import NotIsotropicError
    with pytest.raises(NotIsotropicError, match="A"):
        doc.to_pair()


def test_zero_dimensional_document():
    pair = pair_from_multiplicities(MultiplicityVector.zero())
    doc = InstanceDocument.from_pair(pair)
    text = doc.to_json_text()
    again = InstanceDocument.from_json_text(text)
    assert again.dim == 0
    assert again.to_pair().dim == 0


# -- reports ---------------------------------------------------------------------

def test_report_serialization_checks_matrix_relation():
    pair = pair_from_multiplicities(MultiplicityVector.unit(6))
    k = invariants(pair).entries
    good = ClassificationReport(k=k, n=MultiplicityVector.unit(6).entries)
    json.loads(good.to_json_text())
    bad = ClassificationReport(k=k, n=MultiplicityVector.unit(7).entries)
    with pytest.raises(InternalInconsistencyError):
        bad.to_json_text()
    with pytest.raises(InternalInconsistencyError):
        bad.to_text()


def test_report_text_and_json_content():
    pair = conjugated_model(MultiplicityVector.unit(9), seed=1)
    k = invariants(pair).entries
    n = multiplicities(pair).entries
    phi = LinearMap(2, 2, Matrix.identity(2))
    report = ClassificationReport(k=k, n=n, summand_dims=(0,) * 8 + (2, 0),
                                  witness=phi)
    text = report.to_text()
    assert "k = " in text and "witness matrix" in text
    raw = json.loads(report.to_json_text())
    assert raw["k"] == list(k)
    assert raw["witness"]["matrix"] == [["1", "0"], ["0", "1"]]
