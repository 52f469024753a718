import json

import numpy as np
import pytest

from pseudospec.certify import ToleranceProfile, decide
from pseudospec.serialization import (
    FormatError,
    certificate_to_doc,
    dump_matrix,
    dumps_canonical,
    load_matrix,
    matrix_from_doc,
    matrix_to_doc,
)


def test_matrix_round_trip():
    rng = np.random.default_rng(0)
    M = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    out = matrix_from_doc(matrix_to_doc(M))
    assert np.array_equal(out, M)  # float repr round-trips losslessly


def test_matrix_file_round_trip(tmp_path):
    path = tmp_path / "m.json"
    M = np.array([[1.0 + 2.0j, 0.5], [-1.0, 3.0 - 0.25j]])
    dump_matrix(M, path)
    assert np.array_equal(load_matrix(path), M)
    # serialization is deterministic
    text1 = path.read_text()
    dump_matrix(M, path)
    assert path.read_text() == text1


def test_matrix_from_doc_validation():
    good = matrix_to_doc(np.eye(2))
    for mutate in (
        lambda d: d.pop("rows"),
        lambda d: d.update(rows=0),
        lambda d: d.update(entries=[[0.0, 0.0]]),
        lambda d: d.update(entries=[[0.0], [0.0], [0.0], [0.0]]),
        lambda d: d.update(entries=[[0.0, float("nan")]] * 4),
    ):
        doc = json.loads(json.dumps(good))
        mutate(doc)
        with pytest.raises(FormatError):
            matrix_from_doc(doc)


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"rows": 2,\n "cols": }')
    with pytest.raises(FormatError) as err:
        load_matrix(path)
    assert "line 2" in str(err.value)


def test_certificate_document_shape():
    doc = certificate_to_doc(decide(np.eye(2)))
    assert doc["verdict"] == "pseudo_hermitian"
    assert doc["spectral_table"] == [{"E": [1.0, 0.0], "d": 2, "p_list": [1, 1]}]
    assert doc["pairing"]["ok"] is True
    assert set(doc["residuals"]) == {
        "anti_ph",
        "X_involution",
        "X_commute",
        "eta_hermitian",
        "eta_intertwine",
        "gamma_intertwine",
        "reconstruction",
    }
    assert doc["tolerances"] == ToleranceProfile().as_dict()
    assert set(doc["witnesses"]) == {"S", "Theta", "tau0", "tau", "C0", "eta0", "X0", "X", "eta"}
    for w in doc["witnesses"].values():
        assert set(w) == {"rows", "cols", "entries"}


def test_witnesses_absent_unless_pseudo_hermitian():
    doc = certificate_to_doc(decide(np.diag([1.0 + 1j, 2.0])))
    assert doc["verdict"] == "not_pseudo_hermitian"
    assert "witnesses" not in doc
    assert "no conjugate partner" in doc["pairing"]["detail"]


def test_canonical_dump_round_trips_bytewise():
    doc = certificate_to_doc(decide(np.diag([1.0, -2.0, 0.5])))
    text = dumps_canonical(doc)
    again = dumps_canonical(json.loads(text))
    assert again == text
