import json

import numpy as np
from numpy.testing import assert_allclose
from pydantic import ValidationError
from pytest import raises

from codec import (
    EntropySeriesPayload,
    FockSpecPayload,
    MatrixPayload,
    PerturbationSeriesPayload,
    dump_matrix,
    load_matrix,
    load_perturbation_series,
)
from series import EntropySeries, Method, PerturbationSeries
from spectral import validate_perturbation


def test_matrix_payload_row_major():
    payload = MatrixPayload(dim=2, entries=[(1, 0), (0, 2), (0, -2), (3, 0)])
    assert_allclose(payload.to_array(), [[1, 2j], [-2j, 3]])


def test_matrix_payload_wrong_count():
    with raises(ValidationError, match="expected 4 entries"):
        MatrixPayload(dim=2, entries=[(1, 0), (0, 0), (0, 0)])


def test_matrix_payload_rejects_bad_pairs():
    with raises(ValidationError):
        MatrixPayload.model_validate({"dim": 1, "entries": [[1.0, 0.0, 2.0]]})


def test_load_and_dump_matrix(tmp_path):
    path = tmp_path / "h.json"
    h = validate_perturbation([[0.0, 0.1 + 0.05j], [0.1 - 0.05j, 0.0]])
    path.write_text(dump_matrix(h))
    assert json.loads(path.read_text())["dim"] == 2
    assert_allclose(load_matrix(path), h.mat)


def test_perturbation_series_payload(tmp_path):
    h1 = validate_perturbation([[0.0, 0.1], [0.1, 0.0]])
    h2 = validate_perturbation(np.diag([0.01, -0.01]))
    path = tmp_path / "terms.json"
    path.write_text(PerturbationSeriesPayload.from_series(PerturbationSeries(terms=[h1, h2])).model_dump_json())
    arrays = load_perturbation_series(path)
    assert len(arrays) == 2
    assert_allclose(arrays[1], h2.mat)


def test_perturbation_series_payload_needs_terms():
    with raises(ValidationError):
        PerturbationSeriesPayload(terms=[])


def test_fock_spec_payload():
    spec = FockSpecPayload.model_validate({"v": 0.5, "alpha": [0.0, 1.0], "D": 40}).to_spec()
    assert spec.alpha == 1j
    assert spec.D == 40
    assert FockSpecPayload(v=0.3).to_spec().alpha == 1.0


def test_fock_spec_payload_range():
    with raises(ValidationError):
        FockSpecPayload(v=1.0)
    with raises(ValidationError):
        FockSpecPayload(v=0.5, D=1)


def test_entropy_series_payload():
    series = EntropySeries(base_entropy=1.0, coeffs=[0.0, -0.5], methods=[Method.CLOSED_FORM, Method.QUADRATURE])
    data = json.loads(EntropySeriesPayload.from_series(series).model_dump_json())
    assert data["s0"] == 1.0
    assert data["methods"] == [Method.CLOSED_FORM.value, Method.QUADRATURE.value]
    assert data["exact"] is None
