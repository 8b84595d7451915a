import json
import math

import numpy as np
import pytest

from nonharmonic import canonicalize, coefficients, save_model, write_coefficients_csv
from nonharmonic.cli import compare_models, main, parse_indices
from nonharmonic.errors import TermCountMismatchError
from nonharmonic.model import CosineTerm

from conftest import exp1_model, exp2_model


def test_parse_indices_range():
    assert parse_indices("1..5") == [1, 2, 3, 4, 5]


def test_parse_indices_mixed():
    assert parse_indices("0,2..4,9") == [0, 2, 3, 4, 9]


def test_parse_indices_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        parse_indices("1,1")
    with pytest.raises(ValueError):
        parse_indices("5..1")
    with pytest.raises(ValueError):
        parse_indices("")


def test_synth_reconstruct_compare_round_trip(tmp_path):
    model_path = tmp_path / "truth.json"
    csv_path = tmp_path / "coeffs.csv"
    report_path = tmp_path / "report.json"
    recovered_path = tmp_path / "recovered.json"
    table_path = tmp_path / "table.json"

    save_model(exp1_model(), 4.0, model_path)
    assert main(["synth", str(model_path), "--indices", "1..20", "--out", str(csv_path)]) == 0
    assert (
        main(
            [
                "reconstruct",
                str(csv_path),
                "--period",
                "4",
                "--out",
                str(report_path),
                "--model-out",
                str(recovered_path),
            ]
        )
        == 0
    )
    report = json.loads(report_path.read_text())
    assert report["converged"] is True
    assert report["sigma"] == [4, 20]
    assert report["selection_order"][:2] == [4, 20]

    assert main(["compare", str(model_path), str(recovered_path), "--out", str(table_path)]) == 0
    table = json.loads(table_path.read_text())
    assert table["max_d_freq"] <= 1e-8
    assert table["max_d_phase"] <= 1e-8
    assert table["max_d_gamma"] <= 1e-8
    assert len(table["terms"]) == 6


def test_reconstruct_experiment2_fixture(tmp_path):
    csv_path = tmp_path / "exp2.csv"
    report_path = tmp_path / "report.json"
    write_coefficients_csv(coefficients(exp2_model(), 1.0, range(1, 41)), csv_path)
    assert main(["reconstruct", str(csv_path), "--period", "1", "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["froissart_removed"] == 1
    assert report["sigma"] == [4]


def test_reconstruct_too_few_rows(tmp_path):
    csv_path = tmp_path / "small.csv"
    csv_path.write_text("n,re,im\n1,1.0,0.0\n2,0.5,0.0\n")
    code = main(["reconstruct", str(csv_path), "--period", "1", "--out", str(tmp_path / "r.json")])
    assert code == 3


def test_reconstruct_exact_k1(tmp_path):
    model = canonicalize([CosineTerm(1.0, math.sqrt(2.0))])
    csv_path = tmp_path / "k1.csv"
    write_coefficients_csv(coefficients(model, 1.0, [1, 2, 3]), csv_path)
    report_path = tmp_path / "report.json"
    assert main(["reconstruct", str(csv_path), "--period", "1", "--out", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["converged"] is True
    assert len(report["model"]["terms"]) == 1


def test_synth_malformed_model(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code = main(["synth", str(bad), "--indices", "1..5", "--out", str(tmp_path / "c.csv")])
    assert code == 3


def test_synth_include_c0(tmp_path):
    model_path = tmp_path / "m.json"
    save_model(canonicalize([], ), 1.0, model_path)
    out = tmp_path / "c.csv"
    assert main(["synth", str(model_path), "--indices", "1..3", "--include-c0", "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[1].startswith("0,")
    assert len(lines) == 5


def test_coeffs_alias(tmp_path):
    model_path = tmp_path / "m.json"
    save_model(exp1_model(), 4.0, model_path)
    out = tmp_path / "c.csv"
    assert main(["coeffs", str(model_path), "--indices", "1..4", "--out", str(out)]) == 0
    assert len(out.read_text().strip().splitlines()) == 5


def test_compare_identical_models_all_zero():
    model = exp1_model()
    table = compare_models(model, model)
    assert table["max_d_freq"] == 0.0
    assert table["max_d_phase"] == 0.0
    assert table["max_d_gamma"] == 0.0


def test_compare_term_count_mismatch(tmp_path):
    a = canonicalize([CosineTerm(1.0, math.sqrt(2.0)), CosineTerm(1.0, math.sqrt(3.0))])
    b = canonicalize([CosineTerm(1.0, math.sqrt(2.0))])
    with pytest.raises(TermCountMismatchError) as err:
        compare_models(a, b)
    assert len(err.value.args[1]["terms"]) == 1

    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    save_model(a, 1.0, pa)
    save_model(b, 1.0, pb)
    assert main(["compare", str(pa), str(pb), "--out", str(tmp_path / "t.json")]) == 2


def test_compare_phase_wraps_mod_2pi():
    a = canonicalize([CosineTerm(1.0, math.sqrt(2.0), 1e-11)])
    b = canonicalize([CosineTerm(1.0, math.sqrt(2.0), 2 * math.pi - 1e-11)])
    table = compare_models(a, b)
    assert table["max_d_phase"] <= 3e-11


def test_missing_csv_is_input_error(tmp_path):
    code = main(["reconstruct", str(tmp_path / "nope.csv"), "--period", "1", "--out", str(tmp_path / "r.json")])
    assert code == 3
