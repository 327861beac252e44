import json

import pytest
from pydantic import ValidationError

from logring.cli.expressions import InputError
from logring.data.presets import preset_fan
from logring.models.io_models import ExpressionFile, FanFile, SncFile
from logring.services.log_ring import LogClass, chi_log
from logring.services.motive_ring import SymbolTableError
from logring.services.snc_calculator import snc_class
from logring.utils.loaders import (
    detect_input_kind,
    expression_from_model,
    fan_to_model,
    load_fan,
    load_json,
    load_snc,
    snc_from_model,
    write_fan,
)


def write_json(path, data):
    path.write_text(json.dumps(data))
    return path


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "dim": 2,\n  "rays": [1, 0]]\n}')
    with pytest.raises(InputError) as excinfo:
        load_json(path)
    assert excinfo.value.line == 3
    assert str(excinfo.value).startswith(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_json(tmp_path / "absent.json")


@pytest.mark.parametrize(
    "data, kind",
    [({"dim": 1, "rays": [], "cones": []}, "fan"), ({"dim": 1, "components": []}, "snc"), ({"expr": "P"}, "expr")],
)
def test_detect_input_kind(data, kind):
    assert detect_input_kind(data) == kind


def test_detect_rejects_other_documents():
    with pytest.raises(InputError):
        detect_input_kind([1, 2])
    with pytest.raises(InputError):
        detect_input_kind({"name": "P2"})


def test_fan_file_round_trip(tmp_path):
    fan = preset_fan("P1xP1")
    path = tmp_path / "fan.json"
    write_fan(path, fan)
    assert load_fan(path) == fan
    assert fan_to_model(fan).cones == [[0, 2], [0, 3], [1, 2], [1, 3]]


@pytest.mark.parametrize(
    "data",
    [
        {"dim": 2, "rays": [[1.0, 0]], "cones": [[0]]},
        {"dim": 2, "rays": [[True, 0]], "cones": [[0]]},
        {"dim": 2, "rays": [[1, 0]], "cones": [[0]], "extra": 1},
        {"dim": -1, "rays": [], "cones": []},
    ],
)
def test_fan_files_are_strict(data):
    with pytest.raises(ValidationError):
        FanFile.model_validate(data)


def test_snc_file_with_symbols(tmp_path):
    path = write_json(
        tmp_path / "curve.json",
        {
            "dim": 1,
            "components": ["p"],
            "strata": {"": "C - 1", "p": "1"},
            "symbols": [
                {
                    "name": "C",
                    "e_poly": [[0, 0, 1], [1, 0, -1], [0, 1, -1], [1, 1, 1]],
                    "dimension": 1,
                    "smooth_projective": True,
                }
            ],
        },
    )
    spec = load_snc(path)
    assert "C" in spec.table
    assert snc_class(spec) == LogClass(spec.table.symbol("C") - 1, spec.table.one())


def test_closed_snc_file(tmp_path):
    path = write_json(
        tmp_path / "triangle.json",
        {
            "dim": 2,
            "components": ["x", "y", "z"],
            "closed": True,
            "strata": {"": "L^2+L+1", "x": "L+1", "y": "L+1", "z": "L+1", "x,y": "1", "x,z": "1", "y,z": "1"},
        },
    )
    spec = load_snc(path)
    assert spec.interior() == spec.table.gm() * spec.table.gm()


def test_duplicate_strata_keys(tmp_path):
    path = write_json(tmp_path / "dup.json", {"dim": 2, "components": ["a", "b"], "strata": {"a,b": "1", "b,a": "1"}})
    with pytest.raises(InputError, match="listed twice"):
        load_snc(path)


def test_stratum_parse_errors_name_the_stratum(tmp_path):
    path = write_json(tmp_path / "bad.json", {"dim": 1, "components": ["a"], "strata": {"a": "L +"}})
    with pytest.raises(InputError, match=r"\['a'\]:1:4:"):
        load_snc(path)


def test_snc_rejects_p_in_strata():
    with pytest.raises(InputError):
        snc_from_model(SncFile(dim=1, components=[], strata={"": "P"}))


def test_expression_file(tmp_path):
    path = write_json(
        tmp_path / "expr.json",
        {"expr": "E*P", "symbols": [{"name": "E", "e_poly": [[0, 0, 1], [1, 1, 1]], "dimension": 1}]},
    )
    value = expression_from_model(ExpressionFile.model_validate(load_json(path)), source=str(path))
    assert value == LogClass(value.table.zero(), value.table.symbol("E"))


def test_declared_empty_symbols():
    symbols = [{"name": "Z", "e_poly": [], "dimension": 0, "empty": True}]
    model = ExpressionFile.model_validate({"expr": "Z*P + 1", "symbols": symbols})
    value = expression_from_model(model)
    assert chi_log(value) == 1
    symbols[0]["empty"] = False
    with pytest.raises(SymbolTableError, match="not declared empty"):
        expression_from_model(ExpressionFile.model_validate({"expr": "Z", "symbols": symbols}))
