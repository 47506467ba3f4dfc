import json
import math

import pytest

from dilation_systems.bivariate import BivariateDirichletSeries
from dilation_systems.dirichlet import DirichletSeries
from dilation_systems.formats import (
    CoefficientFileError,
    dumps_json,
    dumps_key_value_csv,
    dumps_table_csv,
    format_coefficients,
    parse_coefficients,
    read_coefficients,
    write_coefficients,
)


def test_parse_univariate_with_comments():
    text = "# header\n1 1.0 0\n\n2 -0.5 2  # trailing\n"
    assert parse_coefficients(text) == DirichletSeries({1: 1, 2: -0.5 + 2j})


def test_parse_bivariate():
    assert parse_coefficients("1 1 4 0\n2 3 0 -1\n") == BivariateDirichletSeries({(1, 1): 4, (2, 3): -1j})


@pytest.mark.parametrize("text,line,fragment", [
    ("1 1 0\n2 x 0\n", 2, "not a number"),
    ("1 1\n", 1, "3 or 4 fields"),
    ("1 1 0\n1 1 1 0\n", 2, "mixed"),
    ("0 1 0\n", 1, ">= 1"),
    ("1.5 1 0\n", 1, "integer"),
    ("1 1 0\n1 2 0\n", 2, "duplicate"),
    ("1 nan 0\n", 1, "non-finite"),
])
def test_malformed_records_report_line(text, line, fragment):
    with pytest.raises(CoefficientFileError) as info:
        parse_coefficients(text, "f.txt")
    assert info.value.line == line
    assert f"f.txt:{line}:" in str(info.value) and fragment in str(info.value)


@pytest.mark.parametrize("text", ["", "# only a comment\n", "1 0 0\n"])
def test_empty_input_rejected(text):
    with pytest.raises(CoefficientFileError):
        parse_coefficients(text)


def test_round_trip(tmp_path):
    for s in (DirichletSeries({1: 0.1, 7: -2j}), BivariateDirichletSeries({(2, 5): 1 + 1j})):
        p = tmp_path / "c.txt"
        write_coefficients(s, p)
        assert read_coefficients(p) == s
    assert format_coefficients(DirichletSeries({3: 0.1})) == "3 0.1 0.0\n"


def test_missing_file():
    with pytest.raises(CoefficientFileError):
        read_coefficients("/nonexistent/coeffs.txt")


def test_json_handles_non_finite_and_sorts():
    text = dumps_json({"b": math.inf, "a": [1.5, math.nan], "c": 1j})
    data = json.loads(text)
    assert data == {"a": [1.5, "nan"], "b": "inf", "c": [0.0, 1.0]}
    assert text.index('"a"') < text.index('"b"')


def test_csv_helpers():
    assert dumps_table_csv(["N", "x"], [[1, 0.5], [2, math.inf]]) == "N,x\n1,0.5\n2,inf\n"
    kv = dumps_key_value_csv({"r": {"v": 1}, "rows": [{"N": 2}]})
    assert kv.splitlines() == ["key,value", "r.v,1", "rows.0.N,2"]
