import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dfrechet.curveio import (CurveFileError, format_csv, format_json, parse_csv, parse_json,
                              read_curves, write_curves)


def test_csv_single_curve_and_comments():
    text = "# a comment\nx,y\n0,0\n\n  # indented comment\n1.5,2\n"
    curves = parse_csv(text)
    assert list(curves) == ["curve"]
    assert curves["curve"].tolist() == [[0.0, 0.0], [1.5, 2.0]]


def test_csv_named_curves_keep_order():
    text = "name,x,y,z\nb,0,0,0\na,1,1,1\nb,2,2,2\n"
    curves = parse_csv(text)
    assert list(curves) == ["b", "a"]
    assert curves["b"].shape == (2, 3)


@pytest.mark.parametrize("text", [
    "", "# only\n", "x,z\n1,2\n", "name,x,y\na,1\n", "x,y\n1,abc\n", "x,y\n1,nan\n",
    "y,x\n1,2\n"])
def test_csv_errors(text):
    with pytest.raises(CurveFileError):
        parse_csv(text)


def test_json_schema():
    doc = {"curves": [{"name": "p", "dim": 2, "vertices": [[0, 0], [1, 0]]},
                      {"name": "q", "dim": 2, "vertices": [[0, 1]]}]}
    curves = parse_json(json.dumps(doc))
    assert list(curves) == ["p", "q"] and curves["q"].shape == (1, 2)


@pytest.mark.parametrize("doc", [
    "[1, 2]", "{}", "not json",
    '{"curves": [{"name": "p", "vertices": [[0, 0]]}]}',
    '{"curves": [{"name": "p", "dim": 3, "vertices": [[0, 0]]}]}',
    '{"curves": [{"name": "p", "dim": 2, "vertices": [[0, 0]]},'
    ' {"name": "p", "dim": 2, "vertices": [[1, 1]]}]}',
    '{"curves": [{"name": "p", "dim": 2, "vertices": [[0, 0]]},'
    ' {"name": "q", "dim": 3, "vertices": [[1, 1, 1]]}]}',
    '{"curves": []}'])
def test_json_errors(doc):
    with pytest.raises(CurveFileError):
        parse_json(doc)


def test_mixed_dimensions_rejected_on_write():
    with pytest.raises(CurveFileError):
        format_csv({"a": [[0, 0]], "b": [[0, 0, 0]]})
    with pytest.raises(CurveFileError):
        format_json({"a": [[0, 0]], "b": [[0, 0, 0]]})


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
curve_sets = st.integers(1, 5).flatmap(lambda d: st.dictionaries(
    st.text("abcxyz_", min_size=1, max_size=6),
    arrays(np.float64, st.tuples(st.integers(1, 8), st.just(d)), elements=finite),
    min_size=1, max_size=3))


@settings(max_examples=200, deadline=None)
@given(curve_sets)
def test_round_trip_exact(curves):
    for fmt, parse in ((format_csv, parse_csv), (format_json, parse_json)):
        back = parse(fmt(curves))
        assert list(back) == list(curves)
        for k in curves:
            np.testing.assert_array_equal(back[k], curves[k])
        assert fmt(back) == fmt(curves)


def test_seventeen_digit_decimals_round_trip():
    text = "x,y\n0.10000000000000001,-123456.78901234567\n3.141592653589793,2.718281828459045\n"
    c = parse_csv(text)["curve"]
    again = parse_csv(format_csv({"curve": c}))["curve"]
    np.testing.assert_array_equal(c, again)


def test_files(tmp_path):
    curves = {"a": np.arange(6.0).reshape(3, 2), "b": np.ones((2, 2))}
    for ext in (".csv", ".json"):
        path = tmp_path / f"c{ext}"
        write_curves(path, curves)
        back = read_curves(path)
        assert list(back) == ["a", "b"]
        np.testing.assert_array_equal(back["a"], curves["a"])
    with pytest.raises(CurveFileError):
        write_curves(tmp_path / "c.txt", curves)
    (tmp_path / "c.txt").write_text("x,y\n0,0\n")
    with pytest.raises(CurveFileError):
        read_curves(tmp_path / "c.txt")
    with pytest.raises(OSError):
        read_curves(tmp_path / "missing.csv")
