import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracspline import serialize as ser
from fracspline.splines import GridFunction

finite = st.floats(allow_nan=False, allow_infinity=False)


@given(finite)
def test_seventeen_digits_round_trip(x):
    assert float(ser.fmt(x)) == x or x == 0


def test_fmt_examples():
    assert ser.fmt(0.0) == "0"
    assert ser.fmt(-0.0) == "0"
    assert ser.fmt(1.0) == "1"
    assert ser.fmt(0.1) == "0.10000000000000001"


@given(values=st.lists(finite, min_size=1, max_size=20), start=st.floats(-5, 5), step=st.floats(0.001, 2))
def test_real_grid_round_trip(values, start, step, tmp_path_factory):
    path = tmp_path_factory.mktemp("g") / "grid.csv"
    g = GridFunction(start, step, tuple(values))
    ser.write_grid_csv(path, g)
    back = ser.read_grid_csv(path)
    assert back.values == tuple(0.0 if v == 0 else v for v in values)
    assert back.start == start


def test_complex_grid_round_trip(tmp_path):
    g = GridFunction(-1.0, 0.5, (1 + 2j, -0.5j, 3.25 + 0j))
    ser.write_grid_csv(tmp_path / "c.csv", g, x_name="omega")
    text = (tmp_path / "c.csv").read_text()
    assert text.splitlines()[0] == "omega,re,im"
    back = ser.read_grid_csv(tmp_path / "c.csv")
    assert back.values == g.values and back.step == 0.5


def test_bad_header_rejected(tmp_path):
    (tmp_path / "x.csv").write_text("a,b,c,d\n1,2,3,4\n")
    with pytest.raises(ValueError):
        ser.read_grid_csv(tmp_path / "x.csv")


def test_json_conversions():
    obj = {"b": Fraction(3, 7), "a": 1 + 2j, "c": [math.inf, 0.5], "d": (1, 2)}
    text = ser.dumps(obj)
    assert text.index('"a"') < text.index('"b"')
    back = json.loads(text)
    assert back == {"a": [1.0, 2.0], "b": "3/7", "c": ["inf", 0.5], "d": [1, 2]}
    assert ser.parse_fraction(back["b"]) == Fraction(3, 7)


def test_atomic_write_leaves_no_temp_files(tmp_path):
    p = tmp_path / "out.json"
    ser.write_json(p, {"x": 1})
    ser.write_json(p, {"x": 2})
    assert ser.read_json(p) == {"x": 2}
    assert [f.name for f in tmp_path.iterdir()] == ["out.json"]


def test_atomic_write_failure_keeps_old_file(tmp_path):
    p = tmp_path / "out.txt"
    ser.atomic_write_text(p, "old")

    class Boom:
        def __str__(self):
            raise RuntimeError

    with pytest.raises(TypeError):
        ser.atomic_write_text(p, Boom())
    assert p.read_text() == "old"
    assert [f.name for f in tmp_path.iterdir()] == ["out.txt"]
