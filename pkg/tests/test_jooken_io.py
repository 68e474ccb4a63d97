import json
import warnings

import pytest

from xdpknap.core import Instance
from xdpknap.greedy import greedy_plus
from xdpknap.jooken_io import (
    DataIntegrityWarning,
    HardInstance,
    ParseError,
    evaluate_against_optimum,
    iter_instance_files,
    parse_instance_text,
    parse_jooken,
    serialize_instance,
)
from xdpknap.oracle import exact_exhaustive
from xdpknap.xdp import xdp_solve

FIXTURE = "2\n1 10 5\n2 7 4\n8\n"


@pytest.fixture
def fixture_dir(tmp_path):
    d = tmp_path / "inst_a"
    d.mkdir()
    (d / "test.in").write_text(FIXTURE)
    (d / "outp.out").write_text("10\n")
    return tmp_path


def test_parse_fixture(fixture_dir):
    hi = parse_jooken(fixture_dir / "inst_a" / "test.in")
    assert hi.instance.n == 2 and hi.instance.capacity == 8
    assert hi.instance.items == [(10.0, 5.0), (7.0, 4.0)]
    assert hi.recorded_optimum == 10
    assert hi.recorded_k is None


def test_fixture_optimum_matches_oracle(fixture_dir):
    hi = parse_jooken(fixture_dir / "inst_a" / "test.in")
    assert exact_exhaustive(hi.instance).optimum == hi.recorded_optimum


def test_opt_sibling_and_selection_vector(tmp_path):
    f = tmp_path / "x.in"
    f.write_text(FIXTURE)
    (tmp_path / "x.in.opt").write_text("10\n1 0\n")
    hi = parse_jooken(f)
    assert hi.recorded_optimum == 10 and hi.recorded_k == 1


def test_manifest(tmp_path):
    f = tmp_path / "y.in"
    f.write_text(FIXTURE)
    (tmp_path / "optima.json").write_text(json.dumps({"y.in": 10}))
    assert parse_jooken(f).recorded_optimum == 10


def test_missing_optimum(tmp_path):
    f = tmp_path / "z.in"
    f.write_text(FIXTURE)
    with pytest.raises(ParseError, match="optimum"):
        parse_jooken(f)


@pytest.mark.parametrize(
    "text, line",
    [
        ("2\n1 10 5\n8\n", ":3:"),  # truncated
        ("2\n1 10 5\n2 7\n8\n", ":3:"),  # short row
        ("2\n1 10 5\n2 7 x\n8\n", ":3:"),  # non-numeric
        ("2\n1 10 5\n2 7 4\n", ":3:"),  # capacity missing
        ("", ":1:"),
        ("2 3\n", ":1:"),
        ("1\n1 1 1\n99999999999999999999\n", ":3:"),  # beyond 2**53
    ],
)
def test_parse_errors_name_line(text, line):
    with pytest.raises(ParseError, match=line):
        parse_instance_text(text, "f.in")


def test_round_trip(fixture_dir):
    hi = parse_jooken(fixture_dir / "inst_a" / "test.in")
    again = Instance.from_json(hi.instance.to_json())
    assert again == hi.instance
    assert parse_instance_text(serialize_instance(again)) == hi.instance


def test_evaluate():
    hi = HardInstance(Instance.from_items([(1, 1)], 1), 100.0, "mem")
    assert evaluate_against_optimum(hi, 100) == 0
    assert evaluate_against_optimum(hi, 99) == pytest.approx(0.01)
    with pytest.warns(DataIntegrityWarning):
        assert evaluate_against_optimum(hi, 101) < 0
    with pytest.raises(ValueError):
        evaluate_against_optimum(HardInstance(hi.instance, 0.0, "mem"), 1)


def test_sandwich_on_fixture(fixture_dir):
    hi = parse_jooken(fixture_dir / "inst_a" / "test.in")
    sol = xdp_solve(hi.instance)
    assert sol.S <= hi.recorded_optimum <= greedy_plus(hi.instance).pmax
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert evaluate_against_optimum(hi, sol.S) == 0


def test_iter_files(fixture_dir):
    assert [p.name for p in iter_instance_files(fixture_dir)] == ["test.in"]
