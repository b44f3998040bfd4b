"""End-to-end tests of the spflag command-line interface."""

from __future__ import annotations

import io
import json

import pytest

from spflag.cli import EXIT_INFINITE, EXIT_INVALID, EXIT_OK, main
from spflag.compositions import Composition, DimVector
from spflag.exactlin import QQ, Subspace
from spflag.flagobj import Flag, FlagObject, object_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def out_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def line_triple(*vs):
    flags = tuple(
        Flag(QQ, 2, Composition((1, 1)), (Subspace.from_rows(QQ, 2, [v]),))
        for v in vs
    )
    return FlagObject(QQ, 2, flags)


@pytest.fixture
def generic_path(tmp_path):
    p = tmp_path / "generic.json"
    p.write_text(json.dumps(object_to_json(line_triple([1, 0], [0, 1], [1, 1]))))
    return str(p)


@pytest.fixture
def repeated_path(tmp_path):
    p = tmp_path / "repeated.json"
    p.write_text(json.dumps(object_to_json(line_triple([1, 0], [1, 0], [0, 1]))))
    return str(p)


class TestClassify:
    def test_finite(self, capsys):
        code, out, err = run(capsys, "classify", "2,2;2,2;1,1,1,1")
        assert code == EXIT_OK and err == ""
        assert json.loads(out) == {"type": "SpD"}

    def test_infinite_witness(self, capsys):
        code, out, err = run(capsys, "classify", "1,1,1,1;1,1,1,1;1,1,1,1")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["infinite_witness"] == "f1"
        assert "summand" in payload

    def test_bad_dims(self, capsys):
        code, out, err = run(capsys, "classify", "2,2;oops")
        assert code == EXIT_INVALID
        assert json.loads(err)["error"] == "invalid_input"


class TestQformAndDims:
    def test_qform_values(self, capsys):
        code, out, _ = run(capsys, "qform", "1,2,1;1,2,1;1,1,1,1")
        assert code == EXIT_OK
        assert json.loads(out) == {"q": 0, "kac": "Unbounded"}

    def test_qform_positive(self, capsys):
        code, out, _ = run(capsys, "qform", "1,2,1;1,2,1;1,2,1")
        assert code == EXIT_OK
        assert json.loads(out) == {"q": 1, "kac": "AtMostOne"}

    def test_dims_payload(self, capsys):
        code, out, _ = run(capsys, "dims", "2,2;2,2;1,1,1,1")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["flag_dims"] == [3, 3, 4]
        assert payload["total_flag_dim"] == 10
        assert payload["group_dim"] == 10

    def test_dims_rejects_asymmetric_component(self, capsys):
        code, _, err = run(capsys, "dims", "2,1;1,2;3")
        assert code == EXIT_INVALID
        assert json.loads(err)["error"] == "invalid_input"


class TestCount:
    def test_finite_count(self, capsys):
        code, out, _ = run(capsys, "count", "2,2;2,2;1,1,1,1")
        assert code == EXIT_OK
        assert json.loads(out) == {"orbits": "27"}

    def test_infinite_exit_code(self, capsys):
        code, out, err = run(capsys, "count", "2,2;1,1,1,1;1,1,1,1")
        assert code == EXIT_INFINITE and out == ""
        assert json.loads(err)["infinite_witness"] == "f3"


class TestEnumerate:
    def test_stream_and_limit(self, capsys):
        code, out, _ = run(capsys, "enumerate", "1,1;1,1;1,1", "--limit", "3")
        assert code == EXIT_OK
        lines = out_lines(out)
        assert [entry["index"] for entry in lines] == [0, 1, 2]
        for entry in lines:
            assert entry["classes"]

    def test_full_stream(self, capsys):
        code, out, _ = run(capsys, "enumerate", "1,1;1,1;1,1")
        assert code == EXIT_OK
        assert len(out_lines(out)) == 5

    def test_reps_file(self, capsys, tmp_path):
        reps = tmp_path / "reps.json"
        code, out, _ = run(
            capsys, "enumerate", "2,2;2,2;4", "--reps", str(reps)
        )
        assert code == EXIT_OK
        data = json.loads(reps.read_text())
        assert sorted(data) == ["0", "1", "2"]
        for obj in data.values():
            assert obj["field"] == "Q"
            assert obj["ambient_dim"] == 4

    def test_reps_parallel_matches_serial(self, capsys, tmp_path):
        serial, parallel = tmp_path / "s.json", tmp_path / "p.json"
        run(capsys, "enumerate", "1,1;1,1;1,1", "--reps", str(serial))
        run(
            capsys,
            "enumerate", "1,1;1,1;1,1", "--reps", str(parallel), "--jobs", "2",
        )
        assert json.loads(serial.read_text()) == json.loads(parallel.read_text())


class TestRep:
    def test_single_family(self, capsys):
        code, out, _ = run(capsys, "rep", "2,2;2,2;4", "--family", "1")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["family"] == 1
        assert len(payload["classes"]) == 2
        assert payload["object"]["ambient_dim"] == 4

    def test_out_of_range(self, capsys):
        code, _, err = run(capsys, "rep", "2;2;2", "--family", "5")
        assert code == EXIT_INVALID
        assert "out of range" in json.loads(err)["message"]


class TestDecompose:
    def test_from_file(self, capsys, generic_path):
        code, out, _ = run(capsys, "decompose", generic_path)
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["summands"] == [
            {
                "dims": "1,1;1,1;1,1",
                "class_index": 0,
                "kind": "plain",
                "multiplicity": 1,
            }
        ]

    def test_accepts_rep_wrapper_payload(self, capsys, tmp_path):
        code, out, _ = run(capsys, "rep", "1,1;1,1;1,1", "--family", "3")
        assert code == EXIT_OK
        path = tmp_path / "wrapped.json"
        path.write_text(out)
        code, out, _ = run(capsys, "decompose", str(path))
        assert code == EXIT_OK
        summands = json.loads(out)["summands"]
        assert [s["class_index"] for s in summands] == [3]

    def test_from_stdin(self, capsys, monkeypatch, repeated_path):
        with open(repeated_path, "r", encoding="utf-8") as fh:
            text = fh.read()
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        code, out, _ = run(capsys, "decompose", "-")
        assert code == EXIT_OK
        [summand] = json.loads(out)["summands"]
        assert summand["kind"] == "sym"
        assert summand["multiplicity"] == 1

    def test_rejects_non_symplectic_object(self, capsys, tmp_path):
        bad = FlagObject(
            QQ,
            4,
            (
                Flag(
                    QQ,
                    4,
                    Composition((2, 2)),
                    (Subspace.from_rows(QQ, 4, [[1, 0, 0, 0], [0, 0, 0, 1]]),),
                ),
            ),
        )
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(object_to_json(bad)))
        code, _, err = run(capsys, "decompose", str(p))
        assert code == EXIT_INVALID
        assert "not a symplectic" in json.loads(err)["message"]

    def test_rejects_malformed_json(self, capsys, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text("{not json")
        code, _, err = run(capsys, "decompose", str(p))
        assert code == EXIT_INVALID

    def test_rejects_gf_field_flag(self, capsys, generic_path):
        code, _, err = run(capsys, "decompose", generic_path, "--field", "F2")
        assert code == EXIT_INVALID
        assert "over Q only" in json.loads(err)["message"]


class TestIdentify:
    def test_equal_with_certificate(self, capsys, tmp_path, generic_path):
        other = tmp_path / "other.json"
        other.write_text(
            json.dumps(object_to_json(line_triple([1, 0], [0, 1], [2, 3])))
        )
        code, out, _ = run(capsys, "identify", generic_path, str(other))
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["equal"] is True
        cert = payload["certificate"]
        assert cert is not None and len(cert) == 2

    def test_unequal(self, capsys, generic_path, repeated_path):
        code, out, _ = run(capsys, "identify", generic_path, repeated_path)
        assert code == EXIT_OK
        assert json.loads(out) == {"equal": False, "certificate": None}


class TestCensus:
    def test_line_triples(self, capsys):
        code, out, _ = run(capsys, "census", "1,1;1,1;1,1", "--q", "3")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["tuples"] == 64
        assert payload["orbits"] == 6
        assert payload["group_order"] == 24
        assert payload["runtime_ms"] >= 0

    def test_bad_field(self, capsys):
        code, _, err = run(capsys, "census", "1,1;1,1;1,1", "--q", "7")
        assert code == EXIT_INVALID
        assert "census supports q in" in json.loads(err)["message"]


class TestParserBehavior:
    def test_unknown_subcommand(self, capsys):
        code, _, err = run(capsys, "frobnicate", "2;2;2")
        assert code == EXIT_INVALID
        assert json.loads(err)["error"] == "invalid_arguments"

    def test_missing_dims(self, capsys):
        code, _, err = run(capsys, "count")
        assert code == EXIT_INVALID
