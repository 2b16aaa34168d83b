"""Command-line interface: outputs, round trips, exit codes."""

import json

from sandnara.cli import main
from sandnara.qt import narayana_poly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestStabilize:
    def test_worked_example(self, capsys):
        data = run_json(
            capsys, "stabilize", "--m", "3", "--n", "4", "--heights", "2,0,3,2,1,3"
        )
        assert data["heights"] == [1, 3, 1, 0, 2, 1]

    def test_identity_on_stable(self, capsys):
        data = run_json(
            capsys, "stabilize", "--m", "2", "--n", "2", "--heights", "1,1,0"
        )
        assert data["heights"] == [1, 1, 0]
        assert data["topple_counts"] == [0, 0, 0]

    def test_malformed_heights_exit_2(self, capsys):
        code, _, err = run(
            capsys, "stabilize", "--m", "3", "--n", "4", "--heights", "1,2"
        )
        assert code == 2
        assert "error" in err

    def test_newline_terminated_json(self, capsys):
        code, out, _ = run(
            capsys, "stabilize", "--m", "2", "--n", "2", "--heights", "0,0,0"
        )
        assert code == 0 and out.endswith("\n")
        json.loads(out)


class TestCheck:
    def test_recurrent_with_trace(self, capsys):
        data = run_json(
            capsys,
            "check", "recurrent",
            "--m", "3", "--n", "4",
            "--heights", "0,2,1,2,1,2",
            "--verbose",
        )
        assert data["result"] is True
        assert data["trace"]["waves"] == [
            {"side": "bottom", "vertices": [4, 6]},
            {"side": "top", "vertices": [2]},
            {"side": "bottom", "vertices": [3, 5]},
            {"side": "top", "vertices": [1]},
        ]

    def test_all_zero_not_recurrent(self, capsys):
        data = run_json(
            capsys, "check", "recurrent", "--m", "2", "--n", "2", "--heights", "0,0,0"
        )
        assert data["result"] is False

    def test_minanz_square_example(self, capsys):
        data = run_json(
            capsys, "check", "minanz", "--n", "5", "--heights", "4,3,4,1,0,2,1,4,1"
        )
        assert data["result"] is True

    def test_top_heavy(self, capsys):
        data = run_json(
            capsys,
            "check", "top-heavy",
            "--n", "8",
            "--heights", "4,7,7,1,4,1,7,0,2,4,7,2,4,2,4",
        )
        assert data["result"] is True


class TestMap:
    def test_to_matrix_worked_example(self, capsys):
        data = run_json(
            capsys,
            "map", "to-matrix",
            "--n", "8",
            "--heights", "4,5,6,1,4,5,4,0,7,1,1,4,6,1,7",
        )
        assert data == {
            "k": 4,
            "rows": [
                [[], [], [], [3]],
                [[], [], [], [2, 6]],
                [[1, 7], [5], [], []],
                [[], [], [4], []],
            ],
        }

    def test_to_matrix_round_trip(self, capsys):
        fwd = run_json(
            capsys, "map", "to-matrix", "--n", "5", "--heights", "4,3,4,1,0,2,1,4,1"
        )
        back = run_json(
            capsys, "map", "to-matrix", "--inverse", "--input", json.dumps(fwd)
        )
        assert back["heights"] == [4, 3, 4, 1, 0, 2, 1, 4, 1]

    def test_to_poset_inverse_worked_example(self, capsys):
        poset = {
            "n": 7,
            "downsets": [[], [3], [2, 3, 5, 7]],
            "levels": [[2, 3, 7], [1, 5], [4, 6]],
        }
        data = run_json(
            capsys, "map", "to-poset", "--inverse", "--input", json.dumps(poset)
        )
        assert data["heights"] == [4, 7, 7, 1, 4, 1, 7, 0, 2, 4, 7, 2, 4, 2, 4]

    def test_to_poset_round_trip(self, capsys):
        fwd = run_json(
            capsys,
            "map", "to-poset",
            "--n", "8",
            "--heights", "4,7,7,1,4,1,7,0,2,4,7,2,4,2,4",
        )
        back = run_json(
            capsys, "map", "to-poset", "--inverse", "--input", json.dumps(fwd)
        )
        assert back["heights"] == [4, 7, 7, 1, 4, 1, 7, 0, 2, 4, 7, 2, 4, 2, 4]

    def test_to_polyomino_and_back(self, capsys):
        fwd = run_json(
            capsys,
            "map", "to-polyomino",
            "--m", "3", "--n", "4",
            "--heights", "0,2,1,2,1,2",
        )
        assert fwd["is_polyomino"] is True
        back = run_json(
            capsys, "map", "to-polyomino", "--inverse", "--input", json.dumps(
                {k: fwd[k] for k in ("m", "n", "upper", "lower")}
            )
        )
        assert back["heights"] == [0, 2, 1, 1, 2, 2]  # increasing representative

    def test_upsilon_inverse_gives_min_weight_shape(self, capsys):
        ribbon = {"m": 2, "n": 2, "upper": "NENE", "lower": "EENN"}
        data = run_json(
            capsys, "map", "upsilon", "--inverse", "--input", json.dumps(ribbon)
        )
        poly_in = run_json(
            capsys, "map", "upsilon", "--input", json.dumps(data)
        )
        assert poly_in == ribbon

    def test_to_dyck_and_back(self, capsys):
        fwd = run_json(
            capsys, "map", "to-dyck", "--n", "7", "--heights", "5,5,3,2,2,1"
        )
        assert fwd == {"n": 6, "word": "SSWWSWSSWSWW"}
        back = run_json(
            capsys, "map", "to-dyck", "--inverse", "--input", json.dumps(fwd)
        )
        assert back["heights"] == [5, 5, 3, 2, 2, 1]

    def test_bad_json_exit_2(self, capsys):
        code, _, err = run(capsys, "map", "upsilon", "--input", "{not json")
        assert code == 2


class TestPoly:
    def test_matrix_format(self, capsys):
        data = run_json(
            capsys, "poly", "--m", "2", "--n", "2", "--format", "matrix"
        )
        assert data == {"shift": [3, 3], "matrix": [[1, 1], [1, 0]]}

    def test_sparse_default(self, capsys):
        data = run_json(capsys, "poly", "--m", "1", "--n", "1")
        assert data == {"terms": [{"q": 1, "t": 1, "c": "1"}]}

    def test_series_matches_enumeration(self, capsys):
        data = run_json(capsys, "poly", "--series", "F3", "--order", "6")
        for n in range(1, 7):
            got = data["coefficients"][n]
            want = narayana_poly(3, n).to_sparse_json()
            assert got == want

    def test_transfer_method(self, capsys):
        data = run_json(
            capsys, "poly", "--m", "3", "--n", "5", "--method", "transfer"
        )
        assert data == narayana_poly(3, 5).to_sparse_json()

    def test_csv_format(self, capsys):
        code, out, _ = run(
            capsys, "poly", "--m", "2", "--n", "2", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "q,t,c"
        assert len(lines) == 4

    def test_resource_limit_exit_3(self, capsys):
        code, _, err = run(
            capsys, "poly", "--m", "8", "--n", "40", "--max-objects", "10"
        )
        assert code == 3
        assert "resource-limit" in err


class TestVerify:
    def test_counts(self, capsys):
        data = run_json(capsys, "verify", "counts", "--max", "6")
        assert data["passed"] is True
        assert data["failures"] == 0

    def test_symmetry(self, capsys):
        data = run_json(
            capsys, "verify", "symmetry", "--max-sum", "7", "--transfer-m", "3"
        )
        assert data["passed"] is True

    def test_olson(self, capsys):
        data = run_json(capsys, "verify", "olson", "--max", "5")
        assert data["passed"] is True

    def test_conjecture_reported_not_asserted(self, capsys):
        code, out, _ = run(capsys, "verify", "conjecture-a145600", "--max", "4")
        assert code == 0  # mismatches are reported, never asserted
        data = json.loads(out)
        flags = {c["name"]: c["holds"] for c in data["checks"]}
        assert flags["conjecture-a145600 n=2"] is True
        assert flags["conjecture-a145600 n=3"] is False

    def test_kn_area(self, capsys):
        data = run_json(capsys, "verify", "kn-area", "--max", "5")
        assert data["passed"] is True

    def test_abelian_seeded(self, capsys):
        data = run_json(
            capsys,
            "verify", "abelian",
            "--m", "3", "--n", "3", "--samples", "10", "--seed", "5",
        )
        assert data["passed"] is True

    def test_jobs_flag(self, capsys):
        data = run_json(
            capsys, "verify", "symmetry", "--max-sum", "6", "--jobs", "2"
        )
        assert data["passed"] is True

    def test_env_cap_exit_3(self, capsys, monkeypatch):
        monkeypatch.setenv("SANDPILE_MAX_OBJECTS", "2")
        code, _, err = run(capsys, "poly", "--m", "3", "--n", "3")
        assert code == 3
        assert "resource-limit" in err

    def test_bad_jobs_exit_2(self, capsys):
        code, _, err = run(
            capsys, "verify", "counts", "--max", "4", "--jobs", "0"
        )
        assert code == 2
