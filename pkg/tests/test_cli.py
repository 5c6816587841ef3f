import json
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "cat0"]


def run_cli(args, stdin_text=None):
    return subprocess.run(
        CMD + args,
        input=stdin_text,
        capture_output=True,
        text=True,
        timeout=120,
    )


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


RTREE_DISTANCE = {
    "space": {"kind": "rtree"},
    "x": [2, "2/3"],
    "y": [3, 1],
}


# ---------------------------------------------------------------------------
# happy paths


def test_distance_exact_rational_output(tmp_path):
    res = run_cli(["distance", write(tmp_path, "d.json", RTREE_DISTANCE)])
    assert res.returncode == 0, res.stderr
    assert res.stdout == '{\n  "value": "5/3"\n}\n'


def test_stdin_dash(tmp_path):
    res = run_cli(["distance", "-"], stdin_text=json.dumps(RTREE_DISTANCE))
    assert res.returncode == 0
    assert json.loads(res.stdout)["value"] == "5/3"


def test_quasi_zero_vector(tmp_path):
    inst = {
        "space": {"kind": "euclidean", "dim": 2},
        "x": [1, 1], "y": [1, 1], "u": [0, 0], "v": [3, 4],
    }
    res = run_cli(["quasi", write(tmp_path, "q.json", inst)])
    assert res.returncode == 0
    assert json.loads(res.stdout)["value"] == 0


def test_geodesic_exact_fractions(tmp_path):
    inst = {
        "space": {"kind": "euclidean", "dim": 2},
        "x": [0, 0], "y": [2, 2], "t": "1/4",
    }
    res = run_cli(["geodesic", write(tmp_path, "g.json", inst)])
    assert res.returncode == 0
    assert json.loads(res.stdout)["point"] == ["1/2", "1/2"]


def test_pair_command(tmp_path):
    inst = {
        "space": {"kind": "euclidean", "dim": 2},
        "xd": {"terms": [{"coeff": 2, "a": [0, 0], "b": [1, 0]}]},
        "x": [0, 0], "y": [3, 5],
    }
    res = run_cli(["pair", write(tmp_path, "p.json", inst)])
    assert res.returncode == 0
    assert json.loads(res.stdout)["value"] == 6


def test_fitz_empty_graph_neg_inf(tmp_path):
    inst = {
        "space": {"kind": "euclidean", "dim": 2},
        "graph": {"pairs": []},
        "p": [0, 0],
        "query": {"x": [1, 0], "xd": {"terms": []}},
    }
    res = run_cli(["fitz", write(tmp_path, "f.json", inst)])
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    assert out["value"] == "-inf"
    assert out["form_agreement"] is True


def test_fitz_reports_three_form_agreement(tmp_path):
    inst = {
        "space": {"kind": "euclidean", "dim": 2},
        "graph": {"pairs": [
            {"x": [0, 0], "xd": {"terms": []}},
            {"x": [1, 0], "xd": {"terms": [{"coeff": 1, "a": [0, 0], "b": [1, 0]}]}},
        ]},
        "p": [0, 0],
        "query": {"x": [1, 1], "xd": {"terms": [{"coeff": 1, "a": [0, 0], "b": [0, 1]}]}},
    }
    res = run_cli(["fitz", write(tmp_path, "f2.json", inst)])
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["form_agreement"] is True
    assert out["universe_label"] == "graph of 2 pairs"


def test_conjugate_with_universe_file(tmp_path):
    table = {
        "space": {"kind": "euclidean", "dim": 2},
        "table": {
            "p": [0, 0],
            "entries": [
                {"x": [1, 0], "xd": {"terms": [{"coeff": 1, "a": [0, 0], "b": [0, 1]}]},
                 "value": 3},
            ],
        },
        "query": {"xd": {"terms": [{"coeff": 2, "a": [0, 0], "b": [1, 0]}]},
                  "x": [0, 5]},
    }
    upath = write(tmp_path, "u.json", {
        "space": {"kind": "euclidean", "dim": 2},
        "pairs": [
            {"x": [1, 0], "xd": {"terms": [{"coeff": 1, "a": [0, 0], "b": [0, 1]}]}},
        ],
    })
    res = run_cli(["conjugate", write(tmp_path, "c.json", table), "--universe", upath])
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    assert out["value"] == 4  # 2 + 5 - 3
    assert out["universe_label"] == "relative universe of 1 pairs"


def test_monotone_check_passing_and_failing(tmp_path):
    good = {
        "space": {"kind": "euclidean", "dim": 2},
        "pairs": [
            {"x": [0, 0], "xd": {"terms": []}},
            {"x": [1, 0], "xd": {"terms": [{"coeff": 1, "a": [0, 0], "b": [1, 0]}]}},
        ],
    }
    res = run_cli(["monotone-check", write(tmp_path, "good.json", good)])
    assert res.returncode == 0
    assert json.loads(res.stdout)["holds"] is True

    bad = {
        "space": {"kind": "euclidean", "dim": 2},
        "pairs": [
            {"x": [0, 0], "xd": {"terms": [{"coeff": 1, "a": [0, 0], "b": [1, 0]}]}},
            {"x": [1, 0], "xd": {"terms": [{"coeff": -1, "a": [0, 0], "b": [1, 0]}]}},
        ],
    }
    res = run_cli(["monotone-check", write(tmp_path, "bad.json", bad)])
    assert res.returncode == 1  # property failure, not usage error
    out = json.loads(res.stdout)
    assert out["holds"] is False and out["witness"] is not None


def test_polar_and_maximal_check(tmp_path):
    universe = {
        "space": {"kind": "euclidean", "dim": 1},
        "pairs": [
            {"x": [0], "xd": {"terms": []}},
            {"x": [1], "xd": {"terms": [{"coeff": 1, "a": [0], "b": [1]}]}},
            {"x": [1], "xd": {"terms": [{"coeff": -1, "a": [0], "b": [1]}]}},
        ],
    }
    upath = write(tmp_path, "u1.json", universe)
    inst = {
        "space": {"kind": "euclidean", "dim": 1},
        "set": [{"x": [0], "xd": {"terms": []}}],
    }
    res = run_cli(["polar", write(tmp_path, "s.json", inst), "--universe", upath])
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["count"] == 2  # the decreasing pair is unrelated to the seed

    ginst = {
        "space": {"kind": "euclidean", "dim": 1},
        "graph": {"pairs": [
            {"x": [0], "xd": {"terms": []}},
            {"x": [1], "xd": {"terms": [{"coeff": 1, "a": [0], "b": [1]}]}},
        ]},
    }
    res = run_cli(["maximal-check", write(tmp_path, "g.json", ginst), "--universe", upath])
    assert res.returncode == 0, res.stderr
    assert json.loads(res.stdout)["holds"] is True


def test_flatness_exit_codes(tmp_path):
    flat = {
        "space": {"kind": "euclidean", "dim": 2},
        "triples": [[[0, 0], [2, 0], [1, 3]]],
    }
    res = run_cli(["flatness", write(tmp_path, "flat.json", flat)])
    assert res.returncode == 0
    curved = {
        "space": {"kind": "rtree"},
        "triples": [[[1, "1/2"], [2, "1/2"], [3, "1/2"]]],
    }
    res = run_cli(["flatness", write(tmp_path, "curv.json", curved)])
    assert res.returncode == 1
    assert json.loads(res.stdout)["holds"] is False


def test_f_property_with_lambda_grid(tmp_path):
    inst = {
        "space": {"kind": "euclidean", "dim": 2},
        "p": [0, 0],
        "set": [
            {"x": [0, 0], "xd": {"terms": []}},
            {"x": [2, 0], "xd": {"terms": [{"coeff": 1, "a": [0, 0], "b": [1, 0]}]}},
        ],
    }
    res = run_cli([
        "f-property", write(tmp_path, "fp.json", inst), "--lambda-grid", "0,1/2,1",
    ])
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    assert out["lower"]["holds"] is True and out["upper"]["holds"] is True


def test_gamma_check_reports_fields(tmp_path):
    inst = {
        "space": {"kind": "euclidean", "dim": 1},
        "table": {
            "p": [0],
            "entries": [
                {"x": [0], "xd": {"terms": []}, "value": 0},
                {"x": [1], "xd": {"terms": [{"coeff": 1, "a": [0], "b": [1]}]},
                 "value": 1},
            ],
        },
    }
    res = run_cli(["gamma-check", write(tmp_path, "gc.json", inst)])
    assert res.returncode in (0, 1)
    out = json.loads(res.stdout)
    for key in ("holds", "proper", "convexity_holds", "fixed_point_holds",
                "worst_defect", "skipped_combinations"):
        assert key in out


# ---------------------------------------------------------------------------
# formats and determinism


def test_csv_format(tmp_path):
    res = run_cli(["distance", write(tmp_path, "d.json", RTREE_DISTANCE),
                   "--format", "csv"])
    assert res.returncode == 0
    assert "value,5/3" in res.stdout


def test_reference_examples_deterministic_and_green():
    first = run_cli(["paper-examples"])
    second = run_cli(["paper-examples"])
    assert first.returncode == 0, first.stderr
    assert second.returncode == 0
    assert first.stdout == second.stdout  # byte identical
    out = json.loads(first.stdout)
    assert out["all_passed"] is True
    assert all(r["status"] == "pass" for r in out["rows"])


def test_reference_examples_csv():
    res = run_cli(["paper-examples", "--format", "csv"])
    assert res.returncode == 0
    header = res.stdout.splitlines()[0]
    assert header == "name,computed,expected,tolerance,status"


# ---------------------------------------------------------------------------
# error handling: exit 2 for usage and input problems


def test_malformed_json_line_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"space": }')
    res = run_cli(["distance", str(path)])
    assert res.returncode == 2
    assert res.stdout == ""
    assert "line 1" in res.stderr and "column" in res.stderr


def test_unknown_command_usage_error():
    res = run_cli(["transmogrify"])
    assert res.returncode == 2


def test_missing_file_is_input_error():
    res = run_cli(["distance", "/nonexistent/instance.json"])
    assert res.returncode == 2
    assert "error" in res.stderr.lower()


def test_off_sheet_hyperbolic_point_reports_defect(tmp_path):
    inst = {
        "space": {"kind": "hyperbolic", "dim": 2},
        "x": [0, 0, 1], "y": [1, 1, 1],
    }
    res = run_cli(["distance", write(tmp_path, "h.json", inst)])
    assert res.returncode == 2
    assert "hyperboloid" in res.stderr


def test_space_mismatch_between_universe_and_instance(tmp_path):
    upath = write(tmp_path, "u.json", {
        "space": {"kind": "rtree"},
        "pairs": [{"x": [1, 0], "xd": {"terms": []}}],
    })
    inst = {
        "space": {"kind": "euclidean", "dim": 1},
        "set": [{"x": [0], "xd": {"terms": []}}],
    }
    res = run_cli(["polar", write(tmp_path, "s.json", inst), "--universe", upath])
    assert res.returncode == 2


def test_schema_errors_capped(tmp_path):
    # fifteen bad points: the report lists ten and summarizes the rest
    inst = {
        "space": {"kind": "euclidean", "dim": 2},
        "pairs": [{"x": [0], "xd": {"terms": []}} for _ in range(15)],
    }
    res = run_cli(["monotone-check", write(tmp_path, "m.json", inst)])
    assert res.returncode == 2
    assert "and 5 more" in res.stderr


def test_missing_required_instance_argument():
    res = run_cli(["distance"])
    assert res.returncode == 2
