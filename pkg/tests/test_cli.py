"""End-to-end runs of the command line interface, in process."""

import json
from fractions import Fraction

import pytest

from maxtope.cli import main
from maxtope.candidate import phi
from maxtope.network import sample_network

SQUARE_NET = {
    "type": [2, 2],
    "A": [[[1, 0], [0, 1]]],
    "B": [[[-1, 0], [0, -1]]],
    "C": [1, 1],
}


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def cube_json(rx, ry, rz):
    verts = [
        [sx * rx, sy * ry, sz * rz]
        for sx in (-1, 1)
        for sy in (-1, 1)
        for sz in (-1, 1)
    ]
    return {"vertices": verts}


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out else None
    return code, report, captured.err


def rat(x):
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def candidate_json(p):
    mat = lambda M: [[rat(x) for x in row] for row in M]
    return {
        "d": p.d,
        "n": p.n,
        "m": p.m,
        "u": mat(p.u),
        "v": mat(p.v),
        "w": mat(p.w),
        "s": mat(p.s),
        "t": mat(p.t),
    }


def test_build_reports_f_vector(tmp_path, capsys):
    net = write_json(tmp_path / "net.json", SQUARE_NET)
    code, report, err = run(capsys, ["build", "--network", net])
    assert code == 0
    assert report["command"] == "build"
    assert report["outputs"]["f_vector"] == [4, 4]
    assert "wall time" in err
    assert "wall_time" not in report


def test_build_round_trips_through_analyze(tmp_path, capsys):
    net = write_json(tmp_path / "net.json", SQUARE_NET)
    out = tmp_path / "poly.json"
    code, _, _ = run(capsys, ["build", "--network", net, "--out", str(out)])
    assert code == 0
    stored = json.loads(out.read_text())
    assert sorted(map(tuple, stored["vertices"])) == [
        ("-1", "-1"), ("-1", "1"), ("1", "-1"), ("1", "1")
    ]
    code, report, _ = run(capsys, ["analyze", str(out), "--fvector"])
    assert code == 0
    assert report["outputs"]["f_vector"] == [4, 4]


def test_analyze_cube(tmp_path, capsys):
    poly = write_json(tmp_path / "cube.json", cube_json(1, 1, 1))
    code, report, _ = run(
        capsys, ["analyze", poly, "--fvector", "--cubical", "--dual"]
    )
    assert code == 0
    out = report["outputs"]
    assert out["f_vector"] == [8, 12, 6]
    assert out["cubical"] is True
    assert out["dual_f_vector"] == [6, 12, 8]


def test_analyze_dual_needs_interior_origin(tmp_path, capsys):
    shifted = {"vertices": [[10, 0], [12, 0], [10, 2], [12, 2]]}
    poly = write_json(tmp_path / "shifted.json", shifted)
    code, _, err = run(capsys, ["analyze", poly, "--dual"])
    assert code == 2
    assert "error" in err


def test_analyze_writes_off(tmp_path, capsys):
    poly = write_json(tmp_path / "cube.json", cube_json(1, 1, 1))
    off = tmp_path / "cube.off"
    code, report, _ = run(capsys, ["analyze", poly, "--off", str(off)])
    assert code == 0
    text = off.read_text()
    assert text.startswith("OFF")
    assert "8 6 12" in text.splitlines()[2]


def test_export_off(tmp_path, capsys):
    poly = write_json(tmp_path / "cube.json", cube_json(2, 1, 1))
    off = tmp_path / "out.off"
    code, report, _ = run(capsys, ["export-off", poly, "--out", str(off)])
    assert code == 0
    assert off.read_text().startswith("OFF")


def test_separating_box_pair(tmp_path, capsys):
    p1 = write_json(tmp_path / "b1.json", cube_json(2, 2, 1))
    p2 = write_json(tmp_path / "b2.json", cube_json(1, 1, 2))
    code, report, _ = run(capsys, ["separating", p1, p2])
    assert code == 0
    out = report["outputs"]
    assert out["general_position"] is True
    assert out["label_counts"]["split"] == 16
    assert out["complex"]["components"] == 2
    assert out["complex"]["euler_characteristic"] == 0
    assert out["complex"]["f_vector"] == [8, 8]


def test_separating_rejects_different_fans(tmp_path, capsys):
    p1 = write_json(tmp_path / "b1.json", cube_json(1, 1, 1))
    p2 = write_json(
        tmp_path / "simplex.json",
        {"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    )
    code, _, err = run(capsys, ["separating", p1, p2])
    assert code == 2
    assert "error" in err


def test_bicolor_bound_square(tmp_path, capsys):
    z = write_json(tmp_path / "gens.json", {"generators": [[1, 0], [0, 1]]})
    code, report, _ = run(capsys, ["bicolor-bound", "--zonotope", z])
    assert code == 0
    out = report["outputs"]
    assert out["facets"] == 4
    assert out["cells"] == 4
    assert out["max_bicolored"] == 4
    assert sorted(set(out["witness_coloring"])) == ["a", "b"]


def test_bicolor_bound_with_budget(tmp_path, capsys):
    z = write_json(tmp_path / "gens.json", {"generators": [[1, 0], [0, 1], [1, 1]]})
    code, report, _ = run(capsys, ["bicolor-bound", "--zonotope", z, "--budget", "0"])
    assert code == 0
    assert report["outputs"]["max_bicolored"] == 6


def test_sample_is_deterministic(tmp_path, capsys):
    argv = ["sample-zonoboxtope", "--d", "2", "--n", "3", "--trials", "5", "--seed", "1"]
    code, _, _ = run(capsys, argv)
    assert code == 0
    first = main(argv)
    out1 = capsys.readouterr().out
    main(argv)
    out2 = capsys.readouterr().out
    assert first == 0
    assert out1 == out2
    main(argv + ["--jobs", "2"])
    out3 = capsys.readouterr().out
    slim = json.loads(out1)
    slim["inputs"].pop("jobs", None)
    par = json.loads(out3)
    par["inputs"].pop("jobs", None)
    assert par == slim


def test_sample_reports_witness(tmp_path, capsys):
    out_file = tmp_path / "best.json"
    code, report, _ = run(
        capsys,
        [
            "sample-zonoboxtope", "--d", "2", "--n", "3",
            "--trials", "3", "--seed", "7", "--out", str(out_file),
        ],
    )
    assert code == 0
    out = report["outputs"]
    assert out["best_f0"] == len(out["witness"]["vertices"])
    assert len(out["witness_segments"]) == 3
    stored = json.loads(out_file.read_text())
    assert stored["vertices"] == out["witness"]["vertices"]


def test_realizability_of_network_image(tmp_path, capsys):
    p = phi(sample_network((2, 1, 2), 3))
    cand = write_json(tmp_path / "cand.json", candidate_json(p))
    code, report, _ = run(capsys, ["realizability", "--candidate", cand])
    assert code == 0
    out = report["outputs"]
    assert out["verdict"] == "realized"
    assert out["rank_condition"] is True
    assert out["rank"] == 1
    assert out["witness_network"] is not None


def test_extremal_family(tmp_path, capsys):
    code, report, _ = run(capsys, ["extremal", "bd", "--d", "3"])
    assert code == 0
    assert report["outputs"]["f_vector"] == [16, 28, 14]
    code, report, _ = run(capsys, ["extremal", "zonobox2d", "--n", "4"])
    assert code == 0
    assert report["outputs"]["f_vector"] == [16, 16]


def test_reproduce_known_id(capsys):
    code, report, _ = run(capsys, ["reproduce", "thm6.1"])
    assert code == 0
    assert report["outputs"]["passed"] is True


def test_reproduce_unknown_id(capsys):
    code, _, err = run(capsys, ["reproduce", "nope"])
    assert code == 2
    assert "known ids" in err


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = run(capsys, ["analyze", str(bad), "--fvector"])
    assert code == 2
    assert "error" in err


def test_missing_file_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, ["build", "--network", str(tmp_path / "nothere.json")])
    assert code == 2
    assert "error" in err
