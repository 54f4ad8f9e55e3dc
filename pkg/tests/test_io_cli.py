import json

import pytest

from setmaxima.cli import main
from setmaxima.generators import gen_convex_instance, gen_keys
from setmaxima.geomlattice import induced_system
from setmaxima.instance_io import (
    InputError,
    ProblemInstance,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    save_instance,
)
from setmaxima.setsystem import system_from_lists

TWO_SQUARES = {
    "n": 3,
    "sets": [[0, 1], [1, 2]],
    "keys": [3, 1, 2],
    "geometry": {
        "points": [[1, 1], [3, 3], [5, 5]],
        "polygons": [
            [[0, 0], [4, 0], [4, 4], [0, 4]],
            [[2, 2], [6, 2], [6, 6], [2, 6]],
        ],
        "k": 4,
    },
}


def test_round_trip_abstract(tmp_path):
    system = system_from_lists(5, [{0, 1}, {2, 3, 4}])
    pinst = ProblemInstance(system=system, keys=gen_keys(5, 1))
    path = tmp_path / "inst.json"
    save_instance(path, pinst)
    loaded = load_instance(path)
    assert loaded.system.sets == system.sets
    assert loaded.keys.oracle_keys() == pinst.keys.oracle_keys()
    assert loaded.geometry is None


def test_round_trip_geometric(tmp_path):
    inst = gen_convex_instance(n=40, m=5, k=4, seed=2)
    pinst = ProblemInstance(
        system=induced_system(inst), keys=gen_keys(40, 3), geometry=inst
    )
    path = tmp_path / "geo.json"
    save_instance(path, pinst)
    loaded = load_instance(path)
    assert loaded.system.sets == pinst.system.sets
    assert loaded.geometry.polygons == inst.polygons
    assert loaded.geometry.k == inst.k


def test_two_squares_document():
    pinst = instance_from_dict(TWO_SQUARES)
    assert pinst.system.sets == (frozenset({0, 1}), frozenset({1, 2}))
    assert pinst.geometry.k == 4


def test_geometry_set_mismatch_rejected():
    doc = json.loads(json.dumps(TWO_SQUARES))
    doc["sets"] = [[0, 1], [2]]
    with pytest.raises(InputError, match="disagrees"):
        instance_from_dict(doc)


def test_bad_documents_rejected():
    with pytest.raises(InputError):
        instance_from_dict([1, 2])
    with pytest.raises(InputError):
        instance_from_dict({"n": 3})
    with pytest.raises(InputError):
        instance_from_dict({"n": 3, "sets": [[0], [0]]})  # duplicate sets
    with pytest.raises(InputError):
        instance_from_dict({"n": 2, "sets": [[0, 1]], "keys": [1, 2, 3]})
    bad_poly = json.loads(json.dumps(TWO_SQUARES))
    bad_poly["geometry"]["polygons"][0] = [[0, 0], [4, 0], [8, 0]]
    with pytest.raises(InputError):
        instance_from_dict(bad_poly)


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"n": 3, "sets": [[0, 1],')
    with pytest.raises(InputError, match="line 1 column"):
        load_instance(path)


# ------------------------------------------------------------------------ CLI


def test_cli_gen_solve_verify_pipeline(tmp_path, capsys):
    path = tmp_path / "inst.json"
    assert main(["gen", "--kind", "convex", "--n", "80", "--m", "6", "--k", "4",
                 "--seed", "11", "--out", str(path)]) == 0
    assert main(["solve", str(path), "--algo", "lattice"]) == 0
    record = json.loads(capsys.readouterr().out.strip())
    assert record["ok"] is True
    assert record["algorithm"] == "lattice"
    assert record["comparisons"] <= record["bound"]
    assert main(["verify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "VERIFY PASS" in out


def test_cli_two_squares_verify(tmp_path, capsys):
    path = tmp_path / "two_squares.json"
    path.write_text(json.dumps(TWO_SQUARES))
    assert main(["verify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "cover sizes: max=2 (k=4)" in out
    assert "fallbacks=0" in out


def test_cli_bench_exit_1_on_bad_record(tmp_path, capsys, monkeypatch):
    import setmaxima.bench as bench_mod
    import setmaxima.cli as cli_mod
    from setmaxima.bench import BenchRecord

    def fake_run_bench(config, out=None):
        return [
            BenchRecord("x-n1-m1-s0", 1, 1, 1, None, "lattice", 5, 4, 1.25, False)
        ]

    monkeypatch.setattr(cli_mod, "run_bench", fake_run_bench)
    assert main(["bench", "--kind", "abstract", "--n", "10",
                 "--out", str(tmp_path / "b.csv")]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_solve_all_algorithms(tmp_path, capsys):
    path = tmp_path / "inst.json"
    main(["gen", "--kind", "abstract", "--n", "30", "--m", "5",
          "--seed", "3", "--out", str(path)])
    capsys.readouterr()
    for algo in ("lattice", "sort", "bucket", "brute"):
        assert main(["solve", str(path), "--algo", algo]) == 0
        assert json.loads(capsys.readouterr().out)["algorithm"] == algo


def test_cli_solve_cover_modes(tmp_path, capsys):
    path = tmp_path / "inst.json"
    main(["gen", "--kind", "convex", "--n", "60", "--m", "6", "--seed", "8",
          "--out", str(path)])
    capsys.readouterr()
    for cover in ("greedy", "exact", "geometric"):
        assert main(["solve", str(path), "--algo", "lattice", "--cover", cover]) == 0
        assert json.loads(capsys.readouterr().out)["ok"] is True


def test_cli_geometric_cover_needs_geometry(tmp_path, capsys):
    path = tmp_path / "abs.json"
    main(["gen", "--kind", "abstract", "--n", "10", "--m", "3",
          "--seed", "6", "--out", str(path)])
    capsys.readouterr()
    assert main(["solve", str(path), "--cover", "geometric"]) == 2


def test_cli_corrupt_json_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    assert main(["verify", str(path)]) == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_cli_missing_file_exit_2(tmp_path):
    assert main(["solve", str(tmp_path / "absent.json")]) == 2


def test_cli_missing_keys_needs_seed(tmp_path, capsys):
    path = tmp_path / "nokeys.json"
    path.write_text(json.dumps({"n": 3, "sets": [[0, 1], [1, 2]]}))
    assert main(["solve", str(path)]) == 2
    assert main(["solve", str(path), "--seed", "4"]) == 0


def test_cli_bucket_hint_when_m_large(tmp_path, capsys):
    path = tmp_path / "wide.json"
    main(["gen", "--kind", "abstract", "--n", "16", "--m", "10",
          "--seed", "5", "--out", str(path)])
    capsys.readouterr()
    assert main(["solve", str(path), "--algo", "bucket"]) == 0
    err = capsys.readouterr().err
    assert "hint" in err and "log2" in err


def test_cli_gen_stdout(capsys):
    assert main(["gen", "--kind", "abstract", "--n", "4", "--m", "2",
                 "--seed", "1", "--out", "-"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 4 and len(doc["sets"]) == 2 and len(doc["keys"]) == 4


def test_cli_verify_detects_solver_mismatch(tmp_path, capsys, monkeypatch):
    # force a wrong answer to confirm exit code 1 plumbing
    import setmaxima.bench as bench_mod

    path = tmp_path / "inst.json"
    main(["gen", "--kind", "abstract", "--n", "10", "--m", "3",
          "--seed", "2", "--out", str(path)])
    capsys.readouterr()

    real = bench_mod.solve_sort

    def lying_sort(system, keys, ledger=None):
        res = real(system, keys, ledger)
        wrong = tuple((e + 1) % system.n for e in res.maxima)
        return type(res)(res.algorithm, wrong, res.comparisons, res.bound)

    monkeypatch.setattr(bench_mod, "solve_sort", lying_sort)
    assert main(["verify", str(path)]) == 1
    assert "DISAGREE" in capsys.readouterr().out
