import json
import subprocess
import sys

import pytest

from prosimpl import io
from prosimpl.category import cospan_category
from prosimpl.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_USAGE, main, run
from prosimpl.complexes import simplex_complex
from prosimpl.errors import MalformedExpression
from prosimpl.fixtures import fixture_ssets
from prosimpl.simplicial import standard_simplex, validate

FIX = io.fixture_path


def test_sset_round_trip():
    for X in fixture_ssets().values():
        data = io.sset_to_json(X)
        Y = io.sset_from_json(data)
        assert Y.simplices == X.simplices and Y.faces == X.faces
        assert io.dumps(io.sset_to_json(Y)) == io.dumps(data)


def test_complex_and_category_round_trip():
    K = simplex_complex(2)
    assert io.complex_from_json(io.complex_to_json(K)).counts() == K.counts()
    C = cospan_category()
    D = io.category_from_json(io.category_to_json(C))
    assert D.validate() == [] and sorted(D.objects) == sorted(C.objects)


def test_fixture_refs_resolve():
    f = io.smap_from_json(str(FIX("map_points")))
    assert f.source.counts() == (2,)
    kind, obj = io.load_any(FIX("promap_id"))
    assert kind == "promap"


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MalformedExpression):
        io.read_json(p)


def test_cli_sd_counts():
    r = run(["sd", "--input", str(FIX("delta2"))])
    assert r.code == EXIT_OK and r.record["counts"] == [7, 12, 6]
    r = run(["sd", "--input", str(FIX("bdelta2")), "--iterations", "2"])
    assert r.record["levels"] == [[6, 6], [12, 12]]


def test_cli_homology_rp2(tmp_path):
    r = run(["homology", str(FIX("rp2")), "--matrices", str(tmp_path)])
    assert r.code == EXIT_OK
    assert [d["group"] for d in r.record["degrees"]] == ["Z", "Z/2", "0"]
    assert any(tmp_path.iterdir())


def test_cli_check_proeq_identity():
    r = run(["check-proeq", "--promap", str(FIX("promap_id")), "--fibrant", str(FIX("bz2")),
             "--nmax", "1", "--sdmax", "1"])
    assert r.code == EXIT_OK and r.record["status"] == "NoObstructionFound"
    r = run(["check-proeq", "--promap", str(FIX("promap_collapse")), "--fibrant", str(FIX("bz2"))])
    assert r.record["status"] == "NotProEquivalence"


def test_cli_exit_codes(tmp_path):
    assert run([]).code == EXIT_USAGE
    assert run(["sd"]).code == EXIT_USAGE
    assert run(["frobnicate"]).code == EXIT_USAGE
    bad = tmp_path / "bad.json"
    data = io.sset_to_json(standard_simplex(2))
    data["faces"]["012"][0] = {"degens": [], "base": "01"}
    bad.write_text(json.dumps(data))
    r = run(["validate", str(bad)])
    assert r.code == EXIT_INVALID and r.record["violations"][0]["where"] == "012"
    r = run(["--max-simplices", "20", "sd", "--input", str(FIX("delta3")), "--iterations", "2"])
    assert r.code == EXIT_BUDGET


def test_cli_validate_all_fixtures():
    for p in sorted(FIX("delta0").parent.glob("*.json")):
        r = run(["validate", str(p)])
        assert r.code == EXIT_OK, (p.name, r.summary)


def test_cli_outputs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["sd", "--input", str(FIX("torus")), "--output", str(a)])
    run(["sd", "--input", str(FIX("torus")), "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert validate(io.sset_from_json(a)) == []


def test_cli_corner_and_refine():
    r = run(["corner-test", "--inclusion", str(FIX("inclusion_b1_d1")), "--fibrant", str(FIX("bz2"))])
    assert r.code == EXIT_OK and r.record["success"]
    r = run(["refine-solve", "--inclusion", str(FIX("inclusion_filtered")), "--fibrant",
             str(FIX("two_points")), "--index", "0", "--n", "0", "--map", str(FIX("map_points")),
             "--colim-dim", "1"])
    assert r.code == EXIT_OK, r.summary


def test_main_writes_json(capsys):
    code = main(["--meta", "nerve", "--input", str(FIX("interval"))])
    out, err = capsys.readouterr()
    assert code == 0 and json.loads(out)["counts"] == [2, 1]
    assert "elapsed_s" in err


def test_console_script_runs():
    res = subprocess.run([sys.executable, "-m", "prosimpl.cli", "validate", str(FIX("circle"))],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["valid"]
