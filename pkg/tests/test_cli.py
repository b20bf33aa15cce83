import io
import json
import os
import subprocess
import sys

import pytest

from absorb_lab.cli import run

from .golden_data import GOLDEN, Z8_SPEC


def call(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


@pytest.fixture
def z8(tmp_path):
    p = tmp_path / "z8.json"
    p.write_text(json.dumps(Z8_SPEC))
    return str(p)


def test_classify_golden(z8):
    code, out = call(["classify", "--in", z8])
    assert code == 0
    assert out == (GOLDEN / "cli_classify_z8.json").read_text()
    row = json.loads(out)["instances"][0]["results"][0]
    assert set(row["module_level"]) >= {"s_one_abs_primary", "s_one_abs_prime", "prime"}
    assert row["module_level"]["s_one_abs_primary"]["witness_s"] == 1


def test_classify_regular_matches_ideal_level(z8):
    _, out = call(["classify", "--in", z8])
    row = json.loads(out)["instances"][0]["results"][0]
    for p, rep in row["ideal_level"].items():
        assert rep["holds"] == row["module_level"][p]["holds"]


def test_construct_golden():
    code, out = call(["construct", "--kind", "idealization", "--ring", "zn:2", "--module", "zn:2"])
    assert code == 0 and out == (GOLDEN / "cli_construct_idealization.json").read_text()
    ring = json.loads(out)["ring"]
    assert ring["kind"] == "table" and len(ring["add"]) == 4


def test_construct_retabulates(z8, tmp_path):
    code, out = call(["construct", "--in", z8])
    assert code == 0
    p = tmp_path / "table.json"
    p.write_text(out)
    _, a = call(["classify", "--in", z8])
    _, b = call(["classify", "--in", str(p)])
    strip = lambda s: [r["module_level"] for r in json.loads(s)["instances"][0]["results"]]
    assert strip(a) == strip(b)


def test_list_submodules(z8):
    code, out = call(["list-submodules", "--in", z8, "--format", "text"])
    assert code == 0 and "4 submodules" in out


def test_verify_exit_codes(tmp_path):
    good = tmp_path / "good.json"
    good.write_text('{"ring": {"kind": "zn", "n": 6}}')
    code, out = call(["verify", "--in", str(good), "--suite", "char,cq,Tq"])
    assert code == 0 and json.loads(out)["refuted"] == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"ring": {"kind": "zn", "n": 10}}')
    code, out = call(["verify", "--in", str(bad), "--suite", "ns", "--format", "text"])
    assert code == 1 and "REFUTED ns" in out


def test_input_errors(tmp_path, z8, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"ring":\n')
    assert call(["classify", "--in", str(broken)])[0] == 2
    assert "line 2" in capsys.readouterr().err
    assert call(["classify", "--in", str(tmp_path / "missing.json")])[0] == 2
    assert call(["verify", "--in", z8, "--suite", "nope"])[0] == 2
    assert call(["verify", "--bounds", "8,16"])[0] == 2
    assert call(["search", "prime"])[0] == 2
    assert call(["construct", "--kind", "quotient", "--ring", "zn:6"])[0] == 2
    assert call(["frobnicate"])[0] == 2


def test_search_strict():
    code, out = call(["search", "one_abs_primary", "s_one_abs_primary", "--bounds", "6,8,0", "--strict"])
    assert code == 1 and json.loads(out)["result"]["status"] == "exhausted"
    code, _ = call(["search", "s_one_abs_primary", "s_one_abs_prime", "--bounds", "12,12,0", "--strict"])
    assert code == 0


def test_output_file_and_stability(tmp_path, z8):
    target = tmp_path / "out.json"
    assert call(["classify", "--in", z8, "--out", str(target)]) == (0, "")
    assert target.read_text() == call(["classify", "--in", z8])[1]


def test_parallel_verify_matches_serial(tmp_path):
    doc = {"version": 1, "instances": [{"id": f"z{n}", "ring": {"kind": "zn", "n": n}} for n in (4, 6, 8, 9)]}
    p = tmp_path / "many.json"
    p.write_text(json.dumps(doc))
    outs = []
    for threads in ("1", "3"):
        env = dict(os.environ, ABSORB_LAB_THREADS=threads)
        res = subprocess.run([sys.executable, "-m", "absorb_lab", "verify", "--in", str(p), "--suite", "core"],
                             capture_output=True, env=env)
        assert res.returncode in (0, 1)
        outs.append(res.stdout)
    assert outs[0] == outs[1]


def test_reading_flag(tmp_path):
    p = tmp_path / "z12.json"
    p.write_text('{"ring": {"kind": "zn", "n": 12}}')
    code, out = call(["verify", "--in", str(p), "--suite", "avoidance", "--reading", "A"])
    doc = json.loads(out)
    assert code == 0 and doc["readings"] == ["A"]
    code, out_both = call(["verify", "--in", str(p), "--suite", "avoidance", "--reading", "both"])
    assert json.loads(out_both)["reports"][0]["evidence"]["checked"] == 2 * doc["reports"][0]["evidence"]["checked"]
