import io
import json
import shutil
import subprocess

import pytest

from ephi import serialize as ser
from ephi.cli import COMMANDS, run
from ephi.matrix import psi
from ephi.rings import ZZ, LocalizedRing, PolynomialRing

PSI2 = {"ring": "ZZ", "entries": [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]}


def call(tmp_path, command, doc=None, *extra):
    """Run the CLI in-process; returns (status, stdout, stderr)."""
    argv = [command]
    if doc is not None:
        path = tmp_path / f"{command}.json"
        path.write_text(json.dumps(doc))
        argv += ["--input", str(path)]
    argv += list(extra)
    out, err = io.StringIO(), io.StringIO()
    status = run(argv, stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def test_every_command_registered():
    assert set(COMMANDS) == {
        "pfaffian", "verify-sp", "decompose-form", "translate", "symplectize", "congruate", "reduce-form",
        "express", "patch-verify", "dilation-verify", "eval-word", "verify-cert", "selftest",
    }


def test_pfaffian(tmp_path):
    status, out, _ = call(tmp_path, "pfaffian", {"matrix": PSI2})
    assert status == 0
    assert json.loads(out)["pfaffian"] == "1"


def test_pfaffian_top_level_matrix(tmp_path):
    status, out, _ = call(tmp_path, "pfaffian", {"ring": "ZZ[b]", "entries": [[0, "b"], ["-b", 0]]})
    assert status == 0 and json.loads(out)["pfaffian"] == "b"


def test_translate_key_value(tmp_path):
    status, out, _ = call(tmp_path, "translate", None, "n=2", "i=1", "j=2", "a=a")
    assert status == 0
    doc = json.loads(out)
    (atom,) = doc["atoms"]
    assert atom["kind"] == "alpha" and atom["vector"] == ["0", "0", "a"]


def test_verify_sp(tmp_path):
    word = {"size": 4, "ring": "ZZ", "atoms": [{"kind": "elem", "i": 1, "j": 3, "value": "1"}]}
    status, out, _ = call(tmp_path, "verify-sp", {"form": PSI2, "word": word})
    assert status == 1 and json.loads(out)["verdict"] == "Refuted"
    # E_12(1) acts on the first hyperbolic pair only, so it is symplectic
    word["atoms"][0]["j"] = 2
    status, out, _ = call(tmp_path, "verify-sp", {"form": PSI2, "word": word})
    assert status == 0 and json.loads(out)["verdict"] == "Verified"


def test_decompose_form(tmp_path):
    status, out, _ = call(tmp_path, "decompose-form", {"form": PSI2})
    doc = json.loads(out)
    assert status == 0 and doc["c"] == ["-1", "0", "0"] and doc["d"] == ["-1", "0", "0"]


def test_decompose_form_strict(tmp_path):
    form = {"ring": "ZZ/7", "entries": [[0, 3, 0, 0], [-3, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]}
    assert call(tmp_path, "decompose-form", {"form": form})[0] == 0
    status, _, err = call(tmp_path, "decompose-form", {"form": form}, "--strict-pfaffian")
    assert status == 2 and "PfaffianNotOne" in err


def test_eval_word(tmp_path):
    word = {"size": 3, "ring": "ZZ[a]", "atoms": [{"kind": "elem", "i": 1, "j": 2, "value": "a"}]}
    status, out, _ = call(tmp_path, "eval-word", {"word": word})
    assert status == 0 and json.loads(out)["entries"][0] == ["1", "a", "0"]


CERT_JOBS = {
    "symplectize": {"word": {"size": 4, "ring": "ZZ", "atoms": [
        {"kind": "col", "vector": ["1", "2", "3"]}, {"kind": "row", "vector": ["0", "-1", "2"]}]}},
    "congruate": {"word": {"size": 4, "ring": "ZZ/7", "atoms": [
        {"kind": "elem", "i": 1, "j": 3, "value": "2"}, {"kind": "elem", "i": 4, "j": 2, "value": "5"}]}},
    "reduce-form": {"form": {"ring": "ZZ/7", "entries": [[0, 3, 0, 0], [-3, 0, 0, 0], [0, 0, 0, 5], [0, 0, -5, 0]]}},
    "express": {
        "form": {"ring": "ZZ/7", "entries": [[0, 3, 0, 0], [-3, 0, 0, 0], [0, 0, 0, 5], [0, 0, -5, 0]]},
        "target": {"size": 3, "ring": "ZZ/7", "atoms": [{"kind": "elem", "i": 2, "j": 3, "value": "3"}]},
    },
    "patch-verify": {
        "theta": {"size": 3, "ring": "ZZ[X]", "atoms": [
            {"kind": "elem", "i": 1, "j": 2, "value": "X"}, {"kind": "elem", "i": 2, "j": 1, "value": "3*X"}]},
        "cover": {"elements": ["2", "3"], "coefficients": ["2", "-1"], "exponent": 1},
    },
}


@pytest.mark.parametrize("command", sorted(CERT_JOBS))
def test_certificate_commands_round_trip(tmp_path, command):
    status, out, _ = call(tmp_path, command, CERT_JOBS[command])
    assert status == 0, out
    cert = json.loads(out)
    assert cert["verdict"] == "Verified"
    status, again, _ = call(tmp_path, "verify-cert", cert)
    assert status == 0
    assert again.strip() == out.strip()


def test_dilation_verify_command(tmp_path):
    loc_ring = PolynomialRing(LocalizedRing(ZZ, 2), ("X",)).to_json()
    doc = {
        "theta_star": {"size": 3, "ring": "ZZ[X]", "atoms": [{"kind": "elem", "i": 1, "j": 2, "value": "X"}]},
        "theta": {"size": 3, "ring": loc_ring, "atoms": [{"kind": "elem", "i": 1, "j": 2, "value": "X/a"}]},
        "a": "2",
        "b": "2",
    }
    status, out, err = call(tmp_path, "dilation-verify", doc)
    assert status == 0, err
    assert json.loads(out)["verdict"] == "Verified"
    doc["b"] = "6"
    status, out, _ = call(tmp_path, "dilation-verify", doc)
    assert status == 1 and json.loads(out)["verdict"] == "Refuted"


def test_determinism(tmp_path):
    outs = {call(tmp_path, "congruate", CERT_JOBS["congruate"])[1] for _ in range(3)}
    assert len(outs) == 1
    sel = {call(tmp_path, "selftest", None, "--seed", "5")[1] for _ in range(2)}
    assert len(sel) == 1


def test_selftest(tmp_path):
    status, out, _ = call(tmp_path, "selftest", None, "--seed", "1")
    report = json.loads(out)
    assert status == 0 and report["passed"] and len(report["checks"]) == 8


def test_pretty_transcript_on_stderr(tmp_path):
    status, out, err = call(tmp_path, "reduce-form", CERT_JOBS["reduce-form"], "--pretty")
    assert status == 0
    assert "FormReduction: Verified" in err
    assert out.startswith("{\n")


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    status, out, _ = call(tmp_path, "pfaffian", {"matrix": PSI2}, "--output", str(target))
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["pfaffian"] == "1"


@pytest.mark.parametrize(
    "command, doc, needle",
    [
        ("pfaffian", {"matrix": {"ring": "ZZ", "entries": [[1, 0], [0, 1]]}}, "NotAlternating"),
        ("pfaffian", {}, "SchemaError"),
        ("translate", {"n": 2, "i": 2, "j": 3}, "UnsupportedIndex"),
        ("congruate", {"word": {"size": 3, "ring": "ZZ", "atoms": []}}, "DimensionMismatch"),
        ("patch-verify", {"theta": CERT_JOBS["patch-verify"]["theta"],
                          "cover": {"elements": ["2", "4"], "coefficients": ["1", "1"], "exponent": 1}}, "CoverInvalid"),
        ("reduce-form", {"form": {"ring": "ZZ", "entries": [[0, 2, 3, 0], [-2, 0, 0, 1], [-3, 0, 0, 2], [0, -1, -2, 0]]}}, "NoUnitPivot"),
    ],
)
def test_errors_exit_2(tmp_path, command, doc, needle):
    status, _, err = call(tmp_path, command, doc)
    assert status == 2
    assert needle in err


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{oops")
    err = io.StringIO()
    assert run(["pfaffian", "--input", str(path)], stdout=io.StringIO(), stderr=err) == 2
    assert "SchemaError" in err.getvalue()


def test_missing_file():
    assert run(["pfaffian", "--input", "/nonexistent/x.json"], stdout=io.StringIO(), stderr=io.StringIO()) == 2


def test_unknown_command():
    assert run(["frobnicate"], stdout=io.StringIO(), stderr=io.StringIO()) == 2


@pytest.mark.skipif(shutil.which("ephi") is None, reason="console script not installed")
def test_console_script_stdin():
    doc = json.dumps({"matrix": ser.matrix_to_json(psi(ZZ, 2))})
    proc = subprocess.run(["ephi", "pfaffian", "--input", "-"], input=doc, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pfaffian"] == "1"
