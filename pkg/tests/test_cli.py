import json

import pytest

from ipckit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prove_verdicts(capsys):
    code, out, _ = run(capsys, "prove", "x1 -> x1")
    assert code == 0 and "provable" in out
    code, out, _ = run(capsys, "prove", "((x1 -> x2) -> x1) -> x1")
    assert code == 1 and "not provable" in out
    code, out, _ = run(capsys, "prove", "--classical",
                       "((x1 -> x2) -> x1) -> x1")
    assert code == 0
    code, out, _ = run(capsys, "prove", "--premise", "x1",
                       "--premise", "x1 -> x2", "x2")
    assert code == 0 and "2 premise(s)" in out


def test_countermodel_search(capsys):
    code, out, _ = run(capsys, "countermodel", "T", "x1 | ~x1")
    assert code == 0 and "countermodel" in out
    code, out, _ = run(capsys, "countermodel", "x1", "x1")
    assert code == 1
    # three variables leave the slice path and use the bounded search
    code, out, _ = run(capsys, "--json", "countermodel", "--levels", "3",
                       "x3", "x1 | x2")
    doc = json.loads(out)
    assert code == 0 and doc["found"] and "model" in doc


def test_bellissima_stats(capsys):
    code, out, _ = run(capsys, "bellissima", "--vars", "2", "--levels", "1",
                       "--stats")
    assert code == 0
    assert "level 0: 4 nodes" in out
    assert "level 1: 18 nodes" in out
    assert "total: 22 nodes" in out


def test_bellissima_export(tmp_path, capsys):
    target = tmp_path / "slice.json"
    code, out, _ = run(capsys, "bellissima", "--vars", "1", "--levels", "1",
                       "--export", str(target))
    assert code == 0
    doc = json.loads(target.read_text())
    assert len(doc["nodes"]) == 4


def test_charform_bounds(capsys):
    code, out, _ = run(capsys, "charform", "--vars", "2", "--node", "0")
    assert code == 0 and out.strip()
    code, out, err = run(capsys, "charform", "--vars", "2", "--node", "99")
    assert code == 2 and "error" in err


def test_nishimura_modes(capsys):
    code, out, _ = run(capsys, "nishimura", "--classify", "~~x1")
    assert code == 0 and out.strip() == "phi(2)"
    code, out, _ = run(capsys, "nishimura", "--ladder", "2")
    assert code == 0 and "phi(2)" in out and "psi(2)" in out


def test_interval_translate_and_export(tmp_path, capsys):
    code, out, _ = run(capsys, "interval", "--m", "1",
                       "--translate", "x1")
    assert code == 0 and out.strip() == "x1 & x2"
    target = tmp_path / "interval.json"
    code, out, _ = run(capsys, "interval", "--m", "2",
                       "--export", str(target))
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["m"] == 2 and len(doc["guards"]) == 4


def test_omega_translate_and_check(capsys):
    code, out, _ = run(capsys, "omega", "--vars", "2", "--translate", "x1",
                       "--check", "x1 | x2")
    assert code == 0 and "entails" in out
    code, out, _ = run(capsys, "omega", "--vars", "2", "--translate", "x1",
                       "--check", "x2")
    assert code == 1 and "does not entail" in out
    code, out, err = run(capsys, "omega", "--vars", "2",
                         "--translate", "x5")
    assert code == 2 and "chain head" in err


def test_poset_embed_both_formats(tmp_path, capsys):
    jdoc = tmp_path / "p.json"
    jdoc.write_text('{"elements": ["a", "b"], "le": [["a", "b"]]}')
    code, out, _ = run(capsys, "poset", "embed", "--input", str(jdoc))
    assert code == 0 and "ok: all 2^2 relations reproduced" in out
    sdoc = tmp_path / "p.stream"
    sdoc.write_text("a [] []\nb [a] []\n")
    code, out, _ = run(capsys, "poset", "embed", "--input", str(sdoc),
                       "--verify", "prover")
    assert code == 0 and "(prover)" in out
    code, _, err = run(capsys, "poset", "embed", "--input",
                       str(tmp_path / "missing"))
    assert code == 2


def test_classical_subcommand(capsys):
    code, out, _ = run(capsys, "classical", "gg", "x1")
    assert code == 0 and out.strip() == "~~x1"
    code, out, _ = run(capsys, "classical", "to-ipc2", "x1 -> x1")
    assert code == 0 and out.strip() == "T"


def test_selfcheck_single_suite(capsys):
    code, out, _ = run(capsys, "selfcheck", "--suite", "levels")
    assert code == 0 and out.startswith("PASS levels:")


def test_json_envelope_and_placement(capsys):
    for argv in (["--json", "prove", "x1 -> x1"],
                 ["prove", "--json", "x1 -> x1"]):
        code, out, _ = run(capsys, *argv)
        doc = json.loads(out)
        assert code == 0
        assert doc["command"] == "prove"
        assert doc["exit_code"] == 0
        assert doc["provable"] is True


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "prove", "x1 &")
    assert code == 2 and "error" in err
    code, out, _ = run(capsys, "--json", "prove", "x1 &")
    assert code == 2 and json.loads(out)["exit_code"] == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
