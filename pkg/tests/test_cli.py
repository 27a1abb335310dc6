"""End-to-end command line behavior: subcommands, exit codes, formats."""

import io
import json
import contextlib

import pytest

from cofrob.cli import main


def run_cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def emit_example(tmp_path, name, *extra):
    path = tmp_path / f"{name.replace('-', '_')}.cofrob"
    code, _, err = run_cli("example", "--name", name, *extra, "--emit", str(path))
    assert code == 0, err
    return str(path)


def test_example_pipe_to_check(tmp_path):
    path = emit_example(tmp_path, "sphere", "--n", "3")
    code, out, _ = run_cli("check", "--suite", "biunital-cofrobenius", path)
    assert code == 0
    assert out.strip().endswith("suite biunital-cofrobenius: PASS")


def test_loop_sphere_unital_cofrobenius_fails(tmp_path):
    path = emit_example(tmp_path, "loop-sphere", "--n", "3", "--window", "6")
    code, out, _ = run_cli("check", "--suite", "unital-cofrobenius", path)
    assert code == 1
    assert "unital-cofrobenius-left: FAIL" in out
    assert "witness" in out


def test_cardy_failure_witness_coefficient_two(tmp_path):
    path = emit_example(tmp_path, "submanifold", "--pair", "factor")
    code, out, _ = run_cli("check", "--suite", "cardy", path)
    assert code == 1
    assert "rel6-cardy: FAIL" in out
    assert "rhs: 2*w" in out


def test_cardy_passes_for_diagonal(tmp_path):
    path = emit_example(tmp_path, "submanifold", "--pair", "diagonal")
    code, out, _ = run_cli("check", "--suite", "cardy", path)
    assert code == 0


def test_tqft_full_suite_on_loop(tmp_path):
    path = emit_example(tmp_path, "loop-tqft", "--n", "3", "--window", "6")
    code, out, _ = run_cli("check", "--suite", "tqft-full", path)
    assert code == 0
    assert "rel6-cardy" in out


def test_json_format_stable(tmp_path):
    path = emit_example(tmp_path, "submanifold", "--pair", "factor")
    code1, out1, _ = run_cli("check", "--suite", "cardy", "--format", "json", path)
    code2, out2, _ = run_cli("check", "--suite", "cardy", "--format", "json", path)
    assert code1 == code2 == 1
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["suite"] == "cardy"
    assert payload["pass"] is False
    assert payload["relations"][0]["witness"]["rhs"] == "2*w"


def test_unknown_suite_rejected(tmp_path):
    path = emit_example(tmp_path, "sphere", "--n", "2")
    with pytest.raises(SystemExit):
        run_cli("check", "--suite", "nonsense", path)


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.cofrob"
    path.write_text("field Q\nmodule:\nx zero\n")
    code, _, err = run_cli("check", "--suite", "product-laws", str(path))
    assert code == 2
    assert "line 3" in err


def test_missing_file_exit_code():
    code, _, err = run_cli("check", "--suite", "product-laws", "/nonexistent.cofrob")
    assert code == 2


def test_suite_structure_mismatch(tmp_path):
    pair = emit_example(tmp_path, "submanifold", "--pair", "equator")
    code, _, err = run_cli("check", "--suite", "product-laws", pair)
    assert code == 2
    assert "single structure" in err


def test_transform_dual_then_check(tmp_path):
    path = emit_example(tmp_path, "sphere", "--n", "2")
    out_path = tmp_path / "dual.cofrob"
    code, _, _ = run_cli("transform", "--op", "dual", path, "--emit", str(out_path))
    assert code == 0
    code, out, _ = run_cli("check", "--suite", "biunital-cofrobenius", str(out_path))
    assert code == 0


def test_transform_rescale_roundtrip(tmp_path):
    path = emit_example(tmp_path, "sphere", "--n", "2")
    once = tmp_path / "r1.cofrob"
    twice = tmp_path / "r2.cofrob"
    run_cli("transform", "--op", "rescale", "--m", "1", "--l", "0", path,
            "--emit", str(once))
    run_cli("transform", "--op", "rescale", "--m", "1", "--l", "0", str(once),
            "--emit", str(twice))
    assert (tmp_path / "r2.cofrob").read_text() == open(path).read()


def test_derive_from_pairing(tmp_path):
    path = emit_example(tmp_path, "sphere", "--n", "2")
    # strip the coproduct section, then re-derive it
    lines = open(path).read().splitlines()
    kept, in_lambda = [], False
    for line in lines:
        if line.startswith("map lambda"):
            in_lambda = True
            continue
        if in_lambda and "->" in line:
            continue
        in_lambda = False
        kept.append(line)
    stripped = tmp_path / "nolambda.cofrob"
    stripped.write_text("\n".join(kept) + "\n")
    code, out, _ = run_cli("derive", "--from-pairing", str(stripped))
    assert code == 0
    assert out == open(path).read()


def test_derive_rejects_missing_eps(tmp_path):
    path = emit_example(tmp_path, "loop-sphere", "--n", "3", "--window", "6")
    code, _, err = run_cli("derive", "--from-pairing", path)
    assert code == 2
    assert "eps" in err


def test_declared_suite_used_as_default(tmp_path):
    path = emit_example(tmp_path, "sphere", "--n", "2")
    text = "suite biunital-cofrobenius\n" + open(path).read()
    doc_path = tmp_path / "declared.cofrob"
    doc_path.write_text(text)
    code, out, _ = run_cli("check", str(doc_path))
    assert code == 0
    assert "suite biunital-cofrobenius: PASS" in out


def test_circle_examples(tmp_path):
    path = emit_example(tmp_path, "circle", "--window", "6")
    code, _, _ = run_cli("check", "--suite", "biunital-cofrobenius", path)
    assert code == 0
    path = emit_example(tmp_path, "circle", "--flavor", "based-loop",
                        "--vector-field", "-", "--window", "6")
    code, _, _ = run_cli("check", "--suite", "unital-infinitesimal", path)
    assert code == 0


def test_window_inconclusive_does_not_fail(tmp_path):
    path = emit_example(tmp_path, "rabinowitz-loop-sphere", "--n", "3",
                        "--window", "6")
    code, out, _ = run_cli("check", "--suite", "biunital-cofrobenius", path)
    assert code == 0
    assert "inconclusive=" in out
