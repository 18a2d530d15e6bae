import pathlib

from prk.cli import main, parse_judgment
from prk.surface import parse_term, print_term
from prk.typecheck import infer_type

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_lem(capsys):
    code, out, _ = run(capsys, "check", str(GOLDEN / "lem.prk"))
    assert code == 0
    assert out.strip() == "(a | ~a)^c+"


def test_check_machine_format(capsys):
    code, out, _ = run(capsys, "--format", "machine", "check", str(GOLDEN / "lem.prk"))
    assert code == 0
    assert out.strip() == "type=(a | ~a)^c+"


def test_check_ill_typed(tmp_path, capsys):
    bad = tmp_path / "bad.prk"
    bad.write_text("x : a^s+\n|- proj1+(x)\n")
    code, out, _ = run(capsys, "check", str(bad))
    assert code == 1
    assert "ill-typed" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.prk"
    bad.write_text("|- proj3+(x)\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "projection index" in err


def test_normalize_eta_golden(capsys):
    code, out, _ = run(capsys, "normalize", "--eta", str(GOLDEN / "projc_pairc.prk"))
    assert code == 0
    assert out.strip() == "t1"


def test_normalize_trace(capsys):
    code, out, _ = run(capsys, "normalize", "--eta", "--trace",
                       str(GOLDEN / "projc_pairc.prk"))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "t1"
    assert any("==>" in line for line in lines[:-1])
    rules = [line.split()[1] for line in lines[:-1]]
    assert rules == ["beta", "eta", "proj"]
    assert "#" not in out  # dangling indices are displayed with binder names


def test_kripke_eval_golden(capsys):
    code, out, _ = run(capsys, "kripke", "eval", str(GOLDEN / "lem3.model"),
                       "w0", "(a | ~a)^s+")
    assert code == 0 and out.strip() == "false"
    code, out, _ = run(capsys, "kripke", "eval", str(GOLDEN / "lem3.model"),
                       "w0", "(a | ~a)^c+")
    assert code == 0 and out.strip() == "true"


def test_kripke_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "kripke", "validate", str(GOLDEN / "lem3.model"))
    assert code == 0 and out.strip() == "true"
    broken = tmp_path / "broken.model"
    broken.write_text("alphabet: a\nworlds: w\n")
    code, out, _ = run(capsys, "kripke", "validate", str(broken))
    assert code == 1
    assert "stabilization" in out


def test_kripke_countermodel(capsys):
    code, out, _ = run(capsys, "kripke", "countermodel",
                       str(GOLDEN / "lem_strong.seq"))
    assert code == 1
    assert "worlds:" in out


def test_kripke_countermodel_absent(capsys, tmp_path):
    seq = tmp_path / "ax.seq"
    seq.write_text("a^s+\n|- a^s+\n")
    code, out, _ = run(capsys, "kripke", "countermodel", str(seq))
    assert code == 0
    assert "inconclusive" in out


def test_decide(capsys, tmp_path):
    code, out, _ = run(capsys, "decide", str(GOLDEN / "peirce.seq"))
    assert code == 0 and out.strip() == "true"
    seq = tmp_path / "invalid.seq"
    seq.write_text("|- a^c+\n")
    code, out, _ = run(capsys, "decide", str(seq))
    assert code == 1 and out.strip() == "false"
    seq.write_text("|- a^s+\n")
    code, _, _ = run(capsys, "decide", str(seq))
    assert code == 2


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", str(GOLDEN / "andcomm.nk"))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "(b & a)^c+"


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "--check", str(GOLDEN / "lem.prk"))
    assert code == 0
    assert "Pos<" in out


def test_dual(capsys, tmp_path):
    f = tmp_path / "j.prk"
    f.write_text("x : a^c+\n|- pair+(clam+(w : a^c-. capp+(x, w)), x)\n")
    code, out, _ = run(capsys, "dual", str(f))
    assert code == 0
    assert "x : a^c-" in out
    assert "pair-(" in out


def test_classify_cli(capsys):
    code, out, _ = run(capsys, "--format", "machine", "classify",
                       str(GOLDEN / "lem.prk"))
    assert code == 0
    assert "canonical=true" in out


def test_usage_error(capsys):
    assert main(["no-such-command"]) == 2


def test_kripke_eval_rejects_invalid_model(capsys, tmp_path):
    broken = tmp_path / "broken.model"
    broken.write_text("alphabet: a\nworlds: w\n")
    code, out, _ = run(capsys, "kripke", "eval", str(broken), "w", "a^s+")
    assert code == 1
    assert "invalid model" in out


def test_normalize_accepts_checkable_only_terms(capsys, tmp_path):
    f = tmp_path / "inj.prk"
    f.write_text("x : a^c+\n|- in1+(x)\n")
    code, out, _ = run(capsys, "normalize", str(f))
    assert code == 0
    assert out.strip() == "in1+(x)"


def test_golden_judgments_roundtrip(capsys):
    # parse -> check -> print -> parse yields identical terms
    for name in ("lem.prk", "projc_pairc.prk"):
        text = (GOLDEN / name).read_text()
        ctx, term = parse_judgment(text)
        infer_type(ctx, term)
        assert parse_term(print_term(term)) == term


def test_machine_output_is_line_stable(capsys):
    code1, out1, _ = run(capsys, "--format", "machine", "check", str(GOLDEN / "lem.prk"))
    code2, out2, _ = run(capsys, "--format", "machine", "check", str(GOLDEN / "lem.prk"))
    assert (code1, out1) == (code2, out2)
