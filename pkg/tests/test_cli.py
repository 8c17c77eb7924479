import json
from pathlib import Path

import pytest

from gtt import jsonio
from gtt.cli import EXIT_INPUT, EXIT_NO, EXIT_OK, main

PAIRS = Path(__file__).parent / "golden" / "pairs.gtt"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_projection_of_pair_is_equal(capsys):
    code, out, _ = run(capsys, "eq", "pi . <f, g>", "f", "-f", str(PAIRS))
    assert code == EXIT_OK and out == "equal"


def test_distinct_generators_differ(capsys):
    code, out, _ = run(capsys, "eq", "pi . h", "f", "-f", str(PAIRS))
    assert code == EXIT_NO and out == "not equal"


def test_kappa_of_the_variable(capsys):
    code, out, _ = run(capsys, "kappa", "x", "x")
    assert code == EXIT_OK and out == "pi"


def test_kappa_canonical_shows_subscripts(capsys):
    code, out, _ = run(capsys, "kappa", "x", "x", "--canonical")
    assert code == EXIT_OK and out == "pi[a, top]"


def test_inhabit_pairing(capsys):
    code, out, _ = run(capsys, "inhabit", "a |- a /\\ a")
    assert code == EXIT_OK and out == "<id(a), id(a)>"


def test_inhabit_negative(capsys):
    code, out, _ = run(capsys, "inhabit", "a |- b", "--depth", "4")
    assert code == EXIT_NO


def test_inhabit_needs_a_turnstile(capsys):
    code, _, err = run(capsys, "inhabit", "a /\\ b")
    assert code == EXIT_INPUT and "p |- q" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "<a,")
    assert code == EXIT_INPUT and err.startswith("<arg>:1:")


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "nope.gtt"))
    assert code == EXIT_INPUT and "nope.gtt" in err


def test_check_file(capsys):
    code, out, _ = run(capsys, "check", str(PAIRS))
    assert code == EXIT_OK and out.startswith("ok:")


def test_check_reports_error_location(capsys, tmp_path):
    p = tmp_path / "bad.gtt"
    p.write_text("obj a;\ngen f : a -> ;\n")
    code, _, err = run(capsys, "check", str(p))
    assert code == EXIT_INPUT and "bad.gtt:2:" in err


def test_normalize_expression(capsys):
    code, out, _ = run(capsys, "normalize", "pi' . <f, g>", "-f", str(PAIRS))
    assert code == EXIT_OK and out == "g"


def test_normalize_term(capsys):
    code, out, _ = run(capsys, "normalize", "--term", "pi(<k, star>)", "-f", str(PAIRS))
    assert code == EXIT_OK and out == "k"


def test_term_equality(capsys):
    code, _, _ = run(capsys, "eq", "--term", "t", "\\v(a, 2). <name(f) @ v(a, 2), k>",
                     "-f", str(PAIRS))
    assert code == EXIT_OK


def test_translations_round_trip(capsys):
    code, out, _ = run(capsys, "to-lam", "<f, g>", "-f", str(PAIRS))
    assert code == EXIT_OK
    assert out == "<v(a, 1) | <name(f) @ v(a, 1), name(g) @ v(a, 1)>>"
    body = out.split("|", 1)[1].strip()[:-1]
    code, out, _ = run(capsys, "to-cat", body, "-f", str(PAIRS))
    assert code == EXIT_OK and out == "<f, g>"


def test_json_output_validates(capsys):
    code, out, _ = run(capsys, "normalize", "pi . <f, g>", "-f", str(PAIRS), "--json")
    doc = json.loads(out)
    jsonio.validate(doc)
    assert code == EXIT_OK and doc["ok"] is True
    assert jsonio.expr_from_json(doc["result"]) == jsonio.expr_from_json({"op": "gen", "name": "f"})


def test_json_negative(capsys):
    code, out, _ = run(capsys, "eq", "f", "pi . h", "-f", str(PAIRS), "--json")
    assert code == EXIT_NO and json.loads(out)["ok"] is False


def test_roundtrip_is_stable_under_seed(capsys):
    first = run(capsys, "roundtrip", "--samples", "20", "--seed", "3")
    second = run(capsys, "roundtrip", "--samples", "20", "--seed", "3")
    assert first == second and first[0] == EXIT_OK


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GTT_SEED", "5")
    a = run(capsys, "roundtrip", "--samples", "10", "--json")
    b = run(capsys, "roundtrip", "--samples", "10", "--seed", "5", "--json")
    assert a == b


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--samples", "25")
    assert code == EXIT_OK
    assert all(line.startswith("PASS") for line in out.splitlines())


def test_usage_error_is_an_input_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
