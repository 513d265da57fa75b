import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from fsing.cli import EXIT_CAP, EXIT_FAILED, EXIT_INPUT, EXIT_OK, run
from fsing.report import fixture_path

GOLDEN = Path(__file__).parent / "golden"
ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "scripts"))
from freeze_golden import CASES, render  # noqa: E402


def call(*argv):
    buf = io.StringIO()
    code = run([str(a) for a in argv], buf)
    return code, buf.getvalue()


@pytest.fixture(autouse=True)
def fixed_seed(monkeypatch):
    monkeypatch.setenv("FSING_SEED", "0")


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_reports(name):
    code, text = render(CASES[name])
    assert code == EXIT_OK
    assert text == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


def test_classify_json_fields():
    code, text = call("classify", fixture_path("fedder-singh"), "--json")
    rep = json.loads(text)
    assert code == 0 and rep["schema"] == 1 and rep["seed"] == 0
    ring = rep["report"]["ring"]
    assert ring["F_anti_nilpotent"]["status"] == "true"
    assert rep["report"]["certificate"]["chain"]
    assert "timing" not in rep
    code, text = call("classify", fixture_path("semigroup"), "--json")
    ring = json.loads(text)["report"]["ring"]
    assert ring["F_full"] == {"status": "false", "witness": {"i": 1}}


def test_zero_ideal_all_true():
    _, text = call("classify", fixture_path("zero-ideal"), "--json")
    ring = json.loads(text)["report"]["ring"]
    for key in ("F_pure", "F_injective", "F_full", "strongly_F_injective", "F_anti_nilpotent"):
        assert ring[key]["status"] == "true"
    assert ring["depth"] == ring["dim"]


def test_timing_flag():
    _, text = call("classify", fixture_path("zero-ideal"), "--json", "--timing")
    assert "seconds" in json.loads(text)["timing"]


def test_text_output():
    code, text = call("classify", fixture_path("semigroup"))
    assert code == 0 and "F_full: false" in text
    code, text = call("deform", fixture_path("fedder-singh"), "--element", "y", "--target", "anti-nilpotent")
    assert code == 0 and text.startswith("proved:") and "R9" in text and "R1" in text
    code, text = call("reproduce", "ex-nonperfect")
    assert code == 0 and "all passed" in text
    code, text = call("oracle-check", fixture_path("semigroup"), "--index", "1", "--window", "-2..3")
    assert code == 0 and text.rstrip().endswith("agree")


def test_deform_examples():
    code, text = call("deform", fixture_path("segre-p2"), "--element", "xs + zt", "--target", "F-full", "--json")
    assert code == 0 and json.loads(text)["certificate"]["proved"] is False
    code, text = call("deform", fixture_path("zero-ideal"), "--element", "x", "--target", "f-full", "--json")
    chain = json.loads(text)["certificate"]["chain"]
    assert [s["rule"] for s in chain] == ["R2"]


def test_oracle_check_examples():
    code, text = call("oracle-check", fixture_path("segre-p2"), "--index", "2", "--window", "-1..1", "--json")
    rep = json.loads(text)
    assert code == 0 and rep["agree"]
    assert [r["dim_duality"] for r in rep["degrees"]] == [0, 1, 0]
    assert [r["frobenius_koszul"] for r in rep["degrees"]][1] == [[0]]
    code, text = call("oracle-check", fixture_path("zero-ideal"), "--index", "1", "--window=-2..2", "--json")
    rep = json.loads(text)
    assert code == 0 and all(r["dim_duality"] == r["dim_koszul"] == 0 for r in rep["degrees"])


def test_reproduce_all_bundles():
    for fid in ["ex-semigroup", "ex-segre-p2", "ex-fedder-singh", "ex-nonperfect"]:
        code, text = call("reproduce", fid, "--json")
        assert code == EXIT_OK, fid
        assert all(a["passed"] for a in json.loads(text)["assertions"])


@pytest.mark.slow
def test_reproduce_segre_p7():
    code, text = call("reproduce", "ex-segre-p7", "--json")
    assert code == EXIT_OK


# -- exit-code contract ------------------------------------------------------


def _write(tmp_path, text, name="in.fring"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


@pytest.mark.parametrize(
    "text",
    [
        "char 5\nvars x y\nideal\n  x + q\n",  # ParseError
        "char 5\nvars x y\nideal\n  x + y^2\n",  # NonHomogeneous
        "char 4\nvars x y\nideal\n  x*y\n",  # NonPrimeCharacteristic
        "char 5\nvars x y\nideal\n  1\n",  # UnitIdeal
    ],
)
def test_input_errors_exit_2(tmp_path, text, capsys):
    code, _ = call("classify", _write(tmp_path, text))
    assert code == EXIT_INPUT
    assert capsys.readouterr().err.startswith("fsing: ")


def test_other_input_errors_exit_2(tmp_path):
    assert call("classify", tmp_path / "missing.fring")[0] == EXIT_INPUT
    assert call("reproduce", "ex-nothing")[0] == EXIT_INPUT
    sr = fixture_path("stanley-reisner-p2")
    assert call("deform", sr, "--element", "u", "--target", "f-full")[0] == EXIT_INPUT
    assert call("deform", sr, "--element", "u+v+z", "--target", "f-regular")[0] == EXIT_INPUT
    # socle degree 1 lies outside the window
    assert call("oracle-check", fixture_path("semigroup"), "--index", "1", "--window", "2..3")[0] == EXIT_INPUT


def test_bad_window_syntax_is_a_usage_error():
    with pytest.raises(SystemExit) as err:
        call("oracle-check", fixture_path("semigroup"), "--index", "1", "--window", "3")
    assert err.value.code == 2


def test_cap_exit_3():
    assert call("classify", fixture_path("semigroup"), "--pair-cap", "3")[0] == EXIT_CAP


def test_failed_oracle_or_bundle_exits_1(monkeypatch):
    import fsing.report as report

    monkeypatch.setattr(report, "compare_windows", lambda *a: [{"degree": 0, "what": "forced"}])
    assert call("oracle-check", fixture_path("semigroup"), "--index", "1", "--window", "-2..3")[0] == EXIT_FAILED


# -- determinism ------------------------------------------------------------


COMMANDS = [
    ["classify", "@semigroup", "--json"],
    ["classify", "@stanley-reisner-p3", "--json"],
    ["deform", "@fedder-singh", "--element", "y", "--target", "anti-nilpotent", "--json"],
    ["reproduce", "ex-fedder-singh", "--json"],
    ["oracle-check", "@segre-p2", "--index", "2", "--window", "-2..2", "--json"],
]


def _subprocess_output(argv):
    from freeze_golden import resolve

    proc = subprocess.run([sys.executable, "-m", "fsing"] + resolve(argv), capture_output=True, check=True,
                          env={"FSING_SEED": "0", "PATH": "/usr/bin:/bin", "PYTHONHASHSEED": "random"})
    return proc.stdout


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0] + "-" + a[1].lstrip("@"))
def test_byte_identical_reruns(argv):
    """Two separate processes (with different hash seeds) print the same bytes."""
    first, second = _subprocess_output(argv), _subprocess_output(argv)
    assert first == second
    assert first.decode("utf-8") == render(argv)[1]
