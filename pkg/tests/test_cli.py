import json
import subprocess
import sys

import jsonschema
import pytest

from fitails.cli import main
from fitails.schemas import ERROR, SCHEMAS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ex_a(fixtures_dir):
    return str(fixtures_dir / "first_example.fipres")


@pytest.fixture
def ex_b(fixtures_dir):
    return str(fixtures_dir / "second_example.fipres")


def test_tails_text(capsys, ex_a):
    code, out, _ = run(capsys, "tails", ex_a)
    assert code == 0
    lines = out.splitlines()
    for expected in ("A_0=Z/3", "A_1=Z", "A_2=0", "stable_from=5"):
        assert expected in lines


def test_qring_json(capsys):
    code, out, _ = run(capsys, "qring", "--degree", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["total_rank"] == 12
    assert len(data["entries"]) == 3 and all(len(r) == 3 for r in data["entries"])


def test_pairing_text(capsys):
    code, out, _ = run(capsys, "pairing", "--k", "3", "--n", "5")
    assert code == 0 and out.strip() == "unimodular: true, size 60"


def test_evaluate(capsys, ex_a):
    code, out, _ = run(capsys, "evaluate", ex_a, "--n", "7")
    assert code == 0 and out.strip() == "M_7=Z^6 (+) Z/3"
    code, _, err = run(capsys, "evaluate", ex_a, "--n", "4")
    assert code == 2 and "n >= 5" in err


def test_xi_matrix(capsys, ex_a):
    code, out, _ = run(capsys, "xi-matrix", ex_a, "--ell", "2")
    assert code == 0
    assert "12x1" in out and out.strip().endswith("coker=0")


def test_oracle_codes(capsys, ex_a, monkeypatch):
    code, out, _ = run(capsys, "oracle", ex_a, "--n", "5")
    assert code == 0 and "verdict=equal" in out
    code, out, _ = run(capsys, "oracle", ex_a, "--n", "2")
    assert code == 0 and "no verdict" in out
    code, _, err = run(capsys, "oracle", ex_a, "--n", "7", "--max-matrix-cells", "100")
    assert code == 2 and "cap" in err

    # a wrong prediction must surface as exit status 1
    from fitails import cli, linalg

    def bad_check(z, n, max_cells):
        from fitails.tails import OracleReport

        return OracleReport(n, 5, linalg.AbelianGroup(1), linalg.AbelianGroup(2))

    monkeypatch.setattr(cli, "oracle_check", bad_check)
    code, out, _ = run(capsys, "oracle", ex_a, "--n", "5")
    assert code == 1 and "MISMATCH" in out


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "tails", str(tmp_path / "missing.fipres"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.fipres"
    bad.write_text("generators: 2\nrelations: 3\nentry 1 1: +1*[1,1]\n")
    code, _, err = run(capsys, "tails", str(bad))
    assert code == 2 and "line 3" in err
    with pytest.raises(SystemExit) as info:
        main(["tails", "--bogus-flag", str(bad)])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_error_json(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "tails", str(tmp_path / "missing.fipres"))
    assert code == 2
    jsonschema.validate(json.loads(out), ERROR)


def test_help_documents_order(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    assert "lexicographic" in out and "12x1, 1x12, 21x1" in out


def _invocations(ex_a, ex_b):
    return [
        ("tails", ["tails", ex_a]),
        ("tails", ["tails", ex_b]),
        ("evaluate", ["evaluate", ex_b, "--n", "6"]),
        ("xi-matrix", ["xi-matrix", ex_a, "--ell", "0"]),
        ("oracle", ["oracle", ex_a, "--n", "5"]),
        ("oracle", ["oracle", ex_a, "--n", "3"]),
        ("fj-basis", ["fj-basis", "--source", "1", "--target", "1", "--max-level", "3"]),
        ("qring", ["qring", "--degree", "2"]),
        ("pairing", ["pairing", "--k", "2", "--n", "3"]),
    ]


def test_json_schemas(capsys, ex_a, ex_b):
    for name, argv in _invocations(ex_a, ex_b):
        for position in ("before", "after"):
            args = ["--json"] + argv if position == "before" else argv + ["--json"]
            code, out, _ = run(capsys, *args)
            assert code == 0
            jsonschema.validate(json.loads(out), SCHEMAS[name])


def test_deterministic_output(capsys, ex_a, ex_b):
    for _, argv in _invocations(ex_a, ex_b):
        for extra in ([], ["--json"]):
            first = run(capsys, *argv, *extra)
            second = run(capsys, *argv, *extra)
            assert first == second


def test_module_entry_point(ex_a):
    proc = subprocess.run(
        [sys.executable, "-m", "fitails", "tails", ex_a], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and "A_0=Z/3" in proc.stdout
