import json
import subprocess
import sys

import pytest

from discdet.cli import run, squarefree_part

FERMAT = "x0^3+x1^3+x2^3+x3^3"


def call(capsys, *argv):
    code = run(list(argv) + ["--quiet"])
    out = json.loads(capsys.readouterr().out)
    assert out["exit_code"] == code
    return code, out


def test_disc_fermat(capsys):
    code, out = call(capsys, "disc", "--ring", "Z", "--n", "2", "--d", "3", "--poly", FERMAT)
    assert code == 0
    assert out["disc_d"] == str(3**27) and out["epsilon"] == -1 and out["signed"] == str(-(3**27))


def test_character_fp7(capsys):
    code, out = call(capsys, "character", "--ring", "fp:7", "--n", "0", "--d", "2", "--poly", "x0^2 - x1^2")
    assert code == 0
    assert out["character"]["kind"] == "trivial" and out["character"]["D"] == "4"


def test_character_integers(capsys):
    code, out = call(capsys, "character", "--ring", "Z", "--n", "0", "--d", "2", "--poly", "x0^2+x0*x1+x1^2")
    assert code == 0 and out["character"]["squarefree_part"] == "-3" and out["character"]["reduced"]


def test_verify_fermat_f2(capsys):
    code, out = call(capsys, "verify", "--ring", "fq:2:1", "--n", "2", "--d", "3", "--poly", FERMAT)
    assert code == 0
    assert out["agree"] and out["lhs_det_frobenius"] == -1 and out["character"]["kind"] == "artin_schreier"


def test_smooth_with_witness(capsys):
    code, out = call(capsys, "smooth", "--ring", "fp:3", "--n", "2", "--d", "3", "--poly", FERMAT)
    assert code == 0 and out["smooth"] is False and out["witness"] is not None


def test_topology_and_salmon(capsys):
    code, out = call(capsys, "topology", "--n", "2", "--d", "3")
    assert code == 0 and out["sign"] == -1 and out["matches_epsilon"]
    code, out = call(capsys, "salmon", "--sylvester", "1,1,1,1,1")
    assert code == 0 and out["agree"] and out["salmon_disc"] == str(-(3**5) * 5)


def test_corpus_subset(capsys):
    code, out = call(capsys, "corpus", "--only", "1,6")
    assert code == 0 and out["passed"] == 2


@pytest.mark.parametrize("argv", [
    ["disc", "--n", "1", "--poly", "x0^2 + x1^3"],             # mixed degree
    ["disc", "--n", "1", "--d", "2", "--poly", "x0^3"],        # degree mismatch
    ["disc", "--ring", "fp:9", "--n", "0", "--poly", "x0^2"],  # not a prime
    ["character", "--n", "1", "--poly", "x0^3+x1^3+x2^3"],     # odd n
    ["disc", "--n", "0", "--poly", "x0 + x1"],                 # linear
    ["salmon", "--sylvester", "1,2"],
])
def test_input_errors(capsys, argv):
    code, out = call(capsys, *argv)
    assert code == 2 and out["error"] == "input"


def test_budget_error(capsys):
    code, out = call(capsys, "verify", "--ring", "fp:2", "--n", "2", "--d", "3", "--poly", FERMAT,
                     "--budget", "100")
    assert code == 3 and out["error"] == "budget"


def test_poly_from_file(capsys, tmp_path):
    p = tmp_path / "f.txt"
    p.write_text(FERMAT + "\n")
    code, out = call(capsys, "disc", "--n", "2", "--poly", str(p))
    assert out["disc_d"] == str(3**27)


def test_json_roundtrip_and_determinism(capsys):
    argv = ["verify", "--ring", "fp:5", "--n", "0", "--d", "4", "--poly", "x0^4 + 2*x0*x1^3 + x1^4", "--seed", "3"]
    _, a = call(capsys, *argv)
    _, b = call(capsys, *argv)
    assert a == b
    assert json.loads(json.dumps(a)) == a


def test_squarefree_part():
    assert squarefree_part(-3**27) == (-3, True)
    assert squarefree_part(72) == (2, True)
    assert squarefree_part(1) == (1, True)
    big = (10**6 + 3) * (10**6 + 33)  # two primes above the trial-division bound
    assert squarefree_part(big * 4)[1] is False


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "discdet.cli", "topology", "--n", "0", "--d", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["sign"] == -1
    assert proc.stderr.startswith("topology:")
