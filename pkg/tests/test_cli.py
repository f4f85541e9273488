import json
import shutil
from pathlib import Path

import pytest

from pacreason import formats
from pacreason.cli import main
from pacreason.resolution import ResolutionProof, check_proof

FX = Path(__file__).parent / "fixtures"


@pytest.fixture
def fx(tmp_path):
    for f in FX.iterdir():
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


LEARNRES = "--mu 0.6 --gamma 0.1 --eps 0.1 --delta 0.05 --pn 20 --w 2 --m0 20000 --m1 400 --seed 1".split()


def test_learnres_accept_exit_zero(fx):
    args = ["learnres", "--query", str(fx / "lr_accept.cnf"), "--dist", str(fx / "parity6.affine"), *LEARNRES]
    assert main(args + ["--report", str(fx / "r.json")]) == 0
    doc = formats.load_report((fx / "r.json").read_text())
    assert doc["status"] == "accept"
    assert doc["inputs"]["query"]["format"] == "dimacs"
    assert (fx / "r.outcomes.csv").exists() and (fx / "r.png").exists()


def test_learnres_reject_exit_ten(fx, capsys):
    args = ["learnres", "--query", str(fx / "lr_reject.cnf"), "--dist", str(fx / "parity6.affine"), *LEARNRES]
    assert main(args) == 10
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["decision"] == "reject"


def test_wrefute_writes_checkable_proof(fx):
    out = fx / "proof.txt"
    assert main(["wrefute", "--query", str(fx / "unsat2.cnf"), "--w", "2", "--proof-out", str(out),
                 "--report", str(fx / "w.json")]) == 0
    doc = formats.load_report((fx / "w.json").read_text())
    assert doc["result"]["refuted"]
    phi = formats.parse_dimacs((fx / "unsat2.cnf").read_text())
    assert check_proof(phi, ResolutionProof.from_text(out.read_text()), require_refutation=True)
    assert main(["wrefute", "--query", str(fx / "unsat2.cnf"), "--w", "1", "--report", str(fx / "w1.json")]) == 10


def test_usage_errors(fx, capsys):
    assert main(["learnres", "--dist", str(fx / "parity6.affine")]) == 2
    assert main(["wrefute", "--query", str(fx / "missing.cnf"), "--w", "2"]) == 2
    bad = fx / "bad.cnf"
    bad.write_text("p cnf 1 1\n1 -1 0\n")
    assert main(["wrefute", "--query", str(bad), "--w", "1"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_infeasible_without_overrides(fx):
    assert main(["learnres", "--query", str(fx / "lr_accept.cnf"), "--dist", str(fx / "parity6.affine")]) == 3


def test_sample_then_mask_then_decide(fx):
    s = fx / "s.txt"
    assert main(["sample", "--dist", str(fx / "parity6.affine"), "--m", "2200", "--mu", "1", "--seed", "4",
                 "--out", str(s)]) == 0
    masked = fx / "sm.txt"
    assert main(["mask", "--samples", str(s), "--mu", "0.6", "--seed", "4", "--out", str(masked)]) == 0
    parsed = formats.parse_samples(masked.read_text())
    assert len(parsed) == 2200
    args = ["cnfeval", "--query", str(fx / "ce_valid.cnf"), "--samples", str(masked), "--mu", "0.6",
            "--gamma", "0.2", "--w", "2", "--m0", "2000", "--m1", "200", "--no-figures",
            "--report", str(fx / "c.json")]
    assert main(args) == 0
    assert not (fx / "c.png").exists()


def test_unifdecide_defaults_to_uniform(fx):
    base = ["unifdecide", "--mu", "0.5", "--gamma", "0.2", "--eps", "0.2", "--seed", "3"]
    assert main(base + ["--query", str(fx / "ud_unsat.cnf")]) == 0
    assert main(base + ["--query", str(fx / "ud_half.cnf")]) == 10


def test_auditgap_and_verify(fx, capsys):
    assert main(["auditgap", "--dist", str(fx / "topic8.dist"), "--w", "2", "--report", str(fx / "a.json")]) == 0
    doc = formats.load_report((fx / "a.json").read_text())
    assert (fx / "a.margins.csv").exists() and (fx / "a.png").exists()
    assert doc["result"]["width"] == 2
    capsys.readouterr()
    assert main(["verify", "validity", "--query", str(fx / "lr_reject.cnf"), "--dist", str(fx / "parity6.affine")]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["validity"] == "1/2"
    assert main(["verify", "sat", "--query", str(fx / "unsat2.cnf")]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["satisfiable"] is False
    assert main(["verify", "widthref", "--query", str(fx / "unsat2.cnf"), "--w", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["refutable"] is False
