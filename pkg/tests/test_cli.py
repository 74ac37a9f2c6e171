import subprocess
import sys

import pytest

from elrc import CodeParams, encode
from elrc.cli import main
from elrc.formats import format_word


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_params(capsys):
    assert run(capsys, "params", "-r", "2", "-m", "3") == (0, "27 8 7\n", "")


def test_matrix(capsys, tmp_path):
    out = tmp_path / "h.txt"
    assert run(capsys, "matrix", "-r", "2", "-m", "1", "--out", str(out))[0] == 0
    assert out.read_text() == "2 1 3 2\n111\n"


def test_encode_check(capsys, tmp_path):
    info = tmp_path / "info"
    info.write_text("1000\n")
    code, out, _ = run(capsys, "encode", "-r", "2", "-m", "2", "--in", str(info))
    assert code == 0 and out == "101000101\n"
    word = tmp_path / "w"
    word.write_text(out)
    assert run(capsys, "check", "-r", "2", "-m", "2", "--in", str(word))[0] == 0
    word.write_text("101000100\n")
    assert run(capsys, "check", "-r", "2", "-m", "2", "--in", str(word))[:2] == (1, "not a codeword\n")


def test_erase_plan_repair(capsys, tmp_path):
    p = CodeParams(2, 3)
    word = tmp_path / "w"
    x = encode(p, [1, 0, 1, 1, 0, 0, 1, 0])
    word.write_text(format_word(x) + "\n")
    pattern = tmp_path / "e"
    pattern.write_text("020 120 010 110 021 121 011\n")
    masked = tmp_path / "m"
    common = ["-r", "2", "-m", "3"]
    assert run(capsys, "erase", *common, "--in", str(word), "--pattern", str(pattern), "--out", str(masked))[0] == 0
    assert masked.read_text().count("?") == 7
    code, plan_text, _ = run(capsys, "plan", *common, "--pattern", str(pattern))
    assert code == 0 and len(plan_text.splitlines()) == 7
    plan = tmp_path / "plan"
    plan.write_text(plan_text)
    code, out, _ = run(capsys, "repair", *common, "--in", str(masked), "--plan", str(plan))
    assert code == 0 and out.strip() == format_word(x)
    code, out, _ = run(capsys, "repair", *common, "--in", str(masked))
    assert code == 0 and out.strip() == format_word(x)


def test_plan_stuck(capsys, tmp_path):
    pattern = tmp_path / "e"
    pattern.write_text("00 01 10 11")
    code, out, err = run(capsys, "plan", "-r", "2", "-m", "2", "--pattern", str(pattern))
    assert code == 1 and out == "" and "stuck" in err and "00 01 10 11" in err


def test_repair_bad_plan(capsys, tmp_path):
    masked = tmp_path / "m"
    masked.write_text("??1000101\n")
    plan = tmp_path / "plan"
    plan.write_text("repair 00 axis 2 from 01 02\nrepair 01 axis 2 from 00 02\n")
    code, _, err = run(capsys, "repair", "-r", "2", "-m", "2", "--in", str(masked), "--plan", str(plan))
    assert code == 1 and "still-erased" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "-r", "2", "-m", "2", "--max-size", "3", "--mode", "exhaustive")
    assert code == 0 and out == "2 2 exhaustive 3 - -\nchecked 129\n"
    code, out, _ = run(capsys, "verify", "-r", "2", "-m", "2", "--max-size", "4")
    assert code == 1 and "FAIL 00 01 10 11" in out
    code, out, _ = run(capsys, "verify", "-r", "2", "-m", "2", "--mode", "random", "--samples", "50", "--seed", "5")
    assert code == 0 and out.startswith("2 2 random 3 5 50\nchecked 150\n")
    code, _, err = run(capsys, "verify", "-r", "2", "-m", "3", "--budget", "10")
    assert code == 1 and "budget" in err


def test_parallel_check(capsys, tmp_path):
    pattern = tmp_path / "e"
    pattern.write_text("00 10 01")
    code, out, _ = run(capsys, "parallel-check", "-r", "2", "-m", "2", "--pattern", str(pattern))
    assert code == 1
    assert out == "00 blocked\n01 axis 1\n10 axis 2\nnot repairable\n"
    pattern.write_text("00 11")
    assert run(capsys, "parallel-check", "-r", "2", "-m", "2", "--pattern", str(pattern))[0] == 0


def test_oracle(capsys, tmp_path):
    assert run(capsys, "oracle", "-r", "2", "-m", "2", "--target", "00") == (0, "01 02\n", "")
    pattern = tmp_path / "e"
    pattern.write_text("01 10 20 02")
    assert run(capsys, "oracle", "-r", "2", "-m", "2", "--target", "00", "--pattern", str(pattern))[:2] == (1, "none\n")


def test_bounds_tables_mindist(capsys):
    code, out, _ = run(capsys, "bounds", "-r", "2", "-m", "2")
    assert code == 0 and "n_min_parallel           10" in out
    code, out, _ = run(capsys, "bounds", "-r", "2", "-m", "2", "--t", "1", "--format", "csv")
    assert out.splitlines()[1].split(",")[5] == "2/3"
    code, out, _ = run(capsys, "tables", "--format", "csv")
    assert code == 0 and "5,31,32,243,528,528" in out and "4,16,81,15,4" in out
    assert run(capsys, "mindist", "-r", "2", "-m", "3")[:2] == (0, "8\n")


def test_io_errors(capsys, tmp_path):
    code, _, err = run(capsys, "encode", "-r", "2", "-m", "2", "--in", str(tmp_path / "missing"))
    assert code == 1 and err.startswith("elrc: ")
    bad = tmp_path / "bad"
    bad.write_text("10")
    code, _, err = run(capsys, "encode", "-r", "2", "-m", "2", "--in", str(bad))
    assert code == 1 and len(err.splitlines()) == 1


@pytest.mark.parametrize(
    "argv",
    [["params", "-r", "1", "-m", "2"], ["params", "-r", "2"], ["params", "-r", "2", "-m", "0"], ["bogus"], []],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "elrc", "params", "-r", "2", "-m", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "9 4 3\n"
    proc = subprocess.run([sys.executable, "-m", "elrc", "params", "-r", "2"], capture_output=True, text=True)
    assert proc.returncode == 2
