import json
import subprocess
import sys

import pytest

from halphen.cli import main
from halphen.curve import SpectralCurve


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_curve_latex(capsys):
    code, out, _ = run(capsys, "curve", "halphen", "--g", "6", "--format", "latex")
    assert code == 0
    assert out.strip() == "w^3 = z^7 - 2992 g_3 z^5 + 2972416 g_3^2 z^3 - 1003622400 g_3^3 z"


def test_curve_invalid_genus(capsys):
    code, _, err = run(capsys, "curve", "halphen", "--g", "5")
    assert code == 2 and "g ≠ 2 mod(3)" in err


def test_curve_lame_text(capsys):
    code, out, _ = run(capsys, "curve", "lame", "--g", "1", "--format", "text")
    assert code == 0 and out.strip() == "w^2 = (4*z^3 - g2*z + g3)/4"


def test_curve_json_round_trip(capsys):
    for g in (1, 3, 10):
        code, out, _ = run(capsys, "curve", "halphen", "--g", str(g), "--format", "json")
        assert code == 0
        curve = SpectralCurve.from_json(out)
        assert curve.to_json() == out.strip()
        data = json.loads(out)
        assert data["H"] == "0" and data["F"][0] == {"z": g + 1, "g3": 0, "coeff": "1"}


def test_curve_out_file(tmp_path, capsys):
    target = tmp_path / "c.txt"
    code, out, _ = run(capsys, "curve", "halphen", "--g", "4", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "w^3 = z^5 - 208*g3*z^3 + 12544*g3^2*z\n"


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--operator", "halphen", "--g", "18")[0] == 0
    assert run(capsys, "verify", "--operator", "halphen", "--g", "4", "--deep", "--errata")[0] == 0
    assert run(capsys, "verify", "--operator", "halphen", "--g", "5")[0] == 2
    code, out, _ = run(capsys, "verify", "--g", "6", "--format", "json")
    assert code == 1 and json.loads(out)["passed"] is False


def test_table_rows(capsys):
    code, out, _ = run(capsys, "table", "--operator", "halphen", "--g-max", "7")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["g"] for r in rows] == [1, 3, 4, 6, 7]
    code, out, _ = run(capsys, "table", "--operator", "halphen", "--g-max", "2")
    assert [json.loads(line)["g"] for line in out.splitlines()] == [1]


def test_table_row_equals_single_curve(capsys):
    _, table, _ = run(capsys, "table", "--g-max", "7")
    _, single, _ = run(capsys, "curve", "halphen", "--g", "6", "--format", "json")
    assert table.splitlines()[3] == single.strip()


def test_table_concurrent_output_is_ordered_and_identical(capsys):
    _, serial, _ = run(capsys, "table", "--g-max", "13")
    _, parallel, _ = run(capsys, "table", "--g-max", "13", "--jobs", "3")
    assert serial == parallel


def test_table_lame(capsys):
    code, out, _ = run(capsys, "table", "--operator", "lame", "--g-max", "3")
    assert code == 0 and [json.loads(x)["g"] for x in out.splitlines()] == [1, 2, 3]


def test_table_rejects_bad_range(capsys):
    assert run(capsys, "table", "--g-max", "0")[0] == 2


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "halphen", "curve", "halphen", "--g", "9", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["g"] == 9


@pytest.mark.parametrize("fmt", ["text", "json", "latex"])
def test_every_format_emits(capsys, fmt):
    code, out, _ = run(capsys, "curve", "lame", "--g", "2", "--format", fmt)
    assert code == 0 and out.startswith("w^2 = ") != (fmt == "json")
