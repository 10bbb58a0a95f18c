import json
from pathlib import Path

import pytest

from plknots.cli import run
from plknots.shadow_io import read_shadow


@pytest.fixture()
def star5_file(tmp_path: Path) -> Path:
    path = tmp_path / "star5.json"
    assert run(["gen", "star", "--n", "5", "-o", str(path)]) == 0
    return path


def test_gen_writes_reloadable_document(star5_file, capsys):
    diagram = read_shadow(star5_file.read_bytes())
    assert len(diagram.shadow.crossings) == 5
    capsys.readouterr()
    assert run(["gen", "torus", "--n", "3", "--subdiv", "2"]) == 0
    out = capsys.readouterr().out
    assert len(read_shadow(out).shadow.crossings) == 3


def test_crossings_table_and_json(star5_file, capsys):
    assert run(["crossings", str(star5_file)]) == 0
    table = capsys.readouterr().out
    data_rows = [line for line in table.splitlines() if line.strip()[:1].isdigit()]
    assert len(data_rows) == 5

    assert run(["crossings", str(star5_file), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in payload["crossings"]] == [0, 1, 2, 3, 4]
    for c in payload["crossings"]:
        assert set(c) >= {"id", "edge_a", "edge_b", "s", "t", "assignment"}


def test_realizable_feasible_and_infeasible(star5_file, capsys):
    assert run(["realizable", str(star5_file), "--bits", "00000"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("FEASIBLE")
    assert "z0 = " in out

    assert run(["realizable", str(star5_file), "--bits", "01010"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("INFEASIBLE")
    assert "2 3 4" in out


def test_were_table_and_json(star5_file, capsys):
    assert run(["were", str(star5_file)]) == 0
    table = capsys.readouterr().out
    assert "0_1 = 5/16" in table
    assert "∅ = 11/16" in table

    assert run(["were", str(star5_file), "--smooth", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mode"] == "smooth"
    assert payload["entries"] == {"0_1": "5/8", "3_1": "5/16", "5_1": "1/16"}


def test_json_output_is_byte_stable(star5_file, capsys):
    outputs = []
    for _ in range(2):
        assert run(["were", str(star5_file), "--format", "json"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    # Keys arrive sorted so unrelated dict ordering cannot leak through.
    parsed = json.loads(outputs[0])
    assert list(parsed) == sorted(parsed)


def test_forcing_json(star5_file, capsys):
    assert run(["forcing", str(star5_file), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["forcing_number"] == 2
    assert payload["witness_set"] == [0, 1]
    assert payload["witness_assignment"] == {"0": "first_over", "1": "second_over"}
    assert payload["vacuous"] is False


def test_maxforced_json(star5_file, capsys):
    assert run(["maxforced", str(star5_file), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["max_forced"] == 3
    assert payload["states_examined"] == 243
    assert payload["complete"] is True


def test_iis_prints_core(star5_file, capsys):
    assert run(["iis", str(star5_file), "--bits", "10101"]) == 0
    out = capsys.readouterr().out
    assert "2 3 4" in out


def test_exit_codes(star5_file, tmp_path, capsys):
    assert run(["bogus"]) == 1
    assert run([]) == 1
    assert run(["realizable", str(tmp_path / "missing.json"), "--bits", "0"]) == 2
    assert run(["realizable", str(star5_file), "--bits", "01"]) == 2
    assert run(["iis", str(star5_file), "--bits", "00000"]) == 2
    assert run(["maxforced", str(star5_file), "--budget", "10"]) == 3
    assert run(["gen", "star", "--n", "4"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert run(["gen", "--help"]) == 0
    capsys.readouterr()


def test_assign_roundtrip(star5_file, tmp_path, capsys):
    out_file = tmp_path / "assigned.json"
    assert (
        run(
            [
                "assign",
                str(star5_file),
                "--set",
                "0=first_over,1=second_over",
                "-o",
                str(out_file),
            ]
        )
        == 0
    )
    diagram = read_shadow(out_file.read_bytes())
    assert {cid: v.value for cid, v in diagram.assignment.items()} == {
        0: "first_over",
        1: "second_over",
    }

    cleared = tmp_path / "cleared.json"
    assert run(["assign", str(out_file), "--clear", "0", "-o", str(cleared)]) == 0
    diagram = read_shadow(cleared.read_bytes())
    assert list(diagram.assignment) == [1]

    assert run(["assign", str(star5_file), "--set", "9=first_over"]) == 2
    assert run(["assign", str(star5_file), "--set", "0=sideways"]) == 2
    capsys.readouterr()


def test_draw_writes_png(star5_file, tmp_path, capsys):
    png = tmp_path / "star.png"
    assert run(["draw", str(star5_file), "--bits", "00000", "-o", str(png)]) == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    capsys.readouterr()


def test_report_writes_csv_and_figures(star5_file, tmp_path, capsys):
    out_dir = tmp_path / "report"
    assert run(["report", str(star5_file), "-o", str(out_dir)]) == 0
    capsys.readouterr()

    csv_path = out_dir / "report.csv"
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "class,probability"
    assert "0_1,5/16" in rows
    assert "∅,11/16" in rows
    for name in ("diagram.png", "wereset.png"):
        assert (out_dir / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
