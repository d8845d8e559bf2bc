"""Command-line interface tests."""

import json

import pytest

from mackey.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_show_json_schema(capsys):
    code, out = run(capsys, "show", "--group", "q8", "--name", "B(3,0)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["group"] == "Q8"
    assert payload["levels"]["Q8"] == {"rank": 0, "torsion": [8]}
    assert payload["levels"]["e"] == {"rank": 0, "torsion": []}
    assert payload["res"]["Z<L"] == [[1]]
    assert payload["tr"]["Z<L"] == [[2]]


def test_show_unknown_name_exits_one(capsys):
    code = main(["show", "--group", "q8", "--name", "bogus"])
    assert code == 1


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["homology"])
    assert exc.value.code == 2


def test_homology_command(capsys):
    code, out = run(
        capsys, "homology", "--group", "q8", "--rep", "H",
        "--coeff", "Z", "--degrees", "0..4",
    )
    assert code == 0
    assert "4: Z" in out and "2: mgw" in out and "0: B(3,0)" in out


def test_cohomology_command(capsys):
    code, out = run(
        capsys, "cohomology", "--group", "q8", "--rep", "rhoQ",
        "--coeff", "Z", "--degrees", "0..8",
    )
    assert code == 0
    assert "8: Z*" in out and "5: phi_Z(B(2,0))" in out
    assert "4:" not in out


def test_slices_command(capsys):
    code, out = run(capsys, "slices", "--group", "q8", "--n", "3")
    assert code == 0
    assert out.strip() == "P^3 = S^{3} H(Z)"
    code, out = run(capsys, "slices", "--group", "q8", "--n", "6", "--json")
    data = json.loads(out)
    assert [d["t"] for d in data] == [6, 12, 16]


def test_inflate_command(capsys):
    code, out = run(
        capsys, "inflate", "--kind", "psi", "--from", "k4", "--to", "q8",
        "--name", "Z(2,1)",
    )
    assert code == 0
    assert out.startswith("Z(3,2)")


def test_chart_svg_output(tmp_path, capsys):
    out_file = tmp_path / "page.svg"
    code, out = run(
        capsys, "chart", "--group", "q8", "--n", "5", "--out", str(out_file)
    )
    assert code == 0
    text = out_file.read_text()
    assert text.startswith("<?xml") and "<svg" in text


def test_e2_command(capsys):
    code, out = run(capsys, "e2", "--group", "q8", "--n", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["5,0"] == ["Z"]
    assert data["2,6"] == ["mg"]


def test_verify_single_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "ses")
    assert code == 0
    assert "ok ses" in out


def test_verify_unknown_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "nope")
    assert code == 2


def test_verify_detects_corrupted_fixture(tmp_path, capsys, monkeypatch):
    # verify must exit nonzero and print the diff when a fixture disagrees
    import shutil
    from mackey import golden as golden_mod
    from mackey.golden import golden_dir

    dst = tmp_path / "golden"
    shutil.copytree(golden_dir(), dst)
    target = dst / "sphere_h.txt"
    text = target.read_text().replace("3 Z\n", "3 Z*\n", 1)
    target.write_text(text)
    monkeypatch.setenv("MACKEY_GOLDEN_DIR", str(dst))
    golden_mod.degree_table.cache_clear()
    golden_mod.slice_table.cache_clear()
    golden_mod.chart_table.cache_clear()
    try:
        code, out = run(capsys, "verify", "--suite", "sphere-h")
        assert code == 1
        assert "expected" in out
    finally:
        monkeypatch.delenv("MACKEY_GOLDEN_DIR")
        golden_mod.degree_table.cache_clear()
        golden_mod.slice_table.cache_clear()
        golden_mod.chart_table.cache_clear()
