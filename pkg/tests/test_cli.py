from __future__ import annotations

import json
import subprocess
import sys

import pytest

from torus_incidence import formats
from torus_incidence.catalog import figure, named_pattern
from torus_incidence.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_five(capsys):
    code, out, _ = run(capsys, "construct", "--m", 5, "--n", 5)
    data = json.loads(out)
    assert code == 0 and data["k"] == 5 and data["trace"] == {"case": "FiveColor/tiled", "palette": 5}


def test_construct_t45(capsys):
    code, out, _ = run(capsys, "construct", "--m", 4, "--n", 5)
    assert code == 0 and json.loads(out)["trace"] == {"case": "Lemma4/T45", "palette": 6}


def test_construct_bad_size(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--m", "2", "--n", "9"])
    assert exc.value.code == 2


@pytest.mark.parametrize("m,n", [(3, 3), (4, 5), (7, 7), (10, 10), (9, 13), (11, 8)])
def test_construct_verify_roundtrip(capsys, tmp_path, m, n):
    path = tmp_path / "c.json"
    code, _, err = run(capsys, "construct", "--m", m, "--n", n, "--out", path)
    assert code == 0 and "palette" in err
    assert path.read_bytes().endswith(b"}\n")
    code, out, _ = run(capsys, "verify", path)
    assert code == 0 and out.strip() == "valid"


def test_construct_deterministic(capsys):
    first = run(capsys, "construct", "--m", 6, "--n", 7)[1]
    assert run(capsys, "construct", "--m", 6, "--n", 7)[1] == first


def test_verify_fixture(capsys, tmp_path):
    path = tmp_path / "T35_complete.json"
    path.write_text(formats.coloring_to_json(figure("T35_complete")))
    assert run(capsys, "verify", path)[0] == 0


def test_verify_partial(capsys, tmp_path):
    path = tmp_path / "Iprime_partial.json"
    path.write_text(formats.coloring_to_json(figure("Iprime_partial")))
    code, out, _ = run(capsys, "verify", path)
    assert code == 0 and "partial, 24 unassigned" in out


def test_verify_constant_invalid(capsys, tmp_path):
    path = tmp_path / "const.json"
    colors = [[r, c, d, 1] for r in range(3) for c in range(3) for d in "NESW"]
    path.write_text(json.dumps({"m": 3, "n": 3, "k": 1, "colors": colors}))
    code, out, _ = run(capsys, "verify", path)
    assert code == 1 and out.startswith("invalid: (0, 0, N) conflicts with (0, 0, E)")


def test_verify_truncated(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(formats.coloring_to_json(figure("T35_complete"))[:200])
    code, _, err = run(capsys, "verify", path)
    assert code == 2 and "line" in err and "column" in err


def test_verify_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "nope.json")[0] == 2


def test_verify_vertex_square(capsys, tmp_path):
    good = tmp_path / "i.txt"
    good.write_text(formats.pattern_to_matrix(named_pattern("I")))
    assert run(capsys, "verify", good, "--kind", "vertex-square")[0] == 0
    bad = tmp_path / "c.txt"
    bad.write_text("1 2 3\n4 5 6\n7 8 1\n")
    code, out, _ = run(capsys, "verify", bad, "--kind", "vertex-square")
    assert code == 1 and "invalid" in out
    quasi = tmp_path / "j.json"
    quasi.write_text(formats.pattern_to_json(named_pattern("J")))
    assert run(capsys, "verify", quasi, "--kind", "vertex-square")[0] == 0


def test_chromatic_square(capsys):
    code, out, _ = run(capsys, "chromatic", "--m", 3, "--n", 3, "--target", "square")
    assert code == 0 and json.loads(out)["value"] == 9


def test_chromatic_incidence(capsys):
    code, out, _ = run(capsys, "chromatic", "--m", 3, "--n", 3, "--target", "incidence", "--witness")
    report = json.loads(out)
    assert code == 0 and report["value"] == 6 and report["refuted"][-1] == 5
    assert report["witness"] is not None


def test_chromatic_guard(capsys):
    assert run(capsys, "chromatic", "--m", 20, "--n", 20, "--target", "incidence")[0] == 3


def test_chromatic_guard_from_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text('allow_large = true\n')
    code, out, _ = run(capsys, "--config", cfg, "chromatic", "--m", 5, "--n", 15, "--target", "square", "--k-max", 6)
    assert code == 0 and json.loads(out)["value"] == 5


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text("not = [valid\n")
    assert run(capsys, "--config", cfg, "construct", "--m", 3, "--n", 3)[0] == 2


def test_render_A_on_T44(capsys, tmp_path):
    path = tmp_path / "A_on_T44.json"
    path.write_text(formats.coloring_to_json(figure("A_on_T44")))
    code, out, _ = run(capsys, "render", path)
    assert code == 0
    assert formats.parse_ascii(out) == figure("A_on_T44")


def test_render_empty_partial(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text('{"m": 3, "n": 3, "k": 6, "colors": []}\n')
    code, out, _ = run(capsys, "render", path)
    body = out.split("\n", 1)[1]
    assert code == 0 and body.count("x") == 36 and not any(ch.isdigit() for ch in body)


def test_render_parse_failure(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert run(capsys, "render", path)[0] == 2


def test_export_formats(capsys, tmp_path):
    src = tmp_path / "c.json"
    run(capsys, "construct", "--m", 5, "--n", 10, "--out", src)
    code, out, _ = run(capsys, "export", src, "--format", "matrix")
    assert code == 0 and len(out.splitlines()) == 5
    assert run(capsys, "export", src, "--format", "dot")[1].count(" -- ") == 100
    ascii_path = tmp_path / "c.txt"
    run(capsys, "export", src, "--format", "ascii", "--out", ascii_path)
    code, out, _ = run(capsys, "export", ascii_path, "--format", "json")
    assert code == 0 and formats.coloring_from_json(out) == formats.coloring_from_json(src.read_text())


def test_export_matrix_rejects_partial(capsys, tmp_path):
    src = tmp_path / "p.json"
    src.write_text(formats.coloring_to_json(figure("Iprime_partial")))
    assert run(capsys, "export", src, "--format", "matrix")[0] == 2


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "torus_incidence.cli", "construct", "--m", "3", "--n", "4", "--format", "matrix"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 3


def test_square_guard_without_override(capsys):
    assert run(capsys, "chromatic", "--m", 5, "--n", 15, "--target", "square")[0] == 3
