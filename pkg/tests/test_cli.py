import json
import os
import subprocess
import sys

import numpy as np
import pytest

from qwsearch.cli import GraphSpecError, main, parse_graph_spec


def _read_csv(path):
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows


def test_parse_graph_spec():
    g = parse_graph_spec("lattice:4:6")
    assert (g.kind, g.dim, g.side, g.num_vertices) == ("lattice", 4, 6, 1296)
    g = parse_graph_spec("complete:1024")
    assert (g.kind, g.num_vertices) == ("complete", 1024)
    g = parse_graph_spec("hypercube:10")
    assert (g.kind, g.num_bits, g.num_vertices) == ("hypercube", 10, 1024)


def test_parse_graph_spec_errors():
    with pytest.raises(ValueError):
        parse_graph_spec("lattice:1:1")
    with pytest.raises(GraphSpecError):
        parse_graph_spec("ring:5")
    with pytest.raises(GraphSpecError):
        parse_graph_spec("lattice:2")
    with pytest.raises(GraphSpecError):
        parse_graph_spec("complete:abc")
    with pytest.raises(ValueError):
        parse_graph_spec("complete:1")


def test_spectrum_command(tmp_path):
    rc = main(["spectrum", "--graph", "lattice:2:4", "--gamma", "1.0",
               "--output-dir", str(tmp_path)])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "spectrum.csv")
    assert header == ["index", "energy", "fprime", "w_weight", "s_weight"]
    assert len(rows) == 5
    summary = json.loads((tmp_path / "spectrum_summary.json").read_text())
    assert summary["irrelevant_count"] == 11
    assert abs(summary["sum_rule"] + 1.0) < 1e-9
    manifest = json.loads((tmp_path / "spectrum.manifest.json").read_text())
    assert manifest["config"]["graph"] == "lattice:2:4"
    assert "artifact_version" in manifest


def test_scan_command_schema(tmp_path):
    rc = main(["scan", "--graph", "lattice:2:4", "--gamma-range", "0.5:1.5",
               "--points", "7", "--output-dir", str(tmp_path)])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "scan.csv")
    assert header == ["gamma", "e0", "e1", "gap", "overlap_s_psi0",
                      "overlap_s_psi1", "overlap_w_psi0", "overlap_w_psi1"]
    assert len(rows) == 7
    gammas = [float(r[0]) for r in rows]
    assert gammas[0] == 0.5 and gammas[-1] == 1.5


def test_evolve_command(tmp_path):
    rc = main(["evolve", "--graph", "complete:64", "--gamma", str(1.0 / 64),
               "--time-max", "30", "--points", "61", "--output-dir", str(tmp_path)])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "evolve.csv")
    assert header == ["time", "amplitude_re", "amplitude_im", "probability"]
    assert float(rows[0][3]) == pytest.approx(1.0 / 64.0, abs=1e-9)
    summary = json.loads((tmp_path / "evolve_summary.json").read_text())
    assert summary["p_star"] > 0.9


def test_constants_command(tmp_path):
    rc = main(["constants", "--output-dir", str(tmp_path)])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "constants.csv")
    assert header == ["kind", "j", "d", "size", "a", "value",
                      "error_estimate", "method", "truncation"]
    i_rows = [r for r in rows if r[0] == "I"]
    assert len(i_rows) == 14
    kinds = {r[0] for r in rows}
    assert kinds == {"I", "c", "S", "A", "x0"}


def test_scaling_command_subcritical(tmp_path):
    rc = main(["scaling", "--dim", "2", "--sides", "8,12", "--output-dir", str(tmp_path)])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "scaling_records.csv")
    assert header == ["num_vertices", "gamma_used", "gap", "t_star", "p_star",
                      "runtime_metric"]
    report = json.loads((tmp_path / "scaling_report.json").read_text())
    assert {c["bound_id"].split(":")[0] for c in report["checks"]} == {
        "amp-ceiling-zero-offset", "amp-ceiling-measured-offset", "runtime-floor"}


def test_validate_command(tmp_path):
    rc = main(["validate", "--oracle-cap", "300", "--seed", "7",
               "--output-dir", str(tmp_path)])
    assert rc == 0
    report = json.loads((tmp_path / "validate.json").read_text())
    assert report["all_pass"] is True
    ran = [f for f in report["families"] if not f["skipped"]]
    skipped = [f for f in report["families"] if f["skipped"]]
    assert len(ran) >= 2 and len(skipped) >= 1
    assert report["worst_delta"] < 1e-8


def test_figures_command(tmp_path):
    rc = main(["figures", "--output-dir", str(tmp_path)])
    assert rc == 0
    names = sorted(os.listdir(tmp_path))
    for stem in ("fig1_complete_1024", "fig2_hypercube_10", "fig3_lattice_5_4",
                 "fig3_lattice_4_6", "fig3_lattice_3_10", "fig3_lattice_2_32",
                 "fig4_secular_2_4"):
        assert f"{stem}.csv" in names
        assert f"{stem}.gp" in names
    header, rows = _read_csv(tmp_path / "fig4_poles_2_4.csv")
    assert header == ["pole_energy", "multiplicity"]
    assert [(float(r[0]), int(r[1])) for r in rows] == [
        (0.0, 1), (2.0, 4), (4.0, 6), (6.0, 4), (8.0, 1)]
    # secular samples avoid the poles and diverge in sign around them
    header, rows = _read_csv(tmp_path / "fig4_secular_2_4.csv")
    energies = np.array([float(r[0]) for r in rows])
    for pole in (0.0, 2.0, 4.0, 6.0, 8.0):
        assert np.min(np.abs(energies - pole)) >= 0.01


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("QWSEARCH_OUTPUT_DIR", str(tmp_path))
    rc = main(["spectrum", "--graph", "complete:16", "--gamma", "0.0625"])
    assert rc == 0
    assert (tmp_path / "spectrum.csv").exists()


def test_config_error_exit_code(tmp_path, capsys):
    rc = main(["scan", "--graph", "lattice:1:1", "--output-dir", str(tmp_path)])
    assert rc == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "config"


def test_gamma_validation_exit_code(tmp_path, capsys):
    rc = main(["spectrum", "--graph", "complete:16", "--gamma", "-1.0",
               "--output-dir", str(tmp_path)])
    assert rc == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "config"


def test_computation_error_exit_code(tmp_path, capsys, monkeypatch):
    import qwsearch.cli as cli_mod

    def boom(cfg):
        raise RuntimeError("synthetic failure")

    monkeypatch.setitem(cli_mod._HANDLERS, "figures", boom)
    rc = main(["figures", "--output-dir", str(tmp_path)])
    assert rc == 3
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "computation"


def test_json_mirror(tmp_path):
    rc = main(["scan", "--graph", "complete:64", "--gamma-range", "0.01:0.02",
               "--points", "3", "--format", "json", "--output-dir", str(tmp_path)])
    assert rc == 0
    payload = json.loads((tmp_path / "scan.json").read_text())
    assert len(payload) == 3
    header, rows = _read_csv(tmp_path / "scan.csv")
    for row, obj in zip(rows, payload):
        assert float(row[0]) == obj["gamma"]


def test_svg_plot(tmp_path):
    rc = main(["scan", "--graph", "complete:64", "--gamma-range", "0.01:0.02",
               "--points", "5", "--plot", "svg", "--output-dir", str(tmp_path)])
    assert rc == 0
    svg = (tmp_path / "scan.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg


def test_module_entry_point(tmp_path):
    env = dict(os.environ)
    src = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run(
        [sys.executable, "-m", "qwsearch", "spectrum", "--graph", "complete:8",
         "--gamma", "0.125", "--output-dir", str(tmp_path)],
        capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert (tmp_path / "spectrum.csv").exists()
