import math

import numpy as np
import pytest

from sdfs_jcm.cli import main
from sdfs_jcm.config import parse_config, serialize_config, with_output_dir
from sdfs_jcm.presets import PRESET_NAMES, figure_preset
from sdfs_jcm.runner import run


def test_minimal_document_gets_defaults():
    cfg = parse_config("alpha0_re = 3\nr = 1\nm = 0\n")
    assert cfg.state.alpha0 == 3.0
    assert cfg.detuning_ratio == 0.0
    assert cfg.t_max_scaled == 25.0
    assert cfg.t_points == 2000
    assert cfg.tail_tol == 1e-12
    assert cfg.eta_points == 512
    assert cfg.q_grid.nx == 201


def test_comments_and_blank_lines_ignored():
    cfg = parse_config("# a comment\n\nalpha0_re = 1\n")
    assert cfg.state.alpha0 == 1.0


def test_negative_r_names_key():
    with pytest.raises(ValueError, match="'r'"):
        parse_config("r = -1\n")


def test_unknown_key_reports_line():
    with pytest.raises(ValueError, match=r"line 2.*mystery"):
        parse_config("r = 1\nmystery = 3\n")


def test_duplicate_key_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        parse_config("m = 1\nm = 2\n")


def test_non_numeric_value_rejected():
    with pytest.raises(ValueError, match="'t_points'"):
        parse_config("t_points = soon\n")


def test_bad_observable_rejected():
    with pytest.raises(ValueError, match="observables"):
        parse_config("observables = inversion,wigner\n")


def test_q_grid_radius_enforced_when_qfunc_selected():
    doc = "alpha0_re = 6\nobservables = qfunc\n"
    with pytest.raises(ValueError, match="radius"):
        parse_config(doc)


def test_presets_round_trip():
    for name in PRESET_NAMES:
        cfg = figure_preset(name)
        assert parse_config(serialize_config(cfg)) == cfg


def test_preset_values():
    fig1b = figure_preset("fig1b")
    assert fig1b.state.alpha0 == 3.0
    assert fig1b.state.r == 1.0
    assert fig1b.state.phi == 0.0
    assert fig1b.state.m == 1
    assert fig1b.detuning_ratio == 0.0
    assert fig1b.observables == ("inversion",)

    fig3a = figure_preset("fig3a")
    assert fig3a.state.alpha0 == 0.5
    assert fig3a.state.m == 0
    assert fig3a.observables == ("photon_dist",)

    fig5b = figure_preset("fig5b")
    assert fig5b.observables == ("qfunc",)
    assert fig5b.q_time_scaled == pytest.approx(
        math.pi * math.sqrt(9.0 + math.sinh(1.0) ** 2)
    )
    assert fig5b.q_time_scaled == pytest.approx(10.12, abs=5e-3)


def test_unknown_preset_lists_names():
    with pytest.raises(ValueError, match="fig1a"):
        figure_preset("fig9z")


def test_run_fig1a_outputs(tmp_path):
    result = run(with_output_dir(figure_preset("fig1a"), str(tmp_path / "fig1a")))
    assert result.ok
    assert result.summary["status"] == "ok"
    lines = (tmp_path / "fig1a" / "inversion.csv").read_text().splitlines()
    assert lines[0] == "lambda_t,W"
    assert len(lines) == 2001
    first_t, first_w = (float(x) for x in lines[1].split(","))
    assert first_t == 0.0
    assert first_w == pytest.approx(1.0, abs=1e-10)
    assert (tmp_path / "fig1a" / "run_summary.txt").exists()


def test_run_fig2a_initial_purity(tmp_path):
    result = run(with_output_dir(figure_preset("fig2a"), str(tmp_path / "fig2a")))
    assert result.ok
    lines = (tmp_path / "fig2a" / "entropy.csv").read_text().splitlines()
    assert lines[0] == "lambda_t,S_f,lambda_plus,lambda_minus"
    s0 = float(lines[1].split(",")[1])
    assert s0 <= 1e-10


def test_run_fig5a_q_normalization(tmp_path):
    result = run(with_output_dir(figure_preset("fig5a"), str(tmp_path / "fig5a")))
    assert result.ok
    data = np.loadtxt(tmp_path / "fig5a" / "qfunc.csv", delimiter=",", skiprows=1)
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    cell = (xs[1] - xs[0]) * (ys[1] - ys[0])
    assert float(data[:, 2].sum()) * cell == pytest.approx(1.0, abs=1e-3)
    header = (tmp_path / "fig5a" / "qfunc.csv").read_text().splitlines()[0]
    assert header == "x,y,Q"


def test_run_is_byte_deterministic(tmp_path):
    cfg = figure_preset("fig1a")
    run(with_output_dir(cfg, str(tmp_path / "a")))
    run(with_output_dir(cfg, str(tmp_path / "b")))
    first = (tmp_path / "a" / "inversion.csv").read_bytes()
    second = (tmp_path / "b" / "inversion.csv").read_bytes()
    assert first == second


def test_photon_dist_schema(tmp_path):
    doc = (
        "alpha0_re = 0.5\nr = 0.2\nt_points = 4\nt_max_scaled = 1.0\n"
        "observables = photon_dist\noutput_dir = {}\n"
    ).format(tmp_path / "pd")
    result = run(parse_config(doc))
    assert result.ok
    lines = (tmp_path / "pd" / "photon_dist.csv").read_text().splitlines()
    assert lines[0] == "lambda_t,n,P"
    # n column is an integer sequence restarting each time sample
    assert lines[1].split(",")[1] == "0"


def test_cli_run_and_exit_codes(tmp_path, capsys):
    config_path = tmp_path / "run.cfg"
    config_path.write_text(
        "alpha0_re = 1\nt_points = 16\nt_max_scaled = 2.0\n"
        f"observables = inversion\noutput_dir = {tmp_path / 'out'}\n"
    )
    assert main(["run", str(config_path)]) == 0
    assert (tmp_path / "out" / "inversion.csv").exists()

    bad = tmp_path / "bad.cfg"
    bad.write_text("r = -2\n")
    assert main(["run", str(bad)]) == 2
    assert "'r'" in capsys.readouterr().err

    assert main(["run", str(tmp_path / "missing.cfg")]) == 2
    assert main(["preset", "nonsense"]) == 2


def test_cli_preset_out_dir(tmp_path):
    target = tmp_path / "custom"
    assert main(["preset", "fig1a", "--out", str(target)]) == 0
    assert (target / "inversion.csv").exists()


def test_cli_overlap_verb(capsys):
    assert main(["overlap", "--p1", "alpha0_re=1,r=0,m=1", "--p2", "alpha0_re=2,r=0,m=1"]) == 0
    out = capsys.readouterr().out
    assert "modulus" in out and "phase" in out
    assert main(["overlap", "--p1", "bogus=1", "--p2", "r=0"]) == 2
