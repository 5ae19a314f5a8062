import json
import math
import os

import pytest

from airybvp import cli
from airybvp.exceptions import ConfigError
from airybvp.revival import RationalTime


def run(argv):
    return cli.main(argv)


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_time_token_parsing():
    t = cli.parse_time_token("1/1/pi2")
    assert isinstance(t, RationalTime)
    assert t.value == pytest.approx(1.0 / math.pi ** 2, rel=0, abs=0)
    assert cli.parse_time_token("0.25") == 0.25
    assert [cli.time_value(v) for v in cli.parse_times("0,1/2/pi2")] == [
        0.0,
        1.0 / (2.0 * math.pi ** 2),
    ]
    with pytest.raises(ConfigError):
        cli.parse_time_token("x/y/pi2")
    with pytest.raises(ConfigError):
        cli.parse_time_token("-1.0")


def test_region_parsing():
    reg = cli.parse_region("0, 1, -2, 2")
    assert reg.bounding_box() == (0.0, 1.0, -2.0, 2.0)
    with pytest.raises(ConfigError):
        cli.parse_region("0,1,-2")
    with pytest.raises(ConfigError):
        cli.parse_region("1,0,-2,2")


def test_config_file_loading_and_overrides(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("beta = 0.5\nn-max = 3  # comment\n", encoding="utf-8")
    loaded = cli.load_config(str(cfg))
    assert loaded == {"beta": "0.5", "n_max": "3"}
    with pytest.raises(ConfigError, match="FileNotFound"):
        cli.load_config(str(tmp_path / "missing.cfg"))
    bad = tmp_path / "bad.cfg"
    bad.write_text("beta 0.5\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        cli.load_config(str(bad))


def test_validate_diagnostics():
    diags = cli.validate({"beta": "1.5"})
    assert len(diags) == 1 and "well-posed" in diags[0]
    assert cli.validate({"beta": "0.5"}) == []
    assert any("n_max" in d for d in cli.validate({"n_max": "0"}))
    assert any("times" in d for d in cli.validate({"times": "p/q"}))


def test_beta_range_exit_code(tmp_path, capsys):
    rc = run(["eigs", "--beta", "1.5", "--n-max", "3", "--output-dir", str(tmp_path)])
    assert rc == 2
    err = capsys.readouterr().err
    assert err.startswith("ERROR CONFIG:")


def test_missing_required_exit_code(tmp_path):
    assert run(["solve", "--beta", "0.5", "--output-dir", str(tmp_path)]) == 2


def test_unknown_datum_exit_code(tmp_path):
    rc = run(
        [
            "solve",
            "--beta",
            "0.5",
            "--datum",
            "not-a-datum",
            "--times",
            "0.1",
            "--output-dir",
            str(tmp_path),
        ]
    )
    assert rc == 2


def test_eigs_csv_schema(tmp_path):
    rc = run(["eigs", "--beta", "1", "--n-max", "2", "--output-dir", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "eigs.csv").read_text().splitlines()
    assert lines[0] == "n,re_k,im_k,re_k3,im_k3,residual,re_norm,im_norm"
    assert len(lines) >= 5
    manifest = json.loads((tmp_path / "eigs_manifest.json").read_text())
    assert manifest["command"] == "eigs"
    assert manifest["outputs"] == ["eigs.csv"]
    assert "tolerances" in manifest and "library_version" in manifest


def test_eigs_region_override(tmp_path):
    rc = run(
        [
            "eigs",
            "--beta",
            "0.5",
            "--n-max",
            "2",
            "--region=-3,3,-3,3",
            "--output-dir",
            str(tmp_path),
        ]
    )
    assert rc == 0
    m = json.loads((tmp_path / "eigs_manifest.json").read_text())
    assert m["config"]["region"] == "-3,3,-3,3"


def test_solve_with_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "solve.cfg"
    cfg.write_text(
        "beta = 0.5\ndatum = indicator-third\ntimes = 0.01\nn-max = 5\ngrid = 9\n",
        encoding="utf-8",
    )
    out1 = tmp_path / "a"
    rc = run(["solve", "--config", str(cfg), "--output-dir", str(out1)])
    assert rc == 0
    header = (out1 / "solve.csv").read_text().splitlines()[0]
    assert header == "x,t,re_u,im_u"
    # flag overrides the file
    out2 = tmp_path / "b"
    rc = run(["solve", "--config", str(cfg), "--grid", "5", "--output-dir", str(out2)])
    assert rc == 0
    m = json.loads((out2 / "solve_manifest.json").read_text())
    assert m["config"]["grid"] == 5


def test_datum_json_file(tmp_path):
    datum = tmp_path / "datum.json"
    datum.write_text(
        json.dumps({"breakpoints": [0.0, 0.5, 1.0], "pieces": [[1.0], [0.0]]}),
        encoding="utf-8",
    )
    rc = run(
        [
            "solve",
            "--beta",
            "0.9",
            "--datum",
            str(datum),
            "--times",
            "0.05",
            "--n-max",
            "4",
            "--grid",
            "5",
            "--output-dir",
            str(tmp_path / "out"),
        ]
    )
    assert rc == 0


def test_revival_outputs_and_coprime_reduction(tmp_path):
    with pytest.warns(UserWarning):
        rc = run(
            [
                "revival",
                "--p",
                "2",
                "--q",
                "4",
                "--datum",
                "indicator-third",
                "--modes",
                "32",
                "--grid",
                "16",
                "--series-n-max",
                "5",
                "--output-dir",
                str(tmp_path),
            ]
        )
    assert rc == 0
    lines = (tmp_path / "revival.csv").read_text().splitlines()
    assert lines[0] == "x,u_r_series,u_r_superposition,u_c_estimate,clipped"
    sidecar = json.loads((tmp_path / "revival_singularities.json").read_text())
    assert sidecar["rational_time"] == {
        "p": 1,
        "q": 2,
        "value": 1.0 / (2.0 * math.pi ** 2),
    }
    assert {s["kind"] for s in sidecar["predicted_singularities"]} == {"jump", "cusp"}
    assert len(sidecar["gauss_sums"]) == 2


def test_verify_json(tmp_path):
    rc = run(
        [
            "verify",
            "--beta",
            "0.5",
            "--datum",
            "indicator-third",
            "--times",
            "0,0.2,0.5",
            "--n-max",
            "20",
            "--output-dir",
            str(tmp_path),
        ]
    )
    assert rc == 0
    report = json.loads((tmp_path / "verify.json").read_text())
    assert report["all_passed"] is True
    assert set(report["checks"]) == {
        "norm_nonincreasing",
        "energy_identity_2pct",
        "flux_bound",
        "weighted_bound",
    }


def test_beta0_outputs(tmp_path):
    rc = run(
        [
            "beta0",
            "--datum",
            "indicator-third",
            "--n-max",
            "8",
            "--times",
            "0.01",
            "--grid",
            "9",
            "--output-dir",
            str(tmp_path),
        ]
    )
    assert rc == 0
    z = (tmp_path / "beta0_ray_zeros.csv").read_text().splitlines()
    assert z[0] == "n,re_k,im_k,im_seed,re_weight,im_weight"
    assert len(z) == 9
    s = (tmp_path / "beta0_residue_series.csv").read_text().splitlines()
    assert s[0] == "x,t,re_value,im_value,last_term"


def test_figures_fig4(tmp_path):
    rc = run(
        [
            "figures",
            "--which",
            "fig4",
            "--n-max",
            "40",
            "--grid",
            "32",
            "--output-dir",
            str(tmp_path),
        ]
    )
    assert rc == 0
    lines = (tmp_path / "figure4_revival_vs_fractal.csv").read_text().splitlines()
    assert lines[0] == "x,u_rational_time,u_perturbed_time"


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_figures_fig2_smoothing_recipe(tmp_path):
    rc = run(
        [
            "figures",
            "--which",
            "fig2",
            "--n-max",
            "6",
            "--grid",
            "9",
            "--output-dir",
            str(tmp_path),
        ]
    )
    assert rc == 0
    lines = (tmp_path / "figure_fig2_smoothing.csv").read_text().splitlines()
    assert lines[0] == "x,t,re_u,im_u"
    manifest = json.loads((tmp_path / "figures_manifest.json").read_text())
    assert manifest["outputs"] == ["figure_fig2_smoothing.csv"]


def test_unknown_figure_is_config_error(tmp_path):
    assert run(["figures", "--which", "fig9", "--output-dir", str(tmp_path)]) == 2


def test_rerun_reproduces_bytes(tmp_path):
    out1 = tmp_path / "r1"
    rc = run(["eigs", "--beta", "0.5", "--n-max", "3", "--output-dir", str(out1)])
    assert rc == 0
    out2 = tmp_path / "r2"
    rc = run(["rerun", str(out1 / "eigs_manifest.json"), "--output-dir", str(out2)])
    assert rc == 0
    assert read(out1 / "eigs.csv") == read(out2 / "eigs.csv")
    assert read(out1 / "eigs_manifest.json") == read(out2 / "eigs_manifest.json")


def test_rerun_missing_manifest(tmp_path):
    assert run(["rerun", str(tmp_path / "nope.json")]) == 2


def test_output_dir_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("AIRYBVP_OUTDIR", str(tmp_path / "envout"))
    rc = run(["eigs", "--beta", "1", "--n-max", "1"])
    assert rc == 0
    assert (tmp_path / "envout" / "eigs.csv").exists()
