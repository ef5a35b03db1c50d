# Python 3.10.11
# Creado: 19/10/2026
"""Test de campañas, informes, afirmaciones y línea de comandos"""
import os
import sys

GROKLAB_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__) + "/groklab"))
sys.path.append(os.path.dirname(GROKLAB_DIR))


import math
from pathlib import Path

import openpyxl
import pytest

from groklab.campaign import (
    CampaignConfig,
    Claim,
    ClaimsFile,
    analyze_campaign,
    emit_figures,
    is_complete,
    load_campaign,
    lookup,
    run_campaign,
    simulate_bounds,
    verify,
)
from groklab.cli import GrokLabCLI
from groklab.cli.userconfig import UserConfig
from groklab.reporting import REPORTS, CampaignData, Table
from groklab.reporting.reports import ReferenceReport
from groklab.trainer import (
    RunSummary,
    TrajectoryLog,
    checkpoint_path,
    write_summary,
    write_trajectory,
)
from groklab.util import read_schema, read_versioned_toml

FILES = Path(__file__).parent / "files"
ETA, LAM, KAPPA = 1e-3, 1.0, 0.25


def base_campaign(**changes):
    data = {
        "campaign_id": "t",
        "defaults": {"embed_dim": 8, "heads": 2, "ff_dim": 16, "max_steps": 40, "log_every": 10},
        "cells": [{"cell_id": "a", "seeds": [0, 1], "p": 11}, {"cell_id": "b", "seeds": [2], "p": 13}],
    }
    data.update(changes)
    return data


# Configuración de campañas


def test_campaign_from_toml():
    campaign = CampaignConfig.from_toml(FILES / "campaign_tiny.toml")
    assert campaign.campaign_id == "tiny"
    assert campaign.calibration_cell == "add_p11"
    runs = campaign.runs()
    assert [r.run_name for r in runs] == ["add_p11_seed0", "add_p11_seed1", "mult_p13_seed0"]
    assert runs[2].op == "mult"
    assert runs[0].embed_dim == 8
    assert campaign.serialize()["cells"] == ["add_p11", "mult_p13"]


def test_campaign_errors():
    with pytest.raises(ValueError, match="no cells"):
        CampaignConfig.from_dict(base_campaign(cells=[]))
    with pytest.raises(ValueError, match="Celdas repetidas"):
        CampaignConfig.from_dict(
            base_campaign(cells=[{"cell_id": "a", "seeds": [0]}, {"cell_id": "a", "seeds": [1]}])
        )
    with pytest.raises(KeyError):
        CampaignConfig.from_dict(base_campaign(calibration_cell="z"))
    with pytest.raises(KeyError):
        CampaignConfig.from_dict(base_campaign(defaults={"seed": 1}))
    with pytest.raises(KeyError):
        CampaignConfig.from_dict(base_campaign(budget=10))


@pytest.mark.parametrize(
    "cell,error",
    [
        ({"seeds": [0]}, KeyError),
        ({"cell_id": "a b", "seeds": [0]}, ValueError),
        ({"cell_id": "a"}, ValueError),
        ({"cell_id": "a", "seeds": [-1]}, ValueError),
        ({"cell_id": "a", "seeds": [0], "seed": 0}, KeyError),
        ({"cell_id": "a", "seeds": [0], "width": 3}, KeyError),
        ({"cell_id": "a", "seeds": [0], "max_steps": 45}, ValueError),
    ],
)
def test_cell_errors(cell, error):
    with pytest.raises(error):
        CampaignConfig.from_dict(base_campaign(cells=[cell]))


def test_repeated_seeds():
    campaign = CampaignConfig.from_dict(base_campaign(cells=[{"cell_id": "a", "seeds": [0, 0], "p": 11}]))
    with pytest.raises(ValueError):
        campaign.runs()


# Ejecución


def test_run_campaign_skips_completed(tmp_path):
    defaults = {"embed_dim": 8, "heads": 2, "ff_dim": 16, "max_steps": 20, "log_every": 10, "early_stop": False}
    campaign = CampaignConfig.from_dict(
        base_campaign(cells=[{"cell_id": "a", "seeds": [0], "p": 11}], defaults=defaults)
    )
    first = run_campaign(campaign, tmp_path, jobs=1, progress=False)
    assert first.ok
    assert [r["name"] for r in first.completed] == ["a_seed0"]
    config = campaign.runs()[0]
    assert is_complete(tmp_path, config)
    assert read_schema(tmp_path / "campaign.toml") == "groklab-campaign/1"

    again = run_campaign(campaign, tmp_path, jobs=1, progress=False)
    assert again.completed == []
    assert again.skipped == ["a_seed0"]


def test_run_campaign_removes_checkpoints(tmp_path):
    defaults = {
        "embed_dim": 8,
        "heads": 2,
        "ff_dim": 16,
        "max_steps": 20,
        "log_every": 10,
        "early_stop": False,
        "checkpoint_every": 1,
    }
    campaign = CampaignConfig.from_dict(
        base_campaign(cells=[{"cell_id": "a", "seeds": [0], "p": 11}], defaults=defaults)
    )
    result = run_campaign(campaign, tmp_path, jobs=1, progress=False)
    assert result.ok
    assert is_complete(tmp_path, campaign.runs()[0])
    assert not checkpoint_path(tmp_path, campaign.runs()[0]).exists()
    assert list(tmp_path.glob("*.ckpt.npz")) == []



# Análisis sobre una campaña sintética


def decay_log(V_mem):
    log = TrajectoryLog()
    for i in range(150):
        t = i * 20
        train_acc = 1.0 if t >= 200 else 0.5
        val_acc = 1.0 if t >= 1200 else 0.1
        V = V_mem * math.exp(-2.0 * KAPPA * ETA * LAM * max(t - 200, 0))
        cos = math.cos(math.radians(min(t - 200, 400) / 10.0)) if t >= 200 else float("nan")
        log.append(t, V, train_acc, val_acc, 1.0 - train_acc, 1.0 - val_acc, LAM, cos)
    return log


def synthetic_summary(cell_id, seed, arch="transformer1", p=97):
    V_mem = 100.0 * math.exp(0.5)
    return RunSummary(
        f"{cell_id}-{seed}",
        cell_id,
        seed,
        arch,
        "modular",
        p,
        ETA,
        LAM,
        steps_run=2980,
        T_mem=200,
        T_grok_99=1200,
        V_mem=V_mem,
        V_post=50.0,
        grokked=True,
        kappa_ll=KAPPA,
        kappa_r2=0.99,
        V_star=100.0,
    )


@pytest.fixture
def runs_dir(tmp_path):
    """Nueve ejecuciones retenidas en cuatro celdas y una con la trayectoria corrupta"""
    summaries = [synthetic_summary("cal", s) for s in range(3)]
    summaries += [synthetic_summary("same", s) for s in range(2)]
    summaries += [synthetic_summary("other_arch", s, arch="mlp") for s in range(2)]
    summaries += [synthetic_summary("other_p", s, p=113) for s in range(2)]
    for s in summaries:
        name = f"{s.cell_id}_seed{s.seed}"
        write_trajectory(decay_log(s.V_mem), tmp_path / f"{name}.traj")
        write_summary(s, tmp_path / f"{name}.toml")
    broken = synthetic_summary("broken", 0)
    write_summary(broken, tmp_path / "broken_seed0.toml")
    (tmp_path / "broken_seed0.traj").write_text("# groklab-trajectory/1\nstep V\n1 2 3\n", encoding="utf-8")
    return tmp_path


def test_load_campaign_excludes_corrupt(runs_dir):
    data = load_campaign(runs_dir, calibration_cell="cal")
    assert len(data.summaries) == 9
    assert list(data.excluded) == ["broken_seed0"]
    assert data.excluded["broken_seed0"].startswith("trayectoria corrupta")
    assert list(data.by_cell()) == ["cal", "other_arch", "other_p", "same"]
    assert data.calibration_cell == "cal"


def test_load_campaign_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_campaign(tmp_path / "nada")
    with pytest.raises(ValueError, match="No hay resúmenes"):
        load_campaign(tmp_path)


def test_analyze_campaign_writes_every_report(runs_dir):
    xlsx = runs_dir / "campaign.xlsx"
    written = analyze_campaign(runs_dir, xlsx=xlsx, calibration_cell="cal")
    for report in REPORTS:
        assert read_schema(written[report.name]) == f"groklab-{report.name}/1"
    outcomes = read_versioned_toml(written["outcomes"])
    assert outcomes["n_runs"] == 9
    assert outcomes["n_excluded"] == 1
    assert outcomes["cells"]["cal"]["n_delay_positive"] == 3
    assert outcomes["cells"]["cal"]["n_V_mem_above_V_post"] == 3
    # Todas las celdas comparten η y λ: no hay barridos que medir
    assert outcomes["scaling"]["lam"]["n_groups"] == 0
    assert "max_rel_dev" not in outcomes["scaling"]["eta"]

    tiers = read_versioned_toml(written["tiers"])
    assert tiers["status"] == "ok"
    assert [tiers["tiers"][t]["n"] for t in ("tier1", "tier2", "tier3")] == [2, 4, 6]
    assert tiers["pooled"]["mape_B"] < 1e-6
    assert tiers["pooled"]["b_not_worse"]

    kappa = read_versioned_toml(written["kappa"])
    assert kappa["n_qualifying"] == 9
    assert kappa["median"] == pytest.approx(KAPPA)

    book = openpyxl.load_workbook(xlsx)
    assert "outcomes" in book.sheetnames
    assert "tiers" in book.sheetnames
    assert book["outcomes"].cell(row=2, column=1).value == "cell_id"


def test_tiers_without_calibration_cell(runs_dir):
    written = analyze_campaign(runs_dir)
    assert read_versioned_toml(written["tiers"])["status"] == "unavailable"


def test_emit_figures(runs_dir, tmp_path):
    paths = emit_figures(runs_dir, tmp_path / "figures")
    assert set(paths) == {"collapse", "kappa_lambda", "phase_plane", "overshoot"}
    lines = paths["collapse"].read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# groklab-figure/1"
    assert lines[1].split()[0] == "tau"
    assert len(lines) == 2 + 201
    # V_t / V_mem vale 1 en τ = 0
    assert float(lines[2].split()[1]) == pytest.approx(1.0)


def test_emit_figures_on_empty_campaign(tmp_path):
    paths = emit_figures(tmp_path)
    for path in paths.values():
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# groklab-figure/1"
        assert len(lines) == 2


# Simulación de cotas


def test_simulate_bounds_small_grid(tmp_path):
    document = simulate_bounds(FILES / "grid_tiny.toml", tmp_path)
    assert document["grid"]["n_points"] == 4
    assert document["grid"]["passed"]
    assert document["necessity"]["delayed"]["holds"]
    assert document["necessity"]["immediate"]["certified_no_delay"]
    assert read_schema(tmp_path / "bounds.toml") == "groklab-bounds/1"


# Afirmaciones


def test_claim_validation():
    assert Claim("a", "r.x", 1.0, 0.1).holds(1.05)
    assert Claim("a", "r.x", 1.0, relation="max").holds(0.5)
    assert not Claim("a", "r.x", 1.0, relation="min").holds(0.5)
    with pytest.raises(ValueError):
        Claim("a", "sin_punto", 1.0)
    with pytest.raises(ValueError):
        Claim("a", "r.x", 1.0, relation="between")
    with pytest.raises(ValueError):
        Claim("a", "r.x", 1.0, tolerance=-1.0)
    with pytest.raises(KeyError):
        Claim.from_dict({"id": "a", "key": "r.x"})


def test_lookup_indexes_lists(tmp_path):
    simulate_bounds(FILES / "grid_tiny.toml", tmp_path)
    assert lookup(tmp_path, "bounds.grid.n_points") == 4
    assert lookup(tmp_path, "bounds.grid.points.0.eta") == pytest.approx(1e-2)
    with pytest.raises(KeyError, match="clave ausente"):
        lookup(tmp_path, "bounds.grid.nada")
    with pytest.raises(KeyError, match="no existe el informe"):
        lookup(tmp_path, "tiers.pooled.mape_B")


def test_verify_small_grid(tmp_path):
    simulate_bounds(FILES / "grid_tiny.toml", tmp_path)
    claims = ClaimsFile.from_toml(FILES / "claims_tiny.toml")
    report = verify(tmp_path, claims)
    assert report.passed
    assert (report.count("pass"), report.count("skipped")) == (3, 1)

    full = verify(tmp_path, claims, scope="full")
    assert not full.passed
    failed = [r for r in full.results if r.status == "fail"]
    assert [r.claim.id for r in failed] == ["full-only"]
    assert "clave ausente" in failed[0].detail


def test_verify_detects_perturbed_target(tmp_path):
    simulate_bounds(FILES / "grid_tiny.toml", tmp_path)
    claims = ClaimsFile([Claim("n", "bounds.grid.n_points", 5.0)])
    report = verify(tmp_path, claims)
    assert not report.passed
    assert report.results[0].value == 4.0


def test_verify_rejects_non_scalars(tmp_path):
    simulate_bounds(FILES / "grid_tiny.toml", tmp_path)
    claims = ClaimsFile([Claim("pts", "bounds.grid.points", 1.0)])
    report = verify(tmp_path, claims)
    assert report.results[0].status == "fail"


def test_empty_claims_file_passes_with_warning(tmp_path):
    path = tmp_path / "vacio.toml"
    path.write_text('schema = "groklab-claims/1"\n', encoding="utf-8")
    report = verify(tmp_path, ClaimsFile.from_toml(path))
    assert report.passed
    assert len(report.warnings) == 1
    assert report.serialize()["n_pass"] == 0


def test_claims_file_errors(tmp_path):
    path = tmp_path / "claims.toml"
    path.write_text('schema = "groklab-claims/9"\n', encoding="utf-8")
    with pytest.raises(ValueError):
        ClaimsFile.from_toml(path)
    path.write_text(
        '[[claims]]\nid = "a"\nkey = "r.x"\ntarget = 1\n\n[[claims]]\nid = "a"\nkey = "r.y"\ntarget = 2\n',
        encoding="utf-8",
    )
    with pytest.raises(ValueError, match="repetidos"):
        ClaimsFile.from_toml(path)


def test_packaged_claims_load():
    desk = ClaimsFile.packaged("desk")
    full = ClaimsFile.packaged("full")
    assert desk.claims and full.claims
    assert all(c.key.split(".")[0] in {r.name for r in REPORTS} | {"bounds"} for c in desk.claims + full.claims)


def test_packaged_reference_and_bound_claims_hold(tmp_path):
    simulate_bounds(reports_dir=tmp_path / "reports")
    ReferenceReport(CampaignData(tmp_path)).write(tmp_path / "reports")
    desk = ClaimsFile.packaged("desk")
    closed_form = [c for c in desk.claims if c.key.split(".")[0] in ("reference", "bounds")]
    report = verify(tmp_path / "reports", ClaimsFile(closed_form))
    assert report.passed, [r.serialize() for r in report.results if r.status == "fail"]


# Tablas


def test_table():
    table = Table("t", ["a", "b"])
    table.append(a=1, b=0.5)
    table.append(a=True)
    assert table.lines() == ["a b", "1 0.5", "1 nan"]
    assert table.column("a") == [1, True]
    with pytest.raises(KeyError):
        table.append(c=1)
    with pytest.raises(KeyError):
        table.column("c")


# Configuración de usuario y línea de comandos


def test_userconfig():
    config = UserConfig(FILES / "userconfig.toml")
    assert config.get("runs_dir") == Path("runs/desk")
    assert config.get("jobs") == 2
    assert config.get("claims_path", safe=False) is None
    with pytest.raises(ValueError):
        config.get("claims_path")
    with pytest.raises(KeyError):
        config.get("grid_path")
    with pytest.raises(FileNotFoundError):
        UserConfig(FILES / "nada.toml")
    assert UserConfig().get("runs_dir", safe=False) is None


def test_cli_simulate_and_verify(tmp_path, capsys):
    cli = GrokLabCLI()
    assert cli.parse(["simulate", "-c", str(FILES / "grid_tiny.toml"), "-o", str(tmp_path)]) == 0
    assert (tmp_path / "reports" / "bounds.toml").exists()
    assert cli.parse(["verify", "-o", str(tmp_path), "--claims", str(FILES / "claims_tiny.toml")]) == 0
    out = capsys.readouterr().out
    assert "Correctas: 3, fallidas: 0, omitidas: 1" in out


def test_cli_exit_codes(tmp_path, capsys):
    cli = GrokLabCLI()
    assert cli.parse(["analyze", "-o", str(tmp_path / "nada")]) == 1
    assert "[ERROR]" in capsys.readouterr().out
    assert cli.parse(
        ["verify", "-o", str(tmp_path), "--claims", str(FILES / "claims_tiny.toml"), "--scope", "full"]
    ) == 1
    assert cli.parse(["run", "-c", str(tmp_path / "nada.toml")]) == 1


def test_cli_uses_userconfig_runs_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("GROKLAB_USERCONFIG", raising=False)
    with pytest.raises(ValueError):
        GrokLabCLI().lab.runs_dir(None)
    path = tmp_path / "user.toml"
    path.write_text(f'[defaults]\nruns_dir = "{tmp_path.as_posix()}"\n', encoding="utf-8")
    monkeypatch.setenv("GROKLAB_USERCONFIG", str(path))
    assert GrokLabCLI().lab.runs_dir(None) == tmp_path
