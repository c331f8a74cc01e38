import csv
import json
from fractions import Fraction
from pathlib import Path

import pytest

from x0models.cli import main
from x0models.config import ConfigError, ProjectConfig

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
ALL_CONFIGS = sorted(CONFIGS.glob("*.toml"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("path", ALL_CONFIGS, ids=lambda p: p.name)
def test_config_round_trip(path):
    cfg = ProjectConfig.load(path)
    assert ProjectConfig.parse(cfg.dumps()) == cfg


def test_config_rejects_floats_and_unknown_names():
    with pytest.raises(ConfigError, match="p/q"):
        ProjectConfig.parse('level = 1\nweight = 12\n[forms.a]\ncoeff = 0.5\neta = [[1, 24]]\n')
    with pytest.raises(ConfigError, match="unknown form"):
        ProjectConfig.parse('level = 1\nweight = 12\n[roles]\nf = "nope"\n')
    with pytest.raises(ConfigError, match="distinct"):
        ProjectConfig.parse('level = 1\nweight = 12\n[forms.a]\neta = [[1, 24]]\n[roles]\nf = "a"\ng = "a"\n')


def test_rational_coefficients_parse_exactly():
    cfg = ProjectConfig.parse(
        'level = 2\nweight = 12\n[forms.m]\natoms = [{coeff = "-7/3", eta = [[1, 24]]}, {eta = [[2, 24]]}]\n'
    )
    form = cfg.form("m")
    assert form.q_expansion(3).coeffs == (0, Fraction(-7, 3), Fraction(56) + 1)


def test_expand(capsys):
    code, out, _ = run(capsys, "--config", CONFIGS / "level1_weight24.toml", "expand", "Delta", "--prec", 4)
    assert (code, out.strip()) == (0, "0, 1, -24, 252")
    code, out, _ = run(capsys, "expand", "E4", "--prec", 3, "--config", CONFIGS / "level1_weight24.toml")
    assert (code, out.strip()) == (0, "1, 240, 2160")


def test_expand_invalid_form(capsys):
    code, out, err = run(capsys, "--config", CONFIGS / "invalid_eta.toml", "expand", "bad", "--prec", 3)
    assert code == 2 and out == "" and "non-integral weight" in err


@pytest.mark.parametrize(
    "name, expected",
    [
        ("gamma0_2_weight12", {"degree": 2, "monomials": [[2, 0, 0, 1], [0, 1, 1, -1]]}),
        ("gamma0_2_veronese", {"degree": 2, "monomials": [[0, 2, 0, 1], [1, 0, 1, -1]]}),
    ],
)
def test_relation(capsys, name, expected):
    code, out, _ = run(capsys, "--config", CONFIGS / f"{name}.toml", "relation")
    assert code == 0 and json.loads(out) == expected


def test_relation_dependent_triple(capsys, tmp_path):
    cfg = tmp_path / "dep.toml"
    cfg.write_text(
        'level = 2\nweight = 12\n[forms.D]\neta = [[1, 24]]\n'
        '[forms.D2x]\natoms = [{coeff = "2", eta = [[1, 24]]}]\n[forms.B]\neta = [[2, 24]]\n'
        '[roles]\nf = "D"\ng = "D2x"\nh = "B"\n'
    )
    code, _, err = run(capsys, "--config", cfg, "relation")
    assert code == 3 and "forms not independent" in err


def test_degrees(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, _ = run(capsys, "--config", CONFIGS / "gamma0_2_weight12.toml", "--out", out_file, "degrees")
    rep = json.loads(out)
    assert code == 0
    assert (rep["deg_C"], rep["d"], rep["eta"], rep["pole_degree"], rep["deg_y_Q"]) == ("2", "1", "2", "1", "1")
    assert rep["mode"] == "exact" and all(rep["checks"].values())
    assert json.loads(out_file.read_text()) == rep


def test_explore(capsys, tmp_path):
    code, out, _ = run(capsys, "--config", CONFIGS / "gamma0_2_family.toml", "explore",
                       "--out", tmp_path, "--workers", 1)
    summary = json.loads(out)
    assert code == 0
    assert summary["L_max"] == 6 and summary["genericity_pass"]
    rows = list(csv.reader((tmp_path / "samples.csv").open()))
    assert rows[0] == ["index", "lambda", "deg_C", "d", "pole_degree", "deg_y_Q", "checks_passed"]
    assert len(rows) - 1 >= 200
    assert json.loads((tmp_path / "summary.json").read_text()) == summary


def test_explore_seed_override(capsys, tmp_path):
    args = ["--config", CONFIGS / "gamma0_2_weight12.toml", "explore", "--workers", 1]
    run(capsys, *args, "--out", tmp_path / "a", "--seed", 5)
    run(capsys, *args, "--out", tmp_path / "b", "--seed", 5)
    run(capsys, *args, "--out", tmp_path / "c", "--seed", 6)
    a, b, c = ((tmp_path / x / "samples.csv").read_text() for x in "abc")
    assert a == b != c


def test_validate_catalog(capsys):
    code, out, _ = run(capsys, "validate", "--catalog")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].split("\t") == ["form", "level", "weight", "cusp_order_sum", "k*mu/12", "status"]
    assert len(lines) - 1 >= 50
    assert all(line.endswith("OK") for line in lines[1:])


def test_validate_config_with_invalid_form(capsys):
    code, out, _ = run(capsys, "--config", CONFIGS / "invalid_eta.toml", "validate")
    assert code == 2 and "INVALID: non-integral weight" in out


def test_missing_config(capsys):
    code, _, err = run(capsys, "relation")
    assert code == 1 and "--config" in err
