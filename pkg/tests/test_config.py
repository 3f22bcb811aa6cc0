from pathlib import Path

import pytest

from gkflat.config import Config, env_values, load_config, parse_config_text, parse_counts

GOLDEN = Path(__file__).parent / "golden"


def test_defaults():
    cfg = Config()
    assert cfg.tol_alg == 1e-9 and cfg.tol_fd == 5e-4
    assert cfg.hyper_grid == (9, 9, 9) and cfg.surface_grid == (21, 21)
    assert cfg.seed == 0


def test_golden_config_file():
    cfg = load_config(GOLDEN / "config.txt", environ={})
    assert cfg == Config(tol_alg=1e-10, tol_fd=1e-3, fd_step=1e-4, field_step=5e-4,
                         surface_grid=(11, 11), hyper_grid=(5, 5, 5), output_dir="out", seed=7)


def test_precedence_file_env_flags(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("tol_alg = 1e-7\ntol_fd = 1e-3\nseed = 1\n")
    env = {"GEOM_TOL_FD": "2e-3", "GEOM_SEED": "2", "OTHER": "x"}
    cfg = load_config(path, environ=env)
    assert (cfg.tol_alg, cfg.tol_fd, cfg.seed) == (1e-7, 2e-3, 2)
    cfg = load_config(path, environ=env, flags={"seed": 3, "tol_alg": None})
    assert (cfg.tol_alg, cfg.tol_fd, cfg.seed) == (1e-7, 2e-3, 3)


def test_env_prefix_only():
    assert env_values({"GEOM_SEED": "4", "SEED": "5"}) == {"seed": "4"}


@pytest.mark.parametrize("text", ["tol_alg = 0", "tol_fd = -1e-3", "field_step = 0.0"])
def test_tolerances_must_be_positive(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_config(path, environ={})


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_config_text("tol_alg 1e-9")
    with pytest.raises(KeyError):
        Config().updated({"colour": "red"})
    with pytest.raises(ValueError):
        parse_counts("1x5")


def test_comments_and_counts():
    assert parse_config_text("# header\n\nSEED = 3  # trailing\n") == {"seed": "3"}
    assert parse_counts("9x9x9") == parse_counts("9,9,9") == (9, 9, 9)


def test_tolerance_overrides_follow_config():
    over = Config(tol_alg=1e-11, tol_fd=1e-3).tolerance_overrides()
    assert over["membership"] == 1e-11 and over["structure"] == 1e-3
