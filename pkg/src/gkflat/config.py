"""Run configuration: defaults < key=value file < ``GEOM_*`` environment < flags."""

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "GEOM_"


def parse_counts(text):
    """``"9x9x9"`` or ``"9,9,9"`` -> ``(9, 9, 9)``."""
    parts = text.replace("x", ",").split(",")
    counts = tuple(int(p) for p in parts if p.strip())
    if not counts or min(counts) < 2:
        raise ValueError(f"grid counts must be integers >= 2, got {text!r}")
    return counts


@dataclass(frozen=True)
class Config:
    tol_alg: float = 1e-9
    tol_fd: float = 5e-4
    fd_step: float = 1e-4
    field_step: float = 1e-3
    surface_grid: tuple = (21, 21)
    hyper_grid: tuple = (9, 9, 9)
    output_dir: str = "."
    seed: int = 0

    def __post_init__(self):
        for name in ("tol_alg", "tol_fd", "fd_step", "field_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    def tolerance_overrides(self):
        """Suite thresholds controlled by the two global tolerances."""
        return {"membership": self.tol_alg, "quadric": self.tol_alg, "umbilic": self.tol_alg,
                "structure": self.tol_fd, "field_laws": self.tol_fd}

    def updated(self, values):
        """Copy with string (or typed) values converted to the field types."""
        kinds = {f.name: f.type for f in fields(self)}
        out = {}
        for key, raw in values.items():
            if key not in kinds:
                raise KeyError(f"unknown configuration key {key!r}")
            if not isinstance(raw, str):
                out[key] = raw
            elif key.endswith("_grid"):
                out[key] = parse_counts(raw)
            elif kinds[key] in (float, "float"):
                out[key] = float(raw)
            elif kinds[key] in (int, "int"):
                out[key] = int(raw)
            else:
                out[key] = raw
        return replace(self, **out)


def parse_config_text(text):
    """``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {n}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lower()] = value
    return values


def env_values(environ=None):
    environ = os.environ if environ is None else environ
    return {k[len(ENV_PREFIX):].lower(): v for k, v in environ.items() if k.startswith(ENV_PREFIX)}


def load_config(path=None, environ=None, flags=None):
    cfg = Config()
    if path is not None:
        with open(path) as fh:
            cfg = cfg.updated(parse_config_text(fh.read()))
    cfg = cfg.updated(env_values(environ))
    if flags:
        cfg = cfg.updated({k: v for k, v in flags.items() if v is not None})
    return cfg
