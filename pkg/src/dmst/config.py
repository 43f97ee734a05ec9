"""Flat key/value run configuration.

Resolution order for every key: command-line flag, then the file given with
--config, then the file named by DMST_CONFIG (used only when no --config is
given), then the default below.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

from .errors import ConfigError
from .localization import LocalizationConfig
from .scale_adapt import ScaleConfig
from .template_update import TemplateConfig
from .trackers import TrackerConfig

ENV_VAR = "DMST_CONFIG"

# key: (default, help)
DEFAULTS = {
    "bins": (16, "histogram bins per RGB channel"),
    "kernel": ("epanechnikov", "kernel profile: epanechnikov or uniform"),
    "background_ratio": (2.0, "background ring outer size as a multiple of the window"),
    "min_dist": (0.5, "mean-shift exit threshold in pixels"),
    "max_iterations": (20, "mean-shift iteration cap per frame"),
    "alpha": (0.1, "enlargement factor of the outer scale window"),
    "beta": (1.0, "background-elimination parameter of the scale factor"),
    "scale_period_n": (10, "frames between scale checks; inf disables them"),
    "scale_limit_l": (5, "direction-counter limit"),
    "scale_clamp": (0.2, "bound on |S|"),
    "scale_ratio_tol": (0.01, "relative deadband on the growth-branch ratio test"),
    "scale_rule": ("signed", "signed or verbatim scale-factor branches"),
    "min_extent_px": (4.0, "minimum window width and height in pixels"),
    "msiim": ("target-mass", "information measure: target-mass or entropy"),
    "msiim_scales": ([1, 2, 4], "downsampling factors of the entropy measure"),
    "msiim_context": ([1.0, 1.5, 2.0], "context window factors of the target-mass measure"),
    "theta0": (0.8, "initial template-replacement threshold"),
    "theta_min": (0.5, "lower bound of the threshold"),
    "theta_max": (0.95, "upper bound of the threshold"),
    "d_limit": (3, "scale-change events between replacement checks"),
}


def _number(key, value, kind):
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if kind is int:
        try:
            f = float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{key}: expected an integer, got {value!r}") from None
        if not f.is_integer():
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return int(f)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {value!r}") from None


def coerce(key: str, value):
    if key not in DEFAULTS:
        raise ConfigError(f"unknown config key {key!r}")
    default = DEFAULTS[key][0]
    if key == "scale_period_n":
        if value is None or (isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "none")):
            return math.inf
        v = _number(key, value, float)
        return v if math.isinf(v) else _number(key, v, int)
    if isinstance(default, list):
        if isinstance(value, str):
            value = [p for p in value.split(",") if p.strip()]
        if not isinstance(value, (list, tuple)) or not value:
            raise ConfigError(f"{key}: expected a non-empty list, got {value!r}")
        kind = type(default[0])
        return [_number(key, v, kind) for v in value]
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"{key}: expected a string, got {value!r}")
        return value.strip()
    return _number(key, value, type(default))


def read_config_file(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object of scalars")
    return {k: coerce(k, v) for k, v in data.items()}


def resolve(config_path=None, overrides=None, environ=None) -> dict:
    environ = os.environ if environ is None else environ
    settings = {k: coerce(k, d) for k, (d, _) in DEFAULTS.items()}
    path = config_path or environ.get(ENV_VAR) or None
    if path:
        settings.update(read_config_file(path))
    for k, v in (overrides or {}).items():
        if v is not None:
            settings[k] = coerce(k, v)
    return settings


def tracker_config(settings: dict, variant: str) -> TrackerConfig:
    s = settings
    try:
        return TrackerConfig(
            variant=variant,
            bins=s["bins"],
            kernel=s["kernel"],
            background_ratio=s["background_ratio"],
            localization=LocalizationConfig(s["min_dist"], s["max_iterations"]),
            scale=ScaleConfig(
                alpha=s["alpha"],
                beta=s["beta"],
                period=s["scale_period_n"],
                limit=s["scale_limit_l"],
                clamp=s["scale_clamp"],
                min_extent=s["min_extent_px"],
                ratio_tol=s["scale_ratio_tol"],
                rule=s["scale_rule"],
                measure=s["msiim"],
                scales=tuple(s["msiim_scales"]),
                context=tuple(s["msiim_context"]),
            ),
            template=TemplateConfig(s["theta0"], s["theta_min"], s["theta_max"], s["d_limit"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
