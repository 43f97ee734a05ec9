"""Event-driven replacement of the key target model."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyStore
from .histograms import WeightedHistogram, bhattacharyya


@dataclass(frozen=True)
class TemplateConfig:
    theta0: float = 0.8
    theta_min: float = 0.5
    theta_max: float = 0.95
    d_limit: int = 3

    def __post_init__(self):
        if not 0 < self.theta_min <= self.theta_max < 1:
            raise ValueError("need 0 < theta_min <= theta_max < 1")
        if not self.theta_min <= self.theta0 <= self.theta_max:
            raise ValueError("theta0 must lie inside [theta_min, theta_max]")
        if self.d_limit < 1:
            raise ValueError("d_limit must be >= 1")


@dataclass
class TemplateStore:
    key_model: WeightedHistogram
    initial_model: WeightedHistogram
    cfg: TemplateConfig = field(default_factory=TemplateConfig)
    theta: float = None
    d: int = 0
    stored: deque = None

    def __post_init__(self):
        if self.theta is None:
            self.theta = self.cfg.theta0
        if self.stored is None:
            self.stored = deque(maxlen=self.cfg.d_limit)

    @classmethod
    def start(cls, model: WeightedHistogram, cfg: TemplateConfig | None = None) -> "TemplateStore":
        return cls(key_model=model, initial_model=model, cfg=cfg or TemplateConfig())

    @property
    def due(self) -> bool:
        return self.d >= self.cfg.d_limit


def matching_error_l2(a: WeightedHistogram, b: WeightedHistogram) -> float:
    if a.m != b.m:
        raise DimensionMismatch(f"histograms have {a.m} and {b.m} bins")
    diff = a.weights - b.weights
    return float(np.dot(diff, diff))


def record_candidate(store: TemplateStore, model: WeightedHistogram, frame: int) -> TemplateStore:
    store.stored.append((frame, model))
    store.d += 1
    return store


def maybe_replace(store: TemplateStore) -> tuple[TemplateStore, bool]:
    """Swap in the stored model closest to the key model if it has drifted from the initial model.

    The candidate is the stored model with the highest similarity to the
    current key model. It replaces the key model when its similarity to the
    initial model is at or below the threshold; the threshold then moves by
    the change in similarity-to-initial between the old and new key model.
    """
    if not store.stored:
        raise EmptyStore("no stored candidate models")
    rho_old = bhattacharyya(store.key_model, store.initial_model)
    _, best = max(store.stored, key=lambda item: bhattacharyya(item[1], store.key_model))
    rho_new = bhattacharyya(best, store.initial_model)
    replaced = rho_new <= store.theta
    if replaced:
        store.key_model = best
        theta = store.theta - (rho_old - rho_new)
        store.theta = min(max(theta, store.cfg.theta_min), store.cfg.theta_max)
    store.d = 0
    store.stored.clear()
    return store, replaced
