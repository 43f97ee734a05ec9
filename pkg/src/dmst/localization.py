"""Mean-shift localization of the target in a single frame."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateKernel, EmptyWindow, TargetLost, ZeroWeight
from .histograms import EPANECHNIKOV, TransferFunction, WeightedHistogram, kernel_bin_mass
from .imaging import ColorQuantizer, FrameImage, Window, normalized_offset, window_coords


@dataclass(frozen=True)
class LocalizationConfig:
    min_dist: float = 0.5
    max_iterations: int = 20

    def __post_init__(self):
        if not self.min_dist > 0:
            raise ValueError("min_dist must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass
class LocalizationResult:
    final_window: Window
    iterations: int
    displacements: list[float]
    final_rho: float
    path: list[tuple[float, float]] = field(default_factory=list)


def candidate_model(frame, window, quantizer, kernel=EPANECHNIKOV, transfer: TransferFunction | None = None):
    """Normalized candidate weights as a plain array (optionally BWH-reweighted)."""
    raw = kernel_bin_mass(frame, window, quantizer, kernel)
    if transfer is not None:
        raw = raw * transfer.v
    return raw / raw.sum()


def mean_shift_step(
    frame: FrameImage,
    window: Window,
    target: WeightedHistogram,
    quantizer: ColorQuantizer,
    kernel=EPANECHNIKOV,
    transfer: TransferFunction | None = None,
) -> tuple[float, float]:
    """One mean-shift update: the weighted centroid of the window's pixels.

    With the Epanechnikov profile the derivative profile is constant on the
    kernel support, so every pixel with normalized offset <= 1 enters with
    weight sqrt(q_u / p_u) of its bin. Bins absent from the candidate get 0.
    """
    p = candidate_model(frame, window, quantizer, kernel, transfer)
    q = target.weights
    ratio = np.zeros_like(q)
    seen = p > 0
    ratio[seen] = np.sqrt(q[seen] / p[seen])

    xs, ys = window_coords(frame, window)
    support = normalized_offset(xs, ys, window) <= 1.0
    xs, ys = xs[support], ys[support]
    w = ratio[frame.bins(quantizer)[ys, xs]]
    total = w.sum()
    if not total > 0:
        raise ZeroWeight(f"no pixel in {window} shares a bin with the target model")
    return float((xs * w).sum() / total), float((ys * w).sum() / total)


def localize(
    frame: FrameImage,
    start: Window,
    target: WeightedHistogram,
    quantizer: ColorQuantizer,
    kernel=EPANECHNIKOV,
    cfg: LocalizationConfig = LocalizationConfig(),
    transfer: TransferFunction | None = None,
) -> LocalizationResult:
    window = start
    displacements = []
    path = [start.center]
    try:
        for _ in range(cfg.max_iterations):
            nx, ny = mean_shift_step(frame, window, target, quantizer, kernel, transfer)
            step = math.hypot(nx - window.cx, ny - window.cy)
            window = window.moved_to(nx, ny)
            displacements.append(step)
            path.append((nx, ny))
            if step < cfg.min_dist:
                break
        p = candidate_model(frame, window, quantizer, kernel, transfer)
    except (ZeroWeight, EmptyWindow, DegenerateKernel) as exc:
        raise TargetLost(str(exc)) from exc
    rho = float(np.sqrt(p * target.weights).sum())
    return LocalizationResult(window, len(displacements), displacements, rho, path)


def similarity_at(frame, window, target, quantizer, kernel=EPANECHNIKOV) -> float:
    p = candidate_model(frame, window, quantizer, kernel)
    return float(np.sqrt(p * target.weights).sum())
