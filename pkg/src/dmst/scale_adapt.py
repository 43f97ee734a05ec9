"""Adaptive bandwidth: multi-scale information measure, scale factor, resize, and update throttling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindow
from .imaging import ColorQuantizer, FrameImage, Window, window_coords, window_patch


def _entropy_bits(bins: np.ndarray, m: int) -> float:
    counts = np.bincount(bins.ravel(), minlength=m)
    p = counts[counts > 0] / bins.size
    return float(-(p * np.log2(p)).sum()) if p.size > 1 else 0.0


def downsample(patch: np.ndarray, factor: int) -> np.ndarray:
    """Block-average an (H, W, 3) patch by an integer factor, dropping ragged edges."""
    if factor == 1:
        return patch
    h, w = patch.shape[0] // factor, patch.shape[1] // factor
    if h == 0 or w == 0:
        return patch
    blocks = patch[: h * factor, : w * factor].reshape(h, factor, w, factor, 3)
    return np.rint(blocks.mean(axis=(1, 3))).astype(np.uint8)


@dataclass(frozen=True)
class MultiScaleEntropy:
    """Mean Shannon entropy (bits) of the quantized window content over several downsamplings."""

    scales: tuple = (1, 2, 4)

    def __call__(self, frame: FrameImage, window: Window, quantizer: ColorQuantizer) -> float:
        patch = window_patch(frame, window)
        values = [
            _entropy_bits(quantizer.quantize_array(downsample(patch, f)), quantizer.m)
            for f in self.scales
        ]
        return float(np.mean(values))


@dataclass(frozen=True, eq=False)
class TargetMass:
    """Target-likelihood mass of the window and of concentric context windows.

    Each pixel counts q_u / max(q) for its bin u, so a pixel of the model's
    dominant colour counts 1. The value is the mean, over the context
    factors, of the summed weight inside the scaled window. Pixels outside
    the frame count 0.
    """

    model: object
    context: tuple = (1.0, 1.5, 2.0)

    def __post_init__(self):
        w = np.asarray(self.model.weights, dtype=float)
        object.__setattr__(self, "_relative", w / w.max())

    def __call__(self, frame: FrameImage, window: Window, quantizer: ColorQuantizer) -> float:
        values = []
        bins = frame.bins(quantizer)
        for f in self.context:
            try:
                xs, ys = window_coords(frame, window.scaled(f))
            except EmptyWindow:
                values.append(0.0)
                continue
            values.append(float(self._relative[bins[ys, xs]].sum()))
        return float(np.mean(values))


def msiim(frame, window, quantizer, measure=None) -> float:
    if measure is None:
        measure = MultiScaleEntropy()
    return float(measure(frame, window, quantizer))


@dataclass(frozen=True)
class ScaleConfig:
    alpha: float = 0.1
    beta: float = 1.0
    period: float = 10  # math.inf disables scale checks
    limit: int = 5
    clamp: float = 0.2
    min_extent: float = 4.0
    log_floor: float = 1e-6
    ratio_tol: float = 0.01
    rule: str = "signed"  # signed | verbatim
    measure: str = "target-mass"  # target-mass | entropy
    scales: tuple = (1, 2, 4)
    context: tuple = (1.0, 1.5, 2.0)

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not self.period >= 1:
            raise ValueError("scale period must be >= 1")
        if self.limit < 1:
            raise ValueError("scale limit must be >= 1")
        if not 0 < self.clamp < 1:
            raise ValueError("scale clamp must lie in (0, 1)")
        if self.rule not in ("signed", "verbatim"):
            raise ValueError(f"unknown scale rule {self.rule!r}")
        if self.ratio_tol < 0:
            raise ValueError("ratio_tol must be >= 0")
        if self.measure not in ("target-mass", "entropy"):
            raise ValueError(f"unknown information measure {self.measure!r}")

    def is_check_frame(self, n: int) -> bool:
        return math.isfinite(self.period) and n % int(self.period) == 0

    def make_measure(self, model):
        if self.measure == "entropy":
            return MultiScaleEntropy(tuple(int(f) for f in self.scales))
        return TargetMass(model, tuple(float(f) for f in self.context))


@dataclass
class ScaleState:
    i1: float = 0.0
    i2: float = 0.0
    i4: float = 0.0
    i5: float = 0.0
    s: float = 0.0
    inc_count: int = 0
    dec_count: int = 0
    degenerate: bool = False


def compute_scale_factor(
    i1, i2, i4, i5, beta=1.0, clamp=0.2, log_floor=1e-6, rule="verbatim", ratio_tol=0.0
) -> tuple[float, bool]:
    """Scale factor from baseline (i1, i2) and current (i4, i5) measures.

    Branch on the sign of i5 - i2. When i5 >= i2 and i5/i4 > i2/i1:
    lg(beta - (i5 - (i2 - i1)) / i1), log argument floored at `log_floor`.
    When i5 < i2 and 0.95 * i1 > i4: beta * lg(i4 / i1). Otherwise 0.
    The result is clamped to [-clamp, clamp].

    rule="verbatim" returns the expressions as written; for beta <= 2 the
    first branch can never be positive, so no input ever grows the window.
    rule="signed" keeps both conditions and magnitudes but applies the
    first branch as growth (+|value|), so a target measure that rises as
    the target fills the window drives growth there and shrinkage through
    the second branch.

    ratio_tol > 0 requires i5/i4 to exceed i2/i1 by that relative margin,
    a deadband that keeps a one-pixel change from firing a full step.

    Returns (S, degenerate); degenerate is True when a zero baseline or
    current measure makes the ratios undefined, in which case S is 0.
    """
    if i1 <= 0 or i4 <= 0:
        return 0.0, True
    if i5 - i2 >= 0:
        if i5 / i4 > (i2 / i1) * (1.0 + ratio_tol):
            arg = max(beta - (i5 - (i2 - i1)) / i1, log_floor)
            s = math.log10(arg)
            if rule == "signed":
                s = abs(s)
        else:
            s = 0.0
    else:
        if i1 * 0.95 > i4:
            s = beta * math.log10(i4 / i1)
        else:
            s = 0.0
    return max(-clamp, min(clamp, s)), False


def apply_scale(window: Window, s: float, min_extent: float = 4.0) -> Window:
    f = 1.0 + s
    half_floor = min_extent / 2.0
    return Window(window.cx, window.cy, max(window.hx * f, half_floor), max(window.hy * f, half_floor))


def update_counters(state: ScaleState, s: float, limit: int) -> bool:
    """Advance the direction counters for S; return False when the resize must be suppressed."""
    if s > 0:
        permitted = state.inc_count < limit
        state.inc_count = min(state.inc_count + 1, limit)
        state.dec_count = max(state.dec_count - 1, 0)
    elif s < 0:
        permitted = state.dec_count < limit
        state.dec_count = min(state.dec_count + 1, limit)
        state.inc_count = max(state.inc_count - 1, 0)
    else:
        permitted = True
    return permitted
