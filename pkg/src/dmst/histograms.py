"""Kernel-weighted colour histograms, Bhattacharyya similarity and background weighting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateKernel, DimensionMismatch, EmptyWindow, ZeroMass
from .imaging import ColorQuantizer, FrameImage, Window, normalized_offset, window_coords

NORM_TOL = 1e-9


@dataclass(frozen=True)
class KernelProfile:
    """Radial kernel profile k(x) over the squared normalized distance x."""

    kind: str = "epanechnikov"

    def __post_init__(self):
        if self.kind not in ("epanechnikov", "uniform"):
            raise ValueError(f"unknown kernel {self.kind!r}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "epanechnikov":
            return np.where(x <= 1.0, 1.0 - x, 0.0)
        return np.where(x <= 1.0, 1.0, 0.0)


EPANECHNIKOV = KernelProfile("epanechnikov")
UNIFORM = KernelProfile("uniform")


@dataclass(frozen=True, eq=False)
class WeightedHistogram:
    weights: np.ndarray
    role: str = "target"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1:
            raise ValueError("histogram weights must be one-dimensional")
        if np.any(w < 0):
            raise ValueError("histogram weights must be non-negative")
        if abs(w.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"histogram not normalized (sum={w.sum()!r})")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return self.weights.shape[0]

    def __len__(self):
        return self.m

    def __eq__(self, other):
        if not isinstance(other, WeightedHistogram):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class TransferFunction:
    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float).copy()
        if np.any(v <= 0) or np.any(v > 1):
            raise ValueError("transfer values must lie in (0, 1]")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @classmethod
    def identity(cls, m: int) -> "TransferFunction":
        return cls(np.ones(m))


def _normalize(raw: np.ndarray, role: str) -> WeightedHistogram:
    total = raw.sum()
    if total <= 0:
        raise ZeroMass(f"{role} histogram has zero total mass")
    return WeightedHistogram(raw / total, role)


def kernel_bin_mass(frame: FrameImage, window: Window, quantizer: ColorQuantizer, kernel=EPANECHNIKOV):
    """Unnormalized kernel-weighted bin masses (the sums inside the target/candidate models)."""
    xs, ys = window_coords(frame, window)
    k = kernel(normalized_offset(xs, ys, window))
    if not k.sum() > 0:
        raise DegenerateKernel(f"every pixel of {window} has zero kernel weight")
    bins = frame.bins(quantizer)[ys, xs]
    return np.bincount(bins, weights=k, minlength=quantizer.m)


def build_target_model(frame, window, quantizer, kernel=EPANECHNIKOV) -> WeightedHistogram:
    return _normalize(kernel_bin_mass(frame, window, quantizer, kernel), "target")


def build_candidate_model(frame, window, quantizer, kernel=EPANECHNIKOV) -> WeightedHistogram:
    return _normalize(kernel_bin_mass(frame, window, quantizer, kernel), "candidate")


def _check_dims(p: WeightedHistogram, q: WeightedHistogram):
    if p.m != q.m:
        raise DimensionMismatch(f"histograms have {p.m} and {q.m} bins")


def bhattacharyya(p: WeightedHistogram, q: WeightedHistogram) -> float:
    _check_dims(p, q)
    return float(np.sqrt(p.weights * q.weights).sum())


def bhatt_distance(p: WeightedHistogram, q: WeightedHistogram) -> float:
    """sqrt(1 - rho), evaluated as sqrt(sum((sqrt p - sqrt q)^2) / 2).

    The two agree exactly for normalized histograms; the second form is 0 for
    p == q and keeps its precision when rho is close to 1.
    """
    _check_dims(p, q)
    diff = np.sqrt(p.weights) - np.sqrt(q.weights)
    return float(np.sqrt(min(0.5 * np.dot(diff, diff), 1.0)))


def background_mask(frame: FrameImage, window: Window, ratio: float = 2.0):
    """Coordinates of the ring between `window` and the same window scaled by `ratio`."""
    outer = window.scaled(ratio)
    try:
        xs, ys = window_coords(frame, outer)
    except EmptyWindow:
        raise EmptyWindow(f"background ring around {window} lies outside the frame") from None
    x0, x1, y0, y1 = window.bounds()
    inside = (xs >= x0) & (xs <= x1) & (ys >= y0) & (ys <= y1)
    return xs[~inside], ys[~inside]


def build_background_histogram(frame, window, quantizer, ratio: float = 2.0) -> WeightedHistogram:
    xs, ys = background_mask(frame, window, ratio)
    if xs.size == 0:
        raise EmptyWindow(f"background ring around {window} has no in-frame pixels")
    counts = np.bincount(frame.bins(quantizer)[ys, xs], minlength=quantizer.m).astype(float)
    return _normalize(counts, "background")


def compute_transfer(background: WeightedHistogram) -> TransferFunction:
    o = background.weights
    nonzero = o > 0
    o_star = o[nonzero].min()
    v = np.ones_like(o)
    v[nonzero] = np.minimum(o_star / o[nonzero], 1.0)
    return TransferFunction(v)


def build_cbwh_target_model(frame, window, quantizer, kernel=EPANECHNIKOV, transfer: TransferFunction | None = None):
    raw = kernel_bin_mass(frame, window, quantizer, kernel)
    if transfer is not None:
        if transfer.v.shape[0] != raw.shape[0]:
            raise DimensionMismatch(f"transfer has {transfer.v.shape[0]} bins, model {raw.shape[0]}")
        raw = raw * transfer.v
    return _normalize(raw, "cbwh")


def reweight(h: WeightedHistogram, transfer: TransferFunction, role: str | None = None) -> WeightedHistogram:
    if transfer.v.shape[0] != h.m:
        raise DimensionMismatch(f"transfer has {transfer.v.shape[0]} bins, histogram {h.m}")
    return _normalize(h.weights * transfer.v, role or h.role)


def apply_bwh_weighting(target: WeightedHistogram, candidate: WeightedHistogram, transfer: TransferFunction):
    """Scale both models by the transfer function and renormalize (classic BWH)."""
    _check_dims(target, candidate)
    return reweight(target, transfer), reweight(candidate, transfer)


def cbwh_transfer_for(frame, window, quantizer, ratio: float = 2.0) -> TransferFunction:
    return compute_transfer(build_background_histogram(frame, window, quantizer, ratio))

