"""Frames, windows, colour quantization and pixel enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyWindow


@dataclass(frozen=True, eq=False)
class FrameImage:
    """Decoded 8-bit RGB raster, stored as an (height, width, 3) uint8 array."""

    pixels: np.ndarray
    _bin_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError(f"expected (H, W, 3) pixel array, got shape {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("frame must be at least 1x1")
        if px.dtype != np.uint8:
            if px.min() < 0 or px.max() > 255:
                raise ValueError("pixel values must lie in [0, 255]")
            px = px.astype(np.uint8)
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_bytes(cls, width: int, height: int, data: bytes) -> "FrameImage":
        if len(data) != width * height * 3:
            raise ValueError(
                f"data length {len(data)} != width*height*3 = {width * height * 3}"
            )
        arr = np.frombuffer(data, dtype=np.uint8).reshape(height, width, 3)
        return cls(arr.copy())

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def data(self) -> bytes:
        return self.pixels.tobytes()

    def bins(self, quantizer: "ColorQuantizer") -> np.ndarray:
        """Per-pixel bin indices under `quantizer`, computed once per frame."""
        key = quantizer.bins_per_channel
        cached = self._bin_cache.get(key)
        if cached is None:
            cached = quantizer.quantize_array(self.pixels)
            cached.setflags(write=False)
            self._bin_cache[key] = cached
        return cached

    def __eq__(self, other):
        if not isinstance(other, FrameImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and np.array_equal(
            self.pixels, other.pixels
        )

    __hash__ = None


@dataclass(frozen=True)
class Window:
    """Axis-aligned tracking region: centre plus per-axis half-extents (bandwidth)."""

    cx: float
    cy: float
    hx: float
    hy: float

    def __post_init__(self):
        if not (self.hx > 0 and self.hy > 0):
            raise ValueError(f"half-extents must be positive, got hx={self.hx}, hy={self.hy}")

    @classmethod
    def from_box(cls, x: float, y: float, w: float, h: float) -> "Window":
        """Build from a top-left corner and full width/height."""
        return cls(x + w / 2.0, y + h / 2.0, w / 2.0, h / 2.0)

    @property
    def width(self) -> float:
        return 2.0 * self.hx

    @property
    def height(self) -> float:
        return 2.0 * self.hy

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> tuple[float, float]:
        return (self.cx, self.cy)

    def moved_to(self, cx: float, cy: float) -> "Window":
        return Window(cx, cy, self.hx, self.hy)

    def scaled(self, factor: float) -> "Window":
        return Window(self.cx, self.cy, self.hx * factor, self.hy * factor)

    def bounds(self) -> tuple[int, int, int, int]:
        """Inclusive integer pixel bounds (x0, x1, y0, y1), before clipping."""
        return (
            math.ceil(self.cx - self.hx),
            math.floor(self.cx + self.hx),
            math.ceil(self.cy - self.hy),
            math.floor(self.cy + self.hy),
        )


@dataclass(frozen=True)
class ColorQuantizer:
    bins_per_channel: int = 16

    def __post_init__(self):
        b = self.bins_per_channel
        if b < 1 or b > 256:
            raise ValueError("bins_per_channel must lie in [1, 256]")

    @property
    def m(self) -> int:
        return self.bins_per_channel**3

    def quantize_array(self, rgb: np.ndarray) -> np.ndarray:
        """Flat bin index for every RGB triple along the last axis."""
        b = self.bins_per_channel
        idx = (np.asarray(rgb, dtype=np.int64) * b) // 256
        return idx[..., 0] * (b * b) + idx[..., 1] * b + idx[..., 2]


def quantize(pixel, q: ColorQuantizer) -> int:
    r, g, b = (int(c) for c in pixel)
    for c in (r, g, b):
        if not 0 <= c <= 255:
            raise ValueError(f"channel value {c} outside [0, 255]")
    return int(q.quantize_array(np.array([r, g, b]))[()])


def clipped_bounds(frame: FrameImage, w: Window) -> tuple[int, int, int, int]:
    """Window bounds clipped to the frame; raises EmptyWindow if nothing is left."""
    x0, x1, y0, y1 = w.bounds()
    x0, y0 = max(x0, 0), max(y0, 0)
    x1, y1 = min(x1, frame.width - 1), min(y1, frame.height - 1)
    if x0 > x1 or y0 > y1:
        raise EmptyWindow(f"window {w} has no pixels inside a {frame.width}x{frame.height} frame")
    return x0, x1, y0, y1


def window_coords(frame: FrameImage, w: Window) -> tuple[np.ndarray, np.ndarray]:
    """Flattened x and y coordinates of every in-frame pixel centre in the window."""
    x0, x1, y0, y1 = clipped_bounds(frame, w)
    ys, xs = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
    return xs.ravel(), ys.ravel()


def window_patch(frame: FrameImage, w: Window) -> np.ndarray:
    x0, x1, y0, y1 = clipped_bounds(frame, w)
    return frame.pixels[y0 : y1 + 1, x0 : x1 + 1]


def pixels_in(frame: FrameImage, w: Window) -> tuple[np.ndarray, np.ndarray]:
    """Positions (N, 2) as (x, y) and colours (N, 3) of the window's pixels."""
    xs, ys = window_coords(frame, w)
    rgb = frame.pixels[ys, xs]
    return np.stack([xs, ys], axis=1), rgb


def normalized_offset(px, py, w: Window):
    """Squared distance of (px, py) from the window centre, each axis scaled by its bandwidth."""
    dx = (np.asarray(px, dtype=float) - w.cx) / w.hx
    dy = (np.asarray(py, dtype=float) - w.cy) / w.hy
    return dx * dx + dy * dy
