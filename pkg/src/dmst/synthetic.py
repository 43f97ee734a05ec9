"""Synthetic frame sequences with known ground-truth windows."""

from __future__ import annotations

import colorsys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .errors import SpecError
from .imaging import FrameImage, Window


@dataclass
class SyntheticSpec:
    width: int = 160
    height: int = 120
    frames: int = 50
    background: str = "solid"  # solid | two-tone
    background_color: tuple = (40, 40, 40)
    background_color2: tuple = (40, 90, 160)
    noise: int = 0
    noise_on_target: bool = False
    shape: str = "disk"  # disk | rect
    center: tuple = (80.0, 60.0)
    size: tuple = (20.0, 20.0)  # half-extents; a disk uses size[0] as radius
    color: tuple = (220, 40, 40)
    velocity: tuple = (0.0, 0.0)
    scale_ramp: float = 1.0
    hue_drift: float = 0.0  # degrees per frame
    seed: int = 0

    def __post_init__(self):
        if self.width < 1 or self.height < 1 or self.frames < 1:
            raise SpecError("resolution and frame count must be positive")
        if self.background not in ("solid", "two-tone"):
            raise SpecError(f"unknown background {self.background!r}")
        if self.shape not in ("disk", "rect"):
            raise SpecError(f"unknown target shape {self.shape!r}")
        if self.scale_ramp <= 0:
            raise SpecError("scale_ramp must be positive")
        if self.noise < 0:
            raise SpecError("noise amplitude must be non-negative")
        for name in ("background_color", "background_color2", "center", "size", "color", "velocity"):
            setattr(self, name, tuple(getattr(self, name)))

    @classmethod
    def from_dict(cls, d: dict) -> "SyntheticSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise SpecError(f"unknown synthetic spec keys: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        return asdict(self)

    def truth(self, t: int) -> Window:
        """Ground-truth window for 0-based frame t."""
        grow = self.scale_ramp**t
        cx = self.center[0] + self.velocity[0] * t
        cy = self.center[1] + self.velocity[1] * t
        if self.shape == "disk":
            r = self.size[0] * grow
            return Window(cx, cy, r, r)
        return Window(cx, cy, self.size[0] * grow, self.size[1] * grow)

    def target_color(self, t: int) -> tuple[int, int, int]:
        if self.hue_drift == 0:
            return tuple(int(c) for c in self.color)
        r, g, b = (c / 255.0 for c in self.color)
        h, s, v = colorsys.rgb_to_hsv(r, g, b)
        h = (h + self.hue_drift * t / 360.0) % 1.0
        return tuple(int(round(c * 255)) for c in colorsys.hsv_to_rgb(h, s, v))


def _inside_fraction(w: Window, width: int, height: int) -> float:
    ix = max(0.0, min(w.cx + w.hx, width) - max(w.cx - w.hx, 0.0))
    iy = max(0.0, min(w.cy + w.hy, height) - max(w.cy - w.hy, 0.0))
    return ix * iy / (w.width * w.height)


def target_mask(spec: SyntheticSpec, w: Window) -> np.ndarray:
    ys, xs = np.mgrid[0 : spec.height, 0 : spec.width]
    if spec.shape == "disk":
        return (xs - w.cx) ** 2 + (ys - w.cy) ** 2 <= w.hx**2
    return (np.abs(xs - w.cx) <= w.hx) & (np.abs(ys - w.cy) <= w.hy)


def generate_synthetic(spec: SyntheticSpec) -> tuple[list[FrameImage], list[Window]]:
    truths = [spec.truth(t) for t in range(spec.frames)]
    for t, w in enumerate(truths):
        if _inside_fraction(w, spec.width, spec.height) < 0.5:
            raise SpecError(f"target is less than half inside the frame at frame {t + 1}")

    rng = np.random.default_rng(spec.seed)
    base = np.empty((spec.height, spec.width, 3), dtype=np.int16)
    base[:] = spec.background_color
    if spec.background == "two-tone":
        base[:, spec.width // 2 :] = spec.background_color2

    frames = []
    for t, w in enumerate(truths):
        img = base.copy()
        mask = target_mask(spec, w)
        img[mask] = spec.target_color(t)
        if spec.noise:
            noise = rng.integers(-spec.noise, spec.noise + 1, size=img.shape, dtype=np.int16)
            if not spec.noise_on_target:
                noise[mask] = 0
            img += noise
        frames.append(FrameImage(np.clip(img, 0, 255).astype(np.uint8)))
    return frames, truths
