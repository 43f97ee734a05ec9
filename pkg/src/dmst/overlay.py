"""Draw the tracking window onto a frame and save it as PNG."""

from __future__ import annotations

import numpy as np
from PIL import Image

from .errors import WriteError
from .imaging import FrameImage, Window

OVERLAY_COLOR = (255, 255, 0)


def outline_mask(width: int, height: int, window: Window) -> np.ndarray:
    """Boolean (height, width) mask of the 1-px rectangle at the window's integer bounds.

    Edges outside the frame are dropped; the visible part of the rest is kept.
    """
    x0, x1, y0, y1 = window.bounds()
    mask = np.zeros((height, width), dtype=bool)
    if x1 < x0 or y1 < y0:
        return mask
    cx0, cx1 = max(x0, 0), min(x1, width - 1)
    cy0, cy1 = max(y0, 0), min(y1, height - 1)
    if cx0 > cx1 or cy0 > cy1:
        return mask
    for y in (y0, y1):
        if 0 <= y < height:
            mask[y, cx0 : cx1 + 1] = True
    for x in (x0, x1):
        if 0 <= x < width:
            mask[cy0 : cy1 + 1, x] = True
    return mask


def draw_overlay(frame: FrameImage, window: Window, color=OVERLAY_COLOR) -> np.ndarray:
    img = np.array(frame.pixels, copy=True)
    img[outline_mask(frame.width, frame.height, window)] = color
    return img


def render_overlay(frame: FrameImage, window: Window, out_path, color=OVERLAY_COLOR) -> None:
    try:
        Image.fromarray(draw_overlay(frame, window, color), mode="RGB").save(out_path, format="PNG")
    except (OSError, ValueError) as exc:
        raise WriteError(f"{out_path}: {exc}") from exc
