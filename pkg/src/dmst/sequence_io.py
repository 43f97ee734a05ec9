"""Frame-directory ingestion and CSV serialization of tracking logs."""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .evaluation import confidence_coefficient
from .errors import DecodeError, EmptySequence, ResolutionMismatch, WriteError
from .imaging import FrameImage, Window

FRAME_SUFFIXES = (".png", ".ppm")
RECORD_COLUMNS = ("frame", "cx", "cy", "W", "H", "iterations", "CC", "rho", "S", "replaced", "lost")
TRUTH_COLUMNS = ("frame", "cx", "cy", "W", "H")

_INDEX = re.compile(r"(\d+)$")


def _fmt(x: float) -> str:
    # 17 significant digits round-trip a double exactly
    return format(float(x), ".17g")


def frame_paths(directory) -> list[Path]:
    """Numbered frame files in index order; a file without a trailing index is skipped."""
    d = Path(directory)
    if not d.is_dir():
        raise DecodeError(f"{d}: not a directory")
    indexed = []
    for p in d.iterdir():
        if p.suffix.lower() not in FRAME_SUFFIXES:
            continue
        m = _INDEX.search(p.stem)
        if m:
            indexed.append((int(m.group(1)), p.name, p))
    indexed.sort()
    seen = [i for i, _, _ in indexed]
    if len(set(seen)) != len(seen):
        raise DecodeError(f"{d}: duplicate frame index")
    for a, b in zip(seen, seen[1:]):
        if b != a + 1:
            raise DecodeError(f"{d}: frame index {a + 1} missing")
    return [p for _, _, p in indexed]


def read_frame(path) -> FrameImage:
    path = Path(path)
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode != "RGB":
                im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        raise DecodeError(f"{path.name}: cannot decode ({exc})") from exc
    return FrameImage(arr.copy())


def load_sequence(directory) -> list[FrameImage]:
    paths = frame_paths(directory)
    if not paths:
        raise EmptySequence(f"{directory}: no PNG or PPM frames found")
    frames = []
    for p in paths:
        f = read_frame(p)
        if frames and (f.width, f.height) != (frames[0].width, frames[0].height):
            raise ResolutionMismatch(
                f"{p.name}: {f.width}x{f.height} differs from {frames[0].width}x{frames[0].height}"
            )
        frames.append(f)
    return frames


def write_ppm(frame: FrameImage, path) -> None:
    header = f"P6\n{frame.width} {frame.height}\n255\n".encode("ascii")
    try:
        Path(path).write_bytes(header + frame.data)
    except OSError as exc:
        raise WriteError(f"{path}: {exc}") from exc


def write_png(frame: FrameImage, path) -> None:
    try:
        Image.fromarray(np.asarray(frame.pixels), mode="RGB").save(path, format="PNG")
    except OSError as exc:
        raise WriteError(f"{path}: {exc}") from exc


def write_sequence(frames, directory, fmt: str = "png", digits: int = 5) -> list[Path]:
    d = Path(directory)
    try:
        d.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise WriteError(f"{d}: {exc}") from exc
    writer = {"png": write_png, "ppm": write_ppm}[fmt]
    out = []
    for i, f in enumerate(frames, start=1):
        p = d / f"frame_{i:0{digits}d}.{fmt}"
        writer(f, p)
        out.append(p)
    return out


def _write_rows(path, header, rows) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise WriteError(f"{path}: {exc}") from exc


def write_truth(windows, path) -> None:
    rows = [[i, _fmt(w.cx), _fmt(w.cy), _fmt(w.width), _fmt(w.height)] for i, w in enumerate(windows, start=1)]
    _write_rows(path, TRUTH_COLUMNS, rows)


def read_truth(path) -> list[Window]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(Window(float(row["cx"]), float(row["cy"]), float(row["W"]) / 2, float(row["H"]) / 2))
    return out


def write_records(records, path, min_dist: float) -> None:
    rows = []
    for r in records:
        w = r.window
        rows.append([
            r.frame, _fmt(w.cx), _fmt(w.cy), _fmt(w.width), _fmt(w.height), r.iterations,
            _fmt(confidence_coefficient(r.displacements, min_dist)), _fmt(r.rho), _fmt(r.scale),
            int(r.replaced), int(r.lost),
        ])
    _write_rows(path, RECORD_COLUMNS, rows)


@dataclass(frozen=True)
class RecordRow:
    frame: int
    window: Window
    iterations: int
    cc: float
    rho: float
    scale: float
    replaced: bool
    lost: bool


def read_records(path) -> list[RecordRow]:
    rows = []
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            missing = set(RECORD_COLUMNS) - set(reader.fieldnames or ())
            if missing:
                raise DecodeError(f"{path}: missing columns {sorted(missing)}")
            for row in reader:
                rows.append(RecordRow(
                    frame=int(row["frame"]),
                    window=Window(float(row["cx"]), float(row["cy"]), float(row["W"]) / 2, float(row["H"]) / 2),
                    iterations=int(row["iterations"]),
                    cc=float(row["CC"]),
                    rho=float(row["rho"]),
                    scale=float(row["S"]),
                    replaced=row["replaced"] == "1",
                    lost=row["lost"] == "1",
                ))
    except (OSError, ValueError, KeyError) as exc:
        raise DecodeError(f"{path}: {exc}") from exc
    return rows
