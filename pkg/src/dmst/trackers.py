"""The four mean-shift tracker variants behind one sequential interface."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import EmptySequence, EmptyWindow, TargetLost
from .histograms import (
    KernelProfile,
    build_cbwh_target_model,
    build_target_model,
    cbwh_transfer_for,
)
from .imaging import ColorQuantizer, FrameImage, Window, clipped_bounds
from .localization import LocalizationConfig, localize, similarity_at
from .scale_adapt import ScaleConfig, ScaleState, apply_scale, compute_scale_factor, update_counters
from .template_update import TemplateConfig, TemplateStore, maybe_replace, record_candidate

log = logging.getLogger(__name__)

VARIANTS = ("ClassicMS", "CBWH", "SelfAdapt", "DMST")
_CBWH_MODEL = {"CBWH", "DMST"}
_ADAPTIVE = {"SelfAdapt", "DMST"}


def canonical_variant(name: str) -> str:
    for v in VARIANTS:
        if v.lower() == name.strip().lower():
            return v
    raise ValueError(f"unknown tracker variant {name!r}; expected one of {', '.join(VARIANTS)}")


@dataclass(frozen=True)
class TrackerConfig:
    variant: str = "DMST"
    bins: int = 16
    kernel: str = "epanechnikov"
    background_ratio: float = 2.0
    localization: LocalizationConfig = field(default_factory=LocalizationConfig)
    scale: ScaleConfig = field(default_factory=ScaleConfig)
    template: TemplateConfig = field(default_factory=TemplateConfig)

    def __post_init__(self):
        object.__setattr__(self, "variant", canonical_variant(self.variant))
        ColorQuantizer(self.bins)
        KernelProfile(self.kernel)
        if not self.background_ratio > 1:
            raise ValueError("background_ratio must exceed 1")

    @property
    def quantizer(self) -> ColorQuantizer:
        return ColorQuantizer(self.bins)

    @property
    def kernel_profile(self) -> KernelProfile:
        return KernelProfile(self.kernel)


@dataclass
class FrameRecord:
    frame: int
    window: Window
    iterations: int
    displacements: list
    rho: float
    scale: float = 0.0
    replaced: bool = False
    lost: bool = False
    scale_raw: float = 0.0
    theta: float | None = None


def _clamp_into(frame: FrameImage, w: Window) -> Window:
    cx = min(max(w.cx, 0.0), frame.width - 1.0)
    cy = min(max(w.cy, 0.0), frame.height - 1.0)
    return w if (cx, cy) == (w.cx, w.cy) else w.moved_to(cx, cy)


class Tracker:
    """Stateful tracker for one sequence; frames are numbered from 1."""

    def __init__(self, cfg: TrackerConfig, first_frame: FrameImage, window: Window):
        self.cfg = cfg
        self.quantizer = cfg.quantizer
        self.kernel = cfg.kernel_profile
        clipped_bounds(first_frame, window)
        self.window = _clamp_into(first_frame, window)
        self.n = 1
        self.model = self._build_model(first_frame, self.window)
        self.scale_state = None
        self.store = None
        if cfg.variant in _ADAPTIVE:
            self.scale_state = ScaleState()
            self._rebaseline(first_frame)
        if cfg.variant == "DMST":
            self.store = TemplateStore.start(self.model, cfg.template)
        self.records = [
            FrameRecord(
                frame=1,
                window=self.window,
                iterations=0,
                displacements=[],
                rho=similarity_at(first_frame, self.window, self.model, self.quantizer, self.kernel),
                theta=self.store.theta if self.store else None,
            )
        ]

    @property
    def variant(self) -> str:
        return self.cfg.variant

    def _build_model(self, frame, window):
        if self.cfg.variant in _CBWH_MODEL:
            transfer = cbwh_transfer_for(frame, window, self.quantizer, self.cfg.background_ratio)
            return build_cbwh_target_model(frame, window, self.quantizer, self.kernel, transfer)
        return build_target_model(frame, window, self.quantizer, self.kernel)

    def _rebaseline(self, frame):
        st, sc = self.scale_state, self.cfg.scale
        self.measure = sc.make_measure(self.model)
        st.i1 = self.measure(frame, self.window, self.quantizer)
        st.i2 = self.measure(frame, self.window.scaled(1.0 + sc.alpha), self.quantizer)

    def _candidate_model(self, frame, window):
        try:
            return self._build_model(frame, window)
        except EmptyWindow:
            return build_target_model(frame, window, self.quantizer, self.kernel)

    def process(self, frame: FrameImage) -> FrameRecord:
        self.n += 1
        n = self.n
        record = FrameRecord(frame=n, window=self.window, iterations=0, displacements=[], rho=0.0)
        try:
            result = localize(
                frame, self.window, self.model, self.quantizer, self.kernel, self.cfg.localization
            )
        except TargetLost as exc:
            log.debug("frame %d: target lost (%s)", n, exc)
            record.lost = True
        else:
            self.window = _clamp_into(frame, result.final_window)
            record.iterations = result.iterations
            record.displacements = result.displacements
            record.rho = result.final_rho
            if self.scale_state is not None and self.cfg.scale.is_check_frame(n):
                self._scale_check(frame, record)
        record.window = self.window
        record.theta = self.store.theta if self.store else None
        self.records.append(record)
        return record

    def _scale_check(self, frame, record):
        sc, st = self.cfg.scale, self.scale_state
        i4 = self.measure(frame, self.window, self.quantizer)
        i5 = self.measure(frame, self.window.scaled(1.0 + sc.alpha), self.quantizer)
        s, st.degenerate = compute_scale_factor(
            st.i1, st.i2, i4, i5, sc.beta, sc.clamp, sc.log_floor, sc.rule, sc.ratio_tol
        )
        if st.degenerate:
            log.warning("frame %d: degenerate information measure (I1=%g, I4=%g)", record.frame, st.i1, i4)
        st.i1, st.i2, st.i4, st.i5, st.s = i4, i5, i4, i5, s
        permitted = update_counters(st, s, sc.limit)
        record.scale_raw = s

        if self.store is not None and s != 0:
            record_candidate(self.store, self._candidate_model(frame, self.window), record.frame)
            if self.store.due:
                _, record.replaced = maybe_replace(self.store)
                if record.replaced:
                    self.model = self.store.key_model

        if permitted and s != 0:
            self.window = apply_scale(self.window, s, sc.min_extent)
            record.scale = s
        if record.replaced:
            self._rebaseline(frame)


def track_sequence(frames, cfg: TrackerConfig, init: Window) -> list[FrameRecord]:
    frames = list(frames)
    if not frames:
        raise EmptySequence("no frames to track")
    tracker = Tracker(cfg, frames[0], init)
    for frame in frames[1:]:
        tracker.process(frame)
    return tracker.records
