"""Confidence-coefficient statistics (CC, MCC, NV) and the comparison table."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySequence
from .trackers import VARIANTS


def confidence_coefficient(displacements, min_dist: float) -> float:
    """Mean excess of the recorded step lengths over min_dist; 0 for a frame with no steps."""
    d = np.asarray(displacements, dtype=float)
    if d.size == 0:
        return 0.0
    return float((d - min_dist).sum() / d.size)


@dataclass(frozen=True)
class SequenceMetrics:
    mcc: float
    nv: float
    mean_iterations: float
    frames: int
    per_frame_cc: list = field(default_factory=list)
    loss_rate: float = 0.0


def metrics_from_cc(per_frame_cc, iterations, lost=None) -> SequenceMetrics:
    """MCC as the mean of the per-frame CC, NV as their population variance."""
    cc = np.asarray(per_frame_cc, dtype=float)
    if cc.size == 0:
        raise EmptySequence("no frames to evaluate")
    mcc = float(cc.sum() / cc.size)
    nv = float(((cc - mcc) ** 2).sum() / cc.size)
    lost = [] if lost is None else list(lost)
    return SequenceMetrics(
        mcc=mcc,
        nv=nv,
        mean_iterations=float(np.mean(iterations)),
        frames=int(cc.size),
        per_frame_cc=cc.tolist(),
        loss_rate=float(sum(bool(x) for x in lost) / cc.size) if lost else 0.0,
    )


def sequence_metrics(records, min_dist: float) -> SequenceMetrics:
    records = list(records)
    return metrics_from_cc(
        [confidence_coefficient(r.displacements, min_dist) for r in records],
        [r.iterations for r in records],
        [r.lost for r in records],
    )


@dataclass(frozen=True)
class ComparisonRow:
    sequence: str
    variant: str
    metrics: SequenceMetrics


COLUMNS = ("SEQUENCE", "ALGORITHMS", "MCC", "NV", "ITERATION", "LOSS")


def comparison_table(entries) -> list[ComparisonRow]:
    """Rows grouped by sequence (first-seen order), variants in the fixed declared order.

    `entries` is an iterable of (sequence, variant, SequenceMetrics).
    """
    rows = [ComparisonRow(s, v, m) for s, v, m in entries]
    seq_order = {}
    for r in rows:
        seq_order.setdefault(r.sequence, len(seq_order))
    rank = {v: i for i, v in enumerate(VARIANTS)}
    return sorted(rows, key=lambda r: (seq_order[r.sequence], rank.get(r.variant, len(rank)), r.variant))


def _cells(row: ComparisonRow) -> list[str]:
    m = row.metrics
    return [row.sequence, row.variant, f"{m.mcc:.4f}", f"{m.nv:.4e}", f"{m.mean_iterations:.4f}", f"{m.loss_rate:.4f}"]


def format_text(rows) -> str:
    table = [list(COLUMNS)] + [_cells(r) for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(COLUMNS))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in table) + "\n"


def format_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        m = r.metrics
        w.writerow([r.sequence, r.variant, repr(m.mcc), repr(m.nv), repr(m.mean_iterations), repr(m.loss_rate)])
    return buf.getvalue()
