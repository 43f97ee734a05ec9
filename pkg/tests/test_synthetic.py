import numpy as np
import pytest

from dmst.errors import SpecError
from dmst.synthetic import SyntheticSpec, generate_synthetic


def test_static_frames_identical():
    frames, truth = generate_synthetic(SyntheticSpec(frames=5))
    assert all(f == frames[0] for f in frames)
    assert all(w == truth[0] for w in truth)


def test_velocity_advances_truth():
    spec = SyntheticSpec(width=360, height=120, frames=100, center=(30, 60), velocity=(3, 0))
    _, truth = generate_synthetic(spec)
    assert [w.cx for w in truth] == [30 + 3 * t for t in range(100)]
    assert all(w.cy == 60 for w in truth)


def test_seed_determinism():
    spec = SyntheticSpec(frames=4, noise=20, seed=9)
    a, _ = generate_synthetic(spec)
    b, _ = generate_synthetic(spec)
    assert all(x.data == y.data for x, y in zip(a, b))
    c, _ = generate_synthetic(SyntheticSpec(frames=4, noise=20, seed=10))
    assert a[0].data != c[0].data


def test_target_drawn_where_truth_says():
    spec = SyntheticSpec(shape="rect", center=(50, 40), size=(10, 5), frames=1)
    frames, truth = generate_synthetic(spec)
    px = frames[0].pixels
    assert px[40, 50].tolist() == list(spec.color)
    assert px[40, 61].tolist() == list(spec.background_color)
    assert px[46, 50].tolist() == list(spec.background_color)


def test_hue_drift_rotates_color():
    spec = SyntheticSpec(hue_drift=1.0, frames=2)
    assert spec.target_color(0) == tuple(spec.color)
    assert spec.target_color(120) != spec.target_color(0)
    assert spec.target_color(360) == tuple(spec.color)


def test_scale_ramp():
    spec = SyntheticSpec(shape="rect", size=(10, 10), scale_ramp=1.1, frames=3)
    _, truth = generate_synthetic(spec)
    assert truth[2].hx == pytest.approx(10 * 1.21)


def test_spec_errors():
    with pytest.raises(SpecError):
        generate_synthetic(SyntheticSpec(width=100, frames=60, center=(30, 60), velocity=(3, 0)))
    with pytest.raises(SpecError):
        SyntheticSpec(shape="star")
    with pytest.raises(SpecError):
        SyntheticSpec.from_dict({"colour": [1, 2, 3]})
    spec = SyntheticSpec.from_dict({"width": 90, "center": [40, 30]})
    assert spec.center == (40, 30) and SyntheticSpec.from_dict(spec.to_dict()) == spec
