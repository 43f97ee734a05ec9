"""Mean-shift tracking with background-corrected models, adaptive bandwidth and template update."""

from .errors import TrackingError
from .imaging import ColorQuantizer, FrameImage, Window
from .trackers import VARIANTS, Tracker, TrackerConfig, track_sequence

__all__ = ["ColorQuantizer", "FrameImage", "Tracker", "TrackerConfig", "TrackingError", "VARIANTS", "Window", "track_sequence"]
__version__ = "0.1.0"
