"""The eight scroll-interaction measures, raw and length-normalized.

Speed is a magnitude: s = |dy| / dt for each consecutive event pair that
actually moved (idle re-emissions with dy = 0 are skipped, they are an
artifact of fixed-rate logging). Acceleration is signed, one value per
consecutive pair of speed entries: a = (v - u) / t with t the second
entry's time interval. A regression is a maximal run of consecutive
upward-moving pairs, counted once however long it lasts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EventOrderError, InsufficientEventsError
from .session_model import ScrollEvent, Session

MEASURE_NAMES = (
    "read_time_s",
    "n_regressions",
    "speed_min",
    "speed_max",
    "speed_avg",
    "acc_min",
    "acc_max",
    "acc_avg",
)


@dataclass(frozen=True)
class InteractionMeasures:
    read_time_s: float
    n_regressions: int
    speed_min: float
    speed_max: float
    speed_avg: float
    acc_min: float
    acc_max: float
    acc_avg: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.read_time_s, float(self.n_regressions), self.speed_min,
            self.speed_max, self.speed_avg, self.acc_min, self.acc_max, self.acc_avg,
        )


@dataclass(frozen=True)
class NormalizedMeasures:
    """The same eight measures, each divided by the article word count."""

    read_time_s: float
    n_regressions: float
    speed_min: float
    speed_max: float
    speed_avg: float
    acc_min: float
    acc_max: float
    acc_avg: float

    def as_tuple(self) -> tuple[float, ...]:
        return (
            self.read_time_s, self.n_regressions, self.speed_min,
            self.speed_max, self.speed_avg, self.acc_min, self.acc_max, self.acc_avg,
        )


def _deltas(events: tuple[ScrollEvent, ...] | list[ScrollEvent]) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray([e.t_ms for e in events], dtype=np.float64)
    y = np.asarray([e.y_px for e in events], dtype=np.float64)
    dt = np.diff(t)
    dy = np.diff(y)
    if np.any(dt <= 0):
        bad = int(np.argmax(dt <= 0))
        raise EventOrderError(
            f"non-positive time delta at event pair {bad} (dt={dt[bad]:g}ms)"
        )
    return dt, dy


def pairwise_speeds(
    events: tuple[ScrollEvent, ...] | list[ScrollEvent],
) -> list[tuple[float, float]]:
    """(speed px/ms, interval ms) per moving consecutive pair."""
    if len(events) < 2:
        raise InsufficientEventsError(
            f"need at least 2 events for speeds, got {len(events)}"
        )
    dt, dy = _deltas(events)
    moving = dy != 0.0
    speeds = np.abs(dy[moving]) / dt[moving]
    return list(zip(speeds.tolist(), dt[moving].tolist()))


def pairwise_accelerations(speeds: list[tuple[float, float]]) -> list[float]:
    """Signed accelerations over consecutive speed entries."""
    if len(speeds) < 2:
        raise InsufficientEventsError(
            f"need at least 2 speed entries for accelerations, got {len(speeds)}"
        )
    s = np.asarray([v for v, _ in speeds], dtype=np.float64)
    t = np.asarray([dt for _, dt in speeds], dtype=np.float64)
    return (np.diff(s) / t[1:]).tolist()


def count_regressions(events: tuple[ScrollEvent, ...] | list[ScrollEvent]) -> int:
    """Number of maximal upward-scrolling runs."""
    if len(events) < 1:
        raise InsufficientEventsError("need at least 1 event")
    if len(events) < 2:
        return 0
    _, dy = _deltas(events)
    up = dy < 0.0
    # Run starts: an upward pair not preceded by an upward pair.
    starts = up & ~np.concatenate(([False], up[:-1]))
    return int(np.count_nonzero(starts))


def measure_session(session: Session) -> InteractionMeasures:
    """All eight measures over one session's reading-phase events."""
    events = session.reading_events
    if len(events) < 3:
        raise InsufficientEventsError(
            f"session {session.key}: need at least 3 events, got {len(events)}"
        )
    dt, dy = _deltas(events)
    moving = dy != 0.0
    speeds = np.abs(dy[moving]) / dt[moving]
    if speeds.size < 2:
        raise InsufficientEventsError(
            f"session {session.key}: fewer than 2 moving pairs, "
            "no acceleration can be computed"
        )
    accs = np.diff(speeds) / dt[moving][1:]
    up = dy < 0.0
    starts = up & ~np.concatenate(([False], up[:-1]))
    return InteractionMeasures(
        read_time_s=session.read_time_ms / 1000.0,
        n_regressions=int(np.count_nonzero(starts)),
        speed_min=float(speeds.min()),
        speed_max=float(speeds.max()),
        speed_avg=float(speeds.mean()),
        acc_min=float(accs.min()),
        acc_max=float(accs.max()),
        acc_avg=float(accs.mean()),
    )


def normalize(measures: InteractionMeasures, word_count: float) -> NormalizedMeasures:
    """Divide every measure by the text length.

    The denominator is normally the article word count; callers configured
    for pixel normalization pass the content height instead.
    """
    if word_count <= 0:
        raise ValueError(f"word_count must be positive, got {word_count}")
    return NormalizedMeasures(
        read_time_s=measures.read_time_s / word_count,
        n_regressions=measures.n_regressions / word_count,
        speed_min=measures.speed_min / word_count,
        speed_max=measures.speed_max / word_count,
        speed_avg=measures.speed_avg / word_count,
        acc_min=measures.acc_min / word_count,
        acc_max=measures.acc_max / word_count,
        acc_avg=measures.acc_avg / word_count,
    )
