"""Engagement filtering: drop sessions without genuine reading.

A session counts as engaged when it logged at least one scroll event and
its maximum scroll depth reached half of the scrollable range (content
height minus viewport height), inclusive. Only reading-phase events count;
answering-phase scrolling cannot rescue an unengaged reading.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateLayoutError
from .session_model import Session

REASON_OK = "ok"
REASON_NO_SCROLL = "no_scroll"
REASON_BELOW_HALFWAY = "below_halfway"


@dataclass(frozen=True)
class EngagementReport:
    session_key: tuple[str, str, str]
    max_depth_px: float
    max_depth_fraction: float
    engaged: bool
    reason: str


def max_scroll_depth(session: Session) -> float:
    """Maximum reading-phase y offset; 0 when nothing was logged."""
    if not session.reading_events:
        return 0.0
    return max(e.y_px for e in session.reading_events)


def is_engaged(session: Session) -> EngagementReport:
    """Apply the half-way rule to one session."""
    scrollable = session.viewport.scrollable_height
    if scrollable <= 0:
        raise DegenerateLayoutError(
            f"session {session.key}: content ({session.viewport.content_height_px}px) "
            f"fits in the viewport ({session.viewport.height_px}px); "
            "the half-way rule cannot apply"
        )
    depth = max_scroll_depth(session)
    fraction = depth / scrollable
    if not session.reading_events:
        reason = REASON_NO_SCROLL
    elif depth >= 0.5 * scrollable:
        reason = REASON_OK
    else:
        reason = REASON_BELOW_HALFWAY
    return EngagementReport(
        session_key=session.key,
        max_depth_px=depth,
        max_depth_fraction=fraction,
        engaged=reason == REASON_OK,
        reason=reason,
    )


def filter_sessions(
    sessions: list[Session], drop_partial_participants: bool = False
) -> tuple[list[Session], list[EngagementReport]]:
    """Partition sessions into engaged and not, preserving input order.

    Layout errors are recorded per session (reason ``degenerate_layout``)
    and the batch continues. With `drop_partial_participants`, every
    session of a participant with any unengaged reading is dropped.
    """
    reports: list[EngagementReport] = []
    engaged: list[Session] = []
    failed_participants: set[str] = set()
    for session in sessions:
        try:
            report = is_engaged(session)
        except DegenerateLayoutError:
            report = EngagementReport(
                session_key=session.key,
                max_depth_px=max_scroll_depth(session),
                max_depth_fraction=0.0,
                engaged=False,
                reason="degenerate_layout",
            )
        reports.append(report)
        if report.engaged:
            engaged.append(session)
        else:
            failed_participants.add(session.participant_id)
    if drop_partial_participants:
        engaged = [s for s in engaged if s.participant_id not in failed_participants]
    return engaged, reports
