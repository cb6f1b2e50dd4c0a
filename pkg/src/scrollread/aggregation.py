"""Per-text aggregation of session measures and feature-matrix assembly.

Sessions reading the same (article, level) are collapsed into one feature
row by plain arithmetic averaging. The scroll feature vector is the six
measures that separate the levels (regressions, max/avg speed, min/max/avg
acceleration), in raw and length-normalized form; read time and min speed
stay out of the classifier features.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import FeatureSelectionError
from .interaction import InteractionMeasures, NormalizedMeasures
from .session_model import Participant, Session
from .text_features import TextFeatures

logger = logging.getLogger(__name__)

SCROLL_FEATURES = (
    "n_regressions",
    "speed_max",
    "speed_avg",
    "acc_min",
    "acc_max",
    "acc_avg",
)

BASELINE_FEATURES = ("n_tokens", "ttr", "root_ttr", "corrected_ttr", "bilog_ttr", "uber")

TRADITIONAL_FEATURES = (
    "avg_chars_per_word",
    "avg_syllables_per_word",
    "avg_sentence_len",
    "flesch_kincaid",
    "coleman_liau",
    "smog",
    "flesch_reading_ease",
    "automated_readability_index",
    "gunning_fog",
)

FEATURE_SELECTIONS = (
    "scroll_all",
    "scroll_raw",
    "scroll_norm",
    "baseline",
    "baseline_scroll",
    "baseline_traditional",
)


@dataclass(frozen=True)
class SubgroupFilter:
    """Session filter on participant attributes; empty filter passes all."""

    first_languages: frozenset[str] | None = None
    age_bands: frozenset[str] | None = None
    proficiency_range: tuple[int, int] | None = None

    def matches(self, participant: Participant) -> bool:
        if self.first_languages is not None and participant.first_language not in self.first_languages:
            return False
        if self.age_bands is not None and participant.age_band not in self.age_bands:
            return False
        if self.proficiency_range is not None:
            lo, hi = self.proficiency_range
            if not lo <= participant.self_proficiency <= hi:
                return False
        return True


@dataclass(frozen=True)
class FeatureRow:
    """Aggregated features for one (article_id, level) text."""

    article_id: str
    level: str
    label: str
    scroll_raw: tuple[float, ...]
    scroll_norm: tuple[float, ...]
    n_sessions: int
    scroll_names: tuple[str, ...] = SCROLL_FEATURES
    text_features: TextFeatures | None = None


def aggregate_by_text(
    sessions: list[Session],
    measures: dict[tuple[str, str, str], tuple[InteractionMeasures, NormalizedMeasures]],
    participants: dict[str, Participant] | None = None,
    subgroup: SubgroupFilter | None = None,
    text_features: dict[tuple[str, str], TextFeatures] | None = None,
    scroll_names: tuple[str, ...] = SCROLL_FEATURES,
) -> list[FeatureRow]:
    """Mean of each measure per (article_id, level) over matching sessions.

    Texts left without any contributing session are excluded with a
    warning, never emitted as zero rows. `scroll_names` exists for
    experimentation with a different measure subset; the default is the
    six-measure set above.
    """
    groups: dict[tuple[str, str], list[tuple[str, str, str]]] = {}
    for session in sessions:
        if subgroup is not None:
            if participants is None:
                raise FeatureSelectionError("subgroup filtering needs participant records")
            participant = participants.get(session.participant_id)
            if participant is None or not subgroup.matches(participant):
                continue
        groups.setdefault((session.article_id, session.level), []).append(session.key)

    rows: list[FeatureRow] = []
    for text_key in sorted(groups):
        keys = groups[text_key]
        raw = np.asarray(
            [[getattr(measures[k][0], name) for name in scroll_names] for k in keys],
            dtype=np.float64,
        )
        norm = np.asarray(
            [[getattr(measures[k][1], name) for name in scroll_names] for k in keys],
            dtype=np.float64,
        )
        rows.append(
            FeatureRow(
                article_id=text_key[0],
                level=text_key[1],
                label=text_key[1],
                scroll_raw=tuple(raw.mean(axis=0).tolist()),
                scroll_norm=tuple(norm.mean(axis=0).tolist()),
                n_sessions=len(keys),
                scroll_names=tuple(scroll_names),
                text_features=None if text_features is None else text_features.get(text_key),
            )
        )
    n_empty = 0  # texts filtered to zero sessions are simply absent from groups
    if subgroup is not None and text_features is not None:
        n_empty = len(set(text_features) - set(groups))
        if n_empty:
            logger.warning("%d texts had no contributing sessions after filtering", n_empty)
    return rows


def _text_feature_values(tf: TextFeatures, names: tuple[str, ...], row_id: str) -> list[float]:
    values = []
    for name in names:
        value = getattr(tf, name)
        if value is None:
            raise FeatureSelectionError(f"text {row_id}: feature '{name}' is undefined")
        values.append(float(value))
    return values


def build_matrix(
    rows: list[FeatureRow], feature_selection: str
) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Assemble (X, y, column names) for one of the named feature sets.

    Column counts: scroll_raw/scroll_norm 6, scroll_all 12, baseline 6,
    baseline_scroll 18, baseline_traditional 15. Labels are the level
    strings, row order follows the input rows.
    """
    if not rows:
        raise FeatureSelectionError("cannot build a matrix from zero rows")
    if feature_selection not in FEATURE_SELECTIONS:
        raise FeatureSelectionError(
            f"unknown feature selection '{feature_selection}', "
            f"expected one of {FEATURE_SELECTIONS}"
        )
    needs_text = feature_selection in ("baseline", "baseline_scroll", "baseline_traditional")
    if needs_text and any(r.text_features is None for r in rows):
        raise FeatureSelectionError(
            f"selection '{feature_selection}' needs text features on every row"
        )

    matrix: list[list[float]] = []
    names: list[str] = []
    for i, row in enumerate(rows):
        values: list[float] = []
        cols: list[str] = []
        row_id = f"{row.article_id}/{row.level}"
        if feature_selection in ("baseline", "baseline_scroll", "baseline_traditional"):
            values += _text_feature_values(row.text_features, BASELINE_FEATURES, row_id)
            cols += [f"text_{n}" for n in BASELINE_FEATURES]
        if feature_selection == "baseline_traditional":
            values += _text_feature_values(row.text_features, TRADITIONAL_FEATURES, row_id)
            cols += [f"text_{n}" for n in TRADITIONAL_FEATURES]
        if feature_selection in ("scroll_all", "scroll_raw", "baseline_scroll"):
            values += list(row.scroll_raw)
            cols += [f"scroll_raw_{n}" for n in row.scroll_names]
        if feature_selection in ("scroll_all", "scroll_norm", "baseline_scroll"):
            values += list(row.scroll_norm)
            cols += [f"scroll_norm_{n}" for n in row.scroll_names]
        matrix.append(values)
        if i == 0:
            names = cols
    X = np.asarray(matrix, dtype=np.float64)
    y = np.asarray([row.label for row in rows])
    return X, y, names
