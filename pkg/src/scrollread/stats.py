"""Statistical analysis layer.

Covers the descriptive per-level table (means, standard deviations, score
correlations with Bonferroni correction, level-difference significance),
the proficiency/score breakdown, speed distributions by reader group, and
per-L1 correlate ranking.

Level differences are tested with a within-participant sign-flip
permutation test on paired normalized measures. This deliberately replaces
the original mixed-effects/Satterthwaite machinery: pairing by participant
controls the dominant (participant) random effect, and every output is
tagged with the method so the substitution is visible.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as scipy_stats

from .engagement import max_scroll_depth
from .errors import CohortTooSmallError, ConstantInputError, DataError
from .interaction import MEASURE_NAMES, InteractionMeasures, NormalizedMeasures
from .seeds import child_rng
from .session_model import ADVANCED, ELEMENTARY, Participant, Session
from .text_features import TextFeatures

logger = logging.getLogger(__name__)

PERMUTATION_METHOD = "sign-flip permutation (substitute for mixed-effects model)"

TEXT_FEATURE_NAMES = (
    "n_tokens",
    "ttr",
    "root_ttr",
    "corrected_ttr",
    "bilog_ttr",
    "uber",
    "avg_chars_per_word",
    "avg_syllables_per_word",
    "avg_sentence_len",
    "flesch_kincaid",
    "coleman_liau",
    "smog",
    "mean_aoa_tokens",
    "mean_aoa_lemmas",
)

MeasureMap = dict[tuple[str, str, str], tuple[InteractionMeasures, NormalizedMeasures]]


@dataclass(frozen=True)
class CorrelationResult:
    measure: str
    group: str
    r: float
    p_raw: float
    p_adjusted: float
    n: int

    @property
    def significant(self) -> bool:
        return self.p_adjusted < 0.01


@dataclass(frozen=True)
class LevelDifferenceResult:
    measure: str
    mean_elementary: float
    sd_elementary: float
    mean_advanced: float
    sd_advanced: float
    p: float
    n_pairs: int
    method: str = PERMUTATION_METHOD


def pearson(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Sample Pearson r and its two-sided p (t distribution, n-2 df)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two 1-D arrays of equal length")
    n = len(x)
    if n < 3:
        raise ConstantInputError(f"pearson needs at least 3 points, got {n}")
    sx = x.std()
    sy = y.std()
    if sx == 0.0 or sy == 0.0:
        raise ConstantInputError("correlation undefined for constant input")
    r = float(np.mean((x - x.mean()) * (y - y.mean())) / (sx * sy))
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return r, 0.0
    df = n - 2
    t = r * math.sqrt(df / (1.0 - r * r))
    p = 2.0 * float(scipy_stats.t.sf(abs(t), df))
    return r, p


def bonferroni(p_values: list[float], family_size: int) -> list[float]:
    """min(1, p * m) for every raw p; family size m is declared up front."""
    if family_size < len(p_values):
        raise ValueError(
            f"family size {family_size} is below the number of p-values {len(p_values)}"
        )
    out = []
    for p in p_values:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p-value {p} outside [0, 1]")
        out.append(min(1.0, p * family_size))
    return out


def sign_flip_test(
    differences: np.ndarray, n_permutations: int = 10_000, seed: int = 0
) -> float:
    """Two-sided p for mean(differences) = 0 under random sign flips."""
    d = np.asarray(differences, dtype=np.float64)
    if len(d) < 10:
        raise CohortTooSmallError(
            f"sign-flip test needs at least 10 pairs, got {len(d)}"
        )
    observed = abs(d.mean())
    rng = child_rng(seed, "sign_flip")
    signs = rng.integers(0, 2, size=(n_permutations, len(d))) * 2 - 1
    permuted = np.abs((signs * d).mean(axis=1))
    hits = int(np.count_nonzero(permuted >= observed - 1e-300))
    return (1 + hits) / (1 + n_permutations)


def level_difference_test(
    paired_measures: list[tuple[float, float]],
    measure: str = "",
    n_permutations: int = 10_000,
    seed: int = 0,
) -> LevelDifferenceResult:
    """Paired (elementary, advanced) values -> permutation significance.

    Each pair is one participant's normalized measure on their elementary
    and advanced readings; pairing controls the participant effect.
    """
    pairs = np.asarray(paired_measures, dtype=np.float64)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] < 10:
        raise CohortTooSmallError("need at least 10 complete (elementary, advanced) pairs")
    elem, adv = pairs[:, 0], pairs[:, 1]
    p = sign_flip_test(elem - adv, n_permutations=n_permutations, seed=seed)
    return LevelDifferenceResult(
        measure=measure,
        mean_elementary=float(elem.mean()),
        sd_elementary=float(elem.std(ddof=1)),
        mean_advanced=float(adv.mean()),
        sd_advanced=float(adv.std(ddof=1)),
        p=p,
        n_pairs=len(pairs),
    )


def measure_values(
    sessions: list[Session], measures: MeasureMap, name: str, normalized: bool = True
) -> np.ndarray:
    idx = 1 if normalized else 0
    return np.asarray(
        [getattr(measures[s.key][idx], name) for s in sessions], dtype=np.float64
    )


def descriptive_by_level(
    sessions: list[Session], measures: MeasureMap, name: str, normalized: bool = True
) -> dict[str, tuple[float, float]]:
    """Sample mean and sample sd (n-1) of one measure per level."""
    out: dict[str, tuple[float, float]] = {}
    for level in (ELEMENTARY, ADVANCED):
        subset = [s for s in sessions if s.level == level]
        if len(subset) < 2:
            raise CohortTooSmallError(f"level '{level}' has fewer than 2 sessions")
        values = measure_values(subset, measures, name, normalized)
        out[level] = (float(values.mean()), float(values.std(ddof=1)))
    return out


@dataclass(frozen=True)
class Table1Row:
    measure: str
    level: str
    n: int
    mean: float
    sd: float
    r: float | None
    p_raw: float | None
    p_adjusted: float | None
    diff_p: float | None
    diff_method: str


def table1_rows(
    sessions: list[Session],
    measures: MeasureMap,
    family_size: int = 16,
    n_permutations: int = 10_000,
    seed: int = 0,
) -> list[Table1Row]:
    """The descriptive table: per measure x level statistics plus the
    level-difference significance of the normalized measure."""
    rows: list[Table1Row] = []
    for name in MEASURE_NAMES:
        # Pair by participant: one engaged session per level required.
        by_participant: dict[str, dict[str, float]] = {}
        for s in sessions:
            by_participant.setdefault(s.participant_id, {})[s.level] = float(
                getattr(measures[s.key][1], name)
            )
        pairs = [
            (levels[ELEMENTARY], levels[ADVANCED])
            for levels in by_participant.values()
            if ELEMENTARY in levels and ADVANCED in levels
        ]
        diff_p = None
        if len(pairs) >= 10:
            diff_p = level_difference_test(
                pairs, measure=name, n_permutations=n_permutations, seed=seed
            ).p
        for level in (ELEMENTARY, ADVANCED):
            subset = [s for s in sessions if s.level == level]
            values = measure_values(subset, measures, name, normalized=True)
            scores = np.asarray([s.score for s in subset], dtype=np.float64)
            r = p_raw = p_adj = None
            if len(subset) >= 3:
                try:
                    r, p_raw = pearson(values, scores)
                    p_adj = bonferroni([p_raw], family_size)[0]
                except ConstantInputError:
                    pass
            rows.append(
                Table1Row(
                    measure=name,
                    level=level,
                    n=len(subset),
                    mean=float(values.mean()),
                    sd=float(values.std(ddof=1)) if len(values) > 1 else 0.0,
                    r=r,
                    p_raw=p_raw,
                    p_adjusted=p_adj,
                    diff_p=diff_p,
                    diff_method=PERMUTATION_METHOD,
                )
            )
    return rows


def score_by_proficiency(
    sessions: list[Session], participants: dict[str, Participant]
) -> list[tuple[int, float, int]]:
    """(proficiency band, mean score, n sessions), highest band first."""
    by_band: dict[int, list[int]] = {}
    for s in sessions:
        participant = participants.get(s.participant_id)
        if participant is None:
            continue
        by_band.setdefault(participant.self_proficiency, []).append(s.score)
    return [
        (band, float(np.mean(by_band[band])), len(by_band[band]))
        for band in sorted(by_band, reverse=True)
    ]


@dataclass(frozen=True)
class SpeedDistribution:
    group: str
    bin_edges: np.ndarray
    densities: np.ndarray
    mean: float
    median: float
    n: int


def speed_distribution(
    sessions: list[Session],
    measures: MeasureMap,
    participants: dict[str, Participant] | None = None,
    group_by: str = "L1",
    bin_width: float = 0.1,
) -> dict[str, SpeedDistribution]:
    """Density histograms of raw per-session average scroll speed.

    Groups are first languages (``L1``) or comprehension scores
    (``score``). Bins are fixed width from 0; the range is clipped at the
    pooled 99th percentile and higher speeds fall into the top bin, so each
    group's densities integrate to exactly 1.
    """
    if group_by not in ("L1", "score"):
        raise ValueError(f"group_by must be 'L1' or 'score', got {group_by!r}")
    groups: dict[str, list[float]] = {}
    for s in sessions:
        speed = measures[s.key][0].speed_avg
        if group_by == "L1":
            if participants is None:
                raise DataError("L1 grouping needs participant records")
            participant = participants.get(s.participant_id)
            if participant is None:
                continue
            key = participant.first_language
        else:
            key = str(s.score)
        groups.setdefault(key, []).append(speed)
    if not groups:
        raise CohortTooSmallError("no sessions to build a speed distribution from")
    pooled = np.concatenate([np.asarray(v) for v in groups.values()])
    upper = float(np.percentile(pooled, 99))
    n_bins = max(1, int(math.ceil(upper / bin_width)))
    edges = np.arange(n_bins + 1, dtype=np.float64) * bin_width
    out: dict[str, SpeedDistribution] = {}
    for key in sorted(groups):
        values = np.asarray(groups[key], dtype=np.float64)
        clipped = np.minimum(values, edges[-1] - 1e-12)
        counts, _ = np.histogram(clipped, bins=edges)
        densities = counts / (len(values) * bin_width)
        out[key] = SpeedDistribution(
            group=key,
            bin_edges=edges,
            densities=densities,
            mean=float(values.mean()),
            median=float(np.median(values)),
            n=len(values),
        )
    return out


def session_feature_value(
    name: str,
    session: Session,
    measures: MeasureMap,
    text_features: dict[tuple[str, str], TextFeatures] | None,
) -> float | None:
    """One feature of one session: a raw scroll measure or a text feature
    of the article it read."""
    if name in MEASURE_NAMES:
        return float(getattr(measures[session.key][0], name))
    if text_features is None:
        return None
    tf = text_features.get((session.article_id, session.level))
    if tf is None:
        return None
    value = getattr(tf, name)
    return None if value is None else float(value)


def l1_correlates(
    sessions: list[Session],
    measures: MeasureMap,
    participants: dict[str, Participant],
    text_features: dict[tuple[str, str], TextFeatures] | None,
    l1: str,
    min_sessions: int = 30,
) -> list[CorrelationResult]:
    """Correlates of comprehension score for one first-language cohort.

    Tests every raw scroll measure and every per-article text feature
    (AoA means included when available), Bonferroni-adjusts over the
    tested family, and ranks by |r|.
    """
    cohort = [
        s
        for s in sessions
        if (p := participants.get(s.participant_id)) is not None and p.first_language == l1
    ]
    if len(cohort) < min_sessions:
        raise CohortTooSmallError(
            f"L1 cohort '{l1}' has {len(cohort)} sessions, fewer than {min_sessions}"
        )
    scores = np.asarray([s.score for s in cohort], dtype=np.float64)
    candidates = list(MEASURE_NAMES) + [
        n for n in TEXT_FEATURE_NAMES if text_features is not None
    ]
    usable: list[tuple[str, np.ndarray]] = []
    for name in candidates:
        values = [session_feature_value(name, s, measures, text_features) for s in cohort]
        if any(v is None for v in values):
            logger.warning("feature '%s' missing for some sessions; skipped", name)
            continue
        usable.append((name, np.asarray(values, dtype=np.float64)))
    family = len(usable)
    results: list[CorrelationResult] = []
    for name, values in usable:
        try:
            r, p_raw = pearson(values, scores)
        except ConstantInputError:
            logger.warning("feature '%s' constant in cohort '%s'; skipped", name, l1)
            continue
        results.append(
            CorrelationResult(
                measure=name,
                group=l1,
                r=r,
                p_raw=p_raw,
                p_adjusted=bonferroni([p_raw], family)[0],
                n=len(cohort),
            )
        )
    results.sort(key=lambda c: (-abs(c.r), c.measure))
    return results


def proficiency_speed_correlation(
    sessions: list[Session],
    measures: MeasureMap,
    participants: dict[str, Participant],
) -> tuple[float, float]:
    """Pearson r between a participant's mean raw average scroll speed and
    their self-reported proficiency band."""
    speeds: dict[str, list[float]] = {}
    for s in sessions:
        speeds.setdefault(s.participant_id, []).append(measures[s.key][0].speed_avg)
    pids = [pid for pid in speeds if pid in participants]
    x = np.asarray([float(np.mean(speeds[pid])) for pid in pids])
    y = np.asarray([float(participants[pid].self_proficiency) for pid in pids])
    return pearson(x, y)


def depth_fraction(session: Session) -> float:
    """Reading depth as a fraction of the scrollable range."""
    scrollable = session.viewport.scrollable_height
    return max_scroll_depth(session) / scrollable if scrollable > 0 else 0.0
