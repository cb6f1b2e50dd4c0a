"""Deterministic synthetic reading cohort.

Builds a full desk-scale dataset — two-level article corpus, AoA lexicon,
participant roster and scroll-event sessions — whose pipeline statistics
land on the published cohort's landmarks: 600 collected / 518 engaged
participants (1036 engaged readings), elementary/advanced token means near
599/915, slower-and-tighter normalized interaction measures on advanced
texts, negative speed-score correlations, a faster English cohort than
Tamil, and Tamil comprehension driven by vocabulary age-of-acquisition.

Everything flows from one seed. Each participant carries latent traits
(pace, skim tendency, regression and flick propensities, dwell appetite),
each article carries affinities (vocabulary-difficulty tilt, inflection
rate, scroll affinities), and traces are synthesized on a 100 ms sampling
grid: bursts of movement with ramped speeds, an anchor re-emission at each
burst start (so idle gaps never fabricate speeds), one flick, a slow final
crawl, and regressions as genuine upward runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .seeds import child_rng
from .session_model import (
    ADVANCED,
    ELEMENTARY,
    AoALexicon,
    Article,
    Participant,
    Question,
    ScrollEvent,
    Session,
    Viewport,
)
from .text_features import tokenize

DEFAULT_SEED = 74520

VIEWPORT_W = 1080.0
VIEWPORT_H = 1920.0

AGE_BANDS = ("18-24", "25-34", "35-44", "45-54", "55+")
AGE_PROBS = (0.20, 0.42, 0.20, 0.12, 0.06)
# Interaction-style dispersion by age band; 25-34 scrolls most uniformly.
AGE_STYLE = {"18-24": 1.25, "25-34": 0.40, "35-44": 1.20, "45-54": 1.35, "55+": 1.50}

EDUCATION = ("secondary", "undergraduate", "postgraduate", "doctorate")

OTHER_L1S = (
    "Hindi", "Telugu", "Malayalam", "Kannada", "Bengali", "Marathi", "Gujarati",
    "Punjabi", "Urdu", "Spanish", "French", "German", "Portuguese", "Italian",
    "Dutch", "Polish", "Russian", "Ukrainian", "Romanian", "Greek", "Turkish",
    "Arabic", "Hebrew", "Farsi", "Swahili", "Yoruba", "Igbo", "Amharic",
    "Chinese", "Cantonese", "Japanese", "Korean", "Vietnamese", "Thai",
    "Indonesian", "Malay", "Tagalog", "Nepali", "Sinhala", "Burmese",
    "Khmer", "Hungarian", "Czech", "Swedish",
)


@dataclass
class GenParams:
    """Calibration constants; defaults are frozen against the test suite."""

    # Articles
    n_articles: int = 30
    elem_words_mean: float = 590.0
    elem_words_sd: float = 118.0
    ratio_mean: float = 1.66       # for normally-simplified pairs
    ratio_sd: float = 0.13
    weak_pair_prob: float = 0.25   # pairs where simplification barely shortens
    weak_ratio: tuple[float, float] = (1.0, 1.2)
    elem_sentence_len: float = 10.8
    adv_sentence_len: float = 18.6
    elem_hard_frac: tuple[float, float] = (0.10, 0.17)
    adv_hard_frac: tuple[float, float] = (0.30, 0.41)
    aoa_tilt_sd: float = 0.25       # article vocabulary-difficulty tilt (log-weight)
    inflect_rate: tuple[float, float] = (0.04, 0.50)
    inflect_delta: tuple[float, float] = (3.5, 6.5)

    # Pace (px/ms) and speed composition
    pace_base: float = 0.84
    pace_prof_coef: float = 0.14    # log-pace per proficiency band above 4
    pace_sd_english: float = 0.42
    pace_sd_tamil: float = 1.35
    pace_sd_other: float = 0.60
    pace_session_sd: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 0.17, ADVANCED: 0.10}
    )
    level_factor: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 0.93, ADVANCED: 1.07}
    )
    article_pace_sd: float = 0.10

    # Regressions
    reg_base: float = 2.8           # mean of participant propensity
    reg_participant_sd: float = 0.80
    reg_session_sd: float = 0.50
    reg_level_factor: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 1.0, ADVANCED: 1.80}
    )
    reg_length_exp: float = 0.6
    reg_disp_level: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 1.0, ADVANCED: 0.50}
    )
    reg_cap: int = 16
    article_reg_sd: float = 0.40

    # Flick / crawl / jitter / smoothing
    flick_mean: float = 1.75        # px/ms peak
    flick_sd: float = 0.26
    flick_level_factor: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 1.0, ADVANCED: 1.02}
    )
    crawl_mean: float = 0.028      # px/ms slow-reading floor
    crawl_sd: float = 0.38
    jitter_px: float = 0.05         # absolute within-burst speed jitter (px/ms)
    smooth_cap: float = 0.30        # max per-step speed change outside flicks (px/ms)
    jerk_level_factor: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 1.08, ADVANCED: 0.92}
    )
    drop_prob: float = 0.08         # chance a grid sample is dropped (merged)

    # Dwell (drives read time, seconds per word)
    dwell_per_word: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 0.47, ADVANCED: 0.19}
    )
    dwell_sd: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 0.58, ADVANCED: 0.48}
    )
    dwell_participant_sd: float = 0.28
    article_dwell_sd: float = 0.16

    # Comprehension model
    score_intercept: float = -0.75
    score_prof_coef: float = 0.40   # logit per proficiency band above 4
    score_skim_coef: dict[str, float] = field(
        default_factory=lambda: {ELEMENTARY: 1.45, ADVANCED: 1.30}
    )
    score_skim_tamil_boost: float = 1.15
    score_aoa_coef_tamil: float = 1.45
    score_noise_sd: float = 0.30

    # Geometry
    words_per_line: float = 7.5
    line_height: float = 52.0
    content_margin: float = 180.0


@dataclass
class SyntheticCohort:
    seed: int
    articles: list[Article]
    participants: dict[str, Participant]
    sessions: list[Session]
    lexicon: AoALexicon
    n_engaged_participants: int


# ---------------------------------------------------------------------------
# Word bank and lexicon
# ---------------------------------------------------------------------------

FUNCTION_WORDS = (
    "the", "a", "of", "to", "and", "in", "is", "was", "it", "that", "for",
    "on", "with", "as", "at", "by", "be", "this", "had", "not", "are", "but",
    "from", "or", "have", "an", "they", "which", "one", "we", "were", "all",
    "their", "when", "who", "will", "more", "would", "what", "about",
)

_ONSETS = (
    "b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "r", "s",
    "t", "v", "w", "z", "br", "cl", "cr", "dr", "fl", "gr", "pl", "pr",
    "sk", "sl", "sp", "st", "tr", "th", "ch", "sh",
)
_VOWELS = ("a", "e", "i", "o", "u", "ai", "ea", "ee", "oa", "oo", "ou")
_CODAS = (
    "", "b", "d", "g", "k", "l", "m", "n", "p", "r", "s", "t",
    "ck", "ll", "nd", "nt", "rd", "rk", "st", "sh",
)


@dataclass
class WordBank:
    simple: list[str]
    hard: list[str]
    ratings: dict[str, float]
    lemmas: dict[str, str]            # inflected form -> base
    inflection_of: dict[str, str]     # base -> inflected form (when one exists)
    rating_z: dict[str, float]


def _pseudo_word(rng: np.random.Generator, n_syllables: int) -> str:
    parts = []
    for i in range(n_syllables):
        onset = _ONSETS[rng.integers(len(_ONSETS))]
        vowel = _VOWELS[rng.integers(len(_VOWELS))]
        coda = _CODAS[rng.integers(len(_CODAS))] if (i == n_syllables - 1 or rng.random() < 0.3) else ""
        parts.append(onset + vowel + coda)
    return "".join(parts)


def _make_word_bank(rng: np.random.Generator, p: GenParams) -> WordBank:
    taken = set(FUNCTION_WORDS)

    def draw(n_words: int, syllable_range: tuple[int, int]) -> list[str]:
        words = []
        while len(words) < n_words:
            w = _pseudo_word(rng, int(rng.integers(syllable_range[0], syllable_range[1] + 1)))
            if w not in taken and 3 <= len(w) <= 14:
                taken.add(w)
                words.append(w)
        return words

    simple = draw(520, (1, 2))
    hard = draw(700, (3, 5))

    ratings: dict[str, float] = {}
    for w in FUNCTION_WORDS:
        ratings[w] = float(np.clip(rng.normal(3.5, 0.8), 2.0, 6.0))
    # AoA is only mildly tied to word class, so vocabulary difficulty can
    # vary across articles independently of surface structure.
    for w in simple:
        ratings[w] = float(np.clip(rng.normal(7.8, 2.6), 2.5, 16.0))
    for w in hard:
        ratings[w] = float(np.clip(rng.normal(8.2, 2.6), 2.5, 16.0))

    # Inflected variants keep the lemma's surface shape (an -s form, so
    # syllable and richness statistics stay untouched) but are rated as
    # acquired years later than their base form.
    lemmas: dict[str, str] = {}
    inflection_of: dict[str, str] = {}
    for w in simple + hard:
        if rng.random() < 0.85:
            inflected = w + "s"
            if inflected in taken:
                continue
            taken.add(inflected)
            delta = rng.uniform(*p.inflect_delta)
            ratings[inflected] = float(min(ratings[w] + delta, 24.0))
            lemmas[inflected] = w
            inflection_of[w] = inflected

    # A small slice of vocabulary is deliberately absent from the lexicon
    # so coverage < 1 occurs on real runs.
    content = simple + hard
    drop = rng.choice(len(content), size=18, replace=False)
    for j in drop:
        ratings.pop(content[j], None)
        inflected = inflection_of.pop(content[j], None)
        if inflected:
            ratings.pop(inflected, None)
            lemmas.pop(inflected, None)

    mu = float(np.mean([ratings[w] for w in content if w in ratings]))
    sd = float(np.std([ratings[w] for w in content if w in ratings]))
    rating_z = {w: (r - mu) / sd for w, r in ratings.items()}
    return WordBank(
        simple=simple, hard=hard, ratings=ratings, lemmas=lemmas,
        inflection_of=inflection_of, rating_z=rating_z,
    )


# ---------------------------------------------------------------------------
# Articles
# ---------------------------------------------------------------------------

@dataclass
class ArticleTraits:
    aoa_tilt: float
    inflect_rate: float
    pace_affinity: float
    reg_affinity: float
    dwell_affinity: float
    aoa_token_mean: dict[str, float] = field(default_factory=dict)


def _weighted_sample(
    rng: np.random.Generator, words: list[str], weights: np.ndarray, size: int
) -> list[str]:
    probs = weights / weights.sum()
    idx = rng.choice(len(words), size=size, replace=False, p=probs)
    return [words[i] for i in idx]


def _article_tokens(
    rng: np.random.Generator,
    pools: tuple[list[str], list[str]],
    form_map: dict[str, str],
    n_words: int,
    sentence_len: float,
    hard_frac: float,
) -> tuple[list[list[str]], list[str]]:
    """Sentences of tokens totalling exactly n_words.

    `form_map` fixes, per article, which surface form each vocabulary item
    uses (base or inflected), so inflection usage shifts token AoA without
    touching the type count.
    """
    simple_pool, hard_pool = pools
    zipf_simple = 1.0 / np.arange(3, len(simple_pool) + 3) ** 0.85
    zipf_hard = 1.0 / np.arange(3, len(hard_pool) + 3) ** 0.85
    zipf_fn = 1.0 / np.arange(1, len(FUNCTION_WORDS) + 1) ** 1.05
    sentences: list[list[str]] = []
    tokens: list[str] = []
    remaining = n_words
    while remaining > 0:
        n = int(np.clip(round(rng.normal(sentence_len, sentence_len * 0.22)), 4, 34))
        n = min(n, remaining) if remaining >= 4 else remaining
        if remaining - n in (1, 2, 3):
            n = remaining
        sentence = []
        for _ in range(n):
            if rng.random() < 0.42:
                w = FUNCTION_WORDS[rng.choice(len(FUNCTION_WORDS), p=zipf_fn / zipf_fn.sum())]
            else:
                if rng.random() < hard_frac:
                    w = hard_pool[rng.choice(len(hard_pool), p=zipf_hard / zipf_hard.sum())]
                else:
                    w = simple_pool[rng.choice(len(simple_pool), p=zipf_simple / zipf_simple.sum())]
                w = form_map.get(w, w)
            sentence.append(w)
        sentences.append(sentence)
        tokens.extend(sentence)
        remaining -= n
    return sentences, tokens


def _render_body(sentences: list[list[str]]) -> str:
    rendered = []
    for i, sentence in enumerate(sentences):
        text = " ".join(sentence)
        rendered.append(text[0].upper() + text[1:] + ".")
    paragraphs = [
        " ".join(rendered[i : i + 6]) for i in range(0, len(rendered), 6)
    ]
    return "\n\n".join(paragraphs)


def _make_articles(
    rng: np.random.Generator, bank: WordBank, lexicon: AoALexicon, p: GenParams
) -> tuple[list[Article], dict[str, ArticleTraits]]:
    articles: list[Article] = []
    traits: dict[str, ArticleTraits] = {}
    z_simple = np.asarray([bank.rating_z.get(w, 0.0) for w in bank.simple])
    z_hard = np.asarray([bank.rating_z.get(w, 0.0) for w in bank.hard])
    for i in range(p.n_articles):
        article_id = f"a{i + 1:02d}"
        tilt = rng.normal(0.0, 1.0)
        tr = ArticleTraits(
            aoa_tilt=tilt,
            inflect_rate=float(rng.uniform(*p.inflect_rate)),
            pace_affinity=float(np.exp(rng.normal(0.0, p.article_pace_sd))),
            reg_affinity=float(np.exp(rng.normal(0.0, p.article_reg_sd))),
            dwell_affinity=float(np.exp(rng.normal(0.0, p.article_dwell_sd))),
        )
        traits[article_id] = tr
        simple_topic = _weighted_sample(
            rng, bank.simple, np.exp(p.aoa_tilt_sd * tilt * z_simple), 180
        )
        hard_topic = _weighted_sample(
            rng, bank.hard, np.exp(p.aoa_tilt_sd * tilt * z_hard), 180
        )
        form_map = {
            w: bank.inflection_of[w]
            for w in simple_topic + hard_topic
            if w in bank.inflection_of and rng.random() < tr.inflect_rate
        }
        w_elem = int(np.clip(round(rng.normal(p.elem_words_mean, p.elem_words_sd)), 400, 830))
        if rng.random() < p.weak_pair_prob:
            ratio = float(rng.uniform(*p.weak_ratio))
        else:
            ratio = float(np.clip(rng.normal(p.ratio_mean, p.ratio_sd), 1.30, 1.95))
        w_adv = int(round(w_elem * ratio))
        questions = tuple(
            Question(
                text=f"Question {q + 1} about {simple_topic[q]}?",
                options=(
                    f"about {simple_topic[q + 1]}",
                    f"about {hard_topic[q]}",
                    f"about {simple_topic[q + 2]}",
                    f"about {hard_topic[q + 1]}",
                ),
                correct_index=int(rng.integers(4)),
            )
            for q in range(3)
        )
        for level, n_words, slen, hard_range in (
            (ELEMENTARY, w_elem, p.elem_sentence_len, p.elem_hard_frac),
            (ADVANCED, w_adv, p.adv_sentence_len, p.adv_hard_frac),
        ):
            hard_frac = float(rng.uniform(*hard_range))
            sentences, tokens = _article_tokens(
                rng, (simple_topic, hard_topic), form_map, n_words, slen, hard_frac,
            )
            body = _render_body(sentences)
            assert len(tokenize(body)) == n_words
            rated = [lexicon.lookup(t) for t in tokens]
            covered = [r for r in rated if r is not None]
            tr.aoa_token_mean[level] = float(np.mean(covered))
            articles.append(
                Article(
                    article_id=article_id,
                    level=level,
                    title=f"{simple_topic[3].capitalize()} and the {simple_topic[4]}",
                    body=body,
                    word_count=n_words,
                    questions=questions,
                )
            )
    return articles, traits


# ---------------------------------------------------------------------------
# Participants
# ---------------------------------------------------------------------------

_PROF_PROBS = {
    "English": ((3, 4, 5), (0.05, 0.25, 0.70)),
    "Tamil": ((1, 2, 3, 4, 5), (0.10, 0.25, 0.35, 0.25, 0.05)),
    "other": ((1, 2, 3, 4, 5), (0.04, 0.14, 0.30, 0.36, 0.16)),
}


@dataclass
class ParticipantTraits:
    engaged: bool
    pace: float            # px/ms typical burst speed
    skim: float            # standardized pace residual, penalizes comprehension
    reg_propensity: float
    flick: float
    crawl: float
    jerk: float            # per-step speed-change cap (px/ms)
    dwell_factor: float
    style: float
    ability_noise: float


def _make_participants(
    rng: np.random.Generator, p: GenParams
) -> tuple[dict[str, Participant], dict[str, ParticipantTraits]]:
    roster: list[tuple[str, bool]] = []           # (first_language, engaged)
    roster += [("English", True)] * 350
    roster += [("Tamil", True)] * 101
    other_cycle = [OTHER_L1S[i % len(OTHER_L1S)] for i in range(67)]
    roster += [(lang, True) for lang in other_cycle]
    roster += [("English", False)] * 54
    roster += [("Tamil", False)] * 16
    roster += [(OTHER_L1S[i % len(OTHER_L1S)], False) for i in range(12)]
    order = rng.permutation(len(roster))

    participants: dict[str, Participant] = {}
    traits: dict[str, ParticipantTraits] = {}
    for n, idx in enumerate(order):
        lang, engaged = roster[idx]
        pid = f"p{n + 1:04d}"
        kind = lang if lang in ("English", "Tamil") else "other"
        bands, probs = _PROF_PROBS[kind]
        band = int(rng.choice(bands, p=probs))
        age = str(rng.choice(AGE_BANDS, p=AGE_PROBS))
        style = AGE_STYLE[age]
        skim = float(rng.normal())
        pace_sd = {
            "English": p.pace_sd_english, "Tamil": p.pace_sd_tamil, "other": p.pace_sd_other,
        }[kind]
        pace = p.pace_base * math.exp(
            p.pace_prof_coef * (band - 4.0) + pace_sd * style * skim
        )
        participants[pid] = Participant(
            participant_id=pid,
            first_language=lang,
            self_proficiency=band,
            age_band=age,
            education=str(rng.choice(EDUCATION, p=(0.22, 0.45, 0.27, 0.06))),
            hours_reading_per_week=float(round(np.exp(rng.normal(1.4, 0.7)), 1)),
            locale="IN" if kind != "English" else ("US" if rng.random() < 0.8 else "IN"),
        )
        traits[pid] = ParticipantTraits(
            engaged=engaged,
            pace=pace,
            skim=skim,
            reg_propensity=float(np.exp(rng.normal(0.0, p.reg_participant_sd * style))),
            flick=float(p.flick_mean * np.exp(rng.normal(0.0, p.flick_sd * style))),
            crawl=float(p.crawl_mean * np.exp(rng.normal(0.0, p.crawl_sd))),
            jerk=float(p.smooth_cap * np.exp(rng.normal(0.0, 0.30 * style))),
            dwell_factor=float(np.exp(rng.normal(0.0, p.dwell_participant_sd * style))),
            style=style,
            ability_noise=float(rng.normal(0.0, 0.35)),
        )
    return participants, traits


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------

def _burst_speeds(
    rng: np.random.Generator,
    distance: float,
    speed: float,
    jitter_px: float,
    cap: float,
) -> np.ndarray:
    """Per-step speeds of one burst covering `distance` px at 100 ms/step.

    The profile is a trapezoid built directly under a per-step
    speed-change cap: enter slow, rise by at most `cap` per step toward
    the reader's pace, cruise, and settle slow again. Because the shape is
    constructed (never rescaled by more than a step's worth of rounding),
    acceleration extremes stay bounded by the reader's jerkiness cap and
    never shadow their pace.
    """
    d = distance / 100.0
    b0 = 0.20 * rng.uniform(0.85, 1.15)
    b1 = 0.18 * rng.uniform(0.85, 1.15)
    if d <= b0 + b1:
        return np.asarray([0.55 * d, 0.45 * d])
    peak_geom = math.sqrt(cap * d + 0.5 * (b0 * b0 + b1 * b1))
    peak = min(speed * rng.uniform(0.95, 1.10), peak_geom)
    peak = max(peak, max(b0, b1) * 1.05)
    n_rise = int(math.ceil((peak - b0) / cap))
    rise = np.minimum(b0 + cap * np.arange(1, n_rise + 1), peak)
    n_fall = int(math.ceil((peak - b1) / cap))
    fall = np.maximum(peak - cap * np.arange(1, n_fall + 1), b1)
    base = b0 + rise.sum() + fall.sum()
    n_hold = max(0, int(round((d - base) / peak)))
    profile = np.concatenate(([b0], rise, np.full(n_hold, peak), fall))
    profile = profile * np.exp(rng.normal(0.0, min(0.04, jitter_px), size=len(profile)))
    return profile * (d / profile.sum())


def _flick_speeds(rng: np.random.Generator, peak: float) -> np.ndarray:
    """A fast flick: ramp to the peak and settle; owns its distance."""
    shape = np.asarray([0.45, 0.80, 1.0, 0.95, 0.65, 0.35])
    return np.maximum(shape * peak + rng.normal(0.0, 0.02 * peak, size=6), 0.05)


def _synth_trace(
    rng: np.random.Generator,
    scrollable: float,
    depth_fraction: float,
    pace: float,
    n_regressions: int,
    flick_peak: float | None,
    crawl: float,
    jitter_px: float,
    smooth_cap: float,
    drop_prob: float,
    idle_budget_ms: float,
) -> tuple[list[ScrollEvent], int]:
    """One reading trace on the 100 ms sampling grid.

    Returns the event list and the total moving time in ms. Each burst is
    preceded by an anchor re-emission of the resting offset, so the pair
    spanning a pause never moves (and is skipped by the measures). The
    session opens with a slow orienting nudge and closes on a slow crawl;
    an occasional grid sample is dropped, merging two steps into one
    200 ms interval as real throttled loggers do.
    """
    depth = scrollable * depth_fraction
    crawl_steps = int(rng.integers(6, 11))
    crawl_dist = min(crawl * 100.0 * crawl_steps, 0.08 * depth)
    orient_speed = crawl * rng.uniform(1.2, 3.0)
    orient_dist = orient_speed * 100.0 * 2
    flick: np.ndarray | None = None
    budget = depth - crawl_dist - orient_dist
    if flick_peak is not None:
        candidate = _flick_speeds(rng, flick_peak)
        if budget - candidate.sum() * 100.0 > 350.0:
            flick = candidate
            budget -= flick.sum() * 100.0

    legs: list[tuple[str, float]] = []
    remaining = budget
    leg_scale = float(np.clip((pace / 0.5) ** 0.6, 0.7, 2.2))
    while remaining > 1.0:
        d = min(
            remaining,
            float(np.clip(rng.normal(300.0, 90.0), 110.0, 620.0)) * leg_scale,
        )
        if remaining - d < 110.0:
            d = remaining
        legs.append(("fwd", d))
        remaining -= d

    # Regressions: upward runs at forward-leg boundaries, then recovery.
    segments: list[tuple[str, float]] = [("orient", orient_dist)]
    reg_slots: list[int] = []
    if n_regressions > 0 and len(legs) > 1:
        reg_slots = rng.choice(
            np.arange(1, len(legs)), size=n_regressions, replace=True
        ).tolist()
    flick_at = int(rng.integers(0, len(legs))) if flick is not None and legs else -1
    for i, (kind, d) in enumerate(legs):
        for _ in range(reg_slots.count(i)):
            room = max(80.0, sum(x[1] for x in legs[:i]) * 0.8)
            up = float(rng.uniform(70.0, min(380.0, room)))
            segments.append(("up", up))
            segments.append(("fwd", up))
        if i == flick_at:
            segments.append(("flick", float(flick.sum() * 100.0)))
        segments.append((kind, d))
    segments.append(("crawl", crawl_dist))

    n_pauses = len(segments) + 1
    weights = np.exp(rng.normal(0.0, 0.9, size=n_pauses))
    pause_ms = np.maximum(200.0, idle_budget_ms * weights / weights.sum())

    events: list[ScrollEvent] = [ScrollEvent(0, 0.0)]
    t = 0.0
    y = 0.0
    moving_ms = 0.0
    for i, (kind, dist) in enumerate(segments):
        t += float(pause_ms[i])
        t = math.ceil(t / 100.0) * 100.0
        events.append(ScrollEvent(int(t), round(y, 2)))  # anchor: no movement yet
        if kind == "flick":
            speeds = flick
        elif kind == "crawl":
            speeds = crawl * rng.uniform(0.8, 1.1) * np.exp(
                rng.normal(0.0, 0.12, size=crawl_steps)
            )
        elif kind == "orient":
            speeds = np.asarray(
                [orient_speed * rng.uniform(0.9, 1.1), orient_speed * rng.uniform(0.7, 1.0)]
            )
        else:
            speeds = _burst_speeds(
                rng, dist, pace * float(np.exp(rng.normal(0.0, 0.08))),
                jitter_px, smooth_cap,
            )
        sign = -1.0 if kind == "up" else 1.0
        pending = 0.0
        last = len(speeds) - 1
        for j, v in enumerate(speeds):
            t += 100.0
            pending += sign * v * 100.0
            moving_ms += 100.0
            if j < last and kind != "flick" and rng.random() < drop_prob:
                continue  # sample dropped; merges into the next interval
            y = float(np.clip(y + pending, 0.0, scrollable))
            pending = 0.0
            events.append(ScrollEvent(int(t), round(y, 2)))
    return events, int(moving_ms)


def _answer_trace(rng: np.random.Generator, scrollable: float, pace: float) -> list[ScrollEvent]:
    if rng.random() < 0.25:
        return []
    events: list[ScrollEvent] = [ScrollEvent(0, 0.0)]
    t, y = 0.0, 0.0
    for _ in range(int(rng.integers(1, 4))):
        t += float(rng.integers(6, 40)) * 100.0
        events.append(ScrollEvent(int(t), round(y, 2)))
        speeds = _burst_speeds(rng, float(rng.uniform(120.0, 500.0)), pace, 0.04, 0.12)
        for v in speeds:
            t += 100.0
            y = float(np.clip(y + v * 100.0, 0.0, scrollable))
            events.append(ScrollEvent(int(t), round(y, 2)))
    return events


# ---------------------------------------------------------------------------
# Cohort assembly
# ---------------------------------------------------------------------------

def _balanced_assignment(
    rng: np.random.Generator, pids: list[str], n_articles: int
) -> dict[str, tuple[str, str]]:
    """(elementary article, advanced article) per participant; the two are
    always distinct and per-level exposure is balanced across articles."""
    def deck() -> list[int]:
        base = list(range(n_articles)) * (len(pids) // n_articles + 1)
        return [int(i) for i in rng.permutation(base[: len(pids)])]

    elem, adv = deck(), deck()
    for i in range(len(pids)):
        if elem[i] == adv[i]:
            j = next(
                k for k in range(len(pids))
                if adv[k] != elem[i] and adv[i] != elem[k]
            )
            adv[i], adv[j] = adv[j], adv[i]
    return {
        pid: (f"a{elem[i] + 1:02d}", f"a{adv[i] + 1:02d}") for i, pid in enumerate(pids)
    }


def _score_session(
    rng: np.random.Generator,
    p: GenParams,
    participant: Participant,
    tr: ParticipantTraits,
    level: str,
    aoa_z: float,
    questions: tuple[Question, ...],
) -> tuple[tuple[int, int, int], int]:
    skim_coef = p.score_skim_coef[level]
    if participant.first_language == "Tamil":
        skim_coef *= p.score_skim_tamil_boost
    logit = (
        p.score_intercept
        + p.score_prof_coef * (participant.self_proficiency - 4.0)
        + tr.ability_noise
        - skim_coef * tr.skim
        + rng.normal(0.0, p.score_noise_sd)
    )
    if participant.first_language == "Tamil":
        logit -= p.score_aoa_coef_tamil * aoa_z
    prob = 1.0 / (1.0 + math.exp(-logit))
    answers = []
    score = 0
    for q in questions:
        if rng.random() < prob:
            answers.append(q.correct_index)
            score += 1
        else:
            wrong = [k for k in range(4) if k != q.correct_index]
            answers.append(int(wrong[rng.integers(3)]))
    return (answers[0], answers[1], answers[2]), score


def generate_cohort(seed: int = DEFAULT_SEED, params: GenParams | None = None) -> SyntheticCohort:
    """Build the full synthetic dataset for one seed."""
    p = params or GenParams()
    bank = _make_word_bank(child_rng(seed, "words"), p)
    lexicon = AoALexicon(ratings=dict(bank.ratings), lemmas=dict(bank.lemmas))
    articles, art_traits = _make_articles(child_rng(seed, "articles"), bank, lexicon, p)
    participants, ptraits = _make_participants(child_rng(seed, "participants"), p)

    word_count = {a.key: a.word_count for a in articles}
    questions = {a.article_id: a.questions for a in articles}
    aoa_values = np.asarray(
        [art_traits[a.article_id].aoa_token_mean[a.level] for a in articles]
    )
    aoa_mu, aoa_sd = float(aoa_values.mean()), float(aoa_values.std())

    engaged_pids = [pid for pid in participants if ptraits[pid].engaged]
    unengaged_pids = [pid for pid in participants if not ptraits[pid].engaged]
    assignment = _balanced_assignment(
        child_rng(seed, "assignment"), engaged_pids, p.n_articles
    )
    rng_rest = child_rng(seed, "assignment", "unengaged")
    for pid in unengaged_pids:
        a, b = rng_rest.choice(p.n_articles, size=2, replace=False)
        assignment[pid] = (f"a{a + 1:02d}", f"a{b + 1:02d}")

    sessions: list[Session] = []
    for pid in participants:
        tr = ptraits[pid]
        participant = participants[pid]
        elem_article, adv_article = assignment[pid]
        for level, article_id in ((ELEMENTARY, elem_article), (ADVANCED, adv_article)):
            rng = child_rng(seed, "session", pid, level)
            at = art_traits[article_id]
            w = word_count[(article_id, level)]
            content_h = p.content_margin + p.line_height * math.ceil(w / p.words_per_line)
            scrollable = content_h - VIEWPORT_H
            pace = (
                tr.pace
                * p.level_factor[level]
                * at.pace_affinity
                * float(np.exp(rng.normal(0.0, p.pace_session_sd[level] * tr.style)))
            )
            dwell = (
                p.dwell_per_word[level]
                * tr.dwell_factor
                * at.dwell_affinity
                * float(np.exp(rng.normal(0.0, p.dwell_sd[level])))
            )
            if tr.engaged:
                disp = p.reg_disp_level[level]
                lam = (
                    p.reg_base
                    * (w / 750.0) ** p.reg_length_exp
                    * p.reg_level_factor[level]
                    * at.reg_affinity
                    * tr.reg_propensity ** disp
                    * float(np.exp(rng.normal(0.0, p.reg_session_sd * disp * tr.style)))
                )
                n_reg = min(int(rng.poisson(lam)), p.reg_cap)
                depth_fraction = float(rng.uniform(0.90, 1.0))
                reading, moving_ms = _synth_trace(
                    rng, scrollable, depth_fraction, pace, n_reg,
                    tr.flick * p.flick_level_factor[level], tr.crawl,
                    p.jitter_px * max(0.5, tr.style),
                    tr.jerk * p.jerk_level_factor[level], p.drop_prob,
                    idle_budget_ms=max(2000.0, w * dwell * 1000.0 - 6000.0),
                )
                read_time_ms = reading[-1].t_ms + int(rng.integers(2000, 15000))
            elif rng.random() < 0.5:
                reading = []
                read_time_ms = int(rng.uniform(91_000, 160_000))
            else:
                reading, _ = _synth_trace(
                    rng, scrollable, float(rng.uniform(0.06, 0.44)), pace, 0,
                    None, tr.crawl, p.jitter_px, tr.jerk, p.drop_prob,
                    idle_budget_ms=float(rng.uniform(60_000, 110_000)),
                )
                read_time_ms = max(91_000, reading[-1].t_ms + 500)
            aoa_z = (at.aoa_token_mean[level] - aoa_mu) / aoa_sd
            answers, score = _score_session(
                rng, p, participant, tr, level, aoa_z, questions[article_id]
            )
            sessions.append(
                Session(
                    participant_id=pid,
                    article_id=article_id,
                    level=level,
                    viewport=Viewport(VIEWPORT_W, VIEWPORT_H, content_h),
                    reading_events=tuple(reading),
                    answering_events=tuple(_answer_trace(rng, scrollable, pace)),
                    read_time_ms=read_time_ms,
                    answers=answers,
                    score=score,
                )
            )
    return SyntheticCohort(
        seed=seed,
        articles=articles,
        participants=participants,
        sessions=sessions,
        lexicon=lexicon,
        n_engaged_participants=len(engaged_pids),
    )
