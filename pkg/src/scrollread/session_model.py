"""Canonical data model and ingestion.

Domain objects are immutable dataclasses: one `ScrollEvent` per logged
scroll sample, one `Session` per participant x article reading, `Article`
and `Participant` records, and an `AoALexicon` of age-of-acquisition norms.

File formats:
  * sessions: JSON lines, one session per line. Events are stored as
    ``[t_ms, y_px]`` pairs; every other field carries the same name as the
    corresponding dataclass attribute.
  * corpus: one directory per article id containing ``elementary.txt``,
    ``advanced.txt`` (first line title, blank line, body) and
    ``questions.tsv`` (question, 4 options, correct index, tab-separated).
  * AoA lexicon: CSV with header ``word,aoa[,lemma]``.
  * participants: CSV with one column per Participant field.

External exports with unknown column layouts are ingested through a small
mapping file (JSON: canonical field -> source column), see
`parse_sessions_with_adapter`.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    CorpusError,
    EventOrderError,
    LexiconError,
    SessionFormatError,
)
from .text_features import tokenize

logger = logging.getLogger(__name__)

ELEMENTARY = "elementary"
ADVANCED = "advanced"
LEVELS = (ELEMENTARY, ADVANCED)


@dataclass(frozen=True)
class ScrollEvent:
    """One logged scroll sample: elapsed ms and vertical offset in px."""

    t_ms: int
    y_px: float


@dataclass(frozen=True)
class Viewport:
    width_px: float
    height_px: float
    content_height_px: float

    @property
    def scrollable_height(self) -> float:
        """Maximum reachable scroll offset."""
        return self.content_height_px - self.height_px


@dataclass(frozen=True)
class Question:
    text: str
    options: tuple[str, str, str, str]
    correct_index: int


@dataclass(frozen=True)
class Article:
    article_id: str
    level: str
    title: str
    body: str
    word_count: int
    questions: tuple[Question, ...]

    @property
    def key(self) -> tuple[str, str]:
        return (self.article_id, self.level)


@dataclass(frozen=True)
class Participant:
    participant_id: str
    first_language: str
    self_proficiency: int
    age_band: str
    education: str
    hours_reading_per_week: float
    locale: str


@dataclass(frozen=True)
class Session:
    """One participant's reading + answering record for one article level."""

    participant_id: str
    article_id: str
    level: str
    viewport: Viewport
    reading_events: tuple[ScrollEvent, ...]
    answering_events: tuple[ScrollEvent, ...]
    read_time_ms: int
    answers: tuple[int, int, int]
    score: int

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.participant_id, self.article_id, self.level)


@dataclass
class AoALexicon:
    """Age-of-acquisition norms: lowercase word form -> rating in years."""

    ratings: dict[str, float]
    lemmas: dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.ratings)

    def lookup(self, word: str) -> float | None:
        """Rating for a word form, or None when absent (never 0)."""
        return self.ratings.get(word.lower())

    def lemma_of(self, word: str) -> str:
        """Lemma for a word form; identity fallback when unmapped."""
        return self.lemmas.get(word.lower(), word.lower())


# ---------------------------------------------------------------------------
# Session files
# ---------------------------------------------------------------------------

_SESSION_FIELDS = (
    "participant_id",
    "article_id",
    "level",
    "viewport",
    "reading_events",
    "answering_events",
    "read_time_ms",
    "answers",
    "score",
)


def _parse_events(
    raw: object, record: int, name: str, scrollable: float
) -> tuple[tuple[ScrollEvent, ...], int]:
    """Decode an event list, enforcing order and clamping overscroll."""
    if not isinstance(raw, list):
        raise SessionFormatError(f"record {record}: field '{name}' must be a list")
    events: list[ScrollEvent] = []
    clamped = 0
    prev_t = None
    for j, pair in enumerate(raw):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not isinstance(pair[0], int)
            or isinstance(pair[0], bool)
            or not isinstance(pair[1], (int, float))
        ):
            raise SessionFormatError(
                f"record {record}: field '{name}' entry {j} is not a [t_ms, y_px] pair"
            )
        t, y = int(pair[0]), float(pair[1])
        if t < 0:
            raise SessionFormatError(
                f"record {record}: field '{name}' entry {j} has negative t_ms"
            )
        if prev_t is not None and t <= prev_t:
            raise EventOrderError(
                f"record {record}: field '{name}' not strictly increasing in "
                f"t_ms at entry {j} ({t} after {prev_t})"
            )
        prev_t = t
        if y < 0.0:
            clamped += 1
            y = 0.0
        elif y > scrollable:
            clamped += 1
            y = scrollable
        events.append(ScrollEvent(t, y))
    return tuple(events), clamped


def _session_from_dict(obj: dict, record: int) -> Session:
    for name in _SESSION_FIELDS:
        if name not in obj:
            raise SessionFormatError(f"record {record}: missing field '{name}'")
    vp = obj["viewport"]
    if not isinstance(vp, dict):
        raise SessionFormatError(f"record {record}: field 'viewport' must be an object")
    try:
        viewport = Viewport(
            float(vp["width_px"]),
            float(vp["height_px"]),
            float(vp["content_height_px"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SessionFormatError(f"record {record}: field 'viewport' malformed ({exc})")
    level = obj["level"]
    if level not in LEVELS:
        raise SessionFormatError(f"record {record}: field 'level' must be one of {LEVELS}")
    scrollable = max(viewport.scrollable_height, 0.0)
    reading, c1 = _parse_events(obj["reading_events"], record, "reading_events", scrollable)
    answering, c2 = _parse_events(obj["answering_events"], record, "answering_events", scrollable)
    if c1 or c2:
        logger.warning(
            "record %d (%s/%s/%s): clamped %d out-of-range y_px values",
            record, obj["participant_id"], obj["article_id"], level, c1 + c2,
        )
    answers = obj["answers"]
    if not isinstance(answers, list) or len(answers) != 3 or not all(
        isinstance(a, int) and not isinstance(a, bool) and 0 <= a <= 3 for a in answers
    ):
        raise SessionFormatError(
            f"record {record}: field 'answers' must be 3 option indices in 0..3"
        )
    read_time = obj["read_time_ms"]
    if not isinstance(read_time, int) or isinstance(read_time, bool) or read_time < 0:
        raise SessionFormatError(
            f"record {record}: field 'read_time_ms' must be a non-negative integer"
        )
    if reading and read_time < reading[-1].t_ms:
        raise SessionFormatError(
            f"record {record}: field 'read_time_ms' ({read_time}) is below the "
            f"last reading event time ({reading[-1].t_ms})"
        )
    score = obj["score"]
    if not isinstance(score, int) or isinstance(score, bool) or not 0 <= score <= 3:
        raise SessionFormatError(f"record {record}: field 'score' must be in 0..3")
    return Session(
        participant_id=str(obj["participant_id"]),
        article_id=str(obj["article_id"]),
        level=level,
        viewport=viewport,
        reading_events=reading,
        answering_events=answering,
        read_time_ms=read_time,
        answers=(int(answers[0]), int(answers[1]), int(answers[2])),
        score=score,
    )


def parse_session_file(
    path: str | Path, articles: dict[tuple[str, str], Article] | None = None
) -> list[Session]:
    """Parse a canonical JSONL session file.

    When `articles` is given, every stored score is recomputed from the
    answers against the article's answer key and a mismatch is an error.
    """
    path = Path(path)
    sessions: list[Session] = []
    with path.open("r", encoding="utf-8") as fh:
        for i, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SessionFormatError(f"record {i}: invalid JSON ({exc.msg})")
            if not isinstance(obj, dict):
                raise SessionFormatError(f"record {i}: not a JSON object")
            session = _session_from_dict(obj, i)
            if articles is not None:
                validate_score(session, articles, record=i)
            sessions.append(session)
    return sessions


def validate_score(
    session: Session, articles: dict[tuple[str, str], Article], record: int | None = None
) -> None:
    """Recompute score from answers; mismatch is a validation error."""
    where = f"record {record}" if record is not None else f"session {session.key}"
    art = articles.get((session.article_id, session.level))
    if art is None:
        raise SessionFormatError(
            f"{where}: article ({session.article_id}, {session.level}) not in corpus"
        )
    expected = sum(
        1 for a, q in zip(session.answers, art.questions) if a == q.correct_index
    )
    if expected != session.score:
        raise SessionFormatError(
            f"{where}: field 'score' is {session.score} but answers give {expected}"
        )


def session_to_dict(session: Session) -> dict:
    """Plain-dict form of a session, inverse of the JSONL parser."""
    return {
        "participant_id": session.participant_id,
        "article_id": session.article_id,
        "level": session.level,
        "viewport": {
            "width_px": session.viewport.width_px,
            "height_px": session.viewport.height_px,
            "content_height_px": session.viewport.content_height_px,
        },
        "reading_events": [[e.t_ms, e.y_px] for e in session.reading_events],
        "answering_events": [[e.t_ms, e.y_px] for e in session.answering_events],
        "read_time_ms": session.read_time_ms,
        "answers": list(session.answers),
        "score": session.score,
    }


def write_session_file(sessions: list[Session], path: str | Path) -> None:
    """Serialize sessions to canonical JSONL (round-trips with the parser)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for s in sessions:
            fh.write(json.dumps(session_to_dict(s), separators=(",", ":")))
            fh.write("\n")


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------

def _read_article_text(path: Path) -> tuple[str, str]:
    raw = path.read_text(encoding="utf-8")
    lines = raw.split("\n", 2)
    if len(lines) >= 3 and lines[1].strip() == "":
        return lines[0].strip(), lines[2].strip()
    return lines[0].strip(), raw.strip()


def _read_questions(path: Path, article_id: str) -> tuple[Question, ...]:
    if not path.exists():
        raise CorpusError(f"article '{article_id}': missing questions.tsv")
    questions = []
    with path.open("r", encoding="utf-8") as fh:
        for row in csv.reader(fh, delimiter="\t"):
            if not row:
                continue
            if len(row) != 6:
                raise CorpusError(
                    f"article '{article_id}': questions.tsv row needs 6 fields "
                    f"(question, 4 options, correct index), got {len(row)}"
                )
            try:
                correct = int(row[5])
            except ValueError:
                raise CorpusError(
                    f"article '{article_id}': non-integer correct index {row[5]!r}"
                )
            if not 0 <= correct <= 3:
                raise CorpusError(
                    f"article '{article_id}': correct index {correct} out of range 0..3"
                )
            questions.append(Question(row[0], (row[1], row[2], row[3], row[4]), correct))
    if len(questions) != 3:
        raise CorpusError(
            f"article '{article_id}': expected exactly 3 questions, got {len(questions)}"
        )
    return tuple(questions)


def load_corpus(path: str | Path) -> list[Article]:
    """Load the two-level article corpus from its directory layout."""
    root = Path(path)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")
    article_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not article_dirs:
        raise CorpusError(f"corpus directory is empty: {root}")
    articles: list[Article] = []
    for adir in article_dirs:
        article_id = adir.name
        for level in LEVELS:
            if not (adir / f"{level}.txt").exists():
                raise CorpusError(f"article '{article_id}': missing {level}.txt")
        questions = _read_questions(adir / "questions.tsv", article_id)
        for level in LEVELS:
            title, body = _read_article_text(adir / f"{level}.txt")
            tokens = tokenize(body)
            if not tokens:
                raise CorpusError(f"article '{article_id}': {level}.txt has no words")
            articles.append(
                Article(
                    article_id=article_id,
                    level=level,
                    title=title,
                    body=body,
                    word_count=len(tokens),
                    questions=questions,
                )
            )
    return articles


def write_corpus(articles: list[Article], path: str | Path) -> None:
    """Write articles in the canonical corpus layout."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    by_id: dict[str, list[Article]] = {}
    for art in articles:
        by_id.setdefault(art.article_id, []).append(art)
    for article_id, pair in by_id.items():
        adir = root / article_id
        adir.mkdir(exist_ok=True)
        for art in pair:
            (adir / f"{art.level}.txt").write_text(
                f"{art.title}\n\n{art.body}\n", encoding="utf-8"
            )
        with (adir / "questions.tsv").open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
            for q in pair[0].questions:
                writer.writerow([q.text, *q.options, q.correct_index])


def corpus_index(articles: list[Article]) -> dict[tuple[str, str], Article]:
    return {a.key: a for a in articles}


# ---------------------------------------------------------------------------
# Lexicon and participants
# ---------------------------------------------------------------------------

def load_aoa_lexicon(path: str | Path) -> AoALexicon:
    """Load a ``word,aoa[,lemma]`` CSV into a case-insensitive lexicon."""
    path = Path(path)
    ratings: dict[str, float] = {}
    lemmas: dict[str, str] = {}
    with path.open("r", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["word", "aoa"]:
            raise LexiconError(f"{path.name}: expected header 'word,aoa[,lemma]'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            word = row[0].strip().lower()
            try:
                rating = float(row[1])
            except (IndexError, ValueError):
                raise LexiconError(f"{path.name} line {lineno}: non-numeric aoa rating")
            if not rating > 0 or rating != rating or rating == float("inf"):
                raise LexiconError(
                    f"{path.name} line {lineno}: rating must be positive and finite"
                )
            ratings[word] = rating
            if len(row) > 2 and row[2].strip():
                lemmas[word] = row[2].strip().lower()
    return AoALexicon(ratings=ratings, lemmas=lemmas)


def write_aoa_lexicon(lexicon: AoALexicon, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["word", "aoa", "lemma"])
        for word in sorted(lexicon.ratings):
            writer.writerow([word, repr(lexicon.ratings[word]), lexicon.lemmas.get(word, "")])


_PARTICIPANT_COLS = (
    "participant_id",
    "first_language",
    "self_proficiency",
    "age_band",
    "education",
    "hours_reading_per_week",
    "locale",
)


def load_participants(path: str | Path) -> dict[str, Participant]:
    path = Path(path)
    out: dict[str, Participant] = {}
    with path.open("r", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for lineno, row in enumerate(reader, start=2):
            try:
                p = Participant(
                    participant_id=row["participant_id"],
                    first_language=row["first_language"],
                    self_proficiency=int(row["self_proficiency"]),
                    age_band=row["age_band"],
                    education=row.get("education", ""),
                    hours_reading_per_week=float(row.get("hours_reading_per_week", 0) or 0),
                    locale=row.get("locale", ""),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise SessionFormatError(f"{path.name} line {lineno}: bad participant row ({exc})")
            if not p.first_language:
                raise SessionFormatError(f"{path.name} line {lineno}: empty first_language")
            out[p.participant_id] = p
    return out


def write_participants(participants: dict[str, Participant], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_PARTICIPANT_COLS)
        for pid in sorted(participants):
            p = participants[pid]
            writer.writerow([
                p.participant_id, p.first_language, p.self_proficiency, p.age_band,
                p.education, repr(p.hours_reading_per_week), p.locale,
            ])


# ---------------------------------------------------------------------------
# External-export adapter
# ---------------------------------------------------------------------------

_ADAPTER_REQUIRED = (
    "participant_id", "article_id", "level", "viewport_width_px",
    "viewport_height_px", "content_height_px", "reading_events",
    "answering_events", "read_time_ms", "answers", "score",
)


def load_adapter_mapping(path: str | Path) -> dict:
    """Load a column-mapping file (canonical field -> source column name)."""
    path = Path(path)
    try:
        mapping = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SessionFormatError(f"{path.name}: invalid JSON ({exc.msg})")
    missing = [k for k in _ADAPTER_REQUIRED if k not in mapping]
    if missing:
        raise SessionFormatError(f"{path.name}: mapping missing keys {missing}")
    return mapping


def parse_sessions_with_adapter(
    csv_path: str | Path, mapping: dict
) -> tuple[list[Session], dict[str, Participant]]:
    """Ingest an external CSV export through a column mapping.

    Event and answer cells must contain JSON arrays ([[t, y], ...] and
    [a0, a1, a2]). Level strings can be translated through an optional
    ``level_map`` entry in the mapping. Participant attributes are read
    from the same row when their fields are mapped.
    """
    csv_path = Path(csv_path)
    level_map = mapping.get("level_map", {})
    sessions: list[Session] = []
    participants: dict[str, Participant] = {}
    with csv_path.open("r", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for i, row in enumerate(reader):
            def cell(key: str, *, required: bool = True) -> str:
                col = mapping.get(key)
                if col is None:
                    if required:
                        raise SessionFormatError(f"record {i}: no mapping for '{key}'")
                    return ""
                if col not in row:
                    raise SessionFormatError(
                        f"record {i}: source column '{col}' (for '{key}') not in file"
                    )
                return row[col]

            level = cell("level").strip()
            level = level_map.get(level, level).lower()
            try:
                obj = {
                    "participant_id": cell("participant_id"),
                    "article_id": cell("article_id"),
                    "level": level,
                    "viewport": {
                        "width_px": float(cell("viewport_width_px")),
                        "height_px": float(cell("viewport_height_px")),
                        "content_height_px": float(cell("content_height_px")),
                    },
                    "reading_events": json.loads(cell("reading_events") or "[]"),
                    "answering_events": json.loads(cell("answering_events") or "[]"),
                    "read_time_ms": int(float(cell("read_time_ms"))),
                    "answers": json.loads(cell("answers")),
                    "score": int(cell("score")),
                }
            except (ValueError, json.JSONDecodeError) as exc:
                raise SessionFormatError(f"record {i}: cannot decode mapped cell ({exc})")
            sessions.append(_session_from_dict(obj, i))
            if mapping.get("first_language"):
                pid = obj["participant_id"]
                if pid not in participants:
                    participants[pid] = Participant(
                        participant_id=pid,
                        first_language=cell("first_language"),
                        self_proficiency=int(cell("self_proficiency") or 0),
                        age_band=cell("age_band", required=False),
                        education=cell("education", required=False),
                        hours_reading_per_week=float(
                            cell("hours_reading_per_week", required=False) or 0
                        ),
                        locale=cell("locale", required=False),
                    )
    return sessions, participants
