"""Text-side features: length, lexical richness, shallow readability
formulas, and age-of-acquisition means.

The richness family is a pure function of the type count T and token count
N: TTR = T/N, Root TTR = T/sqrt(N), Corrected TTR = T/sqrt(2N),
Bilogarithmic TTR = log T / log N and the Uber index = (log T)^2 / log(N/T)
(natural logarithms throughout; the bilogarithmic ratio is base-free).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import NoCoverageError, TextTooShortError

if TYPE_CHECKING:  # pragma: no cover - import cycle guard
    from .session_model import AoALexicon

_TOKEN_RE = re.compile(r"[a-z]+(?:['’-][a-z]+)*")

# Common abbreviations that do not terminate a sentence.
_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "prof", "st", "jr", "sr", "vs", "etc",
    "e.g", "i.e", "no", "fig", "al", "inc", "ltd", "co", "u.s", "u.k",
}

_SENTENCE_RE = re.compile(r"[.!?]+(?=\s+[\"'“‘(]?[A-Z0-9])|[.!?]+$")


def tokenize(text: str) -> list[str]:
    """Lowercased alphabetic word tokens; hyphenated forms kept whole."""
    return _TOKEN_RE.findall(text.lower())


def split_sentences(text: str) -> list[str]:
    """Split on terminal punctuation followed by a capitalized start.

    Good enough for clean newspaper prose; an abbreviation stop-list guards
    the common false splits. A text without terminal punctuation is one
    sentence.
    """
    text = text.strip()
    if not text:
        return []
    pieces: list[str] = []
    start = 0
    for m in _SENTENCE_RE.finditer(text):
        candidate = text[start : m.end()]
        last_word = re.findall(r"[\w.]+(?=[.!?]+$)", candidate.strip())
        if last_word and last_word[-1].lower().rstrip(".") in _ABBREVIATIONS:
            continue
        piece = candidate.strip()
        if piece:
            pieces.append(piece)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces if pieces else [text]


def count_syllables(word: str) -> int:
    """Heuristic syllable count: vowel groups with a silent-e adjustment.

    Always at least 1 for a non-empty word.
    """
    if not word:
        raise TextTooShortError("cannot count syllables of an empty word")
    w = re.sub(r"[^a-z]", "", word.lower())
    if not w:
        raise TextTooShortError(f"word {word!r} has no alphabetic characters")
    if len(w) <= 3:
        return 1
    # Silent endings: -e, -es, -ed (but keep consonant+le as in 'table').
    w = re.sub(r"(?:[^laeiouy]es|[^laeiouy]ed|[^laeiouy]e)$", lambda m: m.group(0)[0], w)
    w = re.sub(r"^y", "", w)
    groups = re.findall(r"[aeiouy]+", w)
    return max(1, len(groups))


def lexical_richness(tokens: list[str]) -> tuple[float, float, float, float, float | None]:
    """(ttr, root_ttr, corrected_ttr, bilog_ttr, uber) from a token list.

    The Uber index is undefined when every token is distinct (T == N);
    it is returned as None in that case, the other four still computed.
    """
    n = len(tokens)
    t = len(set(tokens))
    if n < 2 or t < 2:
        raise TextTooShortError(
            f"lexical richness needs at least 2 tokens and 2 types (N={n}, T={t})"
        )
    ttr = t / n
    root_ttr = t / math.sqrt(n)
    corrected_ttr = t / math.sqrt(2 * n)
    bilog_ttr = math.log(t) / math.log(n)
    uber = None if t == n else math.log(t) ** 2 / math.log(n / t)
    return (ttr, root_ttr, corrected_ttr, bilog_ttr, uber)


def _counts(text: str) -> tuple[list[str], list[str], int, int, int]:
    sentences = split_sentences(text)
    tokens = tokenize(text)
    if not sentences or not tokens:
        raise TextTooShortError("text has no sentences or no words")
    n_chars = sum(len(chunk) for chunk in text.split())
    n_letters = sum(1 for c in text if c.isalnum())
    syllables = sum(count_syllables(tok) for tok in tokens)
    return tokens, sentences, n_chars, n_letters, syllables


def traditional_features(text: str) -> tuple[float, float, float, float, float, float]:
    """Shallow readability measures over this module's own counts.

    Returns (avg_chars_per_word, avg_syllables_per_word, avg_sentence_len,
    flesch_kincaid, coleman_liau, smog). Characters are non-whitespace
    characters; Coleman-Liau uses letters and digits as its formula
    prescribes. SMOG uses the 30-sentence normalized form, which doubles
    as its small-sample variant below 30 sentences.
    """
    tokens, sentences, n_chars, n_letters, syllables = _counts(text)
    n_words = len(tokens)
    n_sents = len(sentences)
    words_per_sentence = n_words / n_sents
    syllables_per_word = syllables / n_words
    avg_chars = n_chars / n_words
    flesch_kincaid = 0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59
    letters_per_100 = 100.0 * n_letters / n_words
    sents_per_100 = 100.0 * n_sents / n_words
    coleman_liau = 0.0588 * letters_per_100 - 0.296 * sents_per_100 - 15.8
    polysyllables = sum(1 for tok in tokens if count_syllables(tok) >= 3)
    smog = 1.0430 * math.sqrt(polysyllables * 30.0 / n_sents) + 3.1291
    return (avg_chars, syllables_per_word, words_per_sentence, flesch_kincaid, coleman_liau, smog)


def mean_aoa(
    tokens: list[str], lexicon: "AoALexicon", use_lemmas: bool = False
) -> tuple[float, float]:
    """Token-weighted mean AoA over lexicon-covered tokens plus coverage.

    With `use_lemmas`, each token is mapped to its lemma first and the
    lemma's rating is used. Out-of-vocabulary tokens are excluded from the
    mean, never imputed; coverage reports the matched fraction.
    """
    if not tokens:
        raise TextTooShortError("cannot compute mean AoA of an empty token list")
    total = 0.0
    matched = 0
    for tok in tokens:
        form = lexicon.lemma_of(tok) if use_lemmas else tok
        rating = lexicon.lookup(form)
        if rating is not None:
            total += rating
            matched += 1
    if matched == 0:
        raise NoCoverageError("no token of the text is covered by the lexicon")
    return total / matched, matched / len(tokens)


@dataclass(frozen=True)
class TextFeatures:
    """All text-side features for one article at one level."""

    n_tokens: int
    n_types: int
    ttr: float
    root_ttr: float
    corrected_ttr: float
    bilog_ttr: float
    uber: float | None
    n_sentences: int
    avg_chars_per_word: float
    avg_syllables_per_word: float
    avg_sentence_len: float
    flesch_kincaid: float
    coleman_liau: float
    smog: float
    smog_small_sample: bool
    flesch_reading_ease: float
    automated_readability_index: float
    gunning_fog: float
    mean_aoa_tokens: float | None = None
    aoa_token_coverage: float | None = None
    mean_aoa_lemmas: float | None = None
    aoa_lemma_coverage: float | None = None


def compute_text_features(text: str, lexicon: "AoALexicon | None" = None) -> TextFeatures:
    """Full per-text feature block; AoA fields only when a lexicon is given."""
    tokens, sentences, n_chars, n_letters, syllables = _counts(text)
    n_words = len(tokens)
    n_sents = len(sentences)
    ttr, root_ttr, corrected_ttr, bilog_ttr, uber = lexical_richness(tokens)
    avg_chars, spw, wps, fk, cl, smog = traditional_features(text)
    polysyllables = sum(1 for tok in tokens if count_syllables(tok) >= 3)
    fre = 206.835 - 1.015 * wps - 84.6 * spw
    ari = 4.71 * (n_letters / n_words) + 0.5 * wps - 21.43
    fog = 0.4 * (wps + 100.0 * polysyllables / n_words)
    aoa_tok = cov_tok = aoa_lem = cov_lem = None
    if lexicon is not None:
        aoa_tok, cov_tok = mean_aoa(tokens, lexicon, use_lemmas=False)
        aoa_lem, cov_lem = mean_aoa(tokens, lexicon, use_lemmas=True)
    return TextFeatures(
        n_tokens=n_words,
        n_types=len(set(tokens)),
        ttr=ttr,
        root_ttr=root_ttr,
        corrected_ttr=corrected_ttr,
        bilog_ttr=bilog_ttr,
        uber=uber,
        n_sentences=n_sents,
        avg_chars_per_word=avg_chars,
        avg_syllables_per_word=spw,
        avg_sentence_len=wps,
        flesch_kincaid=fk,
        coleman_liau=cl,
        smog=smog,
        smog_small_sample=n_sents < 30,
        flesch_reading_ease=fre,
        automated_readability_index=ari,
        gunning_fog=fog,
        mean_aoa_tokens=aoa_tok,
        aoa_token_coverage=cov_tok,
        mean_aoa_lemmas=aoa_lem,
        aoa_lemma_coverage=cov_lem,
    )
