"""TF-IDF term weighting and sentiment polarity scoring.

Term weights are tf * log10(N/df).  Each term's lexicon sentiment
(pos - neg) is multiplied by its TF-IDF weight to get an overall
signed contribution; per-review sums give the review polarity, and
per-(hotel, source) review sets aggregate into a signed polarity score.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from .textpipe import NEGATORS, stem

DATA_DIR = Path(__file__).parent / "data"


class LexiconError(Exception):
    pass


class UnknownTermError(KeyError):
    pass


@dataclass(frozen=True)
class SentimentLexiconEntry:
    word: str
    pos_score: float
    neg_score: float

    def __post_init__(self):
        if self.pos_score < 0 or self.neg_score < 0 or self.pos_score + self.neg_score > 1:
            raise ValueError(f"invalid sentiment scores for {self.word!r}")

    @property
    def signed(self) -> float:
        return self.pos_score - self.neg_score


class SentimentLexicon:
    """Word -> (pos, neg) scores; lookup is stemmed and case-insensitive."""

    NEUTRAL = SentimentLexiconEntry("", 0.0, 0.0)

    def __init__(self, entries: dict[str, SentimentLexiconEntry]):
        self.entries = entries

    def lookup(self, word: str) -> SentimentLexiconEntry:
        return self.entries.get(stem(word.lower()), self.NEUTRAL)

    def __len__(self):
        return len(self.entries)


def load_lexicon(path) -> SentimentLexicon:
    """Load a SentiWordNet-style or simplified 3-column sentiment lexicon.

    Words seen in multiple synsets (or stemming to the same key) get the
    arithmetic mean of their pos and neg scores.  Malformed lines are
    skipped with a count; an empty result is fatal.
    """
    scores: dict[str, list[tuple[float, float]]] = {}
    skipped = 0
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parsed = _parse_lexicon_line(line)
        if parsed is None:
            skipped += 1
            continue
        for word, pos, neg in parsed:
            scores.setdefault(stem(word.lower()), []).append((pos, neg))
    if not scores:
        raise LexiconError(f"{path}: empty sentiment lexicon ({skipped} lines skipped)")
    entries = {}
    for key, pairs in scores.items():
        pos = sum(p for p, _ in pairs) / len(pairs)
        neg = sum(n for _, n in pairs) / len(pairs)
        entries[key] = SentimentLexiconEntry(word=key, pos_score=pos, neg_score=neg)
    lexicon = SentimentLexicon(entries)
    lexicon.skipped_lines = skipped
    return lexicon


def _parse_lexicon_line(line):
    """One lexicon line -> list of (word, pos, neg) or None if malformed."""
    fields = line.split("\t") if "\t" in line else line.split()
    try:
        if len(fields) == 3:
            word, pos, neg = fields
            entry = (word, float(pos), float(neg))
            if entry[1] < 0 or entry[2] < 0 or entry[1] + entry[2] > 1:
                return None
            return [entry]
        if len(fields) >= 5:
            # SentiWordNet layout: POS, id, pos_score, neg_score, terms, gloss
            pos, neg = float(fields[2]), float(fields[3])
            if pos < 0 or neg < 0 or pos + neg > 1:
                return None
            words = [t.rsplit("#", 1)[0] for t in fields[4].split()]
            return [(w, pos, neg) for w in words if w]
    except ValueError:
        return None
    return None


def default_sentiment_lexicon() -> SentimentLexicon:
    return load_lexicon(DATA_DIR / "sentiment_lexicon.tsv")


class TermStats:
    """Corpus-wide term statistics, built once then frozen for queries."""

    def __init__(self, documents: dict[str, list[str]]):
        self.documents = {doc_id: list(terms) for doc_id, terms in documents.items()}
        self.n_docs = len(self.documents)
        self.df: dict[str, int] = {}
        for terms in self.documents.values():
            for term in set(terms):
                self.df[term] = self.df.get(term, 0) + 1

    def idf(self, term: str) -> float:
        df = self.df.get(term, 0)
        if df == 0:
            raise UnknownTermError(term)
        return math.log10(self.n_docs / df)

    def tf(self, term: str, document_id: str) -> float:
        return compute_tf(term, self.documents[document_id])


def compute_tf(term: str, document: list[str]) -> float:
    if not document:
        raise ValueError("term frequency undefined on an empty document")
    return document.count(term) / len(document)


def compute_idf(term: str, corpus) -> float:
    """log10(N/df) over a collection of token-list documents."""
    docs = list(corpus)
    df = sum(1 for doc in docs if term in doc)
    if df == 0:
        raise UnknownTermError(term)
    return math.log10(len(docs) / df)


def tfidf_weight(term: str, document_id: str, stats: TermStats) -> float:
    return stats.tf(term, document_id) * stats.idf(term)


def term_overall_sentiment(
    term: str, document_id: str, lexicon: SentimentLexicon, stats: TermStats
) -> float:
    """(pos - neg) * TF-IDF; the sign carries the polarity direction."""
    return lexicon.lookup(term).signed * tfidf_weight(term, document_id, stats)


@dataclass
class ReviewPolarity:
    review_id: str
    pos_sum: float
    neg_sum: float

    @property
    def polarity(self) -> float:
        return self.pos_sum - self.neg_sum

    @property
    def label(self) -> str:
        if self.polarity > 0:
            return "positive"
        if self.polarity < 0:
            return "negative"
        return "neutral"


def review_polarity(
    sentence_terms,
    review_id: str,
    lexicon: SentimentLexicon,
    stats: TermStats,
) -> ReviewPolarity:
    """Score one preprocessed review (list of per-sentence term lists).

    A negator opens a negation scope to the end of its sentence; term
    contributions inside the scope are sign-flipped.  Summing per
    occurrence with weight idf/len reproduces the tf*idf total exactly.
    """
    doc = [t for sent in sentence_terms for t in sent]
    pos_sum = 0.0
    neg_sum = 0.0
    if not doc:
        return ReviewPolarity(review_id=review_id, pos_sum=0.0, neg_sum=0.0)
    n = len(doc)
    for sent in sentence_terms:
        negated = False
        for term in sent:
            if term in NEGATORS:
                negated = True
                continue
            contribution = lexicon.lookup(term).signed * stats.idf(term) / n
            if negated:
                contribution = -contribution
            if contribution > 0:
                pos_sum += contribution
            else:
                neg_sum += -contribution
    return ReviewPolarity(review_id=review_id, pos_sum=pos_sum, neg_sum=neg_sum)


def review_set_polarity(reviews: list[ReviewPolarity]) -> float:
    """Signed magnitude |sum pos| - |sum neg| for one (hotel, source) set."""
    pos_total = sum(r.pos_sum for r in reviews)
    neg_total = sum(r.neg_sum for r in reviews)
    return abs(pos_total) - abs(neg_total)


class PolarityMatrix:
    """Per-review opinion-word counts with a polarity label per row."""

    def __init__(self, opinion_words: list[str]):
        self.opinion_words = list(opinion_words)
        self.rows: dict[str, dict[str, int]] = {}
        self.labels: dict[str, str] = {}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["review_id", *self.opinion_words, "label"])
        for rid in sorted(self.rows):
            row = self.rows[rid]
            writer.writerow([rid, *[row[w] for w in self.opinion_words], self.labels[rid]])
        return buf.getvalue()


def build_polarity_matrix(
    review_terms: dict[str, list[str]],
    polarities: dict[str, ReviewPolarity],
    opinion_words: list[str],
) -> PolarityMatrix:
    matrix = PolarityMatrix(opinion_words)
    for review_id, terms in review_terms.items():
        stems = [stem(w.lower()) for w in terms]
        matrix.rows[review_id] = {
            w: stems.count(stem(w.lower())) for w in opinion_words
        }
        matrix.labels[review_id] = polarities[review_id].label
    return matrix
