"""Semantic analysis: (feature, opinion) extraction and hotel matrices.

Nouns in a tagged sentence become candidate hotel features; each is
paired with the nearest adjective/adverb in the same sentence and
resolved to a canonical feature name through stemming plus a synonym
map.  Results roll up into per-review semantic tables and a
hotel x feature mention-count matrix.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

from .textpipe import NEGATORS, Sentence, stem

DATA_DIR = Path(__file__).parent / "data"

NOUN_TAGS = frozenset({"NN", "NNS", "NP"})
OPINION_TAGS = frozenset({"JJ", "RB"})


@dataclass(frozen=True)
class FeatureMention:
    feature: str
    opinion_word: str | None
    negated: bool
    review_id: str
    sentence_index: int


class SynonymMap:
    """Variant word -> canonical feature name (one hop, canonicals fixed)."""

    def __init__(self, mapping: dict[str, str]):
        self.mapping = {v.lower(): c.lower() for v, c in mapping.items()}
        self.canonical_features = frozenset(self.mapping.values())
        for canonical in self.canonical_features:
            existing = self.mapping.setdefault(canonical, canonical)
            if existing != canonical:
                raise ValueError(f"synonym cycle: {canonical!r} -> {existing!r}")

    def resolve(self, word: str) -> str:
        normalized = stem(word.lower())
        return self.mapping.get(normalized, normalized)

    @classmethod
    def from_file(cls, path) -> "SynonymMap":
        mapping = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            variant, _, canonical = line.partition("\t")
            mapping[variant.strip()] = canonical.strip()
        return cls(mapping)


def default_synonyms() -> SynonymMap:
    return SynonymMap.from_file(DATA_DIR / "synonyms.tsv")


def group_synonyms(word: str, synonyms: SynonymMap) -> str:
    """Stem, lowercase, then map through the synonym map (identity if unmapped)."""
    return synonyms.resolve(word)


def extract_feature_mentions(
    sentence: Sentence,
    synonyms: SynonymMap,
    review_id: str = "",
    sentence_index: int = 0,
    features: frozenset[str] | None = None,
) -> list[FeatureMention]:
    """Pair each known-feature noun with its nearest opinion word.

    ``features`` restricts which canonical nouns count as hotel features;
    it defaults to the synonym map's canonical set.  A noun with neither
    an opinion word nor a preceding negator is dropped.
    """
    known = synonyms.canonical_features if features is None else features
    tagged = sentence.tokens
    opinion_positions = [
        i
        for i, tt in enumerate(tagged)
        if tt.tag in OPINION_TAGS and tt.token.surface.lower() not in NEGATORS
    ]
    negator_positions = [
        i for i, tt in enumerate(tagged) if tt.token.surface.lower() in NEGATORS
    ]

    mentions = []
    for i, tt in enumerate(tagged):
        if tt.tag not in NOUN_TAGS:
            continue
        feature = synonyms.resolve(tt.token.surface)
        if feature not in known:
            continue
        opinion = None
        if opinion_positions:
            # Equidistant candidates break toward the one after the noun.
            nearest = min(opinion_positions, key=lambda j: (abs(j - i), -(j > i)))
            opinion = tagged[nearest].token.surface
        negated = any(j < i for j in negator_positions) or (
            opinion is not None and any(j < nearest for j in negator_positions)
        )
        if opinion is None and not negated:
            continue
        mentions.append(
            FeatureMention(
                feature=feature,
                opinion_word=opinion,
                negated=negated,
                review_id=review_id,
                sentence_index=sentence_index,
            )
        )
    return mentions


@dataclass
class SemanticTable:
    """Ordered (feature, value) rows for one review (Tagged words / value)."""

    review_id: str
    rows: list[tuple[str, str]] = field(default_factory=list)


def build_semantic_table(review_id: str, mentions: list[FeatureMention]) -> SemanticTable:
    rows = []
    for m in sorted(mentions, key=lambda m: m.sentence_index):
        if m.opinion_word is None:
            value = "Not available"
        elif m.negated:
            value = f"not {m.opinion_word}"
        else:
            value = m.opinion_word
        rows.append((m.feature, value))
    return SemanticTable(review_id=review_id, rows=rows)


class HotelFeatureMatrix:
    """(hotel_id, review_id) x canonical feature mention counts."""

    def __init__(self, features: list[str]):
        self.features = sorted(features)
        self.cells: dict[tuple[str, str], dict[str, int]] = {}

    def add(self, hotel_id: str, review_id: str, feature: str, count: int = 1):
        row = self.cells.setdefault((hotel_id, review_id), {f: 0 for f in self.features})
        if feature not in row:
            raise KeyError(f"feature {feature!r} not in matrix columns")
        row[feature] += count

    def count(self, hotel_id: str, review_id: str, feature: str) -> int:
        return self.cells.get((hotel_id, review_id), {}).get(feature, 0)

    def total(self) -> int:
        return sum(sum(row.values()) for row in self.cells.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["hotel_id", "review_id", *self.features])
        for (hid, rid) in sorted(self.cells):
            row = self.cells[(hid, rid)]
            writer.writerow([hid, rid, *[row[f] for f in self.features]])
        return buf.getvalue()


def build_feature_matrix(
    mentions_by_review: dict[tuple[str, str], list[FeatureMention]],
    features: list[str] | None = None,
) -> HotelFeatureMatrix:
    """Count mentions per (hotel, review); columns in lexicographic order."""
    if features is None:
        features = sorted(
            {m.feature for ms in mentions_by_review.values() for m in ms}
        )
    matrix = HotelFeatureMatrix(features)
    for (hotel_id, review_id), mentions in mentions_by_review.items():
        matrix.cells.setdefault(
            (hotel_id, review_id), {f: 0 for f in matrix.features}
        )
        for m in mentions:
            matrix.add(hotel_id, review_id, m.feature)
    return matrix
