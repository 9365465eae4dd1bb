"""Orchestration: build every derived artifact from a corpus snapshot.

One pass over the snapshot produces per-review analyses, term statistics,
review polarities, feature mentions, per-(hotel, source) aggregates and
cross-source hotel aggregates with fuzzy classes.  The result is
immutable and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import scoring, semantics, sentiment, textpipe
from .ingest import CorpusSnapshot, normalize_rank


@dataclass
class EngineResources:
    """Lexicons and configuration shared by every engine build."""

    pipeline: textpipe.TextPipeline = field(default_factory=textpipe.TextPipeline)
    synonyms: semantics.SynonymMap = field(default_factory=semantics.default_synonyms)
    sentiment_lexicon: sentiment.SentimentLexicon = field(
        default_factory=sentiment.default_sentiment_lexicon
    )
    guest_profiles: dict[str, scoring.GuestProfile] = field(
        default_factory=scoring.default_guest_profiles
    )


class ScoredEngine:
    """Snapshot plus every computed aggregate, built via :meth:`build`."""

    def __init__(self, snapshot, resources):
        self.snapshot = snapshot
        self.resources = resources
        self.analyses: dict[str, textpipe.AnalyzedReview] = {}
        self.mentions: dict[tuple[str, str], list[semantics.FeatureMention]] = {}
        self.stats: sentiment.TermStats | None = None
        self.review_polarities: dict[str, sentiment.ReviewPolarity] = {}
        self.source_aggregates: dict[tuple[str, str], scoring.SourceAggregate] = {}
        self.hotel_aggregates: dict[str, scoring.HotelAggregate] = {}

    @classmethod
    def build(cls, snapshot: CorpusSnapshot, resources: EngineResources | None = None):
        resources = resources or EngineResources()
        snapshot.validate()
        engine = cls(snapshot, resources)
        engine._analyze_reviews()
        engine._score_reviews()
        engine._aggregate()
        return engine

    def _analyze_reviews(self):
        synonyms = self.resources.synonyms
        for review in self.snapshot.reviews:
            analysis = self.resources.pipeline.analyze(review.text)
            self.analyses[review.review_id] = analysis
            mentions = []
            for idx, sent in enumerate(analysis.sentences):
                mentions.extend(
                    semantics.extract_feature_mentions(
                        sent, synonyms, review_id=review.review_id, sentence_index=idx
                    )
                )
            self.mentions[(review.hotel_id, review.review_id)] = mentions

    def _score_reviews(self):
        self.stats = sentiment.TermStats(
            {rid: analysis.terms for rid, analysis in self.analyses.items()}
        )
        lexicon = self.resources.sentiment_lexicon
        for rid, analysis in self.analyses.items():
            self.review_polarities[rid] = sentiment.review_polarity(
                analysis.sentence_terms, rid, lexicon, self.stats
            )

    def _aggregate(self):
        by_pair: dict[tuple[str, str], list[str]] = {}
        for review in self.snapshot.reviews:
            by_pair.setdefault((review.hotel_id, review.source_id), []).append(
                review.review_id
            )

        for hotel in self.snapshot.hotels:
            source_scores = {}
            for source_id in sorted(hotel.source_rank):
                source = self.snapshot.source_by_id(source_id)
                rank = normalize_rank(hotel.source_rank[source_id], source)
                votes = hotel.source_votes.get(source_id, 0)
                review_ids = by_pair.get((hotel.hotel_id, source_id), [])
                if review_ids:
                    agg = scoring.SourceAggregate(
                        hotel_id=hotel.hotel_id,
                        source_id=source_id,
                        aggregated_polarity=scoring.aggregate_polarity(
                            self.review_polarities[rid].polarity for rid in review_ids
                        ),
                        review_count=len(review_ids),
                        normalized_rank=rank,
                        votes=votes,
                    )
                    self.source_aggregates[(hotel.hotel_id, source_id)] = agg
                    source_scores[source_id] = agg.weighted_average_polarity
                else:
                    # No reviews for this source: the polarity term drops out.
                    source_scores[source_id] = rank + votes

            if source_scores:
                cross = scoring.cross_source_score(
                    source_scores.values(), hotel.engagement_views
                )
            else:
                cross = float(hotel.engagement_views)
            self.hotel_aggregates[hotel.hotel_id] = scoring.HotelAggregate(
                hotel_id=hotel.hotel_id,
                source_scores=source_scores,
                views=hotel.engagement_views,
                cross_source=cross,
                feature_polarity=self._feature_polarity(hotel.hotel_id),
            )

        pool = [agg.cross_source for agg in self.hotel_aggregates.values()]
        for agg in self.hotel_aggregates.values():
            agg.final_score = scoring.final_score(agg.cross_source, pool)
            agg.fuzzy_class = scoring.classify(agg.final_score)

    def _feature_polarity(self, hotel_id: str) -> dict[str, float]:
        """Mean signed opinion-word sentiment per feature for one hotel."""
        lexicon = self.resources.sentiment_lexicon
        contributions: dict[str, list[float]] = {}
        for (hid, rid), mentions in self.mentions.items():
            if hid != hotel_id:
                continue
            for m in mentions:
                if m.opinion_word is None:
                    continue
                term = textpipe.stem(m.opinion_word.lower())
                try:
                    value = sentiment.term_overall_sentiment(
                        term, rid, lexicon, self.stats
                    )
                except sentiment.UnknownTermError:
                    continue
                if m.negated:
                    value = -value
                contributions.setdefault(m.feature, []).append(value)
        return {
            feature: sum(values) / len(values)
            for feature, values in sorted(contributions.items())
        }

    # --- convenience views ---------------------------------------------

    def feature_matrix(self) -> semantics.HotelFeatureMatrix:
        return semantics.build_feature_matrix(self.mentions)

    def semantic_table(self, review_id: str) -> semantics.SemanticTable:
        for (hid, rid), mentions in self.mentions.items():
            if rid == review_id:
                return semantics.build_semantic_table(review_id, mentions)
        raise KeyError(review_id)

    def label_percentages(self, hotel_id: str) -> dict[str, float]:
        """Percentage of positive/negative/neutral review labels for a hotel."""
        labels = [
            self.review_polarities[r.review_id].label
            for r in self.snapshot.reviews
            if r.hotel_id == hotel_id
        ]
        if not labels:
            return {"positive": 0.0, "negative": 0.0, "neutral": 0.0}
        return {
            kind: 100.0 * labels.count(kind) / len(labels)
            for kind in ("positive", "negative", "neutral")
        }

    def max_normalized_rank(self, hotel_id: str) -> float | None:
        hotel = self.snapshot.hotel_by_id(hotel_id)
        ranks = [
            normalize_rank(value, self.snapshot.source_by_id(sid))
            for sid, value in hotel.source_rank.items()
        ]
        return max(ranks) if ranks else None
