"""Recommendation assembly, item-based CF and the evaluation harness.

Euclidean similarity (1/(1+distance)) drives missing-cell prediction in
the hotel utility matrix.  The evaluation harness runs a deterministic
60/40 split and rebuilds the engine on growing training prefixes,
reporting precision/recall/F-measure per chunk plus timing reports.
"""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass, field

from . import scoring
from .engine import EngineResources, ScoredEngine
from .ingest import CorpusSnapshot, normalize_rank


class MetricError(Exception):
    """A metric is undefined for the given counts."""


class SimilarityError(Exception):
    """Similarity is undefined (no shared coordinates / bad dimensions)."""


class OracleGapError(Exception):
    """The relevance oracle does not cover a test query."""


# --- similarity and CF ------------------------------------------------------

def euclidean_similarity(u, v) -> float:
    """1/(1 + euclidean distance) over pairwise-complete coordinates."""
    if len(u) != len(v):
        raise SimilarityError("vectors must have equal dimensions")
    pairs = [(a, b) for a, b in zip(u, v) if a is not None and b is not None]
    if not pairs:
        raise SimilarityError("no shared coordinates")
    distance = math.sqrt(sum((a - b) ** 2 for a, b in pairs))
    return 1.0 / (1.0 + distance)


class UtilityMatrix:
    """Hotels x features with explicit missing markers (None)."""

    def __init__(self, features: list[str]):
        self.features = list(features)
        self.rows: dict[str, dict[str, float | None]] = {}

    def set_row(self, hotel_id: str, values: dict[str, float | None]):
        self.rows[hotel_id] = {f: values.get(f) for f in self.features}

    def vector(self, hotel_id: str, skip: str | None = None):
        row = self.rows[hotel_id]
        return [row[f] for f in self.features if f != skip]


def build_utility_matrix(snapshot: CorpusSnapshot, criteria=None) -> UtilityMatrix:
    """Mean normalized rating per hotel and criterion; absent -> missing."""
    if criteria is None:
        criteria = sorted(
            {c for r in snapshot.reviews for c in r.ratings}
        )
    matrix = UtilityMatrix(list(criteria))
    sums: dict[str, dict[str, list[float]]] = {h.hotel_id: {} for h in snapshot.hotels}
    for review in snapshot.reviews:
        source = snapshot.source_by_id(review.source_id)
        for criterion, value in review.ratings.items():
            if criterion in matrix.features:
                sums[review.hotel_id].setdefault(criterion, []).append(
                    normalize_rank(value, source)
                )
    for hotel_id, per_criterion in sums.items():
        matrix.set_row(
            hotel_id,
            {c: sum(vs) / len(vs) for c, vs in per_criterion.items()},
        )
    return matrix


def predict_missing_cell(
    matrix: UtilityMatrix, hotel_id: str, feature: str, k: int = 5
) -> float:
    """Similarity-weighted mean of the k most similar hotels' cells."""
    if feature not in matrix.features:
        raise KeyError(feature)
    target = matrix.vector(hotel_id, skip=feature)
    neighbors = []
    for other_id in sorted(matrix.rows):
        if other_id == hotel_id:
            continue
        value = matrix.rows[other_id][feature]
        if value is None:
            continue
        try:
            sim = euclidean_similarity(target, matrix.vector(other_id, skip=feature))
        except SimilarityError:
            continue
        neighbors.append((sim, other_id, value))
    if not neighbors:
        raise SimilarityError(
            f"no usable neighbor for hotel {hotel_id!r} feature {feature!r}"
        )
    neighbors.sort(key=lambda t: (-t[0], t[1]))
    top = neighbors[: max(1, k)]
    total_sim = sum(sim for sim, _, _ in top)
    return sum(sim * value for sim, _, value in top) / total_sim


# --- recommendation assembly ------------------------------------------------

@dataclass(frozen=True)
class RecommendationQuery:
    guest_type: str | None = None
    city: str | None = None
    region: str | None = None
    min_rating: float | None = None
    name_substring: str | None = None
    limit: int | None = None


@dataclass(frozen=True)
class RecommendationEntry:
    hotel_id: str
    name: str
    fuzzy_class: scoring.FuzzyClass
    final_score: float
    guest_fit: float
    rank_position: int


def recommend(query: RecommendationQuery, eng: ScoredEngine) -> list[RecommendationEntry]:
    """Filter, pool-normalize and rank candidate hotels for a query."""
    if query.guest_type is not None and query.guest_type not in scoring.GUEST_TYPES:
        raise ValueError(
            f"unknown guest type {query.guest_type!r}; valid: {', '.join(scoring.GUEST_TYPES)}"
        )
    profile = (
        eng.resources.guest_profiles.get(query.guest_type)
        if query.guest_type
        else None
    )

    candidates = []
    for hotel in eng.snapshot.hotels:
        if query.city and hotel.city.lower() != query.city.lower():
            continue
        if query.region and hotel.region.lower() != query.region.lower():
            continue
        if query.name_substring and query.name_substring.lower() not in hotel.name.lower():
            continue
        if query.min_rating is not None:
            best_rank = eng.max_normalized_rank(hotel.hotel_id)
            if best_rank is None or best_rank < query.min_rating:
                continue
        candidates.append(hotel)
    if not candidates:
        return []

    pool = [eng.hotel_aggregates[h.hotel_id].cross_source for h in candidates]
    scored = []
    for hotel in candidates:
        agg = eng.hotel_aggregates[hotel.hotel_id]
        f = scoring.final_score(agg.cross_source, pool)
        fit = scoring.guest_fit(agg.feature_polarity, profile) if profile else 0.0
        scored.append((hotel, agg, f, fit))

    scored.sort(
        key=lambda t: (
            -scoring.classify(t[2]).order,
            -t[3],
            -t[1].cross_source,
            t[0].hotel_id,
        )
    )
    if query.limit is not None:
        scored = scored[: query.limit]
    return [
        RecommendationEntry(
            hotel_id=hotel.hotel_id,
            name=hotel.name,
            fuzzy_class=scoring.classify(f),
            final_score=f,
            guest_fit=fit,
            rank_position=pos,
        )
        for pos, (hotel, agg, f, fit) in enumerate(scored, start=1)
    ]


# --- evaluation metrics ------------------------------------------------------

@dataclass(frozen=True)
class EvalCounts:
    relevant_recommended: int  # Z
    irrelevant_recommended: int  # X
    relevant_missed: int  # Y

    def __post_init__(self):
        if min(
            self.relevant_recommended,
            self.irrelevant_recommended,
            self.relevant_missed,
        ) < 0:
            raise ValueError("eval counts must be non-negative")


def precision(counts: EvalCounts) -> float:
    denominator = counts.irrelevant_recommended + counts.relevant_recommended
    if denominator == 0:
        raise MetricError("precision undefined: nothing recommended")
    return counts.relevant_recommended / denominator


def recall(counts: EvalCounts) -> float:
    denominator = counts.relevant_missed + counts.relevant_recommended
    if denominator == 0:
        raise MetricError("recall undefined: nothing relevant")
    return counts.relevant_recommended / denominator


def f_measure(p: float, r: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if p + r == 0:
        return 0.0
    return 2.0 * p * r / (p + r)


# --- incremental evaluation protocol -----------------------------------------

@dataclass(frozen=True)
class IncrementalSchedule:
    train_fraction: float = 0.6
    test_fraction: float = 0.4
    chunk_fractions: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8, 1.0)

    def __post_init__(self):
        if not 0 < self.train_fraction < 1 or not 0 < self.test_fraction < 1:
            raise ValueError("split fractions must lie in (0, 1)")
        if any(not 0 < c <= 1 for c in self.chunk_fractions):
            raise ValueError("chunk fractions must lie in (0, 1]")
        if list(self.chunk_fractions) != sorted(self.chunk_fractions):
            raise ValueError("chunk fractions must be non-decreasing")


@dataclass
class EvalRow:
    chunk: float
    precision: float
    recall: float
    f_measure: float


@dataclass
class EvalTable:
    rows: list[EvalRow] = field(default_factory=list)

    @property
    def average(self) -> EvalRow:
        n = len(self.rows)
        return EvalRow(
            chunk=0.0,
            precision=sum(r.precision for r in self.rows) / n,
            recall=sum(r.recall for r in self.rows) / n,
            f_measure=sum(r.f_measure for r in self.rows) / n,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["chunk", "f_measure", "recall", "precision"])
        for row in self.rows:
            writer.writerow(
                [f"{row.chunk:.0%}", f"{row.f_measure:.3f}", f"{row.recall:.3f}", f"{row.precision:.3f}"]
            )
        avg = self.average
        writer.writerow(
            ["Avg. ratio", f"{avg.f_measure:.3f}", f"{avg.recall:.3f}", f"{avg.precision:.3f}"]
        )
        return buf.getvalue()


RELEVANCE_THRESHOLD = 4.0


def derive_relevance(snapshot: CorpusSnapshot, reviews) -> dict[str, set[str]]:
    """A hotel is relevant to a user when their normalized overall rating >= 4."""
    relevance: dict[str, set[str]] = {}
    for review in reviews:
        user = review.author_username or review.review_id
        relevance.setdefault(user, set())
        ratings = review.ratings
        if not ratings:
            continue
        source = snapshot.source_by_id(review.source_id)
        raw = ratings.get("overall")
        if raw is None:
            raw = sum(ratings.values()) / len(ratings)
        if normalize_rank(raw, source) >= RELEVANCE_THRESHOLD:
            relevance[user].add(review.hotel_id)
    return relevance


def run_incremental_eval(
    snapshot: CorpusSnapshot,
    resources: EngineResources | None = None,
    schedule: IncrementalSchedule | None = None,
    relevance: dict[str, set[str]] | None = None,
    seed: int = 0,
    top_n: int = 3,
) -> EvalTable:
    """Rebuild aggregates on growing training prefixes and score top-N inclusion."""
    schedule = schedule or IncrementalSchedule()
    resources = resources or EngineResources()
    reviews = sorted(snapshot.reviews, key=lambda r: r.review_id)
    rng = random.Random(seed)
    rng.shuffle(reviews)
    cut = round(len(reviews) * schedule.train_fraction)
    train, test = reviews[:cut], reviews[cut:]
    if not train or not test:
        raise ValueError("corpus too small for a train/test split")

    derived = derive_relevance(snapshot, test)
    if relevance is None:
        relevance = derived
    else:
        missing = sorted(set(derived) - set(relevance))
        if missing:
            raise OracleGapError(f"relevance oracle missing users: {', '.join(missing)}")

    table = EvalTable()
    for chunk in schedule.chunk_fractions:
        prefix = train[: max(1, round(len(train) * chunk))]
        chunk_snapshot = CorpusSnapshot(
            sources=snapshot.sources,
            hotels=snapshot.hotels,
            reviews=sorted(prefix, key=lambda r: r.review_id),
            schema_version=snapshot.schema_version,
        )
        eng = ScoredEngine.build(chunk_snapshot, resources)
        entries = recommend(RecommendationQuery(limit=top_n), eng)
        recommended = {e.hotel_id for e in entries}
        z = x = y = 0
        for user in sorted(derived):
            relevant = relevance[user]
            z += len(recommended & relevant)
            x += len(recommended - relevant)
            y += len(relevant - recommended)
        counts = EvalCounts(z, x, y)
        p = precision(counts)
        r = recall(counts)
        table.rows.append(EvalRow(chunk=chunk, precision=p, recall=r, f_measure=f_measure(p, r)))
    return table


# --- timing instrumentation ---------------------------------------------------

@dataclass(frozen=True)
class TimingReport:
    load_time_ms: float
    search_time_ms: float

    @property
    def execution_time_ms(self) -> float:
        return self.load_time_ms + self.search_time_ms

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["load_time_ms", "search_time_ms", "execution_time_ms"])
        writer.writerow(
            [f"{self.load_time_ms:.4f}", f"{self.search_time_ms:.4f}", f"{self.execution_time_ms:.4f}"]
        )
        return buf.getvalue()


def measure_timings(load_thunk, search_thunk) -> TimingReport:
    """Wall-clock the load and search thunks; execution is their sum."""
    start = time.perf_counter()
    load_thunk()
    load_ms = (time.perf_counter() - start) * 1000.0
    start = time.perf_counter()
    search_thunk()
    search_ms = (time.perf_counter() - start) * 1000.0
    return TimingReport(load_time_ms=load_ms, search_time_ms=search_ms)
