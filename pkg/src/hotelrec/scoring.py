"""Aggregation cascade from per-source polarity to fuzzy hotel classes.

Per (hotel, source): A = sum of review polarities, B = A/T + rank + votes.
Across sources: D = mean(B) + views (the order that matches the published
result tables; the literal sum-then-divide variant sits behind a flag).
F min-max normalizes D over the candidate pool onto [0, 10] and crisp
threshold rules map F to one of five recommendation classes.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"

GUEST_TYPES = ("solo", "family", "couple", "business", "friends")

WEIGHT_SUM_TOLERANCE = 1e-9


class FuzzyClass(enum.Enum):
    R = "Recommended"
    BR = "Best Recommended"
    AR = "Average Recommended"
    LR = "Least Recommended"
    NR = "Not Recommended"

    @property
    def order(self) -> int:
        return {"R": 4, "BR": 3, "AR": 2, "LR": 1, "NR": 0}[self.name]

    def __lt__(self, other):
        return self.order < other.order

    def __le__(self, other):
        return self.order <= other.order


@dataclass
class SourceAggregate:
    hotel_id: str
    source_id: str
    aggregated_polarity: float  # A
    review_count: int  # T
    normalized_rank: float
    votes: int

    @property
    def weighted_average_polarity(self) -> float:  # B
        return weighted_average_polarity(
            self.aggregated_polarity, self.review_count, self.normalized_rank, self.votes
        )


@dataclass
class HotelAggregate:
    hotel_id: str
    source_scores: dict[str, float]  # source_id -> B
    views: int
    cross_source: float = 0.0  # D
    final_score: float | None = None  # F, pool-dependent
    fuzzy_class: FuzzyClass | None = None
    feature_polarity: dict[str, float] = field(default_factory=dict)


def aggregate_polarity(review_polarities) -> float:
    """A: plain sum of per-review polarity values for one (hotel, source)."""
    return sum(review_polarities)


def weighted_average_polarity(
    aggregated: float, review_count: int, normalized_rank: float, votes: int
) -> float:
    """B = A/T + normalized rank + votes."""
    if review_count < 1:
        raise ValueError("review count must be at least 1")
    return aggregated / review_count + normalized_rank + votes


def cross_source_score(source_scores, views: int, literal_formula: bool = False) -> float:
    """D = mean(B values) + views; the literal sum-then-divide variant is opt-in."""
    scores = list(source_scores)
    if not scores:
        raise ValueError("need at least one per-source score")
    if literal_formula:
        return (sum(scores) + views) / len(scores)
    return sum(scores) / len(scores) + views


def final_score(value: float, pool) -> float:
    """Min-max normalize a pool member onto [0, 10]."""
    pool = list(pool)
    if not pool:
        raise ValueError("empty normalization pool")
    if value not in pool:
        raise ValueError("score to normalize must be a member of the pool")
    lo, hi = min(pool), max(pool)
    if hi == lo:
        return 10.0
    return (value - lo) / (hi - lo) * 10.0


def classify(score: float) -> FuzzyClass:
    """Crisp threshold rules partitioning [0, 10] into five classes."""
    if not 0.0 <= score <= 10.0:
        raise ValueError(f"final score {score} outside [0, 10]")
    if score > 8:
        return FuzzyClass.R
    if score > 6:
        return FuzzyClass.BR
    if score > 4:
        return FuzzyClass.AR
    if score > 2:
        return FuzzyClass.LR
    return FuzzyClass.NR


def dictionary_match_score(tokens, positive: set, negative: set) -> int:
    """+1 per positive word, -1 per negative word (diagnostic pre-pass)."""
    score = 0
    for token in tokens:
        word = token.lower()
        if word in positive:
            score += 1
        elif word in negative:
            score -= 1
    return score


@dataclass(frozen=True)
class GuestProfile:
    name: str
    weights: dict[str, float]

    def __post_init__(self):
        if any(w < 0 for w in self.weights.values()):
            raise ValueError(f"profile {self.name!r}: negative weight")
        total = sum(self.weights.values())
        if total <= 0:
            raise ValueError(f"profile {self.name!r}: weights sum to zero")
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            logger.warning(
                "profile %r weights sum to %.6f; normalizing", self.name, total
            )
            object.__setattr__(
                self, "weights", {f: w / total for f, w in self.weights.items()}
            )


def guest_fit(feature_polarity: dict[str, float], profile: GuestProfile) -> float:
    """Dot product of profile weights with per-feature polarity (missing -> 0)."""
    return sum(
        weight * feature_polarity.get(feature, 0.0)
        for feature, weight in profile.weights.items()
    )


def load_guest_profiles(path) -> dict[str, GuestProfile]:
    """Parse "name: feature=weight, ..." lines into guest profiles."""
    profiles = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, rest = line.partition(":")
        name = name.strip().lower()
        weights = {}
        for pair in rest.split(","):
            feature, _, weight = pair.partition("=")
            if not weight:
                raise ValueError(f"profile {name!r}: malformed entry {pair.strip()!r}")
            weights[feature.strip().lower()] = float(weight)
        profiles[name] = GuestProfile(name=name, weights=weights)
    return profiles


def default_guest_profiles() -> dict[str, GuestProfile]:
    return load_guest_profiles(DATA_DIR / "guest_profiles.conf")
