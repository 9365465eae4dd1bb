"""Ingestion: multi-source review datasets, rank normalization, snapshots.

Review files are JSON (array or newline-delimited objects) with the
TripAdvisor-style layout: ``ratings``, ``title``, ``text`` and an
``author`` object carrying ``username``, ``date`` and
``num helpful votes``.  Hotel/source metadata comes in as CSV or JSON.
Snapshots persist through a small storage abstraction whose default is a
directory of newline-delimited JSON files.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

SCHEMA_VERSION = 1

RATING_CRITERIA = (
    "service",
    "cleanliness",
    "overall",
    "value",
    "location",
    "sleep_quality",
    "rooms",
)


class IngestError(Exception):
    """Base class for ingestion failures."""


class EmptyCorpusError(IngestError):
    """A review file yielded zero parseable records."""


class SnapshotIntegrityError(IngestError):
    """Referential integrity violated; carries the dangling ids."""

    def __init__(self, dangling):
        self.dangling = list(dangling)
        super().__init__("dangling references: " + ", ".join(self.dangling))


class SchemaVersionError(IngestError):
    """Snapshot written with an incompatible schema version."""


@dataclass(frozen=True)
class DataSourceDescriptor:
    source_id: str
    display_name: str
    rank_scale_min: float = 1.0
    rank_scale_max: float = 5.0

    def __post_init__(self):
        if not self.rank_scale_min < self.rank_scale_max:
            raise ValueError(
                f"source {self.source_id!r}: rank_scale_min must be below rank_scale_max"
            )


@dataclass
class ReviewRecord:
    review_id: str
    hotel_id: str
    source_id: str
    title: str
    text: str
    ratings: dict[str, float] = field(default_factory=dict)
    author_username: str = ""
    date: str = ""
    helpful_votes: int = 0


@dataclass
class HotelRecord:
    hotel_id: str
    name: str
    city: str = ""
    region: str = ""
    source_rank: dict[str, float] = field(default_factory=dict)
    source_votes: dict[str, int] = field(default_factory=dict)
    engagement_views: int = 0


@dataclass
class CorpusSnapshot:
    sources: list[DataSourceDescriptor] = field(default_factory=list)
    hotels: list[HotelRecord] = field(default_factory=list)
    reviews: list[ReviewRecord] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def source_by_id(self, source_id: str) -> DataSourceDescriptor:
        for s in self.sources:
            if s.source_id == source_id:
                return s
        raise KeyError(source_id)

    def hotel_by_id(self, hotel_id: str) -> HotelRecord:
        for h in self.hotels:
            if h.hotel_id == hotel_id:
                return h
        raise KeyError(hotel_id)

    def validate(self):
        """Raise SnapshotIntegrityError listing every dangling id."""
        source_ids = {s.source_id for s in self.sources}
        hotel_ids = {h.hotel_id for h in self.hotels}
        dangling = []
        if len(source_ids) != len(self.sources):
            raise SnapshotIntegrityError(["duplicate source_id"])
        if len(hotel_ids) != len(self.hotels):
            raise SnapshotIntegrityError(["duplicate hotel_id"])
        for r in self.reviews:
            if r.hotel_id not in hotel_ids:
                dangling.append(f"hotel:{r.hotel_id}")
            if r.source_id not in source_ids:
                dangling.append(f"source:{r.source_id}")
        for h in self.hotels:
            for sid in set(h.source_rank) | set(h.source_votes):
                if sid not in source_ids:
                    dangling.append(f"source:{sid}")
        if dangling:
            raise SnapshotIntegrityError(sorted(set(dangling)))


@dataclass
class ParseResult:
    records: list[ReviewRecord]
    skipped: int


def normalize_rank(value: float, source: DataSourceDescriptor) -> float:
    """Linearly map a native-scale rank onto [1, 5]."""
    lo, hi = source.rank_scale_min, source.rank_scale_max
    if not lo <= value <= hi:
        raise ValueError(
            f"rank {value} outside native scale [{lo}, {hi}] of source {source.source_id!r}"
        )
    return 1.0 + 4.0 * (value - lo) / (hi - lo)


def _normalize_criterion(name: str) -> str:
    return name.strip().lower().replace(" ", "_")


def _coerce_review(obj, source: DataSourceDescriptor, ordinal: int) -> ReviewRecord:
    """Build a ReviewRecord from one raw JSON object; raise ValueError if malformed."""
    if not isinstance(obj, dict):
        raise ValueError("not an object")
    text = obj.get("text")
    if not isinstance(text, str) or not text.strip():
        raise ValueError("missing or empty text")
    author = obj.get("author") or {}
    if not isinstance(author, dict):
        raise ValueError("author is not an object")

    ratings = {}
    raw_ratings = obj.get("ratings") or {}
    if not isinstance(raw_ratings, dict):
        raise ValueError("ratings is not an object")
    for key, value in raw_ratings.items():
        if not isinstance(value, (int, float)):
            raise ValueError(f"non-numeric rating {key!r}")
        if not source.rank_scale_min <= value <= source.rank_scale_max:
            raise ValueError(f"rating {key!r}={value} outside source scale")
        ratings[_normalize_criterion(key)] = float(value)

    hotel_id = obj.get("hotel_id", author.get("offering_id"))
    if hotel_id is None:
        raise ValueError("no hotel_id / offering_id")
    review_id = obj.get("review_id", author.get("id", f"{source.source_id}-{ordinal}"))
    votes = obj.get("num_helpful_votes", author.get("num helpful votes", 0))
    if not isinstance(votes, int) or votes < 0:
        raise ValueError("num helpful votes must be a non-negative integer")

    return ReviewRecord(
        review_id=str(review_id),
        hotel_id=str(hotel_id),
        source_id=source.source_id,
        title=str(obj.get("title", "")),
        text=text,
        ratings=ratings,
        author_username=str(author.get("username", "")),
        date=str(obj.get("date", author.get("date", ""))),
        helpful_votes=votes,
    )


def parse_review_file(path, source: DataSourceDescriptor) -> ParseResult:
    """Parse a JSON review file; malformed objects are counted and skipped.

    Accepts either a single JSON array or newline-delimited JSON objects.
    Raises EmptyCorpusError when a non-empty input yields zero records.
    """
    raw = Path(path).read_text(encoding="utf-8")
    stripped = raw.strip()
    if stripped.startswith("["):
        objects = json.loads(stripped)
        if not isinstance(objects, list):
            raise ValueError(f"{path}: top-level JSON must be an array")
    else:
        objects = []
        for line in stripped.splitlines():
            if line.strip():
                objects.append(json.loads(line))

    records, skipped = [], 0
    for i, obj in enumerate(objects):
        try:
            records.append(_coerce_review(obj, source, i))
        except ValueError:
            skipped += 1
    if objects and not records:
        raise EmptyCorpusError(f"{path}: no parseable review records")
    return ParseResult(records=records, skipped=skipped)


def parse_sources_file(path) -> list[DataSourceDescriptor]:
    """Load source descriptors from CSV or JSON."""
    raw = Path(path).read_text(encoding="utf-8").strip()
    rows = _rows_from_csv_or_json(raw)
    return [
        DataSourceDescriptor(
            source_id=str(r["source_id"]),
            display_name=str(r.get("display_name", r["source_id"])),
            rank_scale_min=float(r.get("rank_scale_min", 1)),
            rank_scale_max=float(r.get("rank_scale_max", 5)),
        )
        for r in rows
    ]


def parse_hotel_file(path) -> list[HotelRecord]:
    """Load hotel metadata rows (one per hotel/source pair) and merge by hotel.

    Expected header: hotel_id,name,city,region,source_id,rank,votes,views.
    """
    raw = Path(path).read_text(encoding="utf-8").strip()
    hotels: dict[str, HotelRecord] = {}
    for r in _rows_from_csv_or_json(raw):
        hid = str(r["hotel_id"])
        hotel = hotels.get(hid)
        if hotel is None:
            hotel = HotelRecord(
                hotel_id=hid,
                name=str(r.get("name", hid)),
                city=str(r.get("city", "")),
                region=str(r.get("region", "")),
            )
            hotels[hid] = hotel
        sid = str(r.get("source_id", ""))
        if sid:
            hotel.source_rank[sid] = float(r["rank"])
            hotel.source_votes[sid] = int(r["votes"])
        views = int(r.get("views", 0) or 0)
        if views < 0:
            raise ValueError(f"hotel {hid}: negative views")
        hotel.engagement_views = max(hotel.engagement_views, views)
    return sorted(hotels.values(), key=lambda h: h.hotel_id)


def _rows_from_csv_or_json(raw: str) -> list[dict]:
    if raw.startswith("[") or raw.startswith("{"):
        data = json.loads(raw)
        return data if isinstance(data, list) else [data]
    return list(csv.DictReader(raw.splitlines()))


# --- snapshot storage -------------------------------------------------------

class SnapshotStore:
    """Storage abstraction; the default backend is a plain directory."""

    def save(self, snapshot: CorpusSnapshot):
        raise NotImplementedError

    def load(self) -> CorpusSnapshot:
        raise NotImplementedError


class DirectorySnapshotStore(SnapshotStore):
    """One directory: sources, hotels, reviews as newline-delimited JSON."""

    def __init__(self, root):
        self.root = Path(root)

    def save(self, snapshot: CorpusSnapshot):
        snapshot.validate()
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "meta.json").write_text(
            json.dumps({"schema_version": snapshot.schema_version}, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        self._write_ndjson("sources.ndjson", snapshot.sources, key="source_id")
        self._write_ndjson("hotels.ndjson", snapshot.hotels, key="hotel_id")
        self._write_ndjson("reviews.ndjson", snapshot.reviews, key="review_id")

    def _write_ndjson(self, name, items, key):
        lines = [
            json.dumps(asdict(item), sort_keys=True, ensure_ascii=False)
            for item in sorted(items, key=lambda x: getattr(x, key))
        ]
        (self.root / name).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

    def load(self) -> CorpusSnapshot:
        meta = json.loads((self.root / "meta.json").read_text(encoding="utf-8"))
        version = meta.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionError(
                f"snapshot schema_version {version} != supported {SCHEMA_VERSION}"
            )
        sources = [DataSourceDescriptor(**o) for o in self._read_ndjson("sources.ndjson")]
        hotels = [HotelRecord(**o) for o in self._read_ndjson("hotels.ndjson")]
        reviews = [ReviewRecord(**o) for o in self._read_ndjson("reviews.ndjson")]
        snapshot = CorpusSnapshot(
            sources=sources, hotels=hotels, reviews=reviews, schema_version=version
        )
        snapshot.validate()
        return snapshot

    def _read_ndjson(self, name):
        path = self.root / name
        if not path.exists():
            return []
        return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line]


def _as_store(destination) -> SnapshotStore:
    if isinstance(destination, SnapshotStore):
        return destination
    return DirectorySnapshotStore(destination)


def save_snapshot(snapshot: CorpusSnapshot, destination):
    _as_store(destination).save(snapshot)


def load_snapshot(source) -> CorpusSnapshot:
    return _as_store(source).load()
