"""Shared fixtures: the five-hotel, two-source reference corpus."""

import pytest

from hotelrec.engine import EngineResources, ScoredEngine
from hotelrec.ingest import (
    CorpusSnapshot,
    DataSourceDescriptor,
    HotelRecord,
    ReviewRecord,
)

# Published reference numbers for the five-hotel fixture:
# per source: (aggregated polarity A, normalized rank, votes, review count T)
TABLE8 = {
    "H1": {"D1": (31, 3.9, 209301, 1309), "D2": (23, 5.0, 268231, 1519)},
    "H2": {"D1": (-5, 3.4, 38821, 396), "D2": (7, 4.0, 63420, 456)},
    "H3": {"D1": (17, 3.2, 111620, 1189), "D2": (24, 5.0, 127023, 998)},
    "H4": {"D1": (-4, 2.8, 17023, 537), "D2": (-3, 3.5, 35622, 337)},
    "H5": {"D1": (16, 3.5, 29441, 971), "D2": (22, 5.0, 41323, 1117)},
}

# hotel -> (YouTube views, aggregated weighted average polarity D,
#           published final score F, class)
TABLE10 = {
    "H1": (331025, 569795.465, 8.93234, "R"),
    "H2": (89023, 140147.21, 3.92215, "LR"),
    "H3": (284230, 403555.615, 7.63217, "BR"),
    "H4": (56056, 82381.65, 2.08245, "LR"),
    "H5": (78124, 113518.255, 3.12871, "LR"),
}

# weighted average polarity B per hotel/source as published
TABLE9_B = {
    "H1": {"D1": 209304.92, "D2": 268236.01},
    "H2": {"D1": 38824.41, "D2": 63424.01},
    "H3": {"D1": 111623.21, "D2": 127028.02},
    "H4": {"D1": 17025.80, "D2": 35625.50},
    "H5": {"D1": 29460.50, "D2": 41328.01},
}

# (chunk, f_measure, recall, precision) plus the published average row
TABLE11 = [
    ("20%", 0.966, 0.954, 0.978),
    ("40%", 0.956, 0.941, 0.972),
    ("60%", 0.951, 0.936, 0.968),
    ("80%", 0.938, 0.921, 0.956),
    ("100%", 0.924, 0.898, 0.951),
]
TABLE11_AVG = (0.950, 0.930, 0.965)

HOTEL_NAMES = {
    "H1": "SpringHill Suites Denver Downtown",
    "H2": "Amsterdam Court Hotel",
    "H3": "Mandarin Oriental New York",
    "H4": "Millennium Hilton",
    "H5": "Belnord Hotel",
}

HOTEL_CITIES = {
    "H1": ("Denver", "Colorado"),
    "H2": ("New York", "New York"),
    "H3": ("New York", "New York"),
    "H4": ("New York", "New York"),
    "H5": ("New York", "New York"),
}

_REVIEW_TEXTS = [
    ("The room was big and the staff were friendly. Food was delicious.", 5.0),
    ("Great location and very clean rooms. The pool was lovely.", 5.0),
    ("The food was bad and the room was dirty. There is no internet.", 2.0),
    ("Nice hotel with excellent service. The breakfast was tasty.", 4.0),
    ("Terrible experience. The staff were rude and the room was noisy.", 1.0),
    ("Wonderful stay. Comfortable bed and amazing view of the city.", 5.0),
]

_USERS = ["alice", "bob", "carol", "dave", "erin", "frank"]


def build_fixture_snapshot() -> CorpusSnapshot:
    sources = [
        DataSourceDescriptor("D1", "TripAdvisor", 1, 5),
        DataSourceDescriptor("D2", "Expedia", 1, 5),
    ]
    hotels = []
    for hid, per_source in TABLE8.items():
        city, region = HOTEL_CITIES[hid]
        hotels.append(
            HotelRecord(
                hotel_id=hid,
                name=HOTEL_NAMES[hid],
                city=city,
                region=region,
                source_rank={sid: vals[1] for sid, vals in per_source.items()},
                source_votes={sid: vals[2] for sid, vals in per_source.items()},
                engagement_views=TABLE10[hid][0],
            )
        )
    reviews = []
    i = 0
    for hid in TABLE8:
        for sid in ("D1", "D2"):
            for _ in range(3):
                text, overall = _REVIEW_TEXTS[i % len(_REVIEW_TEXTS)]
                reviews.append(
                    ReviewRecord(
                        review_id=f"r{i:03d}",
                        hotel_id=hid,
                        source_id=sid,
                        title=f"review {i}",
                        text=text,
                        ratings={"overall": overall, "service": min(5.0, overall + 0.0)},
                        author_username=_USERS[i % len(_USERS)],
                        date="2018-01-01",
                        helpful_votes=i % 4,
                    )
                )
                i += 1
    return CorpusSnapshot(sources=sources, hotels=hotels, reviews=reviews)


@pytest.fixture(scope="session")
def fixture_snapshot():
    return build_fixture_snapshot()


@pytest.fixture(scope="session")
def resources():
    return EngineResources()


@pytest.fixture(scope="session")
def fixture_engine(fixture_snapshot, resources):
    return ScoredEngine.build(fixture_snapshot, resources)
