import pytest

from hotelrec.engine import EngineResources, ScoredEngine
from hotelrec.ingest import CorpusSnapshot, DataSourceDescriptor, HotelRecord, ReviewRecord

from conftest import TABLE8


class TestBuild:
    def test_aggregates_present_for_all_hotels(self, fixture_engine):
        assert set(fixture_engine.hotel_aggregates) == set(TABLE8)
        assert set(fixture_engine.source_aggregates) == {
            (hid, sid) for hid in TABLE8 for sid in ("D1", "D2")
        }

    def test_final_scores_span_unit_interval(self, fixture_engine):
        scores = [a.final_score for a in fixture_engine.hotel_aggregates.values()]
        assert min(scores) == 0.0 and max(scores) == 10.0
        assert all(a.fuzzy_class is not None for a in fixture_engine.hotel_aggregates.values())

    def test_votes_dominate_ordering(self, fixture_engine):
        # The fixture's vote counts dwarf text polarity, so cross-source
        # scores must follow mean votes plus views.
        aggs = fixture_engine.hotel_aggregates
        assert aggs["H1"].cross_source == max(a.cross_source for a in aggs.values())
        assert aggs["H1"].fuzzy_class.name == "R"

    def test_deterministic_rebuild(self, fixture_snapshot, resources):
        a = ScoredEngine.build(fixture_snapshot, resources)
        b = ScoredEngine.build(fixture_snapshot, resources)
        assert {h: agg.cross_source for h, agg in a.hotel_aggregates.items()} == {
            h: agg.cross_source for h, agg in b.hotel_aggregates.items()
        }
        assert a.review_polarities.keys() == b.review_polarities.keys()

    def test_validates_snapshot(self, resources):
        snapshot = CorpusSnapshot(
            sources=[DataSourceDescriptor("D1", "T", 1, 5)],
            hotels=[],
            reviews=[
                ReviewRecord(
                    review_id="r1", hotel_id="GHOST", source_id="D1", title="", text="x"
                )
            ],
        )
        with pytest.raises(Exception):
            ScoredEngine.build(snapshot, resources)


class TestNoReviewPaths:
    def _snapshot(self):
        return CorpusSnapshot(
            sources=[DataSourceDescriptor("D1", "T", 1, 5)],
            hotels=[
                HotelRecord(
                    hotel_id="HA",
                    name="Ranked",
                    source_rank={"D1": 4.0},
                    source_votes={"D1": 100},
                    engagement_views=50,
                ),
                HotelRecord(hotel_id="HB", name="Bare", engagement_views=7),
            ],
        )

    def test_rank_plus_votes_without_reviews(self, resources):
        eng = ScoredEngine.build(self._snapshot(), resources)
        assert eng.hotel_aggregates["HA"].source_scores == {"D1": 104.0}
        assert eng.hotel_aggregates["HA"].cross_source == 154.0

    def test_views_only_hotel(self, resources):
        eng = ScoredEngine.build(self._snapshot(), resources)
        assert eng.hotel_aggregates["HB"].cross_source == 7.0

    def test_label_percentages_zero(self, resources):
        eng = ScoredEngine.build(self._snapshot(), resources)
        assert eng.label_percentages("HA") == {
            "positive": 0.0,
            "negative": 0.0,
            "neutral": 0.0,
        }

    def test_max_normalized_rank(self, resources):
        eng = ScoredEngine.build(self._snapshot(), resources)
        assert eng.max_normalized_rank("HA") == 4.0
        assert eng.max_normalized_rank("HB") is None


class TestDerivedViews:
    def test_label_percentages_sum_to_100(self, fixture_engine):
        for hid in TABLE8:
            assert sum(fixture_engine.label_percentages(hid).values()) == pytest.approx(100.0)

    def test_feature_matrix_covers_reviews_with_mentions(self, fixture_engine):
        matrix = fixture_engine.feature_matrix()
        assert matrix.total() == sum(len(m) for m in fixture_engine.mentions.values())

    def test_semantic_table_lookup(self, fixture_engine, fixture_snapshot):
        review = fixture_snapshot.reviews[0]
        table = fixture_engine.semantic_table(review.review_id)
        assert all(isinstance(f, str) for f, _ in table.rows)
        with pytest.raises(KeyError):
            fixture_engine.semantic_table("missing")

    def test_feature_polarity_known_features(self, fixture_engine):
        canonical = fixture_engine.resources.synonyms.canonical_features
        for agg in fixture_engine.hotel_aggregates.values():
            assert set(agg.feature_polarity) <= canonical
