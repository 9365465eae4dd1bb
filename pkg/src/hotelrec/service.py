"""Read-only JSON query service over a scored snapshot.

Five GET routes: /search, /getratings, /dispratings, /hotelrecommendation
and /hoteldetail.  Every response is a UTF-8 JSON envelope
``{"data": ..., "error": null | {status_code, code, message}}``.
Requests never mutate the snapshot; replacing it after a re-score is an
atomic attribute swap.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import scoring
from .engine import ScoredEngine
from .ingest import normalize_rank
from .recommend import RecommendationQuery, recommend

DEFAULT_LIMIT = 50


@dataclass
class ApiError(Exception):
    status_code: int
    code: str
    message: str

    def body(self):
        return {
            "data": None,
            "error": {
                "status_code": self.status_code,
                "code": self.code,
                "message": self.message,
            },
        }


@dataclass
class QueryLogEntry:
    timestamp: float
    method: str
    parameters: dict
    result_count: int
    elapsed_ms: float


def _ok(data):
    return JSONResponse(status_code=200, content={"data": data, "error": None})


def _parse_float(raw: str, name: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ApiError(400, "bad_parameter", f"{name} must be a number, got {raw!r}")


def _parse_int(raw: str, name: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ApiError(400, "bad_parameter", f"{name} must be an integer, got {raw!r}")


def _entry_payload(entry) -> dict:
    return {
        "hotel_id": entry.hotel_id,
        "name": entry.name,
        "fuzzy_class": entry.fuzzy_class.name,
        "fuzzy_class_name": entry.fuzzy_class.value,
        "final_score": entry.final_score,
        "guest_fit": entry.guest_fit,
        "rank_position": entry.rank_position,
    }


class RecommenderService:
    """Holds the scored engine; swap `engine` atomically to re-score."""

    def __init__(self, engine: ScoredEngine):
        self.engine = engine
        self.query_log: list[QueryLogEntry] = []

    def _log(self, method, parameters, count, elapsed_ms):
        self.query_log.append(
            QueryLogEntry(
                timestamp=time.time(),
                method=method,
                parameters={k: v for k, v in parameters.items() if v is not None},
                result_count=count,
                elapsed_ms=elapsed_ms,
            )
        )

    def _summary(self, hotel) -> dict:
        eng = self.engine
        agg = eng.hotel_aggregates[hotel.hotel_id]
        return {
            "hotel_id": hotel.hotel_id,
            "name": hotel.name,
            "city": hotel.city,
            "region": hotel.region,
            "max_normalized_rank": eng.max_normalized_rank(hotel.hotel_id),
            "fuzzy_class": agg.fuzzy_class.name if agg.fuzzy_class else None,
            "final_score": agg.final_score,
        }

    def search(self, searchtitle=None, city=None, region=None, minrating=None, limit=None):
        if searchtitle is None and city is None and region is None and minrating is None:
            raise ApiError(400, "missing_parameters", "supply at least one search parameter")
        min_rating = _parse_float(minrating, "minrating") if minrating is not None else None
        limit = _parse_int(limit, "limit") if limit is not None else DEFAULT_LIMIT
        eng = self.engine
        start = time.perf_counter()
        results = []
        for hotel in eng.snapshot.hotels:
            if searchtitle and searchtitle.lower() not in hotel.name.lower():
                continue
            if city and hotel.city.lower() != city.lower():
                continue
            if region and hotel.region.lower() != region.lower():
                continue
            if min_rating is not None:
                best = eng.max_normalized_rank(hotel.hotel_id)
                if best is None or best < min_rating:
                    continue
            results.append(self._summary(hotel))
        results = results[:limit]
        self._log(
            "search",
            {"searchtitle": searchtitle, "city": city, "region": region, "minrating": minrating},
            len(results),
            (time.perf_counter() - start) * 1000,
        )
        return results

    def get_ratings(self, hotelid=None):
        if hotelid is None:
            raise ApiError(400, "missing_parameters", "hotelid is required")
        eng = self.engine
        try:
            hotel = eng.snapshot.hotel_by_id(hotelid)
        except KeyError:
            raise ApiError(404, "unknown_hotel", f"no hotel with id {hotelid!r}")
        per_source = {}
        for sid in sorted(hotel.source_rank):
            source = eng.snapshot.source_by_id(sid)
            agg = eng.source_aggregates.get((hotelid, sid))
            per_source[sid] = {
                "display_name": source.display_name,
                "normalized_rank": normalize_rank(hotel.source_rank[sid], source),
                "votes": hotel.source_votes.get(sid, 0),
                "review_count": agg.review_count if agg else 0,
            }
        return {
            "hotel_id": hotelid,
            "sources": per_source,
            "label_percentages": eng.label_percentages(hotelid),
        }

    def disp_ratings(self, ratingstars=None, limit=None):
        if ratingstars is None:
            raise ApiError(400, "missing_parameters", "ratingstars is required")
        stars = _parse_int(ratingstars, "ratingstars")
        if not 1 <= stars <= 5:
            raise ApiError(400, "bad_parameter", "ratingstars must be between 1 and 5")
        limit = _parse_int(limit, "limit") if limit is not None else DEFAULT_LIMIT
        eng = self.engine
        results = []
        for hotel in eng.snapshot.hotels:
            best = eng.max_normalized_rank(hotel.hotel_id)
            if best is not None and round(best) == stars:
                results.append(self._summary(hotel))
        return results[:limit]

    def hotel_recommendation(self, guesttype=None, city=None, region=None, limit=None):
        if guesttype is None:
            raise ApiError(400, "missing_parameters", "guesttype is required")
        if guesttype not in scoring.GUEST_TYPES:
            raise ApiError(
                400,
                "bad_parameter",
                f"unknown guesttype {guesttype!r}; valid values: {', '.join(scoring.GUEST_TYPES)}",
            )
        limit = _parse_int(limit, "limit") if limit is not None else DEFAULT_LIMIT
        start = time.perf_counter()
        entries = recommend(
            RecommendationQuery(guest_type=guesttype, city=city, region=region, limit=limit),
            self.engine,
        )
        self._log(
            "hotelrecommendation",
            {"guesttype": guesttype, "city": city, "region": region},
            len(entries),
            (time.perf_counter() - start) * 1000,
        )
        return [_entry_payload(e) for e in entries]

    def hotel_detail(self, id=None):
        if id is None:
            raise ApiError(400, "missing_parameters", "id is required")
        eng = self.engine
        try:
            hotel = eng.snapshot.hotel_by_id(id)
        except KeyError:
            raise ApiError(404, "unknown_hotel", f"no hotel with id {id!r}")
        agg = eng.hotel_aggregates[hotel.hotel_id]
        top_features = sorted(
            agg.feature_polarity.items(), key=lambda kv: (-kv[1], kv[0])
        )
        return {
            "hotel_id": hotel.hotel_id,
            "name": hotel.name,
            "city": hotel.city,
            "region": hotel.region,
            "views": hotel.engagement_views,
            "source_rank": hotel.source_rank,
            "source_votes": hotel.source_votes,
            "source_scores": agg.source_scores,
            "cross_source_score": agg.cross_source,
            "final_score": agg.final_score,
            "fuzzy_class": agg.fuzzy_class.name if agg.fuzzy_class else None,
            "fuzzy_class_name": agg.fuzzy_class.value if agg.fuzzy_class else None,
            "feature_polarity": dict(top_features),
        }


def create_app(engine: ScoredEngine, ui_dir: str | Path | None = None) -> FastAPI:
    service = RecommenderService(engine)
    app = FastAPI(title="hotelrec", docs_url=None, redoc_url=None)
    app.state.service = service

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status_code, content=exc.body())

    @app.exception_handler(Exception)
    async def _unexpected(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content=ApiError(500, "internal_error", str(exc)).body(),
        )

    @app.get("/search")
    async def search(
        searchtitle: str | None = None,
        city: str | None = None,
        region: str | None = None,
        minrating: str | None = None,
        limit: str | None = None,
    ):
        return _ok(service.search(searchtitle, city, region, minrating, limit))

    @app.get("/getratings")
    async def getratings(hotelid: str | None = None):
        return _ok(service.get_ratings(hotelid))

    @app.get("/dispratings")
    async def dispratings(ratingstars: str | None = None, limit: str | None = None):
        return _ok(service.disp_ratings(ratingstars, limit))

    @app.get("/hotelrecommendation")
    async def hotelrecommendation(
        guesttype: str | None = None,
        city: str | None = None,
        region: str | None = None,
        limit: str | None = None,
    ):
        return _ok(service.hotel_recommendation(guesttype, city, region, limit))

    @app.get("/hoteldetail")
    async def hoteldetail(id: str | None = None):
        return _ok(service.hotel_detail(id))

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
