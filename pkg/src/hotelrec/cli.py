"""Command-line driver: ingest, score, recommend, eval, serve, timings."""

from __future__ import annotations

import json
import sys
from dataclasses import asdict
from pathlib import Path

import click

from . import ingest as ingest_mod
from . import recommend as rec_mod
from . import scoring
from .engine import EngineResources, ScoredEngine
from .service import create_app


def _resources(config: str | None) -> EngineResources:
    resources = EngineResources()
    if config:
        resources.guest_profiles = scoring.load_guest_profiles(config)
    return resources


def _load_engine(data_dir: Path, config: str | None) -> ScoredEngine:
    snapshot = ingest_mod.load_snapshot(data_dir / "snapshot")
    return ScoredEngine.build(snapshot, _resources(config))


@click.group()
@click.option(
    "--data-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("hotelrec-data"),
    show_default=True,
    help="Workspace directory holding the snapshot and generated reports.",
)
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Guest-profile config file overriding the built-in defaults.")
@click.pass_context
def main(ctx, data_dir, config):
    """Hotel recommendation engine."""
    ctx.obj = {"data_dir": data_dir, "config": config}


@main.command("ingest")
@click.option("--sources", "sources_file", required=True, type=click.Path(exists=True),
              help="Source descriptor CSV/JSON file.")
@click.option("--hotels", "hotels_file", required=True, type=click.Path(exists=True),
              help="Hotel metadata CSV/JSON file.")
@click.option("--reviews", "review_files", multiple=True, metavar="SOURCE_ID=PATH",
              help="Review JSON file for one source; repeatable.")
@click.pass_context
def ingest_cmd(ctx, sources_file, hotels_file, review_files):
    """Parse source, hotel and review files into a snapshot."""
    sources = ingest_mod.parse_sources_file(sources_file)
    by_id = {s.source_id: s for s in sources}
    hotels = ingest_mod.parse_hotel_file(hotels_file)
    reviews = []
    total_skipped = 0
    for pair in review_files:
        source_id, _, path = pair.partition("=")
        if source_id not in by_id:
            raise click.ClickException(f"unknown source id {source_id!r} in --reviews")
        result = ingest_mod.parse_review_file(path, by_id[source_id])
        reviews.extend(result.records)
        total_skipped += result.skipped
    snapshot = ingest_mod.CorpusSnapshot(sources=sources, hotels=hotels, reviews=reviews)
    ingest_mod.save_snapshot(snapshot, ctx.obj["data_dir"] / "snapshot")
    click.echo(
        f"ingested {len(reviews)} reviews ({total_skipped} skipped), "
        f"{len(hotels)} hotels, {len(sources)} sources -> {ctx.obj['data_dir'] / 'snapshot'}"
    )


@main.command("score")
@click.pass_context
def score_cmd(ctx):
    """Compute all aggregates and materialize them next to the snapshot."""
    eng = _load_engine(ctx.obj["data_dir"], ctx.obj["config"])
    out = {
        "source_aggregates": [
            {
                "hotel_id": a.hotel_id,
                "source_id": a.source_id,
                "aggregated_polarity": a.aggregated_polarity,
                "review_count": a.review_count,
                "normalized_rank": a.normalized_rank,
                "votes": a.votes,
                "weighted_average_polarity": a.weighted_average_polarity,
            }
            for a in sorted(
                eng.source_aggregates.values(), key=lambda a: (a.hotel_id, a.source_id)
            )
        ],
        "hotel_aggregates": [
            {
                "hotel_id": a.hotel_id,
                "source_scores": a.source_scores,
                "views": a.views,
                "cross_source_score": a.cross_source,
                "final_score": a.final_score,
                "fuzzy_class": a.fuzzy_class.name,
                "feature_polarity": a.feature_polarity,
            }
            for a in sorted(eng.hotel_aggregates.values(), key=lambda a: a.hotel_id)
        ],
    }
    path = ctx.obj["data_dir"] / "aggregates.json"
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    click.echo(f"scored {len(out['hotel_aggregates'])} hotels -> {path}")


@main.command("recommend")
@click.option("--guest-type", type=click.Choice(scoring.GUEST_TYPES), default=None)
@click.option("--city", default=None)
@click.option("--region", default=None)
@click.option("--min-rating", type=float, default=None)
@click.option("--name", "name_substring", default=None)
@click.option("--limit", type=int, default=None)
@click.pass_context
def recommend_cmd(ctx, guest_type, city, region, min_rating, name_substring, limit):
    """Print the ranked recommendation list for a query."""
    eng = _load_engine(ctx.obj["data_dir"], ctx.obj["config"])
    entries = rec_mod.recommend(
        rec_mod.RecommendationQuery(
            guest_type=guest_type,
            city=city,
            region=region,
            min_rating=min_rating,
            name_substring=name_substring,
            limit=limit,
        ),
        eng,
    )
    if not entries:
        click.echo("no matches")
        return
    for e in entries:
        click.echo(
            f"{e.rank_position}. {e.name} [{e.hotel_id}] "
            f"class={e.fuzzy_class.name} score={e.final_score:.3f} fit={e.guest_fit:.4f}"
        )


@main.command("eval")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--top-n", type=int, default=3, show_default=True)
@click.pass_context
def eval_cmd(ctx, seed, top_n):
    """Run the incremental evaluation protocol and write the metrics CSV."""
    data_dir = ctx.obj["data_dir"]
    snapshot = ingest_mod.load_snapshot(data_dir / "snapshot")
    table = rec_mod.run_incremental_eval(
        snapshot, _resources(ctx.obj["config"]), seed=seed, top_n=top_n
    )
    csv_text = table.to_csv()
    (data_dir / "eval.csv").write_text(csv_text, encoding="utf-8")
    click.echo(csv_text, nl=False)


@main.command("serve")
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None,
              help="Static frontend build to serve under /ui.")
@click.pass_context
def serve_cmd(ctx, port, host, ui_dir):
    """Serve the JSON query API over HTTP."""
    import uvicorn

    eng = _load_engine(ctx.obj["data_dir"], ctx.obj["config"])
    app = create_app(eng, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command("timings")
@click.pass_context
def timings_cmd(ctx):
    """Time snapshot loading and a recommendation query; write the CSV."""
    data_dir = ctx.obj["data_dir"]
    state = {}

    def load():
        snapshot = ingest_mod.load_snapshot(data_dir / "snapshot")
        state["engine"] = ScoredEngine.build(snapshot, _resources(ctx.obj["config"]))

    def search():
        rec_mod.recommend(rec_mod.RecommendationQuery(), state["engine"])

    report = rec_mod.measure_timings(load, search)
    csv_text = report.to_csv()
    (data_dir / "timings.csv").write_text(csv_text, encoding="utf-8")
    click.echo(csv_text, nl=False)


def run():
    try:
        main(standalone_mode=True)
    except Exception as exc:  # pragma: no cover - click handles most paths
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
