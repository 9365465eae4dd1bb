/** Pure HTML-string renderers; every displayed value comes from the API. */

import type {
  HotelDetail,
  HotelSummary,
  RecommendationEntry,
  ResultRow,
  ResultsViewModel,
} from "./types.js";

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function isRecommendation(row: ResultRow): row is RecommendationEntry {
  return "rank_position" in row;
}

export function renderClassBadge(code: string | null, label?: string | null): string {
  if (code === null) return `<span class="badge badge-none">unscored</span>`;
  const title = label ? ` title="${escapeHtml(label)}"` : "";
  return `<span class="badge badge-${escapeHtml(code.toLowerCase())}"${title}>${escapeHtml(code)}</span>`;
}

function renderRow(row: ResultRow): string {
  if (isRecommendation(row)) {
    return (
      `<li class="result" data-hotel-id="${escapeHtml(row.hotel_id)}">` +
      `<span class="rank">${row.rank_position}.</span> ` +
      `<button class="detail-link" data-hotel-id="${escapeHtml(row.hotel_id)}">${escapeHtml(row.name)}</button> ` +
      renderClassBadge(row.fuzzy_class, row.fuzzy_class_name) +
      ` <span class="score">${row.final_score.toFixed(2)}</span>` +
      `</li>`
    );
  }
  const summary = row as HotelSummary;
  return (
    `<li class="result" data-hotel-id="${escapeHtml(summary.hotel_id)}">` +
    `<button class="detail-link" data-hotel-id="${escapeHtml(summary.hotel_id)}">${escapeHtml(summary.name)}</button> ` +
    `<span class="place">${escapeHtml(summary.city)}, ${escapeHtml(summary.region)}</span> ` +
    renderClassBadge(summary.fuzzy_class) +
    `</li>`
  );
}

export function renderResults(model: ResultsViewModel): string {
  if (model.loading) {
    return `<p class="loading">Searching…</p>`;
  }
  if (model.error !== null) {
    return `<div class="error-banner" role="alert">${escapeHtml(model.error)}</div>`;
  }
  if (model.entries.length === 0) {
    return `<p class="no-matches">No matches.</p>`;
  }
  return `<ol class="results">${model.entries.map(renderRow).join("")}</ol>`;
}

export function renderDetail(detail: HotelDetail): string {
  const sources = Object.keys(detail.source_rank)
    .sort()
    .map(
      (sid) =>
        `<tr><td>${escapeHtml(sid)}</td>` +
        `<td>${detail.source_rank[sid]}</td>` +
        `<td>${detail.source_votes[sid] ?? 0}</td></tr>`,
    )
    .join("");
  const features = Object.entries(detail.feature_polarity)
    .sort(([, a], [, b]) => b - a)
    .map(
      ([feature, value]) =>
        `<li><span class="feature">${escapeHtml(feature)}</span> ` +
        `<span class="polarity">${value.toFixed(4)}</span></li>`,
    )
    .join("");
  return (
    `<section class="detail" data-hotel-id="${escapeHtml(detail.hotel_id)}">` +
    `<h2>${escapeHtml(detail.name)}</h2>` +
    `<p class="place">${escapeHtml(detail.city)}, ${escapeHtml(detail.region)}</p>` +
    `<p class="class-line">Class: ${renderClassBadge(detail.fuzzy_class, detail.fuzzy_class_name)}</p>` +
    `<p class="views">Video views: ${detail.views}</p>` +
    `<table class="sources"><thead><tr><th>Source</th><th>Rank</th><th>Votes</th></tr></thead>` +
    `<tbody>${sources}</tbody></table>` +
    (features
      ? `<ul class="features">${features}</ul>`
      : `<p class="no-features">No feature opinions extracted.</p>`) +
    `</section>`
  );
}

export function renderDetailError(message: string): string {
  return `<div class="error-banner" role="alert">${escapeHtml(message)}</div>`;
}
