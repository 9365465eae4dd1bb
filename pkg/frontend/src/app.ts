/** Application state: one search form, one results list, one detail panel.
 *
 * At most one search is considered live at a time; when a new search starts
 * while another is in flight, the older response is dropped (latest wins).
 */

import {
  ApiError,
  Fetcher,
  fetchDetail,
  fetchRecommendations,
  fetchSearch,
} from "./api.js";
import { renderDetail, renderDetailError, renderResults } from "./render.js";
import type { ResultsViewModel, SearchFormState } from "./types.js";

export class App {
  results: ResultsViewModel = { entries: [], loading: false, error: null };
  detailHtml = "";
  private searchSequence = 0;

  constructor(private readonly fetcher: Fetcher) {}

  get resultsHtml(): string {
    return renderResults(this.results);
  }

  /** Run a search; a guest type routes to recommendations, otherwise /search. */
  async submitSearch(form: SearchFormState): Promise<void> {
    const ticket = ++this.searchSequence;
    this.results = { entries: [], loading: true, error: null };
    try {
      const entries = form.guestType
        ? await fetchRecommendations(this.fetcher, form)
        : await fetchSearch(this.fetcher, form);
      if (ticket !== this.searchSequence) return; // superseded
      this.results = { entries, loading: false, error: null };
    } catch (err) {
      if (ticket !== this.searchSequence) return;
      this.results = { entries: [], loading: false, error: describeError(err) };
    }
  }

  async openDetail(hotelId: string): Promise<void> {
    try {
      const detail = await fetchDetail(this.fetcher, hotelId);
      this.detailHtml = renderDetail(detail);
    } catch (err) {
      this.detailHtml = renderDetailError(describeError(err));
    }
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  if (err instanceof Error) return `network error: ${err.message}`;
  return "network error";
}
