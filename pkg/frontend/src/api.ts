/** Thin client for the JSON API: envelope unwrapping and typed requests. */

import type {
  Envelope,
  HotelDetail,
  HotelSummary,
  RecommendationEntry,
  SearchFormState,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly statusCode: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Minimal response shape so tests can stub fetch without a DOM. */
export interface JsonResponse {
  status: number;
  json(): Promise<unknown>;
}

export type Fetcher = (url: string) => Promise<JsonResponse>;

export function buildQuery(params: Record<string, string>): string {
  const pairs = Object.entries(params).filter(([, value]) => value !== "");
  if (pairs.length === 0) return "";
  const search = new URLSearchParams(pairs);
  return `?${search.toString()}`;
}

/**
 * Unwrap the `{data, error}` envelope, throwing ApiError on any error body.
 * A body that is not a well-formed envelope also raises, so a misconfigured
 * backend never renders as an empty result list.
 */
export async function requestJson<T>(fetcher: Fetcher, url: string): Promise<T> {
  const response = await fetcher(url);
  const body = (await response.json()) as Envelope<T>;
  if (body === null || typeof body !== "object" || !("data" in body)) {
    throw new ApiError(response.status, "bad_envelope", "malformed server response");
  }
  if (body.error !== null && body.error !== undefined) {
    throw new ApiError(body.error.status_code, body.error.code, body.error.message);
  }
  if (response.status !== 200) {
    throw new ApiError(response.status, "http_error", `unexpected status ${response.status}`);
  }
  return body.data as T;
}

export function fetchRecommendations(
  fetcher: Fetcher,
  form: SearchFormState,
): Promise<RecommendationEntry[]> {
  const query = buildQuery({
    guesttype: form.guestType,
    city: form.city,
    region: form.region,
  });
  return requestJson(fetcher, `/hotelrecommendation${query}`);
}

export function fetchSearch(
  fetcher: Fetcher,
  form: SearchFormState,
): Promise<HotelSummary[]> {
  const query = buildQuery({
    searchtitle: form.searchTitle,
    city: form.city,
    region: form.region,
    minrating: form.minRating,
  });
  return requestJson(fetcher, `/search${query}`);
}

export function fetchDetail(fetcher: Fetcher, hotelId: string): Promise<HotelDetail> {
  return requestJson(fetcher, `/hoteldetail${buildQuery({ id: hotelId })}`);
}
