import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { Fetcher, JsonResponse } from "../src/api.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export interface RecordedResponse {
  status: number;
  body: unknown;
}

export function loadFixture(name: string): RecordedResponse {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), "utf-8"));
}

export function asResponse(recorded: RecordedResponse): JsonResponse {
  return {
    status: recorded.status,
    json: () => Promise.resolve(recorded.body),
  };
}

/** A fetcher serving recorded responses keyed by URL path (before `?`). */
export function fixtureFetcher(routes: Record<string, string>): Fetcher {
  return (url: string) => {
    const path = url.split("?")[0];
    const name = routes[path];
    if (!name) return Promise.reject(new Error(`no fixture for ${url}`));
    return Promise.resolve(asResponse(loadFixture(name)));
  };
}
