// Thin client for GET /v1/search. At most one request is in flight:
// submitting a new search aborts the previous one.

import type { QueryState, ResultPage } from "./types";

export function buildSearchUrl(base: string, state: QueryState): string {
  const params = new URLSearchParams();
  params.set("q", state.q);
  for (const v of [...state.verdict].sort()) params.append("verdict", v);
  for (const v of [...state.lang].sort()) params.append("lang", v);
  for (const v of [...state.source].sort()) params.append("source", v);
  for (const v of [...state.country].sort()) params.append("country", v);
  if (state.yearFrom !== null) params.set("year_from", String(state.yearFrom));
  if (state.yearTo !== null) params.set("year_to", String(state.yearTo));
  if (state.displayLang) params.set("display_lang", state.displayLang);
  if (state.expand) params.set("expand", "true");
  params.set("page", String(state.page));
  params.set("page_size", String(state.pageSize));
  return `${base}/v1/search?${params.toString()}`;
}

export class SearchClient {
  private inFlight: AbortController | null = null;

  constructor(
    private readonly base: string = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args)
  ) {}

  async search(state: QueryState): Promise<ResultPage> {
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    try {
      const response = await this.fetchFn(buildSearchUrl(this.base, state), {
        signal: controller.signal,
      });
      if (!response.ok) {
        const detail = await response.text();
        throw new Error(`search failed (${response.status}): ${detail}`);
      }
      return (await response.json()) as ResultPage;
    } finally {
      if (this.inFlight === controller) this.inFlight = null;
    }
  }
}
