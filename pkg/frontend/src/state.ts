// Query state <-> URL serialization. The URL is the single source of truth:
// reloading any results URL reproduces the identical API request.

import type { QueryState } from "./types";

export const DEFAULT_PAGE_SIZE = 10;

export function emptyState(): QueryState {
  return {
    q: "",
    verdict: [],
    lang: [],
    source: [],
    country: [],
    yearFrom: null,
    yearTo: null,
    displayLang: null,
    expand: false,
    page: 0,
    pageSize: DEFAULT_PAGE_SIZE,
  };
}

function multi(params: URLSearchParams, key: string): string[] {
  const values: string[] = [];
  for (const raw of params.getAll(key)) {
    for (const part of raw.split(",")) {
      const trimmed = part.trim();
      if (trimmed) values.push(trimmed);
    }
  }
  return [...new Set(values)].sort();
}

function intOrNull(raw: string | null): number | null {
  if (raw === null || raw === "") return null;
  const value = Number.parseInt(raw, 10);
  return Number.isNaN(value) ? null : value;
}

export function parseQueryState(search: string): QueryState {
  const params = new URLSearchParams(search);
  const state = emptyState();
  state.q = (params.get("q") ?? "").trim();
  state.verdict = multi(params, "verdict");
  state.lang = multi(params, "lang");
  state.source = multi(params, "source");
  state.country = multi(params, "country");
  state.yearFrom = intOrNull(params.get("year_from"));
  state.yearTo = intOrNull(params.get("year_to"));
  state.displayLang = params.get("display_lang") || null;
  state.expand = params.get("expand") === "true";
  state.page = intOrNull(params.get("page")) ?? 0;
  state.pageSize = intOrNull(params.get("page_size")) ?? DEFAULT_PAGE_SIZE;
  return state;
}

/** Canonical query string: stable key order, defaults omitted. */
export function serializeQueryState(state: QueryState): string {
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
  if (state.page !== 0) params.set("page", String(state.page));
  if (state.pageSize !== DEFAULT_PAGE_SIZE) params.set("page_size", String(state.pageSize));
  return params.toString();
}

export function statesEqual(a: QueryState, b: QueryState): boolean {
  return serializeQueryState(a) === serializeQueryState(b);
}

/** Toggle one facet filter value on or off, resetting pagination. */
export function toggleFilter(
  state: QueryState,
  facet: "verdict" | "lang" | "source" | "country",
  value: string
): QueryState {
  const current = new Set(state[facet]);
  if (current.has(value)) {
    current.delete(value);
  } else {
    current.add(value);
  }
  return { ...state, [facet]: [...current].sort(), page: 0 };
}
