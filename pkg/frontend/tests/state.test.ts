import { describe, expect, test } from "vitest";

import { emptyState, parseQueryState, serializeQueryState, statesEqual, toggleFilter } from "../src/state";
import type { QueryState } from "../src/types";

const SAMPLE_STATES: QueryState[] = [
  { ...emptyState(), q: "refugees" },
  { ...emptyState(), q: "greta thunberg", verdict: ["false", "mixed"], page: 2 },
  { ...emptyState(), q: "governo", lang: ["pt"], country: ["BR"], expand: true },
  { ...emptyState(), q: "nhs", yearFrom: 2016, yearTo: 2019, pageSize: 25 },
  { ...emptyState(), q: "papa", displayLang: "en", source: ["aosfatos"] },
];

describe("query state round-trips through the URL", () => {
  test.each(SAMPLE_STATES.map((s) => [s.q, s] as const))("state %s", (_q, state) => {
    const url = serializeQueryState(state);
    const parsed = parseQueryState(url);
    expect(parsed).toEqual(state);
  });

  test("serialization of a parsed URL is stable", () => {
    const url = "q=refugees&verdict=false&verdict=mixed&lang=en&expand=true&page=3";
    const once = serializeQueryState(parseQueryState(url));
    const twice = serializeQueryState(parseQueryState(once));
    expect(twice).toBe(once);
  });

  test("multi-value filters accept commas and repeats equally", () => {
    const a = parseQueryState("q=x&verdict=false,mixed");
    const b = parseQueryState("q=x&verdict=false&verdict=mixed");
    expect(statesEqual(a, b)).toBe(true);
  });

  test("defaults are omitted from the query string", () => {
    expect(serializeQueryState({ ...emptyState(), q: "x" })).toBe("q=x");
  });
});

describe("facet toggling", () => {
  test("adds then removes a filter value and resets the page", () => {
    const base = { ...emptyState(), q: "x", page: 4 };
    const on = toggleFilter(base, "verdict", "false");
    expect(on.verdict).toEqual(["false"]);
    expect(on.page).toBe(0);
    const off = toggleFilter(on, "verdict", "false");
    expect(off.verdict).toEqual([]);
  });
});
