import { afterEach, describe, expect, test, vi } from "vitest";

import { SearchClient, buildSearchUrl } from "../src/api";
import { parseQueryState } from "../src/state";
import { startApp } from "../src/main";
import emptyFixture from "./fixtures/search-empty.json";

function okResponse(body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status: 200,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  document.body.innerHTML = "";
  history.replaceState(null, "", "/");
});

describe("request construction", () => {
  test("search URL carries the full query state", () => {
    const state = parseQueryState(
      "q=refugees&verdict=false&lang=en&country=US&year_from=2016&year_to=2019&display_lang=pt&expand=true&page=2&page_size=25"
    );
    const url = new URL(buildSearchUrl("http://api.example", state));
    expect(url.pathname).toBe("/v1/search");
    expect(url.searchParams.get("q")).toBe("refugees");
    expect(url.searchParams.getAll("verdict")).toEqual(["false"]);
    expect(url.searchParams.get("year_from")).toBe("2016");
    expect(url.searchParams.get("display_lang")).toBe("pt");
    expect(url.searchParams.get("expand")).toBe("true");
    expect(url.searchParams.get("page")).toBe("2");
    expect(url.searchParams.get("page_size")).toBe("25");
  });
});

describe("URL round-trip", () => {
  test("loading the same results URL re-issues the identical API request", async () => {
    const seen: string[] = [];
    const fetchFn = vi.fn(async (input: RequestInfo | URL) => {
      seen.push(String(input));
      return okResponse(emptyFixture);
    });

    const pageUrl = "?q=greta+thunberg&verdict=mixed&expand=true&page=1";
    for (let load = 0; load < 2; load += 1) {
      history.replaceState(null, "", pageUrl);
      const root = document.createElement("div");
      document.body.appendChild(root);
      startApp(root, new SearchClient("", fetchFn as unknown as typeof fetch));
      await vi.waitFor(() => expect(seen.length).toBe(load + 1));
      root.remove();
    }
    expect(seen[0]).toBe(seen[1]);
  });
});

describe("single in-flight request", () => {
  test("a new submission aborts the prior one", async () => {
    const aborted: boolean[] = [];
    const fetchFn = vi.fn(
      (input: RequestInfo | URL, init?: RequestInit) =>
        new Promise<Response>((resolve, reject) => {
          const signal = init?.signal as AbortSignal;
          const timer = setTimeout(() => resolve(okResponse(emptyFixture)), 50);
          signal.addEventListener("abort", () => {
            clearTimeout(timer);
            aborted.push(true);
            reject(new DOMException("aborted", "AbortError"));
          });
        })
    );
    const client = new SearchClient("", fetchFn as unknown as typeof fetch);
    const first = client.search(parseQueryState("q=first"));
    const second = client.search(parseQueryState("q=second"));
    await expect(first).rejects.toThrow();
    await expect(second).resolves.toBeTruthy();
    expect(aborted).toEqual([true]);
  });
});
