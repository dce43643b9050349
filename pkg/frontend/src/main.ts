// App bootstrap: the URL drives everything. A query in the URL means results
// mode; no query means the landing page. Back/forward restore prior queries
// by re-reading the URL.

import { SearchClient } from "./api";
import {
  renderError,
  renderLanding,
  renderLoading,
  renderResults,
  type ResultCallbacks,
} from "./render";
import { parseQueryState, serializeQueryState, toggleFilter } from "./state";
import { SUPPORTED_DISPLAY_LANGUAGES, type QueryState } from "./types";

const API_BASE = (window as { UNTRUE_API_BASE?: string }).UNTRUE_API_BASE ?? "";

export function startApp(root: HTMLElement, client: SearchClient = new SearchClient(API_BASE)): void {
  let generation = 0;

  function navigate(state: QueryState): void {
    const query = serializeQueryState(state);
    history.pushState(null, "", query ? `?${query}` : location.pathname);
    void route();
  }

  const callbacks: ResultCallbacks = {
    onToggleFilter: (facet, value) => {
      navigate(toggleFilter(parseQueryState(location.search), facet, value));
    },
    onYearFilter: (year) => {
      const state = parseQueryState(location.search);
      navigate({ ...state, yearFrom: year, yearTo: year, page: 0 });
    },
    onPageChange: (page) => {
      navigate({ ...parseQueryState(location.search), page });
    },
    onDisplayLanguage: (code) => {
      navigate({ ...parseQueryState(location.search), displayLang: code });
    },
  };

  async function route(): Promise<void> {
    const mine = ++generation;
    const state = parseQueryState(location.search);
    root.replaceChildren();
    if (!state.q) {
      root.appendChild(
        renderLanding((q) => navigate({ ...state, q, page: 0 }))
      );
      return;
    }
    root.appendChild(renderLoading());
    try {
      const page = await client.search(state);
      if (mine !== generation) return; // a newer navigation superseded this one
      root.replaceChildren(
        renderResults(page, state, callbacks, SUPPORTED_DISPLAY_LANGUAGES)
      );
    } catch (err) {
      if ((err as Error).name === "AbortError" || mine !== generation) return;
      root.replaceChildren(renderError(`Search failed: ${(err as Error).message}`));
    }
  }

  window.addEventListener("popstate", () => void route());
  void route();
}

const mount = document.getElementById("app");
if (mount) {
  startApp(mount);
}
