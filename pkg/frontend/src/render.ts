// DOM rendering. Every displayed datum comes straight from an API response
// field; there is no client-side re-ranking or filtering.

import { countryFlag, verdictIcon } from "./icons";
import type { Hit, QueryState, ResultPage } from "./types";

export interface ResultCallbacks {
  onToggleFilter: (facet: "verdict" | "lang" | "source" | "country", value: string) => void;
  onYearFilter: (year: number | null) => void;
  onPageChange: (page: number) => void;
  onDisplayLanguage: (code: string | null) => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderLanding(onSubmit: (q: string) => void): HTMLElement {
  const root = el("main", "landing");
  root.appendChild(el("h1", "brand", "Search fact-checked claims"));
  const form = el("form", "search-form");
  const input = el("input", "search-box") as HTMLInputElement;
  input.type = "search";
  input.name = "q";
  input.placeholder = "Search a claim, a name, a rumor…";
  input.autofocus = true;
  const button = el("button", "search-submit", "Search");
  button.type = "submit";
  const error = el("p", "inline-error");
  error.hidden = true;
  form.append(input, button);
  root.append(form, error);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const q = input.value.trim();
    if (!q) {
      error.textContent = "Type something to search for.";
      error.hidden = false;
      return;
    }
    error.hidden = true;
    onSubmit(q);
  });
  queueMicrotask(() => input.focus());
  return root;
}

function renderTranslatableText(
  role: "title" | "excerpt",
  original: string,
  hit: Hit,
  state: QueryState
): HTMLElement {
  const container = el("div", `hit-${role}`);
  container.dataset.role = role;
  const text = el(role === "title" ? "h3" : "p", "display-text");
  const translated = hit.translated;
  const wantsTranslation =
    state.displayLang !== null && state.displayLang !== hit.language;

  if (translated && translated.provenance === "translated") {
    const alternative = role === "title" ? translated.review_title : translated.excerpt;
    text.textContent = alternative;
    const badge = el("span", "badge badge-translated", "auto-translated");
    const toggle = el("button", "toggle-original", "show original");
    toggle.type = "button";
    let showingOriginal = false;
    toggle.addEventListener("click", () => {
      showingOriginal = !showingOriginal;
      text.textContent = showingOriginal ? original : alternative;
      toggle.textContent = showingOriginal ? "show translation" : "show original";
    });
    container.append(text, badge, toggle);
  } else if (wantsTranslation) {
    // Provider failed or declined: keep the original and say so.
    text.textContent = original;
    container.append(text, el("span", "badge badge-notice", "translation unavailable"));
  } else {
    text.textContent = original;
    container.append(text);
  }
  return container;
}

/** One result row with the six display elements:
 *  verdict icon, title, date, country, source link, excerpt. */
export function renderHitRow(hit: Hit, state: QueryState): HTMLElement {
  const row = el("article", "hit-row");
  row.dataset.recordId = hit.record_id;

  const icon = verdictIcon(hit.verdict);
  const verdictNode = el("span", `hit-verdict ${icon.className}`);
  verdictNode.dataset.role = "verdict";
  const symbol = el("span", "verdict-symbol", icon.symbol);
  symbol.setAttribute("aria-hidden", "true");
  verdictNode.append(symbol, el("span", "verdict-label", icon.label));
  row.appendChild(verdictNode);

  row.appendChild(renderTranslatableText("title", hit.review_title, hit, state));

  if (hit.date_published) {
    const date = el("time", "hit-date", hit.date_published);
    date.dataset.role = "date";
    date.setAttribute("datetime", hit.date_published);
    row.appendChild(date);
  }

  const country = el("span", "hit-country");
  country.dataset.role = "country";
  const flag = el("span", "country-flag", countryFlag(hit.country));
  flag.setAttribute("aria-hidden", "true");
  country.append(flag, el("span", "country-code", hit.country));
  row.appendChild(country);

  const link = el("a", "hit-link", "read the original fact check") as HTMLAnchorElement;
  link.dataset.role = "link";
  link.href = hit.review_url;
  link.rel = "noopener";
  row.appendChild(link);

  row.appendChild(renderTranslatableText("excerpt", hit.excerpt, hit, state));
  return row;
}

const FACET_ORDER: Array<{ key: string; label: string }> = [
  { key: "verdict", label: "Verdict" },
  { key: "language", label: "Language" },
  { key: "source", label: "Source" },
  { key: "country", label: "Country" },
  { key: "year", label: "Year" },
];

const FACET_TO_FILTER: Record<string, "verdict" | "lang" | "source" | "country"> = {
  verdict: "verdict",
  language: "lang",
  source: "source",
  country: "country",
};

function isFacetChecked(facet: string, value: string, state: QueryState): boolean {
  if (facet === "year") {
    return state.yearFrom !== null && String(state.yearFrom) === value && state.yearFrom === state.yearTo;
  }
  return state[FACET_TO_FILTER[facet]].includes(value);
}

export function renderFacets(
  page: ResultPage,
  state: QueryState,
  callbacks: ResultCallbacks
): HTMLElement {
  const sidebar = el("aside", "facets");
  for (const { key, label } of FACET_ORDER) {
    const counts = page.facet_counts[key] ?? {};
    if (Object.keys(counts).length === 0) continue;
    const group = el("fieldset", "facet-group");
    group.dataset.facet = key;
    group.appendChild(el("legend", "facet-title", label));
    for (const [value, count] of Object.entries(counts)) {
      const item = el("label", "facet-item");
      const checkbox = el("input") as HTMLInputElement;
      checkbox.type = "checkbox";
      checkbox.value = value;
      checkbox.checked = isFacetChecked(key, value, state);
      checkbox.addEventListener("change", () => {
        if (key === "year") {
          const year = Number.parseInt(value, 10);
          callbacks.onYearFilter(checkbox.checked && !Number.isNaN(year) ? year : null);
        } else {
          callbacks.onToggleFilter(FACET_TO_FILTER[key], value);
        }
      });
      item.append(
        checkbox,
        el("span", "facet-value", value),
        el("span", "facet-count", String(count))
      );
      group.appendChild(item);
    }
    sidebar.appendChild(group);
  }
  return sidebar;
}

export function renderPagination(
  page: ResultPage,
  callbacks: ResultCallbacks
): HTMLElement {
  const nav = el("nav", "pagination");
  const pageCount = Math.ceil(page.total_hits / page.page_size);
  if (pageCount <= 1) return nav;
  for (let i = 0; i < pageCount && i < 20; i += 1) {
    const button = el("button", i === page.page ? "page current" : "page", String(i + 1));
    button.type = "button";
    button.disabled = i === page.page;
    button.addEventListener("click", () => callbacks.onPageChange(i));
    nav.appendChild(button);
  }
  return nav;
}

export function renderLanguageSelector(
  state: QueryState,
  languages: readonly string[],
  callbacks: ResultCallbacks
): HTMLElement {
  const wrapper = el("label", "display-language", "Show results in: ");
  const select = el("select") as HTMLSelectElement;
  select.name = "display_lang";
  const original = el("option", undefined, "original language") as HTMLOptionElement;
  original.value = "";
  select.appendChild(original);
  for (const code of languages) {
    const option = el("option", undefined, code) as HTMLOptionElement;
    option.value = code;
    select.appendChild(option);
  }
  select.value = state.displayLang ?? "";
  select.addEventListener("change", () => {
    callbacks.onDisplayLanguage(select.value || null);
  });
  wrapper.appendChild(select);
  return wrapper;
}

export function renderResults(
  page: ResultPage,
  state: QueryState,
  callbacks: ResultCallbacks,
  languages: readonly string[]
): HTMLElement {
  const root = el("section", "results");

  const header = el("header", "results-header");
  header.appendChild(
    el(
      "p",
      "results-summary",
      `${page.total_hits} results (${page.elapsed_ms.toFixed(1)} ms)`
    )
  );
  header.appendChild(renderLanguageSelector(state, languages, callbacks));
  root.appendChild(header);

  if (page.total_hits === 0) {
    root.appendChild(el("p", "no-results", "No results. Try other words or fewer filters."));
    return root; // facets stay hidden on an empty page
  }

  const body = el("div", "results-body");
  body.appendChild(renderFacets(page, state, callbacks));
  const list = el("div", "hit-list");
  for (const hit of page.hits.slice(0, page.page_size)) {
    list.appendChild(renderHitRow(hit, state));
  }
  body.appendChild(list);
  root.appendChild(body);
  root.appendChild(renderPagination(page, callbacks));
  return root;
}

export function renderError(message: string): HTMLElement {
  return el("p", "error-banner", message);
}

export function renderLoading(): HTMLElement {
  return el("p", "loading", "Searching…");
}
