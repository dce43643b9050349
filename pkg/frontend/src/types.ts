// Wire types for the /v1 search API.

export interface TranslatedFields {
  language: string;
  review_title: string;
  excerpt: string;
  provenance: "translated" | "untranslated";
}

export interface Hit {
  record_id: string;
  score: number;
  verdict: "true" | "false" | "mixed" | "other";
  review_title: string;
  date_published: string | null;
  country: string;
  review_url: string;
  excerpt: string;
  language: string;
  translated?: TranslatedFields;
}

export type FacetCounts = Record<string, Record<string, number>>;

export interface Expansion {
  entity_ids: string[];
  added_terms: string[];
}

export interface ResultPage {
  total_hits: number;
  elapsed_ms: number;
  page: number;
  page_size: number;
  hits: Hit[];
  facet_counts: FacetCounts;
  expansion: Expansion | null;
}

/** Full query state; round-trips through the page URL. */
export interface QueryState {
  q: string;
  verdict: string[];
  lang: string[];
  source: string[];
  country: string[];
  yearFrom: number | null;
  yearTo: number | null;
  displayLang: string | null;
  expand: boolean;
  page: number;
  pageSize: number;
}

export const SUPPORTED_DISPLAY_LANGUAGES = ["en", "pt", "de"] as const;
