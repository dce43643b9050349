// Verdict icons and country flags. The verdict is always conveyed by a text
// label too, never by color alone.

export interface VerdictIcon {
  symbol: string;
  label: string;
  className: string;
}

const VERDICT_ICONS: Record<string, VerdictIcon> = {
  false: { symbol: "✖", label: "False", className: "verdict-false" },
  true: { symbol: "✔", label: "True", className: "verdict-true" },
  mixed: { symbol: "◐", label: "Mixed", className: "verdict-mixed" },
  other: { symbol: "●", label: "Unrated", className: "verdict-other" },
};

export function verdictIcon(verdict: string): VerdictIcon {
  return VERDICT_ICONS[verdict] ?? VERDICT_ICONS.other;
}

const REGIONAL_INDICATOR_A = 0x1f1e6;

/** Two-letter ISO country code to a flag glyph ("US" -> 🇺🇸). */
export function countryFlag(iso2: string): string {
  const code = iso2.trim().toUpperCase();
  if (!/^[A-Z]{2}$/.test(code)) return "";
  return String.fromCodePoint(
    REGIONAL_INDICATOR_A + code.charCodeAt(0) - 65,
    REGIONAL_INDICATOR_A + code.charCodeAt(1) - 65
  );
}
