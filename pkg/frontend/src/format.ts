// Presentation helpers shared by the views. Gauge colors derive from the
// server's band table so visual severity always matches the emitted label.

import type { BandConfig, Label } from "./types";

export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function riskColor(label: Label): string {
  switch (label) {
    case "highly_suspicious":
      return "#c0392b";
    case "suspicious":
      return "#e67e22";
    default:
      return "#27ae60";
  }
}

export function labelForScore(score: number, bands: BandConfig): Label {
  if (score < bands.suspicious_threshold) return "safe";
  if (score < bands.high_threshold) return "suspicious";
  return "highly_suspicious";
}

export function labelBadge(label: Label, score?: number): string {
  const text = score === undefined ? label : `${label} ${score}`;
  return `<span class="badge" style="background:${riskColor(label)}">${esc(text)}</span>`;
}

export function scoreGauge(score: number, bands: BandConfig): string {
  const clamped = Math.max(0, Math.min(100, score));
  const color = riskColor(labelForScore(clamped, bands));
  const susp = bands.suspicious_threshold;
  const high = bands.high_threshold;
  return `<svg class="gauge" viewBox="0 0 220 34" role="img" aria-label="risk score ${clamped}">
  <rect x="0" y="12" width="220" height="10" rx="5" fill="#e8e8e8"/>
  <rect x="${(susp / 100) * 220}" y="24" width="1" height="8" fill="#999"/>
  <rect x="${(high / 100) * 220}" y="24" width="1" height="8" fill="#999"/>
  <rect x="0" y="12" width="${(clamped / 100) * 220}" height="10" rx="5" fill="${color}"/>
  <text x="${Math.min(206, (clamped / 100) * 220)}" y="9" font-size="11" text-anchor="middle" fill="#333">${clamped}</text>
</svg>`;
}

export function monthStrip(months: number[]): string {
  const active = new Set(months);
  const cells = Array.from({ length: 12 }, (_, i) => {
    const month = i + 1;
    const on = active.has(month);
    return `<span class="month${on ? " month-on" : ""}" title="month ${month}">${month}</span>`;
  });
  return `<span class="month-strip">${cells.join("")}</span>`;
}

export function matchPercent(score: number): string {
  return `${Math.round(score * 100)}%`;
}
