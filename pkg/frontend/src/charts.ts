// SVG horizontal bar charts built from API payloads. Values are rendered
// exactly as received; the only arithmetic here is pixel scaling.

import { escapeHtml } from "./html.js";

export interface Bar {
  label: string;
  value: number;
  href?: string;
}

const LABEL_WIDTH = 190;
const VALUE_GUTTER = 64;
const BAR_HEIGHT = 18;
const ROW_GAP = 6;

export function barChart(bars: Bar[], width = 640, testId = "chart"): string {
  if (bars.length === 0) {
    return `<p class="empty" data-testid="${escapeHtml(testId)}">nothing to chart</p>`;
  }
  const maxValue = Math.max(...bars.map((b) => b.value), 1);
  const innerWidth = width - LABEL_WIDTH - VALUE_GUTTER;
  const rowHeight = BAR_HEIGHT + ROW_GAP;
  const height = bars.length * rowHeight;
  const rows = bars.map((bar, i) => {
    const y = i * rowHeight;
    const barWidth = Math.max(1, Math.round((bar.value / maxValue) * innerWidth));
    const label = escapeHtml(bar.label);
    const text = `<text class="bar-label" x="${LABEL_WIDTH - 8}" y="${y + BAR_HEIGHT - 5}" text-anchor="end">${label}</text>`;
    const rect = `<rect class="bar" data-value="${bar.value}" x="${LABEL_WIDTH}" y="${y}" width="${barWidth}" height="${BAR_HEIGHT}"></rect>`;
    const value = `<text class="bar-value" x="${LABEL_WIDTH + barWidth + 6}" y="${y + BAR_HEIGHT - 5}">${bar.value.toLocaleString("en-US")}</text>`;
    const row = text + rect + value;
    return bar.href ? `<a href="${escapeHtml(bar.href)}" data-link>${row}</a>` : row;
  });
  return (
    `<svg class="bar-chart" data-testid="${escapeHtml(testId)}" viewBox="0 0 ${width} ${height}" ` +
    `width="${width}" height="${height}" role="img">${rows.join("")}</svg>`
  );
}
