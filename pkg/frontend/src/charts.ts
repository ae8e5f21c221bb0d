import type { StateCounts } from './types.js';

// All three plots are static SVG strings rebuilt from each summary payload;
// there is no chart state to keep in sync.

const WIDTH = 340;
const HEIGHT = 200;
const MARGIN = { top: 14, right: 10, bottom: 26, left: 34 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const fmt = (value: number): string => String(Math.round(value * 10) / 10);

function svgOpen(title: string): string {
  return (
    `<svg class="chart" role="img" aria-label="${title}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" xmlns="http://www.w3.org/2000/svg">`
  );
}

function axes(maxValue: number): string {
  const baseline = MARGIN.top + PLOT_H;
  return (
    `<line class="axis" x1="${MARGIN.left}" y1="${baseline}" ` +
    `x2="${MARGIN.left + PLOT_W}" y2="${baseline}"/>` +
    `<text class="tick" x="${MARGIN.left - 4}" y="${MARGIN.top + 4}" ` +
    `text-anchor="end">${maxValue}</text>` +
    `<text class="tick" x="${MARGIN.left - 4}" y="${baseline}" ` +
    `text-anchor="end">0</text>`
  );
}

function placeholder(message: string): string {
  return `<p class="placeholder">${message}</p>`;
}

function histogram(
  buckets: number[],
  labels: string[],
  barClass: string,
  title: string,
  emptyMessage: string,
): string {
  const total = buckets.reduce((sum, count) => sum + count, 0);
  if (total === 0) {
    return placeholder(emptyMessage);
  }
  const max = Math.max(...buckets);
  const step = PLOT_W / buckets.length;
  const barWidth = step - 4;
  const baseline = MARGIN.top + PLOT_H;
  const parts = [svgOpen(title), axes(max)];
  buckets.forEach((count, i) => {
    const height = (count / max) * PLOT_H;
    const x = MARGIN.left + i * step + 2;
    parts.push(
      `<rect class="bar ${barClass}" x="${fmt(x)}" y="${fmt(baseline - height)}" ` +
      `width="${fmt(barWidth)}" height="${fmt(height)}"><title>` +
      `${labels[i]}: ${count}</title></rect>`,
    );
    parts.push(
      `<text class="tick" x="${fmt(x + barWidth / 2)}" y="${baseline + 14}" ` +
      `text-anchor="middle">${labels[i]}</text>`,
    );
  });
  parts.push('</svg>');
  return parts.join('');
}

/** Plot 1: how the annotated scores distribute over ten buckets. */
export function renderScoreHistogram(buckets: number[]): string {
  const labels = buckets.map((_, i) => String(i * 10));
  return histogram(
    buckets,
    labels,
    'score-bar',
    'annotated score histogram',
    'no annotated publishers yet',
  );
}

/** Plot 3: confidence of the predicted publishers, ten buckets of 0.1. */
export function renderConfidenceHistogram(buckets: number[]): string {
  const labels = buckets.map((_, i) => (i / 10).toFixed(1));
  return histogram(
    buckets,
    labels,
    'confidence-bar',
    'prediction confidence histogram',
    'no predicted publishers yet',
  );
}

/**
 * Plot 2: one stacked column of publisher counts, annotated (dark) at the
 * bottom, predicted (light) on top, unclassified flagged beside it.
 */
export function renderStateBar(counts: StateCounts): string {
  const total = counts.annotated + counts.predicted;
  if (total === 0 && counts.unclassified === 0) {
    return placeholder('no publishers yet');
  }
  const baseline = MARGIN.top + PLOT_H;
  const scale = PLOT_H / Math.max(total, 1);
  const annotatedH = counts.annotated * scale;
  const predictedH = counts.predicted * scale;
  const barWidth = 70;
  const x = MARGIN.left + PLOT_W / 3 - barWidth / 2;
  const legendX = MARGIN.left + (2 * PLOT_W) / 3;
  const parts = [svgOpen('publisher states'), axes(total)];
  parts.push(
    `<rect class="bar annotated" x="${fmt(x)}" y="${fmt(baseline - annotatedH)}" ` +
    `width="${barWidth}" height="${fmt(annotatedH)}"/>`,
  );
  parts.push(
    `<rect class="bar predicted" x="${fmt(x)}" ` +
    `y="${fmt(baseline - annotatedH - predictedH)}" ` +
    `width="${barWidth}" height="${fmt(predictedH)}"/>`,
  );
  parts.push(
    `<text class="legend" x="${legendX}" y="${MARGIN.top + 24}">` +
    `${counts.annotated} annotated</text>`,
    `<text class="legend" x="${legendX}" y="${MARGIN.top + 42}">` +
    `${counts.predicted} predicted</text>`,
    `<text class="legend unclassified-note" x="${legendX}" y="${MARGIN.top + 60}">` +
    `${counts.unclassified} unclassified</text>`,
  );
  parts.push('</svg>');
  return parts.join('');
}
