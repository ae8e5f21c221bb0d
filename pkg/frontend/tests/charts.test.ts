import { describe, expect, it } from 'vitest';

import {
  renderConfidenceHistogram,
  renderScoreHistogram,
  renderStateBar,
} from '../src/charts.js';

function rectAttrs(svg: string, className: string) {
  const pattern = new RegExp(
    `<rect class="bar ${className}"[^>]*x="([\\d.]+)" y="([\\d.]+)" ` +
    `width="([\\d.]+)" height="([\\d.]+)"`,
    'g',
  );
  const out = [];
  for (const match of svg.matchAll(pattern)) {
    out.push({
      x: Number(match[1]),
      y: Number(match[2]),
      width: Number(match[3]),
      height: Number(match[4]),
    });
  }
  return out;
}

describe('score histogram', () => {
  it('draws one bar per bucket with proportional heights', () => {
    const buckets = [0, 0, 0, 0, 0, 0, 0, 0, 1, 2];
    const svg = renderScoreHistogram(buckets);
    const bars = rectAttrs(svg, 'score-bar');
    expect(bars.length).toBe(10);
    const tall = bars[9]!;
    const half = bars[8]!;
    expect(half.height).toBeCloseTo(tall.height / 2, 0);
    expect(bars[0]!.height).toBe(0);
  });

  it('labels buckets by their lower bound', () => {
    const svg = renderScoreHistogram([1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    expect(svg).toContain('>0</text>');
    expect(svg).toContain('>90</text>');
  });

  it('renders a placeholder when no scores exist', () => {
    const html = renderScoreHistogram(new Array(10).fill(0));
    expect(html).toContain('placeholder');
    expect(html).not.toContain('<svg');
  });
});

describe('confidence histogram', () => {
  it('uses 0.1-wide bucket labels', () => {
    const svg = renderConfidenceHistogram([0, 0, 1, 0, 0, 0, 0, 0, 0, 3]);
    expect(svg).toContain('>0.2</text>');
    expect(svg).toContain('>0.9</text>');
    expect(rectAttrs(svg, 'confidence-bar').length).toBe(10);
  });

  it('renders a placeholder when nothing is predicted', () => {
    expect(renderConfidenceHistogram(new Array(10).fill(0))).toContain(
      'placeholder',
    );
  });
});

describe('state bar', () => {
  it('stacks the annotated segment under the predicted one', () => {
    const svg = renderStateBar({ annotated: 2, predicted: 3, unclassified: 1 });
    const annotated = rectAttrs(svg, 'annotated')[0]!;
    const predicted = rectAttrs(svg, 'predicted')[0]!;
    // Same column, predicted sits directly on top of annotated.
    expect(predicted.x).toBe(annotated.x);
    expect(annotated.y).toBeGreaterThan(predicted.y);
    expect(predicted.y + predicted.height).toBeCloseTo(annotated.y, 1);
    // Heights split 2:3.
    expect(annotated.height / predicted.height).toBeCloseTo(2 / 3, 2);
  });

  it('flags the unclassified count beside the bar', () => {
    const svg = renderStateBar({ annotated: 2, predicted: 3, unclassified: 1 });
    expect(svg).toContain('2 annotated');
    expect(svg).toContain('3 predicted');
    expect(svg).toMatch(/unclassified-note[^>]*>1 unclassified/);
  });

  it('handles an annotated-only summary', () => {
    const svg = renderStateBar({ annotated: 4, predicted: 0, unclassified: 0 });
    const annotated = rectAttrs(svg, 'annotated')[0]!;
    expect(annotated.height).toBeGreaterThan(0);
    expect(rectAttrs(svg, 'predicted')[0]!.height).toBe(0);
  });

  it('renders a placeholder when there are no publishers', () => {
    expect(
      renderStateBar({ annotated: 0, predicted: 0, unclassified: 0 }),
    ).toContain('placeholder');
  });
});
