import { describe, expect, it } from 'vitest';

import {
  clearPendingEdit,
  initialView,
  resultsQuery,
  setPendingEdit,
  toggleSort,
  withPage,
  withSearch,
  withStateFilter,
} from '../src/state.js';

describe('table view state', () => {
  it('starts at publisher ascending, page 0', () => {
    const view = initialView();
    expect(view.sort).toBe('publisher');
    expect(view.order).toBe('asc');
    expect(view.page).toBe(0);
    expect(view.pendingEdits.size).toBe(0);
  });

  it('toggleSort flips direction on the active column', () => {
    let view = initialView();
    view = toggleSort(view, 'publisher');
    expect(view.order).toBe('desc');
    view = toggleSort(view, 'publisher');
    expect(view.order).toBe('asc');
  });

  it('toggleSort on a new column sorts ascending and resets the page', () => {
    let view = withPage(initialView(), 3);
    view = toggleSort(view, 'score');
    expect(view.sort).toBe('score');
    expect(view.order).toBe('asc');
    expect(view.page).toBe(0);
  });

  it('filters and search reset the page', () => {
    let view = withPage(initialView(), 2);
    view = withStateFilter(view, 'P');
    expect(view.page).toBe(0);
    view = withPage(view, 4);
    view = withSearch(view, 'example');
    expect(view.page).toBe(0);
  });

  it('withPage clamps to zero', () => {
    expect(withPage(initialView(), -2).page).toBe(0);
  });

  it('pending edits are per-publisher and removable', () => {
    let view = initialView();
    view = setPendingEdit(view, 'a.example', '75');
    view = setPendingEdit(view, 'b.example', '20');
    expect(view.pendingEdits.get('a.example')).toBe('75');
    view = clearPendingEdit(view, 'a.example');
    expect(view.pendingEdits.has('a.example')).toBe(false);
    expect(view.pendingEdits.get('b.example')).toBe('20');
  });

  it('pending edit updates do not mutate the previous view', () => {
    const before = initialView();
    setPendingEdit(before, 'a.example', '75');
    expect(before.pendingEdits.size).toBe(0);
  });

  it('resultsQuery matches the API parameter names', () => {
    expect(resultsQuery(initialView())).toBe(
      'sort=publisher&order=asc&page=0&page_size=50',
    );
  });

  it('resultsQuery includes filters only when set', () => {
    let view = initialView();
    view = withStateFilter(view, 'A');
    view = withSearch(view, 'outlet');
    view = toggleSort(view, 'confidence');
    const query = resultsQuery(view);
    expect(query).toContain('sort=confidence');
    expect(query).toContain('order=asc');
    expect(query).toContain('state=A');
    expect(query).toContain('search=outlet');
  });
});
