import type { PublisherState } from './types.js';

export type SortKey =
  | 'publisher'
  | 'state'
  | 'score'
  | 'confidence'
  | 'n_voters'
  | 'n_nec_urls'
  | 'n_shares';

export type SortOrder = 'asc' | 'desc';

/**
 * What the table shows, as one value: it maps to exactly one results query,
 * so the server stays the single source of row order.
 */
export interface TableView {
  sort: SortKey;
  order: SortOrder;
  page: number;
  pageSize: number;
  stateFilter: PublisherState | null;
  search: string;
  pendingEdits: Map<string, string>;
}

export function initialView(): TableView {
  return {
    sort: 'publisher',
    order: 'asc',
    page: 0,
    pageSize: 50,
    stateFilter: null,
    search: '',
    pendingEdits: new Map(),
  };
}

/** Clicking the active column flips direction; a new column sorts ascending. */
export function toggleSort(view: TableView, key: SortKey): TableView {
  if (view.sort === key) {
    return { ...view, order: view.order === 'asc' ? 'desc' : 'asc', page: 0 };
  }
  return { ...view, sort: key, order: 'asc', page: 0 };
}

export function withStateFilter(
  view: TableView,
  stateFilter: PublisherState | null,
): TableView {
  return { ...view, stateFilter, page: 0 };
}

export function withSearch(view: TableView, search: string): TableView {
  return { ...view, search, page: 0 };
}

export function withPage(view: TableView, page: number): TableView {
  return { ...view, page: Math.max(0, page) };
}

export function setPendingEdit(
  view: TableView,
  publisher: string,
  raw: string,
): TableView {
  const pendingEdits = new Map(view.pendingEdits);
  pendingEdits.set(publisher, raw);
  return { ...view, pendingEdits };
}

export function clearPendingEdit(view: TableView, publisher: string): TableView {
  if (!view.pendingEdits.has(publisher)) {
    return view;
  }
  const pendingEdits = new Map(view.pendingEdits);
  pendingEdits.delete(publisher);
  return { ...view, pendingEdits };
}

/** The results query string for this view; parameter names match the API. */
export function resultsQuery(view: TableView): string {
  const params = new URLSearchParams({
    sort: view.sort,
    order: view.order,
    page: String(view.page),
    page_size: String(view.pageSize),
  });
  if (view.stateFilter) {
    params.set('state', view.stateFilter);
  }
  if (view.search) {
    params.set('search', view.search);
  }
  return params.toString();
}
