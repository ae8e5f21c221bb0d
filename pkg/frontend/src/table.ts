import type { SortKey, TableView } from './state.js';
import type { PublisherRecord } from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export const formatScore = (score: number | null): string =>
  score === null ? '—' : score.toFixed(2);

export const formatConfidence = (confidence: number): string =>
  confidence.toFixed(4);

interface Column {
  key: string;
  label: string;
  sortable: boolean;
}

const COLUMNS: Column[] = [
  { key: 'publisher', label: 'publisher', sortable: true },
  { key: 'state', label: 'state', sortable: true },
  { key: 'score', label: 'score', sortable: true },
  { key: 'confidence', label: 'confidence', sortable: true },
  { key: 'label', label: 'label', sortable: false },
  { key: 'n_voters', label: 'voters', sortable: true },
  { key: 'n_nec_urls', label: 'NEC urls', sortable: true },
  { key: 'n_urls', label: 'urls', sortable: false },
  { key: 'n_shares', label: 'shares', sortable: true },
  { key: 'annotate', label: 'annotated score', sortable: false },
];

function headerCell(column: Column, view: TableView): string {
  if (!column.sortable) {
    return `<th>${column.label}</th>`;
  }
  const active = view.sort === (column.key as SortKey);
  const arrow = active ? (view.order === 'asc' ? ' ▲' : ' ▼') : '';
  return (
    `<th class="sortable${active ? ' sorted' : ''}" data-sort="${column.key}">` +
    `${column.label}${arrow}</th>`
  );
}

function annotateCell(record: PublisherRecord, view: TableView): string {
  const publisher = escapeHtml(record.publisher);
  const pending = view.pendingEdits.get(record.publisher);
  const value =
    pending ?? (record.state === 'A' ? String(Math.round(record.score ?? 0)) : '');
  const remove =
    record.state === 'A'
      ? `<button class="remove-btn" data-publisher="${publisher}" ` +
        `title="remove annotation">×</button>`
      : '';
  return (
    `<td class="annotate-cell"><input class="score-input" inputmode="numeric" ` +
    `data-publisher="${publisher}" value="${escapeHtml(value)}" ` +
    `placeholder="0–100">${remove}</td>`
  );
}

export function renderRow(record: PublisherRecord, view: TableView): string {
  const stateClass = `state-${record.state.toLowerCase()}`;
  const label = record.label ?? '';
  return (
    `<tr class="${stateClass}" data-publisher="${escapeHtml(record.publisher)}">` +
    `<td class="publisher">${escapeHtml(record.publisher)}</td>` +
    `<td class="state">${record.state}</td>` +
    `<td class="score">${formatScore(record.score)}</td>` +
    `<td class="confidence">${formatConfidence(record.confidence)}</td>` +
    `<td class="label label-${label.toLowerCase()}">${label}</td>` +
    `<td class="num">${record.n_voters}</td>` +
    `<td class="num">${record.n_nec_urls}</td>` +
    `<td class="num">${record.n_urls}</td>` +
    `<td class="num">${record.n_shares}</td>` +
    annotateCell(record, view) +
    '</tr>'
  );
}

export function renderTable(
  records: PublisherRecord[],
  view: TableView,
): string {
  if (records.length === 0) {
    return '<p class="placeholder">no publishers match this view</p>';
  }
  const head = COLUMNS.map((column) => headerCell(column, view)).join('');
  const body = records.map((record) => renderRow(record, view)).join('');
  return (
    '<table class="results">' +
    `<thead><tr>${head}</tr></thead>` +
    `<tbody>${body}</tbody>` +
    '</table>'
  );
}
