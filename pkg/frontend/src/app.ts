import { ApiClient, ApiError } from './api.js';
import {
  renderConfidenceHistogram,
  renderScoreHistogram,
  renderStateBar,
} from './charts.js';
import { pollUntilDone } from './poll.js';
import {
  clearPendingEdit,
  initialView,
  resultsQuery,
  setPendingEdit,
  toggleSort,
  withPage,
  withSearch,
  withStateFilter,
  type SortKey,
  type TableView,
} from './state.js';
import { escapeHtml, renderTable } from './table.js';
import type {
  JobStatus,
  PublisherState,
  ResultsPage,
  Suggestion,
  Summary,
} from './types.js';
import { checkScore } from './validate.js';

const PHASES = [
  'Queued',
  'Parsing',
  'FittingModel',
  'Validating',
  'DetectingCommunities',
  'Scoring',
  'Done',
];

export interface ConsoleOptions {
  pollIntervalMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

export interface ConsoleApp {
  processFiles(): Promise<void>;
  processDemo(): Promise<void>;
  /** Settles when every queued handler (edits, refetches) has finished. */
  idle(): Promise<void>;
  jobId(): string | null;
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    const rows = error.payload['rows'];
    if (Array.isArray(rows) && rows.length > 0) {
      const shown = rows
        .slice(0, 3)
        .map((row) => `line ${row.line}: ${row.reason}`)
        .join('; ');
      return `${error.message} (${shown}${rows.length > 3 ? '; …' : ''})`;
    }
    return error.message;
  }
  return error instanceof Error ? error.message : String(error);
}

export function initConsole(
  doc: Document,
  api: ApiClient,
  options: ConsoleOptions = {},
): ConsoleApp {
  const el = <T extends HTMLElement>(id: string): T => {
    const node = doc.getElementById(id);
    if (!node) {
      throw new Error(`missing element #${id}`);
    }
    return node as T;
  };

  const edgeInput = el<HTMLInputElement>('edge-file');
  const baseInput = el<HTMLInputElement>('base-file');
  const processBtn = el<HTMLButtonElement>('process-btn');
  const demoBtn = el<HTMLButtonElement>('demo-btn');
  const uploadError = el('upload-error');
  const progress = el('progress');
  const diagnostics = el('diagnostics');
  const suggestionsPanel = el('suggestions');
  const chartScores = el('chart-scores');
  const chartStates = el('chart-states');
  const chartConfidence = el('chart-confidence');
  const tableWrap = el('table-wrap');
  const tableNotice = el('table-notice');
  const pagePrev = el<HTMLButtonElement>('page-prev');
  const pageNext = el<HTMLButtonElement>('page-next');
  const pageLabel = el('page-label');
  const stateFilter = el<HTMLSelectElement>('state-filter');
  const searchBox = el<HTMLInputElement>('search-box');
  const exportBtn = el<HTMLAnchorElement>('export-btn');
  const exportAnnotatedBtn = el<HTMLAnchorElement>('export-annotated-btn');

  let view: TableView = initialView();
  let jobId: string | null = null;
  let ready = false;
  let lastResults: ResultsPage | null = null;
  let chain: Promise<void> = Promise.resolve();

  // Handlers queue onto one chain so edits and refetches never interleave.
  const track = (work: () => Promise<void>): Promise<void> => {
    chain = chain.then(work).catch((error) => notice(describeError(error)));
    return chain;
  };

  const notice = (message: string) => {
    tableNotice.textContent = message;
    tableNotice.classList.toggle('hidden', message === '');
  };

  const uploadNotice = (message: string) => {
    uploadError.textContent = message;
    uploadError.classList.toggle('hidden', message === '');
  };

  function renderPhases(status: JobStatus) {
    if (status.phase === 'Failed') {
      progress.innerHTML = `<span class="phase failed">Failed</span>`;
      uploadNotice(status.error ?? 'processing failed');
      return;
    }
    const reached = PHASES.indexOf(status.phase);
    progress.innerHTML = PHASES.map((phase, i) => {
      const cls = i < reached ? 'done' : i === reached ? 'active' : 'todo';
      return `<span class="phase ${cls}">${phase}</span>`;
    }).join('');
    const d = status.diagnostics;
    diagnostics.textContent = d
      ? `${d.n_users} users, ${d.n_urls} urls, ${d.n_validated_edges} validated ` +
        `pairs, ${d.n_necs} communities, ${d.n_voters} voters, ` +
        `${d.n_profiled} profiled`
      : '';
  }

  function renderSummary(summary: Summary) {
    chartScores.innerHTML = renderScoreHistogram(summary.annotated_scores);
    chartStates.innerHTML = renderStateBar(summary.counts);
    chartConfidence.innerHTML = renderConfidenceHistogram(summary.confidences);
  }

  function renderSuggestions(items: Suggestion[]) {
    if (items.length === 0) {
      suggestionsPanel.innerHTML =
        '<p class="placeholder">nothing left to unlock</p>';
      return;
    }
    suggestionsPanel.innerHTML =
      '<h3>annotate next</h3><ul>' +
      items
        .map(
          (item) =>
            `<li><button class="suggestion" data-publisher="` +
            `${escapeHtml(item.publisher)}">${escapeHtml(item.publisher)}` +
            `</button> unlocks ${item.unlocked_voters} voters ` +
            `(${item.n_nec_urls} NEC urls)</li>`,
        )
        .join('') +
      '</ul>';
  }

  function renderResults(page: ResultsPage) {
    lastResults = page;
    tableWrap.innerHTML = renderTable(page.records, view);
    const pages = Math.max(1, Math.ceil(page.total / view.pageSize));
    pageLabel.textContent = `page ${view.page + 1} of ${pages} (${page.total} publishers)`;
    pagePrev.disabled = view.page <= 0;
    pageNext.disabled = view.page >= pages - 1;
  }

  async function refreshResults() {
    if (!jobId) {
      return;
    }
    renderResults(await api.results(jobId, resultsQuery(view)));
  }

  async function refreshAll() {
    if (!jobId) {
      return;
    }
    const [results, summary, suggestions] = await Promise.all([
      api.results(jobId, resultsQuery(view)),
      api.summary(jobId),
      api.suggestions(jobId),
    ]);
    renderResults(results);
    renderSummary(summary);
    renderSuggestions(suggestions);
  }

  function enableExports() {
    if (!jobId) {
      return;
    }
    exportBtn.href = api.exportUrl(jobId);
    exportAnnotatedBtn.href = api.exportUrl(jobId, true);
    exportBtn.classList.remove('disabled');
    exportAnnotatedBtn.classList.remove('disabled');
  }

  async function startJob(create: () => Promise<{ job_id: string }>) {
    uploadNotice('');
    notice('');
    ready = false;
    view = initialView();
    try {
      const created = await create();
      jobId = created.job_id;
    } catch (error) {
      uploadNotice(describeError(error));
      return;
    }
    const status = await pollUntilDone(api, jobId, renderPhases, {
      intervalMs: options.pollIntervalMs ?? 1000,
      ...(options.sleep ? { sleep: options.sleep } : {}),
    });
    if (status.phase !== 'Done') {
      return;
    }
    ready = true;
    enableExports();
    await refreshAll();
  }

  async function onEdit(input: HTMLInputElement) {
    if (!jobId || !ready) {
      return;
    }
    const publisher = input.dataset['publisher'] ?? '';
    const verdict = checkScore(input.value);
    if (!verdict.ok) {
      // Blocked client-side: show the reason and put the row back.
      notice(`${publisher}: ${verdict.message}`);
      if (lastResults) {
        renderResults(lastResults);
      }
      return;
    }
    view = setPendingEdit(view, publisher, input.value);
    try {
      const response = await api.annotate(jobId, publisher, verdict.score);
      view = clearPendingEdit(view, publisher);
      notice('');
      renderSummary(response.summary);
      await Promise.all([
        refreshResults(),
        api.suggestions(jobId).then(renderSuggestions),
      ]);
    } catch (error) {
      view = clearPendingEdit(view, publisher);
      notice(`${publisher}: ${describeError(error)}`);
      if (lastResults) {
        renderResults(lastResults);
      }
    }
  }

  async function onRemove(publisher: string) {
    if (!jobId || !ready) {
      return;
    }
    try {
      const response = await api.removeAnnotation(jobId, publisher);
      notice('');
      renderSummary(response.summary);
      await Promise.all([
        refreshResults(),
        api.suggestions(jobId).then(renderSuggestions),
      ]);
    } catch (error) {
      notice(`${publisher}: ${describeError(error)}`);
    }
  }

  processBtn.addEventListener('click', () => {
    const edgeFile = edgeInput.files?.[0];
    if (!edgeFile) {
      uploadNotice('choose an edge list file first');
      return;
    }
    const baseFile = baseInput.files?.[0] ?? null;
    void track(() => startJob(() => api.createJob(edgeFile, baseFile)));
  });

  demoBtn.addEventListener('click', () => {
    void track(() => startJob(() => api.createDemoJob()));
  });

  tableWrap.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const sortHeader = target.closest<HTMLElement>('th.sortable');
    if (sortHeader && sortHeader.dataset['sort']) {
      view = toggleSort(view, sortHeader.dataset['sort'] as SortKey);
      void track(refreshResults);
      return;
    }
    const removeBtn = target.closest<HTMLElement>('.remove-btn');
    if (removeBtn && removeBtn.dataset['publisher']) {
      const publisher = removeBtn.dataset['publisher'];
      void track(() => onRemove(publisher));
    }
  });

  tableWrap.addEventListener('change', (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains('score-input')) {
      void track(() => onEdit(target as HTMLInputElement));
    }
  });

  suggestionsPanel.addEventListener('click', (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>(
      '.suggestion',
    );
    if (button && button.dataset['publisher']) {
      searchBox.value = button.dataset['publisher'];
      view = withSearch(view, searchBox.value);
      void track(refreshResults);
    }
  });

  pagePrev.addEventListener('click', () => {
    view = withPage(view, view.page - 1);
    void track(refreshResults);
  });

  pageNext.addEventListener('click', () => {
    view = withPage(view, view.page + 1);
    void track(refreshResults);
  });

  stateFilter.addEventListener('change', () => {
    const value = stateFilter.value;
    view = withStateFilter(view, value === '' ? null : (value as PublisherState));
    void track(refreshResults);
  });

  searchBox.addEventListener('change', () => {
    view = withSearch(view, searchBox.value.trim());
    void track(refreshResults);
  });

  return {
    processFiles: () => {
      const edgeFile = edgeInput.files?.[0];
      if (!edgeFile) {
        uploadNotice('choose an edge list file first');
        return Promise.resolve();
      }
      const baseFile = baseInput.files?.[0] ?? null;
      return track(() => startJob(() => api.createJob(edgeFile, baseFile)));
    },
    processDemo: () => track(() => startJob(() => api.createDemoJob())),
    idle: () => chain,
    jobId: () => jobId,
  };
}

// Boot only inside a real page; tests build their own instance.
if (typeof document !== 'undefined' && document.getElementById('process-btn')) {
  initConsole(document, new ApiClient());
}
