import type {
  AnnotateResponse,
  JobCreated,
  JobStatus,
  ResultsPage,
  Suggestion,
  Summary,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** A non-2xx response, carrying the server's error payload. */
export class ApiError extends Error {
  readonly status: number;
  readonly payload: Record<string, unknown>;

  constructor(status: number, payload: Record<string, unknown>) {
    const detail = typeof payload['detail'] === 'string' ? payload['detail'] : '';
    super(detail || `request failed with status ${status}`);
    this.name = 'ApiError';
    this.status = status;
    this.payload = payload;
  }
}

async function jsonOrThrow<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  const payload = await response.json().catch(() => ({}));
  throw new ApiError(response.status, payload as Record<string, unknown>);
}

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl = '',
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  async createJob(edgeFile: File, baseFile: File | null): Promise<JobCreated> {
    const form = new FormData();
    form.append('edge_list', edgeFile);
    if (baseFile) {
      form.append('base_knowledge', baseFile);
    }
    const response = await this.fetchFn(`${this.baseUrl}/api/jobs`, {
      method: 'POST',
      body: form,
    });
    return jsonOrThrow<JobCreated>(response);
  }

  async createDemoJob(): Promise<JobCreated> {
    const response = await this.fetchFn(`${this.baseUrl}/api/demo`, {
      method: 'POST',
    });
    return jsonOrThrow<JobCreated>(response);
  }

  async status(jobId: string): Promise<JobStatus> {
    const response = await this.fetchFn(`${this.baseUrl}/api/jobs/${jobId}`);
    return jsonOrThrow<JobStatus>(response);
  }

  async results(jobId: string, query: string): Promise<ResultsPage> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/jobs/${jobId}/results?${query}`,
    );
    return jsonOrThrow<ResultsPage>(response);
  }

  async annotate(
    jobId: string,
    publisher: string,
    score: number,
  ): Promise<AnnotateResponse> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/jobs/${jobId}/annotations`,
      {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify({ publisher, score }),
      },
    );
    return jsonOrThrow<AnnotateResponse>(response);
  }

  async removeAnnotation(
    jobId: string,
    publisher: string,
  ): Promise<AnnotateResponse> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/jobs/${jobId}/annotations/${encodeURIComponent(publisher)}`,
      { method: 'DELETE' },
    );
    return jsonOrThrow<AnnotateResponse>(response);
  }

  async suggestions(jobId: string, limit = 5): Promise<Suggestion[]> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/jobs/${jobId}/suggestions?limit=${limit}`,
    );
    const body = await jsonOrThrow<{ suggestions: Suggestion[] }>(response);
    return body.suggestions;
  }

  async summary(jobId: string): Promise<Summary> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/jobs/${jobId}/summary`,
    );
    return jsonOrThrow<Summary>(response);
  }

  exportUrl(jobId: string, onlyAnnotated = false): string {
    const suffix = onlyAnnotated ? '?only=annotated' : '';
    return `${this.baseUrl}/api/jobs/${jobId}/export${suffix}`;
  }

  /** The export body as served; the console never reformats it. */
  async fetchExport(jobId: string, onlyAnnotated = false): Promise<string> {
    const response = await this.fetchFn(this.exportUrl(jobId, onlyAnnotated));
    if (!response.ok) {
      const payload = await response.json().catch(() => ({}));
      throw new ApiError(response.status, payload as Record<string, unknown>);
    }
    return response.text();
  }
}
