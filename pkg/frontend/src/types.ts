// Payload shapes of the rating service's JSON API. Field names mirror the
// wire format exactly; the console never derives its own numbers from these.

export type PublisherState = 'A' | 'P' | 'U';

export type TrustLabel = 'T' | 'N';

export interface PublisherRecord {
  publisher: string;
  state: PublisherState;
  score: number | null;
  confidence: number;
  label: TrustLabel | null;
  n_voters: number;
  n_nec_urls: number;
  n_urls: number;
  n_shares: number;
}

export interface ResultsPage {
  total: number;
  page: number;
  page_size: number;
  records: PublisherRecord[];
}

export interface Diagnostics {
  iterations: number;
  residual: number;
  method: string;
  n_users: number;
  n_urls: number;
  n_validated_edges: number;
  n_necs: number;
  n_voters: number;
  n_profiled: number;
}

export interface JobStatus {
  job_id: string;
  phase: string;
  created_at: number;
  error: string | null;
  diagnostics?: Diagnostics;
}

export interface StateCounts {
  annotated: number;
  predicted: number;
  unclassified: number;
}

/** Ten lower-inclusive buckets per histogram; the top bucket is closed. */
export interface Summary {
  annotated_scores: number[];
  counts: StateCounts;
  confidences: number[];
}

export interface Suggestion {
  publisher: string;
  unlocked_voters: number;
  n_nec_urls: number;
}

export interface AnnotateResponse {
  summary: Summary;
  changed: PublisherRecord[];
}

export interface JobCreated {
  job_id: string;
  phase: string;
}
