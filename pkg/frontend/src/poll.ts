import type { ApiClient } from './api.js';
import type { JobStatus } from './types.js';

const TERMINAL_PHASES = new Set(['Done', 'Failed']);

export interface PollOptions {
  intervalMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) =>
  new Promise<void>((resolve) => setTimeout(resolve, ms));

/**
 * Poll a job until it lands in Done or Failed, reporting each phase change
 * once. The interval defaults to one second.
 */
export async function pollUntilDone(
  api: ApiClient,
  jobId: string,
  onPhase: (status: JobStatus) => void,
  options: PollOptions = {},
): Promise<JobStatus> {
  const intervalMs = options.intervalMs ?? 1000;
  const sleep = options.sleep ?? defaultSleep;
  let lastPhase = '';
  for (;;) {
    const status = await api.status(jobId);
    if (status.phase !== lastPhase) {
      lastPhase = status.phase;
      onPhase(status);
    }
    if (TERMINAL_PHASES.has(status.phase)) {
      return status;
    }
    await sleep(intervalMs);
  }
}
