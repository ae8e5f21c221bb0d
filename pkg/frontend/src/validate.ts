export type ScoreCheck =
  | { ok: true; score: number }
  | { ok: false; message: string };

/**
 * Validate an annotation score before any request is made. The service
 * accepts whole numbers 0..100 only, so everything else is blocked here
 * with a message the row can show inline.
 */
export function checkScore(raw: string): ScoreCheck {
  const text = raw.trim();
  if (text === '') {
    return { ok: false, message: 'enter a score to annotate' };
  }
  if (!/^-?\d+$/.test(text)) {
    return { ok: false, message: 'score must be a whole number' };
  }
  const score = Number(text);
  if (score < 0 || score > 100) {
    return { ok: false, message: 'score must be between 0 and 100' };
  }
  return { ok: true, score };
}
