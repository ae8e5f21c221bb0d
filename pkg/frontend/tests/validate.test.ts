import { describe, expect, it } from 'vitest';

import { checkScore } from '../src/validate.js';

describe('checkScore', () => {
  it('accepts whole numbers in range', () => {
    expect(checkScore('75')).toEqual({ ok: true, score: 75 });
    expect(checkScore('0')).toEqual({ ok: true, score: 0 });
    expect(checkScore('100')).toEqual({ ok: true, score: 100 });
    expect(checkScore('  60 ')).toEqual({ ok: true, score: 60 });
  });

  it('rejects out-of-range values with a message', () => {
    const over = checkScore('150');
    expect(over.ok).toBe(false);
    if (!over.ok) {
      expect(over.message).toMatch(/between 0 and 100/);
    }
    expect(checkScore('101').ok).toBe(false);
    expect(checkScore('-1').ok).toBe(false);
  });

  it('rejects non-integers', () => {
    expect(checkScore('7.5').ok).toBe(false);
    expect(checkScore('abc').ok).toBe(false);
    expect(checkScore('6e1').ok).toBe(false);
    expect(checkScore('60!').ok).toBe(false);
  });

  it('rejects empty input', () => {
    const empty = checkScore('   ');
    expect(empty.ok).toBe(false);
    if (!empty.ok) {
      expect(empty.message).toMatch(/enter a score/);
    }
  });
});
