/**
 * Exact rational arithmetic for level documents.
 *
 * The gateway sends exact probabilities as ratio strings ("3/10") or plain
 * numbers; rendering captions and renormalizing editor masses must not go
 * through floating point, so this module keeps everything in BigInt pairs.
 */

export interface Frac {
  num: bigint;
  den: bigint;
}

function gcd(a: bigint, b: bigint): bigint {
  let x = a < 0n ? -a : a;
  let y = b < 0n ? -b : b;
  while (y) {
    [x, y] = [y, x % y];
  }
  return x;
}

export function frac(num: bigint | number, den: bigint | number = 1n): Frac {
  let n = typeof num === 'number' ? BigInt(num) : num;
  let d = typeof den === 'number' ? BigInt(den) : den;
  if (d === 0n) throw new Error('zero denominator');
  if (d < 0n) {
    n = -n;
    d = -d;
  }
  const g = gcd(n, d) || 1n;
  return { num: n / g, den: d / g };
}

/** Parse a level document. Ratio strings parse exactly; finite decimals
 *  (from JSON numbers or "0.3"-style strings) convert via their digits. */
export function parseLevel(doc: number | string): Frac {
  if (typeof doc === 'number') {
    if (!Number.isFinite(doc)) throw new Error(`not a finite level: ${doc}`);
    if (Number.isInteger(doc)) return frac(BigInt(doc));
    return parseDecimal(String(doc));
  }
  const text = doc.trim();
  if (text.includes('/')) {
    const [n, d] = text.split('/', 2);
    return frac(BigInt(n!.trim()), BigInt(d!.trim()));
  }
  if (text.includes('.') || text.includes('e') || text.includes('E')) {
    return parseDecimal(text);
  }
  return frac(BigInt(text));
}

function parseDecimal(text: string): Frac {
  const m = /^(-?)(\d+)(?:\.(\d+))?(?:[eE]([+-]?\d+))?$/.exec(text);
  if (!m) throw new Error(`cannot parse level: ${text}`);
  const sign = m[1] === '-' ? -1n : 1n;
  const whole = m[2]!;
  const fracDigits = m[3] ?? '';
  const exp = m[4] ? parseInt(m[4], 10) : 0;
  let num = BigInt(whole + fracDigits) * sign;
  let den = 10n ** BigInt(fracDigits.length);
  if (exp > 0) num *= 10n ** BigInt(exp);
  if (exp < 0) den *= 10n ** BigInt(-exp);
  return frac(num, den);
}

export function formatFrac(f: Frac): string {
  return f.den === 1n ? f.num.toString() : `${f.num}/${f.den}`;
}

export function toNumber(f: Frac): number {
  return Number(f.num) / Number(f.den);
}

export function mul(a: Frac, b: Frac): Frac {
  return frac(a.num * b.num, a.den * b.den);
}

export function add(a: Frac, b: Frac): Frac {
  return frac(a.num * b.den + b.num * a.den, a.den * b.den);
}

export function sub(a: Frac, b: Frac): Frac {
  return frac(a.num * b.den - b.num * a.den, a.den * b.den);
}

export function eq(a: Frac, b: Frac): boolean {
  return a.num === b.num && a.den === b.den;
}

export function isInteger(f: Frac): boolean {
  return f.den === 1n;
}

/**
 * Turn nonnegative integer weights into exact masses summing to one.
 * Returns null when every weight is zero (nothing to normalize).
 */
export function normalizeWeights(weights: number[]): Frac[] | null {
  if (weights.some((w) => !Number.isInteger(w) || w < 0)) {
    throw new Error('weights must be nonnegative integers');
  }
  const total = weights.reduce((s, w) => s + w, 0);
  if (total === 0) return null;
  return weights.map((w) => frac(BigInt(w), BigInt(total)));
}
