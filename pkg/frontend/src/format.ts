/** Number formatting. The client only ever REformats payload values; it
 * never computes new ones, so every displayed numeric token is one of
 * these renderings of some payload number (the purity test relies on
 * that). */

export function fmtInt(value: number): string {
  return String(value);
}

export function fmtScore(value: number): string {
  return value.toFixed(2);
}

export function fmtSeconds(value: number): string {
  return value.toFixed(1);
}

export function fmtWeight(value: number): string {
  return value.toFixed(3);
}

export function fmtStat(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(2);
}

/** Every rendering a payload number may legitimately take in the DOM. */
export function renderings(value: number): string[] {
  return [String(value), fmtScore(value), fmtSeconds(value), fmtWeight(value), fmtStat(value)];
}
