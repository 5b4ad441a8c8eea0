import type { DateRangePreset, FilterState, Genre, Syndrome } from './types';
import { DEFAULT_FILTERS } from './types';

const PRESETS: DateRangePreset[] = [
  'Today',
  'ThisWeek',
  'OneWeek',
  'TwoWeeks',
  'ThreeWeeks',
  'Last30Days',
];
const GENRES: Genre[] = ['Press', 'Official', 'Business', 'Mixed'];
const SYNDROMES: Syndrome[] = [
  'Dermatological',
  'Gastrointestinal',
  'HemorrhagicFever',
  'Musculoskeletal',
  'Neurological',
  'Respiratory',
];

/** Serialize the filter state into a URL fragment, e.g.
 *  `#range=ThisWeek&syndromes=Respiratory&initial=1`. */
export function encodeFragment(filters: FilterState): string {
  const params = new URLSearchParams();
  if (filters.range !== DEFAULT_FILTERS.range) params.set('range', filters.range);
  if (filters.genres.length > 0) params.set('genres', filters.genres.join(','));
  if (filters.syndromes.length > 0) params.set('syndromes', filters.syndromes.join(','));
  if (filters.initialHeadlineOnly) params.set('initial', '1');
  const encoded = params.toString();
  return encoded ? `#${encoded}` : '';
}

function parseList<T extends string>(raw: string | null, allowed: readonly T[]): T[] {
  if (!raw) return [];
  return raw
    .split(',')
    .map((token) => token.trim())
    .filter((token): token is T => (allowed as readonly string[]).includes(token));
}

/** Restore filter state from a URL fragment; unknown values fall back to defaults. */
export function decodeFragment(fragment: string): FilterState {
  const params = new URLSearchParams(fragment.replace(/^#/, ''));
  const range = params.get('range');
  return {
    range: PRESETS.includes(range as DateRangePreset)
      ? (range as DateRangePreset)
      : DEFAULT_FILTERS.range,
    genres: parseList(params.get('genres'), GENRES),
    syndromes: parseList(params.get('syndromes'), SYNDROMES),
    initialHeadlineOnly: params.get('initial') === '1',
  };
}
