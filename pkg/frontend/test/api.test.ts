import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiClient, ApiError, eventsQueryString } from '../src/api';
import { DEFAULT_FILTERS } from '../src/types';
import { EMPTY_RESPONSE } from './fixtures';

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('eventsQueryString', () => {
  it('always names the date range', () => {
    expect(eventsQueryString(DEFAULT_FILTERS)).toBe('range=Last30Days');
  });

  it('joins multi-select filters with commas', () => {
    const qs = eventsQueryString({
      range: 'ThisWeek',
      genres: ['Press', 'Official'],
      syndromes: ['Respiratory'],
      initialHeadlineOnly: true,
    });
    const params = new URLSearchParams(qs);
    expect(params.get('range')).toBe('ThisWeek');
    expect(params.get('genres')).toBe('Press,Official');
    expect(params.get('syndromes')).toBe('Respiratory');
    expect(params.get('include_ungrounded')).toBe('1');
    expect(params.get('initial_headline_only')).toBe('1');
  });

  it('omits include_ungrounded without a syndrome filter', () => {
    const qs = eventsQueryString({ ...DEFAULT_FILTERS, genres: ['Press'] });
    expect(new URLSearchParams(qs).get('include_ungrounded')).toBeNull();
  });
});

describe('ApiClient', () => {
  it('requests /api/v1/events with the filter query string', async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      new Response(JSON.stringify(EMPTY_RESPONSE), { status: 200 }),
    );
    vi.stubGlobal('fetch', fetchMock);
    const response = await new ApiClient().fetchEvents(DEFAULT_FILTERS);
    expect(response.events).toEqual([]);
    expect(fetchMock).toHaveBeenCalledWith(
      '/api/v1/events?range=Last30Days',
      expect.objectContaining({ headers: { Accept: 'application/json' } }),
    );
  });

  it('surfaces field-level errors from a 400 response', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn().mockResolvedValue(
        new Response(JSON.stringify({ field: 'range', error: "unknown preset 'Sometime'" }), {
          status: 400,
        }),
      ),
    );
    const failure = await new ApiClient().fetchEvents(DEFAULT_FILTERS).catch((err) => err);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(400);
    expect(failure.message).toContain('range');
  });

  it('wraps network failures', async () => {
    vi.stubGlobal('fetch', vi.fn().mockRejectedValue(new TypeError('connection refused')));
    const failure = await new ApiClient().fetchEvents(DEFAULT_FILTERS).catch((err) => err);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBeUndefined();
  });
});
