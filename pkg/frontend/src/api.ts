import type { EventsResponse, FilterState } from './types';

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status?: number,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export function eventsQueryString(filters: FilterState): string {
  const params = new URLSearchParams();
  params.set('range', filters.range);
  if (filters.genres.length > 0) params.set('genres', filters.genres.join(','));
  if (filters.syndromes.length > 0) {
    params.set('syndromes', filters.syndromes.join(','));
    // The map renders ungrounded diseases with their own symbol, so opt in
    // to keep them visible under a syndrome filter.
    params.set('include_ungrounded', '1');
  }
  if (filters.initialHeadlineOnly) params.set('initial_headline_only', '1');
  return params.toString();
}

export class ApiClient {
  constructor(private readonly baseUrl: string = '') {}

  async fetchEvents(filters: FilterState): Promise<EventsResponse> {
    const url = `${this.baseUrl}/api/v1/events?${eventsQueryString(filters)}`;
    let response: Response;
    try {
      response = await fetch(url, { headers: { Accept: 'application/json' } });
    } catch (err) {
      throw new ApiError(`network error: ${(err as Error).message}`);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { field?: string; error?: string };
        if (body.error) detail = body.field ? `${body.field}: ${body.error}` : body.error;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(detail, response.status);
    }
    return (await response.json()) as EventsResponse;
  }
}
