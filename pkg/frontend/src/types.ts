export type Genre = 'Press' | 'Official' | 'Business' | 'Mixed';

export type Syndrome =
  | 'Dermatological'
  | 'Gastrointestinal'
  | 'HemorrhagicFever'
  | 'Musculoskeletal'
  | 'Neurological'
  | 'Respiratory';

export type DateRangePreset =
  | 'Today'
  | 'ThisWeek'
  | 'OneWeek'
  | 'TwoWeeks'
  | 'ThreeWeeks'
  | 'Last30Days';

export interface StorySummary {
  id: string;
  headline: string;
  url: string;
  genre: Genre;
  published_at: string;
}

export interface ReferenceLink {
  provider: string;
  url: string;
}

export interface OutbreakEvent {
  disease: string;
  disease_display: string;
  bco_linked: boolean;
  syndromes: Syndrome[];
  location_id: string;
  location_name: string;
  country_name: string;
  latitude: number;
  longitude: number;
  corpus_freq: number;
  first_seen: string;
  detected_at: string;
  stories: StorySummary[];
  reference_links: ReferenceLink[];
}

export interface EventsResponse {
  cycle_detected_at: string | null;
  events: OutbreakEvent[];
}

export interface FilterState {
  range: DateRangePreset;
  genres: Genre[];
  syndromes: Syndrome[];
  initialHeadlineOnly: boolean;
}

export const DEFAULT_FILTERS: FilterState = {
  range: 'Last30Days',
  genres: [],
  syndromes: [],
  initialHeadlineOnly: false,
};
