import type { EventsResponse, OutbreakEvent } from '../src/types';

function event(overrides: Partial<OutbreakEvent>): OutbreakEvent {
  return {
    disease: 'dis-avian-influenza',
    disease_display: 'Avian influenza',
    bco_linked: true,
    syndromes: ['Respiratory'],
    location_id: 'sub-gb-iow',
    location_name: 'Isle of Wight',
    country_name: 'United Kingdom',
    latitude: 50.69,
    longitude: -1.31,
    corpus_freq: 4,
    first_seen: '2007-11-06T09:00:00+00:00',
    detected_at: '2007-11-11T12:00:00+00:00',
    stories: [
      {
        id: 'a1b2c3d4e5f60718',
        headline: 'Avian influenza confirmed on the Isle of Wight',
        url: 'http://press.example/iow-bird-flu',
        genre: 'Press',
        published_at: '2007-11-06T08:30:00+00:00',
      },
    ],
    reference_links: [
      {
        provider: 'PubMed',
        url: 'https://pubmed.ncbi.nlm.nih.gov/?term=Avian%20influenza%20United%20Kingdom%20%22case%22',
      },
      {
        provider: 'HighWire',
        url: 'https://www.highwirepress.com/search?query=Avian%20influenza%20United%20Kingdom%20%22case%22',
      },
      {
        provider: 'Google Scholar',
        url: 'https://scholar.google.com/scholar?q=Avian%20influenza%20United%20Kingdom%20%22case%22',
      },
    ],
    ...overrides,
  };
}

/** Respiratory events seen this week: two grounded, one ungrounded. */
export const RESPIRATORY_THIS_WEEK: EventsResponse = {
  cycle_detected_at: '2007-11-11T12:00:00+00:00',
  events: [
    event({}),
    event({
      disease: 'dis-influenza',
      disease_display: 'Influenza',
      location_id: 'c-au',
      location_name: 'Australia',
      country_name: 'Australia',
      latitude: -25.27,
      longitude: 133.77,
      corpus_freq: 2,
      first_seen: '2007-11-07T15:00:00+00:00',
      stories: [
        {
          id: 'ffeeddccbbaa0099',
          headline: 'Flu season arrives early in Australia',
          url: 'http://press.example/au-flu',
          genre: 'Official',
          published_at: '2007-11-07T14:00:00+00:00',
        },
      ],
      reference_links: [
        {
          provider: 'PubMed',
          url: 'https://pubmed.ncbi.nlm.nih.gov/?term=Influenza%20Australia%20%22case%22',
        },
        {
          provider: 'HighWire',
          url: 'https://www.highwirepress.com/search?query=Influenza%20Australia%20%22case%22',
        },
        {
          provider: 'Google Scholar',
          url: 'https://scholar.google.com/scholar?q=Influenza%20Australia%20%22case%22',
        },
      ],
    }),
    event({
      disease: 'mystery pneumonia',
      disease_display: 'mystery pneumonia',
      bco_linked: false,
      syndromes: [],
      location_id: 'c-cn',
      location_name: 'China',
      country_name: 'China',
      latitude: 35.86,
      longitude: 104.19,
      corpus_freq: 3,
      first_seen: '2007-11-08T10:00:00+00:00',
      stories: [
        {
          id: '0011223344556677',
          headline: 'Unidentified pneumonia cluster puzzles doctors',
          url: 'http://press.example/cn-mystery',
          genre: 'Press',
          published_at: '2007-11-08T09:00:00+00:00',
        },
      ],
      reference_links: [
        {
          provider: 'PubMed',
          url: 'https://pubmed.ncbi.nlm.nih.gov/?term=mystery%20pneumonia%20China%20%22case%22',
        },
        {
          provider: 'HighWire',
          url: 'https://www.highwirepress.com/search?query=mystery%20pneumonia%20China%20%22case%22',
        },
        {
          provider: 'Google Scholar',
          url: 'https://scholar.google.com/scholar?q=mystery%20pneumonia%20China%20%22case%22',
        },
      ],
    }),
  ],
};

export const EMPTY_RESPONSE: EventsResponse = { cycle_detected_at: null, events: [] };
