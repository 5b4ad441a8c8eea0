import { beforeEach, describe, expect, it } from 'vitest';

import { EventMap, eventKey, project } from '../src/map';
import { RESPIRATORY_THIS_WEEK } from './fixtures';

let container: HTMLElement;
let map: EventMap;

beforeEach(() => {
  document.body.innerHTML = '<div id="map"></div>';
  container = document.getElementById('map')!;
  map = new EventMap(container);
});

describe('projection', () => {
  it('maps the origin to the viewport centre', () => {
    expect(project(0, 0)).toEqual({ x: 512, y: 256 });
  });

  it('keeps every event inside the viewport', () => {
    for (const event of RESPIRATORY_THIS_WEEK.events) {
      const { x, y } = project(event.latitude, event.longitude);
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(1024);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(512);
    }
  });
});

describe('markers', () => {
  it('renders one marker per event', () => {
    map.render(RESPIRATORY_THIS_WEEK.events);
    expect(container.querySelectorAll('.marker')).toHaveLength(3);
  });

  it('uses distinct symbols for grounded and ungrounded diseases', () => {
    map.render(RESPIRATORY_THIS_WEEK.events);
    const grounded = container.querySelectorAll('circle.marker-grounded');
    const ungrounded = container.querySelectorAll('rect.marker-ungrounded');
    expect(grounded).toHaveLength(2);
    expect(ungrounded).toHaveLength(1);
  });

  it('clears previous markers on re-render', () => {
    map.render(RESPIRATORY_THIS_WEEK.events);
    map.render([]);
    expect(container.querySelectorAll('.marker')).toHaveLength(0);
  });
});

describe('popup', () => {
  it('shows headlines and the three literature links on click', () => {
    map.render(RESPIRATORY_THIS_WEEK.events);
    const first = RESPIRATORY_THIS_WEEK.events[0];
    const marker = container.querySelector<SVGElement>(
      `[data-event-key="${eventKey(first)}"]`,
    )!;
    marker.dispatchEvent(new Event('click', { bubbles: true }));

    const popup = container.querySelector<HTMLElement>('.map-popup')!;
    expect(popup.hidden).toBe(false);
    expect(popup.textContent).toContain('Avian influenza');
    expect(popup.textContent).toContain('Avian influenza confirmed on the Isle of Wight');

    const links = [...popup.querySelectorAll<HTMLAnchorElement>('a.reference-link')];
    expect(links.map((a) => a.textContent)).toEqual(['PubMed', 'HighWire', 'Google Scholar']);
    for (const link of links) {
      expect(link.href).toContain(encodeURIComponent('"case"'));
    }
  });

  it('escapes story headlines', () => {
    const hostile = {
      ...RESPIRATORY_THIS_WEEK.events[0],
      stories: [
        {
          ...RESPIRATORY_THIS_WEEK.events[0].stories[0],
          headline: '<img src=x onerror=alert(1)>',
        },
      ],
    };
    map.showPopup(hostile);
    const popup = container.querySelector<HTMLElement>('.map-popup')!;
    expect(popup.querySelector('img')).toBeNull();
    expect(popup.textContent).toContain('<img src=x onerror=alert(1)>');
  });
});
