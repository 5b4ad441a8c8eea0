import type { OutbreakEvent } from './types';
import { escapeHtml, sanitizeUrl } from './sanitize';

const MAP_WIDTH = 1024;
const MAP_HEIGHT = 512;
const SVG_NS = 'http://www.w3.org/2000/svg';

/** Equirectangular projection onto the fixed SVG viewport. */
export function project(latitude: number, longitude: number): { x: number; y: number } {
  return {
    x: ((longitude + 180) / 360) * MAP_WIDTH,
    y: ((90 - latitude) / 180) * MAP_HEIGHT,
  };
}

export function eventKey(event: OutbreakEvent): string {
  return `${event.disease}@${event.location_id}`;
}

/** World map with one marker per outbreak event. Events grounded in the
 *  disease ontology render as circles; ungrounded ones as diamonds. */
export class EventMap {
  private readonly svg: SVGSVGElement;
  private readonly popup: HTMLDivElement;
  private events = new Map<string, OutbreakEvent>();

  constructor(private readonly container: HTMLElement) {
    this.svg = document.createElementNS(SVG_NS, 'svg') as SVGSVGElement;
    this.svg.setAttribute('class', 'event-map');
    this.svg.setAttribute('viewBox', `0 0 ${MAP_WIDTH} ${MAP_HEIGHT}`);
    this.svg.addEventListener('click', (ev) => this.onClick(ev));
    container.appendChild(this.svg);

    this.popup = document.createElement('div');
    this.popup.className = 'map-popup';
    this.popup.hidden = true;
    container.appendChild(this.popup);
  }

  render(events: OutbreakEvent[]): void {
    this.events = new Map(events.map((event) => [eventKey(event), event]));
    this.svg.replaceChildren();
    this.popup.hidden = true;
    for (const event of events) {
      this.svg.appendChild(this.buildMarker(event));
    }
  }

  private buildMarker(event: OutbreakEvent): SVGElement {
    const { x, y } = project(event.latitude, event.longitude);
    const radius = Math.min(12, 4 + event.corpus_freq);
    let marker: SVGElement;
    if (event.bco_linked) {
      marker = document.createElementNS(SVG_NS, 'circle');
      marker.setAttribute('cx', x.toFixed(2));
      marker.setAttribute('cy', y.toFixed(2));
      marker.setAttribute('r', String(radius));
      marker.setAttribute('class', 'marker marker-grounded');
    } else {
      marker = document.createElementNS(SVG_NS, 'rect');
      marker.setAttribute('x', (x - radius).toFixed(2));
      marker.setAttribute('y', (y - radius).toFixed(2));
      marker.setAttribute('width', String(radius * 2));
      marker.setAttribute('height', String(radius * 2));
      marker.setAttribute('transform', `rotate(45 ${x.toFixed(2)} ${y.toFixed(2)})`);
      marker.setAttribute('class', 'marker marker-ungrounded');
    }
    marker.setAttribute('data-event-key', eventKey(event));
    return marker;
  }

  private onClick(ev: Event): void {
    const target = ev.target as Element;
    const key = target.getAttribute?.('data-event-key');
    if (!key) {
      this.popup.hidden = true;
      return;
    }
    const event = this.events.get(key);
    if (event) this.showPopup(event);
  }

  showPopup(event: OutbreakEvent): void {
    const headlines = event.stories
      .map(
        (story) =>
          `<li><a href="${sanitizeUrl(story.url)}" target="_blank" rel="noopener">` +
          `${escapeHtml(story.headline)}</a> <span class="genre">${escapeHtml(story.genre)}</span></li>`,
      )
      .join('');
    const references = event.reference_links
      .map(
        (link) =>
          `<li><a class="reference-link" href="${sanitizeUrl(link.url)}" target="_blank" rel="noopener">` +
          `${escapeHtml(link.provider)}</a></li>`,
      )
      .join('');
    this.popup.innerHTML = `
      <h3>${escapeHtml(event.disease_display)}</h3>
      <p class="place">${escapeHtml(event.location_name)}, ${escapeHtml(event.country_name)}</p>
      <p class="meta">frequency ${event.corpus_freq} · first seen ${escapeHtml(event.first_seen)}
        ${event.bco_linked ? '' : '<span class="ungrounded-note">(unrecognized disease term)</span>'}</p>
      <ul class="headlines">${headlines}</ul>
      <p class="reference-title">Literature search</p>
      <ul class="references">${references}</ul>`;
    this.popup.hidden = false;
  }
}
