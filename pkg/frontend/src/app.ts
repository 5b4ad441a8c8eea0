import { ApiClient, ApiError } from './api';
import { EventMap } from './map';
import { decodeFragment, encodeFragment } from './state';
import type { DateRangePreset, FilterState, Genre, Syndrome } from './types';

const POLL_INTERVAL_MS = 60_000;

const PRESET_OPTIONS: DateRangePreset[] = [
  'Today',
  'ThisWeek',
  'OneWeek',
  'TwoWeeks',
  'ThreeWeeks',
  'Last30Days',
];
const GENRE_OPTIONS: Genre[] = ['Press', 'Official', 'Business', 'Mixed'];
const SYNDROME_OPTIONS: Syndrome[] = [
  'Dermatological',
  'Gastrointestinal',
  'HemorrhagicFever',
  'Musculoskeletal',
  'Neurological',
  'Respiratory',
];

export class App {
  readonly map: EventMap;
  private filters: FilterState;
  private readonly banner: HTMLDivElement;
  private readonly status: HTMLSpanElement;
  private pollTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient = new ApiClient(),
    private readonly win: Window = window,
  ) {
    this.filters = decodeFragment(this.win.location.hash);

    this.banner = document.createElement('div');
    this.banner.className = 'error-banner';
    this.banner.hidden = true;
    root.appendChild(this.banner);

    root.appendChild(this.buildFilterPanel());

    this.status = document.createElement('span');
    this.status.className = 'cycle-status';
    root.appendChild(this.status);

    const mapContainer = document.createElement('div');
    mapContainer.className = 'map-container';
    root.appendChild(mapContainer);
    this.map = new EventMap(mapContainer);

    this.win.addEventListener('hashchange', () => {
      this.filters = decodeFragment(this.win.location.hash);
      this.syncPanel();
      void this.refresh();
    });
  }

  start(): void {
    void this.refresh();
    this.pollTimer = setInterval(() => void this.refresh(), POLL_INTERVAL_MS);
  }

  stop(): void {
    if (this.pollTimer !== null) clearInterval(this.pollTimer);
    this.pollTimer = null;
  }

  getFilters(): FilterState {
    return { ...this.filters, genres: [...this.filters.genres], syndromes: [...this.filters.syndromes] };
  }

  async refresh(): Promise<void> {
    try {
      const response = await this.api.fetchEvents(this.filters);
      this.banner.hidden = true;
      this.map.render(response.events);
      this.status.textContent = response.cycle_detected_at
        ? `${response.events.length} events · cycle ${response.cycle_detected_at}`
        : `${response.events.length} events · no cycle yet`;
    } catch (err) {
      this.banner.textContent =
        err instanceof ApiError
          ? `Could not load events: ${err.message}`
          : `Could not load events: ${(err as Error).message}`;
      this.banner.hidden = false;
    }
  }

  private applyFilters(next: FilterState): void {
    this.filters = next;
    this.win.location.hash = encodeFragment(next);
    void this.refresh();
  }

  private buildFilterPanel(): HTMLElement {
    const panel = document.createElement('form');
    panel.className = 'filter-panel';

    const rangeSelect = document.createElement('select');
    rangeSelect.name = 'range';
    for (const preset of PRESET_OPTIONS) {
      const option = document.createElement('option');
      option.value = preset;
      option.textContent = preset;
      rangeSelect.appendChild(option);
    }
    rangeSelect.addEventListener('change', () =>
      this.applyFilters({ ...this.filters, range: rangeSelect.value as DateRangePreset }),
    );
    panel.appendChild(this.labelled('Date range', rangeSelect));

    panel.appendChild(
      this.checkboxGroup('Genres', 'genres', GENRE_OPTIONS, (selected) =>
        this.applyFilters({ ...this.filters, genres: selected as Genre[] }),
      ),
    );
    panel.appendChild(
      this.checkboxGroup('Syndromes', 'syndromes', SYNDROME_OPTIONS, (selected) =>
        this.applyFilters({ ...this.filters, syndromes: selected as Syndrome[] }),
      ),
    );

    const initial = document.createElement('input');
    initial.type = 'checkbox';
    initial.name = 'initial_headline_only';
    initial.addEventListener('change', () =>
      this.applyFilters({ ...this.filters, initialHeadlineOnly: initial.checked }),
    );
    panel.appendChild(this.labelled('Initial headlines only', initial));

    this.panelNode = panel;
    this.syncPanel();
    return panel;
  }

  private panelNode: HTMLFormElement | null = null;

  private syncPanel(): void {
    if (!this.panelNode) return;
    const range = this.panelNode.querySelector<HTMLSelectElement>('select[name=range]');
    if (range) range.value = this.filters.range;
    for (const box of this.panelNode.querySelectorAll<HTMLInputElement>('input[type=checkbox]')) {
      if (box.name === 'initial_headline_only') {
        box.checked = this.filters.initialHeadlineOnly;
      } else if (box.dataset.group === 'genres') {
        box.checked = this.filters.genres.includes(box.value as Genre);
      } else if (box.dataset.group === 'syndromes') {
        box.checked = this.filters.syndromes.includes(box.value as Syndrome);
      }
    }
  }

  private labelled(text: string, control: HTMLElement): HTMLLabelElement {
    const label = document.createElement('label');
    label.textContent = text;
    label.appendChild(control);
    return label;
  }

  private checkboxGroup(
    title: string,
    group: string,
    options: readonly string[],
    onChange: (selected: string[]) => void,
  ): HTMLElement {
    const fieldset = document.createElement('fieldset');
    const legend = document.createElement('legend');
    legend.textContent = title;
    fieldset.appendChild(legend);
    for (const value of options) {
      const box = document.createElement('input');
      box.type = 'checkbox';
      box.value = value;
      box.name = `${group}-${value}`;
      box.dataset.group = group;
      box.addEventListener('change', () => {
        const checked = [
          ...fieldset.querySelectorAll<HTMLInputElement>('input[type=checkbox]:checked'),
        ].map((el) => el.value);
        onChange(checked);
      });
      fieldset.appendChild(this.labelled(value, box));
    }
    return fieldset;
  }
}

export function mount(root: HTMLElement): App {
  const app = new App(root);
  app.start();
  return app;
}
