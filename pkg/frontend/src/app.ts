// Explorer wiring: load a quiver, click vertices to mutate, watch the
// server's green/red verdicts, inspect the product series, compare
// recorded histories. One request is in flight per session; clicks
// queue up client-side so the history stays linear.

import { ApiClient, ApiError, QuiverData, SessionView } from "./api.js";
import { initialPositions, LayoutInput, Point, relax } from "./layout.js";
import { renderCMatrix, renderHistory, renderQuiver, renderSeries } from "./render.js";

export type AppElements = {
  svg: SVGSVGElement;
  banner: HTMLElement;
  history: HTMLElement;
  cMatrix: HTMLTableElement;
  seriesTable: HTMLTableElement;
  degreeInput: HTMLInputElement;
  fetchSeriesButton: HTMLButtonElement;
  undoButton: HTMLButtonElement;
  greenOnlyToggle: HTMLInputElement;
  catalogSelect: HTMLSelectElement;
  loadFixtureButton: HTMLButtonElement;
  quiverTextarea: HTMLTextAreaElement;
  loadTextButton: HTMLButtonElement;
  recordButton: HTMLButtonElement;
  compareButton: HTMLButtonElement;
  badge: HTMLElement;
  error: HTMLElement;
};

type StorageLike = { getItem(k: string): string | null; setItem(k: string, v: string): void };

export class ExplorerApp {
  view: SessionView | null = null;
  positions = new Map<number, Point>();
  greenOnly = false;
  recorded: number[][] = [];

  private queue: number[] = [];
  private busy = false;
  private dragging: { vertex: number } | null = null;

  constructor(
    private api: ApiClient,
    private els: AppElements,
    private storage: StorageLike | null = null,
  ) {
    els.undoButton.addEventListener("click", () => void this.undo());
    els.greenOnlyToggle.addEventListener("change", () => {
      this.greenOnly = els.greenOnlyToggle.checked;
      this.render();
    });
    els.fetchSeriesButton.addEventListener("click", () => void this.fetchSeries());
    els.loadFixtureButton.addEventListener("click", () => void this.loadFixture());
    els.loadTextButton.addEventListener("click", () => void this.loadFromText());
    els.recordButton.addEventListener("click", () => this.recordHistory());
    els.compareButton.addEventListener("click", () => void this.compareRecorded());
    els.svg.addEventListener("pointermove", (e) => this.onDragMove(e as PointerEvent));
    els.svg.addEventListener("pointerup", () => (this.dragging = null));
    els.svg.addEventListener("pointerleave", () => (this.dragging = null));
  }

  async start(): Promise<void> {
    try {
      const entries = await this.api.catalog();
      this.els.catalogSelect.innerHTML = "";
      for (const entry of entries) {
        const option = document.createElement("option");
        option.value = entry.name;
        option.textContent = `${entry.name} (${entry.quiver.n} vertices)`;
        this.els.catalogSelect.appendChild(option);
      }
    } catch (exc) {
      this.showError(exc);
    }
  }

  // -- loading -------------------------------------------------------

  async loadFixture(): Promise<void> {
    const name = this.els.catalogSelect.value;
    if (!name) return;
    await this.adopt(() => this.api.createSessionFromFixture(name));
  }

  async loadFromText(): Promise<void> {
    let quiver: QuiverData;
    try {
      quiver = JSON.parse(this.els.quiverTextarea.value);
    } catch (exc) {
      this.showError(new Error(`quiver JSON does not parse: ${exc}`));
      return;
    }
    await this.adopt(() => this.api.createSession(quiver));
  }

  private async adopt(create: () => Promise<SessionView>): Promise<void> {
    try {
      const view = await create();
      this.view = view;
      this.recorded = [];
      this.queue = [];
      this.loadPositions();
      this.clearError();
      this.els.seriesTable.innerHTML = "";
      this.els.badge.textContent = "";
      this.render();
    } catch (exc) {
      this.showError(exc);
    }
  }

  // -- mutation queue ------------------------------------------------

  clickVertex(vertex: number): void {
    if (!this.view) return;
    if (this.greenOnly && !this.view.greens.includes(vertex)) return;
    this.queue.push(vertex);
    void this.pump();
  }

  private async pump(): Promise<void> {
    if (this.busy || !this.view) return;
    const vertex = this.queue.shift();
    if (vertex === undefined) return;
    this.busy = true;
    try {
      this.view = await this.api.mutate(this.view.id, vertex);
      this.clearError();
      this.render();
    } catch (exc) {
      this.queue = [];
      this.showError(exc); // state unchanged on rejection
    } finally {
      this.busy = false;
      if (this.queue.length) void this.pump();
    }
  }

  async undo(): Promise<void> {
    if (!this.view || this.busy) return;
    this.busy = true;
    try {
      this.view = await this.api.undo(this.view.id);
      this.clearError();
      this.render();
    } catch (exc) {
      this.showError(exc);
    } finally {
      this.busy = false;
    }
  }

  get pendingClicks(): number {
    return this.queue.length;
  }

  // -- series panel ----------------------------------------------------

  async fetchSeries(): Promise<void> {
    if (!this.view) return;
    const degree = Number(this.els.degreeInput.value);
    try {
      const response = await this.api.dt(this.view.id, degree);
      renderSeries(this.els.seriesTable, response.series);
      this.clearError();
    } catch (exc) {
      this.showError(exc);
    }
  }

  recordHistory(): void {
    if (!this.view) return;
    this.recorded.push([...this.view.history]);
    if (this.recorded.length > 2) this.recorded.shift();
    this.els.badge.textContent = `recorded: ${this.recorded
      .map((h) => h.join(",") || "()")
      .join("  vs  ")}`;
    this.els.badge.className = "badge neutral";
  }

  async compareRecorded(): Promise<void> {
    if (!this.view || this.recorded.length < 2) {
      this.showError(new Error("record two histories first"));
      return;
    }
    const degree = Number(this.els.degreeInput.value);
    try {
      const result = await this.api.verify(
        this.view.origin,
        this.recorded[0],
        this.recorded[1],
        degree,
      );
      if (result.equal) {
        this.els.badge.textContent = `equal up to degree ${degree}`;
        this.els.badge.className = "badge equal";
      } else {
        const exp = result.witness ? `(${result.witness.exp.join(",")})` : "?";
        this.els.badge.textContent = `differ first at ${exp}`;
        this.els.badge.className = "badge unequal";
      }
      this.clearError();
    } catch (exc) {
      this.showError(exc);
    }
  }

  // -- layout ----------------------------------------------------------

  private layoutInput(): LayoutInput {
    const view = this.view!;
    // viewBox is not implemented by every DOM (jsdom in tests); fall back
    const box = (this.els.svg as { viewBox?: { baseVal?: { width: number; height: number } } })
      .viewBox?.baseVal;
    return {
      n: view.quiver.n,
      edges: view.quiver.arrows.map(([s, t]) => [s, t] as [number, number]),
      width: box?.width || 640,
      height: box?.height || 480,
    };
  }

  private storageKey(): string {
    return `quiverkit-layout-${this.view?.id ?? ""}`;
  }

  private loadPositions(): void {
    const input = this.layoutInput();
    this.positions = initialPositions(input);
    const saved = this.storage?.getItem(this.storageKey());
    if (saved) {
      try {
        for (const [vertex, p] of JSON.parse(saved)) {
          this.positions.set(Number(vertex), { ...p, pinned: true });
        }
        return;
      } catch {
        /* fall through to a fresh layout */
      }
    }
    relax(input, this.positions);
  }

  private savePositions(): void {
    this.storage?.setItem(
      this.storageKey(),
      JSON.stringify([...this.positions].map(([v, p]) => [v, { x: p.x, y: p.y }])),
    );
  }

  onDragStart(vertex: number, event: PointerEvent): void {
    this.dragging = { vertex };
    event.preventDefault();
  }

  private onDragMove(event: PointerEvent): void {
    if (!this.dragging) return;
    const point = this.positions.get(this.dragging.vertex);
    if (!point) return;
    const rect = this.els.svg.getBoundingClientRect();
    const input = this.layoutInput();
    const scaleX = rect.width ? input.width / rect.width : 1;
    const scaleY = rect.height ? input.height / rect.height : 1;
    point.x += event.movementX * scaleX;
    point.y += event.movementY * scaleY;
    point.pinned = true;
    this.savePositions();
    this.render();
  }

  // -- rendering --------------------------------------------------------

  render(): void {
    const view = this.view;
    if (!view) return;
    renderQuiver(this.els.svg, view, this.positions, this.greenOnly, {
      onClick: (vertex) => this.clickVertex(vertex),
      onDragStart: (vertex, event) => this.onDragStart(vertex, event),
    });
    renderCMatrix(this.els.cMatrix, view);
    renderHistory(this.els.history, view);
    if (view.all_red) {
      this.els.banner.textContent = "reddening sequence complete - fetch the series below";
      this.els.banner.className = "banner on";
    } else {
      this.els.banner.textContent = "";
      this.els.banner.className = "banner";
    }
  }

  showError(exc: unknown): void {
    const text =
      exc instanceof ApiError
        ? `server ${exc.status}: ${exc.message}`
        : exc instanceof Error
          ? exc.message
          : String(exc);
    this.els.error.textContent = text;
  }

  clearError(): void {
    this.els.error.textContent = "";
  }
}

export function collectElements(root: Document): AppElements {
  const byId = <T extends Element>(id: string): T => {
    const node = root.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as unknown as T;
  };
  return {
    svg: byId<SVGSVGElement>("quiver-view"),
    banner: byId<HTMLElement>("banner"),
    history: byId<HTMLElement>("history"),
    cMatrix: byId<HTMLTableElement>("c-matrix"),
    seriesTable: byId<HTMLTableElement>("series-table"),
    degreeInput: byId<HTMLInputElement>("degree-input"),
    fetchSeriesButton: byId<HTMLButtonElement>("fetch-series"),
    undoButton: byId<HTMLButtonElement>("undo-button"),
    greenOnlyToggle: byId<HTMLInputElement>("green-only"),
    catalogSelect: byId<HTMLSelectElement>("catalog-select"),
    loadFixtureButton: byId<HTMLButtonElement>("load-fixture"),
    quiverTextarea: byId<HTMLTextAreaElement>("quiver-json"),
    loadTextButton: byId<HTMLButtonElement>("load-json"),
    recordButton: byId<HTMLButtonElement>("record-history"),
    compareButton: byId<HTMLButtonElement>("compare-recorded"),
    badge: byId<HTMLElement>("badge"),
    error: byId<HTMLElement>("error-box"),
  };
}
