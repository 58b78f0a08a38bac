/**
 * Application shell: wires the browser, arc inspector, editor, and remixer
 * together. One mode (editor | arc-inspector) is visible at a time; the
 * browser column is always present.
 */

import { ApiClient, type Card, type Arc, type Revision } from "./api.js";
import { ArcView } from "./arcview.js";
import { highlightCard, renderBrowser } from "./browser.js";
import { BlockEditor } from "./editor.js";
import { renderComparison } from "./reflectview.js";
import { initialState, switchMode, toggleOverlay, type ViewState } from "./state.js";
import { RemixPanel } from "./tracks.js";
import { clear, el } from "./dom.js";

export class App {
  readonly state: ViewState = initialState();
  private cards: Card[] = [];
  private exampleArcs: Arc[] = [];
  private userArc: Arc | null = null;
  private arcView: ArcView;
  private remix: RemixPanel | null = null;
  private editor: BlockEditor | null = null;
  private draftId: string | null = null;

  private browserEl: HTMLElement;
  private mainEl: HTMLElement;
  private bannerEl: HTMLElement;
  private reflectEl: HTMLElement;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {
    this.bannerEl = el("div", { class: "offline-banner hidden" }, [
      "Service unreachable; showing the last loaded state.",
    ]);
    this.browserEl = el("aside", { class: "browser-column" });
    this.mainEl = el("main", { class: "main-column" });
    this.reflectEl = el("div", { class: "reflect-container" });
    this.arcView = new ArcView({
      onHoverPoint: (blockId) => highlightCard(this.browserEl, blockId),
      onClickPoint: (storyId) => {
        toggleOverlay(this.state, storyId);
        this.redrawArc();
      },
      onBrush: (x0, x1, y0, y1) => void this.applyBrush(x0, x1, y0, y1),
      onTurningPointFilter: (tp) => void this.applyTurningPointFilter(tp),
    });
    api.onError = () => this.bannerEl.classList.remove("hidden");

    this.root.append(this.bannerEl, this.buildToolbar(), this.browserEl, this.mainEl, this.reflectEl);
  }

  private buildToolbar(): HTMLElement {
    const bar = el("nav", { class: "toolbar" });
    const editorBtn = el("button", { class: "mode-editor" }, ["Editor"]);
    const arcBtn = el("button", { class: "mode-arc" }, ["Story Arc"]);
    editorBtn.addEventListener("click", () => {
      switchMode(this.state, "editor");
      this.renderMain();
    });
    arcBtn.addEventListener("click", () => {
      switchMode(this.state, "arc-inspector");
      this.renderMain();
    });

    const search = el("input", { class: "search-box", placeholder: "search strategies…" });
    search.addEventListener("change", () => {
      this.state.activeFilters.query = search.value || undefined;
      void this.reloadCards();
    });

    const viewSelect = el("select", { class: "card-view-select" });
    for (const v of ["with-plot", "more-brief", "more-detailed"]) {
      viewSelect.append(el("option", { value: v }, [v]));
    }
    viewSelect.addEventListener("change", () => {
      this.state.cardView = viewSelect.value as ViewState["cardView"];
      this.renderCards(this.cards);
    });

    bar.append(editorBtn, arcBtn, search, viewSelect);
    return bar;
  }

  async start(draftId: string): Promise<void> {
    this.draftId = draftId;
    this.editor = new BlockEditor(this.api, draftId);
    this.remix = new RemixPanel(this.api, draftId, {
      onWorkspaceChange: (ws) => {
        this.state.pendingRevisionIds = Object.values(ws.pending);
      },
      onReflect: (revision) => void this.showReflection(revision),
    });
    await this.reloadCards();
    await this.reloadArcs();
    await this.editor.refresh();
    await this.remix.refresh();
    this.renderMain();
  }

  private async reloadCards(): Promise<void> {
    const { dimension, turningPoint, query } = this.state.activeFilters;
    this.cards = await this.api.getBlocks({
      dimension,
      turning_point: turningPoint,
      q: query,
    });
    this.renderCards(this.cards);
  }

  private renderCards(cards: Card[]): void {
    renderBrowser(this.browserEl, cards, this.state.cardView, {
      onBookmark: (blockId) => {
        if (this.state.bookmarkedCards.has(blockId)) this.state.bookmarkedCards.delete(blockId);
        else this.state.bookmarkedCards.add(blockId);
      },
    });
  }

  private async reloadArcs(): Promise<void> {
    const { arcs } = await this.api.getAllArcs();
    this.exampleArcs = arcs.filter((a) => a.id.startsWith("st-"));
    if (this.draftId) {
      try {
        this.userArc = await this.api.getArc(this.draftId, "draft");
        const similar = await this.api.getMostSimilar(this.draftId);
        this.state.autoOverlay = similar.story_id;
      } catch {
        this.userArc = null; // draft arc not computed yet
      }
    }
    this.redrawArc();
  }

  private redrawArc(visibleBlocks: Set<string> | null = null): void {
    this.arcView.render(
      this.userArc,
      this.exampleArcs,
      this.state.autoOverlay,
      this.state.selectedOverlays,
      visibleBlocks,
    );
  }

  /**
   * Turning-point chips drive both the cards and the scatter from a single
   * /v1/blocks response: the filtered cards are rendered and their block
   * ids become the visible-point set.
   */
  async applyTurningPointFilter(tp: string | null): Promise<void> {
    this.state.activeFilters.turningPoint = tp ?? undefined;
    const cards = await this.api.getBlocks({
      turning_point: tp ?? undefined,
      dimension: this.state.activeFilters.dimension,
      q: this.state.activeFilters.query,
    });
    this.cards = cards;
    this.renderCards(cards);
    this.redrawArc(tp === null ? null : new Set(cards.map((c) => c.block.id)));
  }

  private async applyBrush(x0: number, x1: number, y0: number, y1: number): Promise<void> {
    const hits = await this.api.brush(x0, x1, y0, y1);
    const visible = new Set(hits.map((h) => h.block_id));
    this.redrawArc(visible);
    this.renderCards(this.cards.filter((c) => visible.has(c.block.id)));
  }

  private async showReflection(revision: Revision): Promise<void> {
    if (!this.draftId || !revision.applied_strategies.length) return;
    const annotationId = revision.applied_strategies[0];
    const card = this.cards.find((c) => c.annotations.some((a) => a.id === annotationId));
    if (!card) return;
    const comparison = await this.api.reflect(
      this.draftId,
      card.block.id,
      annotationId,
      revision.new_text,
    );
    renderComparison(this.reflectEl, comparison);
  }

  /** Both views stay mounted; the mode switch toggles which is visible. */
  private renderMain(): void {
    if (!this.mainEl.contains(this.arcView.root)) {
      clear(this.mainEl);
      if (this.editor) this.mainEl.append(this.editor.root);
      this.mainEl.append(this.arcView.root);
      if (this.remix) this.mainEl.append(this.remix.root);
    }
    this.editor?.root.classList.toggle("hidden", this.state.mode !== "editor");
    this.arcView.root.classList.toggle("hidden", this.state.mode !== "arc-inspector");
  }
}

export function boot(): void {
  const api = new ApiClient("");
  const rootEl = document.getElementById("app");
  if (!rootEl) throw new Error("missing #app element");
  const app = new App(api, rootEl);
  const params = new URLSearchParams(window.location.search);
  const draftId = params.get("draft");
  if (draftId) {
    void app.start(draftId);
  } else {
    void api
      .createDraft("Untitled", "Start writing here.")
      .then((draft) => app.start(draft.draft_id));
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
