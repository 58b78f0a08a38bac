/**
 * Remixer: the story track, dimension tracks, drag-and-drop strategy tiles,
 * block-scoped revise / continue, pending-revision gating, and history.
 *
 * Every mutation goes through the service and is followed by a full
 * workspace refetch, so the panel always shows server state (accept and
 * discard round-trips leave the client identical to a fresh fetch).
 */

import type { ApiClient, Revision, Tile, Workspace } from "./api.js";
import { clear, el } from "./dom.js";

export const DIMENSIONS = [
  "Plot",
  "Character",
  "Information",
  "Emotional",
  "Linguistic",
  "Pacing",
  "Thematic",
  "Engagement",
] as const;

export interface StrategyRef {
  annotationId: string;
  name: string;
  dimensions: string[];
  blockId: string;
}

export interface RemixHandlers {
  /** called after any successful mutation + refetch */
  onWorkspaceChange?: (ws: Workspace) => void;
  onReflect?: (revision: Revision) => void;
  onError?: (err: unknown) => void;
}

interface DropPayload {
  annotationId: string;
  dimensions: string[];
  name: string;
  blockId: string;
}

export class RemixPanel {
  readonly root: HTMLElement;
  private ws: Workspace | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly draftId: string,
    private readonly handlers: RemixHandlers = {},
  ) {
    this.root = el("section", { class: "remix-panel" });
  }

  async refresh(): Promise<Workspace> {
    const ws = await this.api.getWorkspace(this.draftId);
    this.ws = ws;
    this.render(ws);
    this.handlers.onWorkspaceChange?.(ws);
    return ws;
  }

  get workspace(): Workspace | null {
    return this.ws;
  }

  /** ids of revisions currently pending on the server */
  pendingRevisionIds(): string[] {
    return this.ws ? Object.values(this.ws.pending) : [];
  }

  private async mutate(action: () => Promise<unknown>): Promise<void> {
    try {
      await action();
    } catch (err) {
      this.handlers.onError?.(err);
      return;
    }
    await this.refresh();
  }

  // -- drop handling --------------------------------------------------

  /**
   * Resolve a strategy drop onto a track. A strategy carrying two
   * dimensions where both dimensions have tracks needs a user decision:
   * a selection dialog opens and placement happens on choice.
   */
  handleDrop(payload: DropPayload, targetTrackId: string, span: [number, number]): void {
    if (!this.ws) return;
    const tracksByDim = new Map<string, string[]>();
    for (const t of this.ws.tracks) {
      const list = tracksByDim.get(t.dimension) ?? [];
      list.push(t.id);
      tracksByDim.set(t.dimension, list);
    }
    const target = this.ws.tracks.find((t) => t.id === targetTrackId);
    if (!target) return;

    const matching = payload.dimensions.filter((d) => tracksByDim.has(d));
    if (payload.dimensions.length === 2 && matching.length === 2) {
      this.openDimensionDialog(payload, span, targetTrackId);
      return;
    }
    if (!payload.dimensions.includes(target.dimension)) {
      this.flash(`"${payload.name}" has no ${target.dimension} dimension`);
      return;
    }
    void this.mutate(() =>
      this.api.placeTile(this.draftId, targetTrackId, payload.annotationId, span),
    );
  }

  private openDimensionDialog(
    payload: DropPayload,
    span: [number, number],
    droppedTrackId: string,
  ): void {
    this.root.querySelector(".dimension-dialog")?.remove();
    const dialog = el("div", { class: "dimension-dialog", role: "dialog" }, [
      el("p", {}, [`"${payload.name}" serves two dimensions. Apply which?`]),
    ]);
    for (const dim of payload.dimensions) {
      const btn = el("button", { class: "dimension-choice", "data-dimension": dim }, [dim]);
      btn.addEventListener("click", () => {
        dialog.remove();
        const track =
          this.ws?.tracks.find((t) => t.id === droppedTrackId && t.dimension === dim) ??
          this.ws?.tracks.find((t) => t.dimension === dim);
        if (!track) return;
        void this.mutate(() =>
          this.api.placeTile(this.draftId, track.id, payload.annotationId, span),
        );
      });
      dialog.append(btn);
    }
    const cancel = el("button", { class: "dialog-cancel" }, ["Cancel"]);
    cancel.addEventListener("click", () => dialog.remove());
    dialog.append(cancel);
    this.root.append(dialog);
  }

  private flash(message: string): void {
    const note = el("div", { class: "flash" }, [message]);
    this.root.append(note);
    setTimeout(() => note.remove(), 2500);
  }

  // -- rendering --------------------------------------------------------

  private render(ws: Workspace): void {
    clear(this.root);
    this.root.append(this.renderStoryTrack(ws));
    for (const track of [...ws.tracks].sort((a, b) => a.order - b.order)) {
      this.root.append(this.renderDimensionTrack(ws, track.id, track.dimension));
    }
    this.root.append(this.renderAddTrack());
    this.root.append(this.renderPendingPanel(ws));
    this.root.append(this.renderHistoryPanel(ws));
  }

  private strategyNamesFor(ws: Workspace, blockIndex: number): string[] {
    const out: string[] = [];
    for (const tile of ws.tiles) {
      if (tile.span[0] <= blockIndex && blockIndex <= tile.span[1]) {
        if (!out.includes(tile.strategy_ref)) out.push(tile.strategy_ref);
      }
    }
    return out;
  }

  private renderStoryTrack(ws: Workspace): HTMLElement {
    const row = el("div", { class: "track story-track" });
    const pendingTargets = new Set(Object.keys(ws.pending));
    for (const block of ws.draft.blocks) {
      const tileEl = el(
        "div",
        { class: "block-tile", "data-block-id": block.id, "data-index": String(block.index) },
        [el("span", { class: "block-label" }, [`¶${block.index + 1}`])],
      );
      if (pendingTargets.has(block.id)) tileEl.classList.add("pending");
      if (this.strategyNamesFor(ws, block.index).length) {
        const revise = el("button", { class: "revise-btn", title: "Revise this block" }, ["⟳"]);
        revise.addEventListener("click", () =>
          void this.mutate(() => this.api.revise(this.draftId, block.index)),
        );
        tileEl.append(revise);
      }
      row.append(tileEl);
    }
    row.append(this.renderContinuationSlot(ws));
    return row;
  }

  private renderContinuationSlot(ws: Workspace): HTMLElement {
    const slotIndex = ws.draft.blocks.length;
    const slot = el("div", { class: "block-tile continuation-slot" }, [
      el("span", { class: "block-label" }, ["+"]),
    ]);
    if ("__continuation__" in ws.pending) slot.classList.add("pending");
    if (this.strategyNamesFor(ws, slotIndex).length) {
      const hint = el("input", {
        class: "continue-hint",
        placeholder: "describe the next block (optional)",
      });
      const btn = el("button", { class: "continue-btn" }, ["Continue Story"]);
      btn.addEventListener("click", () =>
        void this.mutate(() =>
          this.api.continueStory(this.draftId, hint.value || undefined),
        ),
      );
      slot.append(hint, btn);
    }
    return slot;
  }

  private renderDimensionTrack(ws: Workspace, trackId: string, dimension: string): HTMLElement {
    const row = el("div", { class: "track dimension-track", "data-track-id": trackId }, [
      el("span", { class: "track-label" }, [dimension]),
    ]);
    row.addEventListener("dragover", (ev) => ev.preventDefault());
    row.addEventListener("drop", (ev) => {
      const raw = (ev as DragEvent).dataTransfer?.getData("application/x-strategy");
      if (!raw) return;
      const payload = JSON.parse(raw) as DropPayload;
      const index = this.dropIndex(ev as DragEvent, ws);
      this.handleDrop(payload, trackId, [index, index]);
    });
    for (const tile of ws.tiles.filter((t) => t.track_id === trackId)) {
      row.append(this.renderTile(tile, ws));
    }
    return row;
  }

  private dropIndex(ev: DragEvent, ws: Workspace): number {
    // position-independent fallback: an explicit data attribute wins
    const raw = ev.dataTransfer?.getData("application/x-block-index");
    if (raw) return Math.min(Number(raw), ws.draft.blocks.length);
    return 0;
  }

  private renderTile(tile: Tile, ws: Workspace): HTMLElement {
    const limit = ws.draft.blocks.length;
    const node = el(
      "div",
      { class: "strategy-tile", "data-tile-id": tile.id, "data-strategy": tile.strategy_ref },
      [],
    );
    const shrink = el("button", { class: "tile-handle left", title: "Shrink span" }, ["‹"]);
    const label = el("span", { class: "tile-span" }, [
      `[${tile.span[0]}, ${tile.span[1]}]`,
    ]);
    const grow = el("button", { class: "tile-handle right", title: "Extend span" }, ["›"]);
    shrink.addEventListener("click", () => {
      if (tile.span[1] > tile.span[0]) {
        void this.mutate(() =>
          this.api.resizeTile(this.draftId, tile.id, [tile.span[0], tile.span[1] - 1]),
        );
      }
    });
    grow.addEventListener("click", () => {
      if (tile.span[1] < limit) {
        void this.mutate(() =>
          this.api.resizeTile(this.draftId, tile.id, [tile.span[0], tile.span[1] + 1]),
        );
      }
    });
    node.append(shrink, label, grow);
    return node;
  }

  private renderAddTrack(): HTMLElement {
    const wrap = el("div", { class: "add-track" });
    const btn = el("button", { class: "add-track-btn" }, ["+Track"]);
    const menu = el("div", { class: "track-menu hidden" });
    for (const dim of DIMENSIONS) {
      const item = el("button", { class: "track-menu-item", "data-dimension": dim }, [dim]);
      item.addEventListener("click", () => {
        menu.classList.add("hidden");
        void this.mutate(() => this.api.addTrack(this.draftId, dim));
      });
      menu.append(item);
    }
    btn.addEventListener("click", () => menu.classList.toggle("hidden"));
    wrap.append(btn, menu);
    return wrap;
  }

  private renderPendingPanel(ws: Workspace): HTMLElement {
    const panel = el("div", { class: "pending-panel" });
    const byId = new Map(ws.revisions.map((r) => [r.id, r]));
    for (const revisionId of Object.values(ws.pending)) {
      const revision = byId.get(revisionId);
      if (!revision) continue;
      const entry = el("div", { class: "pending-revision", "data-revision-id": revision.id }, [
        el("h4", {}, [revision.kind === "continue" ? "Pending continuation" : "Pending revision"]),
        el("p", { class: "pending-text" }, [revision.new_text]),
      ]);
      const accept = el("button", { class: "accept-btn" }, ["Accept"]);
      accept.addEventListener("click", () =>
        void this.mutate(() => this.api.accept(this.draftId, revision.id)),
      );
      const discard = el("button", { class: "discard-btn" }, ["Discard"]);
      discard.addEventListener("click", () =>
        void this.mutate(() => this.api.discard(this.draftId, revision.id)),
      );
      const regenerate = el("button", { class: "regenerate-btn" }, ["Regenerate"]);
      regenerate.addEventListener("click", () =>
        void this.mutate(async () => {
          await this.api.discard(this.draftId, revision.id);
          if (revision.kind === "continue") {
            await this.api.continueStory(this.draftId, undefined, revision.applied_strategies);
          } else {
            const index = ws.draft.blocks.findIndex((b) => b.id === revision.block_id);
            await this.api.revise(this.draftId, index, revision.applied_strategies);
          }
        }),
      );
      entry.append(accept, regenerate, discard);
      panel.append(entry);
    }
    return panel;
  }

  private renderHistoryPanel(ws: Workspace): HTMLElement {
    const panel = el("div", { class: "history-panel" });
    for (const revision of ws.revisions) {
      if (!revision.accepted || !revision.block_id) continue;
      const entry = el("div", { class: "history-entry", "data-revision-id": revision.id }, [
        el("span", { class: "history-kind" }, [revision.kind]),
        el("span", { class: "history-preview" }, [revision.new_text.slice(0, 60)]),
      ]);
      const restore = el("button", { class: "restore-btn" }, ["Restore"]);
      restore.addEventListener("click", () =>
        void this.mutate(() =>
          this.api.restore(this.draftId, revision.block_id!, revision.id),
        ),
      );
      const compare = el("button", { class: "reflect-btn" }, ["Compare"]);
      compare.addEventListener("click", () => this.handlers.onReflect?.(revision));
      entry.append(restore, compare);
      panel.append(entry);
    }
    return panel;
  }
}
