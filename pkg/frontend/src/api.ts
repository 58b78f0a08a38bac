/**
 * Typed client for the /v1 service API.
 *
 * Everything the UI displays comes through here; the client performs no
 * narrative analysis, arc math, or prompt construction of its own. Cue
 * highlight offsets in particular are used exactly as the server sends them.
 */

export interface BlockInfo {
  id: string;
  story_id: string;
  index: number;
  title: string;
  text: string;
  summary: string;
  char_span: [number, number];
}

export interface CueSpan {
  text: string;
  start: number;
  end: number;
}

export interface Annotation {
  id: string;
  block_id: string;
  name: string;
  explanation: string;
  cues: CueSpan[];
  dimensions: string[];
  verified: boolean;
  dropped_cues: string[];
  flags: string[];
}

export interface Card {
  block: BlockInfo;
  story_title: string;
  annotations: Annotation[];
  turning_points: string[];
  score?: number;
}

export interface ArcPoint {
  block_id: string;
  index: number;
  adjectives: string[];
  raw_valence: number;
  signed_valence: number;
  coverage: number;
  x: number;
  y: number;
}

export interface Arc {
  id: string;
  points: ArcPoint[];
}

export interface StorySummary {
  id: string;
  title: string;
  source: string;
  protagonist: string | null;
  n_blocks: number;
}

export interface DraftBlock {
  id: string;
  index: number;
  text: string;
}

export interface DraftDoc {
  draft_id: string;
  story: { id: string; title: string; body: string };
  blocks: DraftBlock[];
  version: number;
}

export interface Track {
  id: string;
  dimension: string;
  order: number;
}

export interface Tile {
  id: string;
  track_id: string;
  strategy_ref: string;
  span: [number, number];
  seq: number;
}

export interface Revision {
  id: string;
  block_id: string | null;
  applied_strategies: string[];
  previous_text: string;
  new_text: string;
  timestamp: number;
  accepted: boolean;
  kind: string;
}

export interface Workspace {
  draft: { story: { id: string }; blocks: DraftBlock[]; version: number };
  tracks: Track[];
  tiles: Tile[];
  revisions: Revision[];
  pending: Record<string, string>;
}

export interface Comparison {
  strategy_name: string;
  example: { text: string; cues: CueSpan[] };
  revised: { text: string; cues: CueSpan[] };
  commentary: string;
  dropped_cues: string[];
}

export interface BrushHit {
  block_id: string;
  story_id: string;
  x: number;
  y: number;
}

export interface BlockFilters {
  dimension?: string;
  turning_point?: string;
  q?: string;
}

export class ApiClient {
  /** Called on any fetch failure so the shell can show an offline banner. */
  onError: (err: unknown) => void = () => {};

  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.baseUrl + path, init);
    } catch (err) {
      this.onError(err);
      throw err;
    }
    if (!resp.ok) {
      const detail = await resp.text();
      const err = new Error(`${init?.method ?? "GET"} ${path}: ${resp.status} ${detail}`);
      this.onError(err);
      throw err;
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getStories(): Promise<StorySummary[]> {
    return this.request("/v1/stories");
  }

  getBlocks(filters: BlockFilters = {}): Promise<Card[]> {
    const params = new URLSearchParams();
    if (filters.dimension) params.set("dimension", filters.dimension);
    if (filters.turning_point) params.set("turning_point", filters.turning_point);
    if (filters.q) params.set("q", filters.q);
    const qs = params.toString();
    return this.request(`/v1/blocks${qs ? "?" + qs : ""}`);
  }

  getArc(id: string, kind: "story" | "draft" = "story"): Promise<Arc> {
    const key = kind === "story" ? "story_id" : "draft_id";
    return this.request(`/v1/arcs?${key}=${encodeURIComponent(id)}`);
  }

  getAllArcs(): Promise<{ arcs: Arc[] }> {
    return this.request("/v1/arcs");
  }

  getMostSimilar(draftId: string): Promise<{ story_id: string; S: number }> {
    return this.request(`/v1/arcs/similar?draft_id=${encodeURIComponent(draftId)}`);
  }

  brush(x0: number, x1: number, y0: number, y1: number): Promise<BrushHit[]> {
    return this.request(`/v1/blocks/brush?x0=${x0}&x1=${x1}&y0=${y0}&y1=${y1}`);
  }

  createDraft(title: string, body: string): Promise<DraftDoc> {
    return this.post("/v1/drafts", { title, body });
  }

  getDraft(draftId: string): Promise<DraftDoc> {
    return this.request(`/v1/drafts/${encodeURIComponent(draftId)}`);
  }

  insertBlock(draftId: string, index: number, text: string): Promise<DraftBlock> {
    return this.post(`/v1/drafts/${encodeURIComponent(draftId)}/blocks`, { index, text });
  }

  patchBlock(draftId: string, blockId: string, text: string): Promise<DraftBlock> {
    return this.request(
      `/v1/drafts/${encodeURIComponent(draftId)}/blocks/${encodeURIComponent(blockId)}`,
      {
        method: "PATCH",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ text }),
      },
    );
  }

  computeDraftArc(draftId: string): Promise<Arc & { protagonist: string }> {
    return this.post(`/v1/drafts/${encodeURIComponent(draftId)}/arc`, {});
  }

  getWorkspace(draftId: string): Promise<Workspace> {
    return this.request(`/v1/remix/workspace?draft_id=${encodeURIComponent(draftId)}`);
  }

  addTrack(draftId: string, dimension: string): Promise<Track> {
    return this.post("/v1/remix/tracks", { draft_id: draftId, dimension });
  }

  placeTile(
    draftId: string,
    trackId: string,
    strategyRef: string,
    span: [number, number],
  ): Promise<Tile> {
    return this.post("/v1/remix/tiles", {
      draft_id: draftId,
      track_id: trackId,
      strategy_ref: strategyRef,
      span,
    });
  }

  resizeTile(draftId: string, tileId: string, span: [number, number]): Promise<Tile> {
    return this.request(`/v1/remix/tiles/${encodeURIComponent(tileId)}`, {
      method: "PATCH",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ draft_id: draftId, span }),
    });
  }

  revise(draftId: string, blockIndex: number, strategyIds?: string[]): Promise<Revision> {
    return this.post("/v1/remix/revise", {
      draft_id: draftId,
      block_index: blockIndex,
      strategy_ids: strategyIds ?? null,
    });
  }

  continueStory(draftId: string, hint?: string, strategyIds?: string[]): Promise<Revision> {
    return this.post("/v1/remix/continue", {
      draft_id: draftId,
      strategy_ids: strategyIds ?? null,
      hint: hint ?? null,
    });
  }

  accept(draftId: string, revisionId: string): Promise<Revision> {
    return this.post("/v1/remix/accept", { draft_id: draftId, revision_id: revisionId });
  }

  discard(draftId: string, revisionId: string): Promise<Revision> {
    return this.post("/v1/remix/discard", { draft_id: draftId, revision_id: revisionId });
  }

  restore(
    draftId: string,
    blockId: string,
    revisionId: string,
    usePrevious = false,
  ): Promise<unknown> {
    return this.post("/v1/remix/restore", {
      draft_id: draftId,
      block_id: blockId,
      revision_id: revisionId,
      use_previous: usePrevious,
    });
  }

  reflect(
    draftId: string,
    exampleBlockId: string,
    strategyRef: string,
    revisedText: string,
  ): Promise<Comparison> {
    return this.post("/v1/remix/reflect", {
      draft_id: draftId,
      example_block_id: exampleBlockId,
      strategy_ref: strategyRef,
      revised_text: revisedText,
    });
  }

  logEvent(type: string, payload: Record<string, unknown>): Promise<unknown> {
    return this.post("/v1/events", { type, timestamp: Date.now() / 1000, payload });
  }
}
