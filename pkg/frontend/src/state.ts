/** Client view state. Exactly one mode is active at a time. */

export type Mode = "editor" | "arc-inspector";
export type CardView = "with-plot" | "more-brief" | "more-detailed";

export interface ActiveFilters {
  dimension?: string;
  turningPoint?: string;
  query?: string;
}

export interface ViewState {
  mode: Mode;
  cardView: CardView;
  activeFilters: ActiveFilters;
  /** story ids overlaid in green by user clicks */
  selectedOverlays: string[];
  /** story id of the automatic most-similar overlay (yellow) */
  autoOverlay: string | null;
  pendingRevisionIds: string[];
  bookmarkedCards: Set<string>;
}

export function initialState(): ViewState {
  return {
    mode: "editor",
    cardView: "with-plot",
    activeFilters: {},
    selectedOverlays: [],
    autoOverlay: null,
    pendingRevisionIds: [],
    bookmarkedCards: new Set(),
  };
}

export function switchMode(state: ViewState, mode: Mode): void {
  state.mode = mode;
}

export function toggleOverlay(state: ViewState, storyId: string): void {
  const i = state.selectedOverlays.indexOf(storyId);
  if (i >= 0) state.selectedOverlays.splice(i, 1);
  else state.selectedOverlays.push(storyId);
}

export function markPending(state: ViewState, revisionId: string): void {
  if (!state.pendingRevisionIds.includes(revisionId)) {
    state.pendingRevisionIds.push(revisionId);
  }
}

export function clearPending(state: ViewState, revisionId: string): void {
  state.pendingRevisionIds = state.pendingRevisionIds.filter((id) => id !== revisionId);
}
