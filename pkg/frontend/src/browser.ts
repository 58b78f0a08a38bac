/**
 * Strategy Browser: one card per story block with strategy chips, an
 * explanation panel, and cue highlighting.
 *
 * Highlights are placed strictly at the server-provided [start, end)
 * offsets; the client never searches for cue text itself, so a cue that
 * occurs twice is marked exactly where the analysis grounded it.
 */

import type { Annotation, Card, CueSpan } from "./api.js";
import type { CardView } from "./state.js";
import { clear, el } from "./dom.js";

export interface BrowserHandlers {
  onBookmark?: (blockId: string) => void;
  onExpand?: (card: Card) => void;
  onDragStrategy?: (annotation: Annotation) => void;
}

/** Build text nodes with <mark> elements at the given offsets. */
export function highlightSpans(text: string, cues: CueSpan[]): Node[] {
  const sorted = [...cues].sort((a, b) => a.start - b.start);
  const nodes: Node[] = [];
  let pos = 0;
  for (const cue of sorted) {
    if (cue.start < pos || cue.end > text.length || cue.start >= cue.end) continue;
    if (cue.start > pos) nodes.push(document.createTextNode(text.slice(pos, cue.start)));
    const mark = el("mark", { class: "cue", "data-cue-start": String(cue.start) });
    mark.textContent = text.slice(cue.start, cue.end);
    nodes.push(mark);
    pos = cue.end;
  }
  if (pos < text.length) nodes.push(document.createTextNode(text.slice(pos)));
  return nodes;
}

function explanationPanel(annotation: Annotation, blockText: string): HTMLElement {
  const panel = el("div", { class: "explanation-panel" });
  panel.append(el("p", { class: "explanation" }, [annotation.explanation]));
  panel.append(
    el(
      "div",
      { class: "dimensions" },
      annotation.dimensions.map((d) => el("span", { class: "dimension-tag" }, [d])),
    ),
  );
  const excerpt = el("blockquote", { class: "cue-context" });
  excerpt.append(...highlightSpans(blockText, annotation.cues));
  panel.append(excerpt);
  if (!annotation.verified) {
    panel.append(el("p", { class: "ungrounded-note" }, ["No verified cues for this strategy."]));
  }
  return panel;
}

function strategyChip(
  annotation: Annotation,
  blockText: string,
  card: HTMLElement,
  handlers: BrowserHandlers,
): HTMLElement {
  const chip = el(
    "button",
    { class: "strategy-chip", draggable: "true", "data-annotation-id": annotation.id },
    [annotation.name],
  );
  chip.addEventListener("click", () => {
    const existing = card.querySelector(".explanation-panel");
    if (existing) existing.remove();
    card.append(explanationPanel(annotation, blockText));
  });
  chip.addEventListener("dragstart", (ev) => {
    const payload = JSON.stringify({
      annotationId: annotation.id,
      dimensions: annotation.dimensions,
      name: annotation.name,
      blockId: annotation.block_id,
    });
    ev.dataTransfer?.setData("application/x-strategy", payload);
    handlers.onDragStrategy?.(annotation);
  });
  return chip;
}

export function renderCard(card: Card, view: CardView, handlers: BrowserHandlers = {}): HTMLElement {
  const root = el("article", {
    class: `card view-${view}`,
    "data-block-id": card.block.id,
  });
  const header = el("header", {}, [
    el("h3", { class: "card-title" }, [card.block.title]),
    el("span", { class: "card-story" }, [card.story_title]),
  ]);
  const expand = el("button", { class: "expand", title: "Show full story" }, ["⤢"]);
  expand.addEventListener("click", () => handlers.onExpand?.(card));
  const bookmark = el("button", { class: "bookmark", title: "Bookmark" }, ["☆"]);
  bookmark.addEventListener("click", () => {
    bookmark.classList.toggle("active");
    handlers.onBookmark?.(card.block.id);
  });
  header.append(expand, bookmark);
  root.append(header);

  if (card.turning_points.length) {
    root.append(
      el(
        "div",
        { class: "turning-points" },
        card.turning_points.map((tp) => el("span", { class: "tp-tag" }, [tp])),
      ),
    );
  }

  const chips = el("div", { class: "chips" });
  for (const annotation of card.annotations) {
    chips.append(strategyChip(annotation, card.block.text, root, handlers));
  }
  root.append(chips);

  if (view !== "more-brief") {
    const body = el("p", { class: "block-text" });
    const cues = card.annotations.flatMap((a) => a.cues);
    body.append(...highlightSpans(card.block.text, cues));
    root.append(body);
  }
  if (view !== "with-plot") {
    root.append(el("p", { class: "block-summary" }, [card.block.summary]));
  }
  return root;
}

/** Render cards in the given order (the server's ranking when searching). */
export function renderBrowser(
  container: HTMLElement,
  cards: Card[],
  view: CardView,
  handlers: BrowserHandlers = {},
): void {
  clear(container);
  for (const card of cards) {
    container.append(renderCard(card, view, handlers));
  }
}

export function highlightCard(container: HTMLElement, blockId: string | null): void {
  for (const card of container.querySelectorAll(".card")) {
    card.classList.toggle(
      "hover-linked",
      blockId !== null && card.getAttribute("data-block-id") === blockId,
    );
  }
}
