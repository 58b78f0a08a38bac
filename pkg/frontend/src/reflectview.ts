/**
 * Reflective comparison: two panes contrasting how a strategy is realized
 * in the example passage versus the revised draft, with cue highlights at
 * server-provided offsets and generated commentary beneath.
 */

import type { Comparison } from "./api.js";
import { highlightSpans } from "./browser.js";
import { clear, el } from "./dom.js";

export function renderComparison(container: HTMLElement, comparison: Comparison): void {
  clear(container);
  const panes = el("div", { class: "comparison-panes" });

  const example = el("div", { class: "pane example-pane" }, [
    el("h4", {}, [`${comparison.strategy_name} in the example`]),
  ]);
  const exampleText = el("p", { class: "pane-text" });
  exampleText.append(...highlightSpans(comparison.example.text, comparison.example.cues));
  example.append(exampleText);

  const revised = el("div", { class: "pane revised-pane" }, [
    el("h4", {}, ["In your revision"]),
  ]);
  const revisedText = el("p", { class: "pane-text" });
  revisedText.append(...highlightSpans(comparison.revised.text, comparison.revised.cues));
  revised.append(revisedText);

  panes.append(example, revised);
  container.append(panes);
  container.append(el("p", { class: "commentary" }, [comparison.commentary]));
}
