// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { highlightSpans, renderBrowser, renderCard } from "../src/browser.js";
import { makeCard } from "./mock_service.js";

describe("highlightSpans", () => {
  it("marks exactly the server-provided offsets", () => {
    const text = "The gown was glimmering with silver and gold.";
    const start = text.indexOf("glimmering");
    const nodes = highlightSpans(text, [
      { text: "glimmering", start, end: start + "glimmering".length },
    ]);
    const container = document.createElement("div");
    container.append(...nodes);
    const mark = container.querySelector("mark")!;
    expect(mark.textContent).toBe("glimmering");
    expect(mark.getAttribute("data-cue-start")).toBe(String(start));
    expect(container.textContent).toBe(text);
  });

  it("uses offsets even when the cue text occurs earlier in the block", () => {
    // the cue "key" appears twice; the server grounded the SECOND occurrence
    const text = "A key word here, but the real key is later.";
    const second = text.indexOf("key", text.indexOf("key") + 1);
    const nodes = highlightSpans(text, [{ text: "key", start: second, end: second + 3 }]);
    const container = document.createElement("div");
    container.append(...nodes);
    const marks = container.querySelectorAll("mark");
    expect(marks).toHaveLength(1);
    expect(marks[0].getAttribute("data-cue-start")).toBe(String(second));
    // text before the mark includes the first, unmarked occurrence
    expect(container.firstChild!.textContent).toContain("A key word here");
    expect(container.textContent).toBe(text);
  });

  it("renders multiple non-overlapping cues in offset order", () => {
    const text = "alpha beta gamma delta";
    const nodes = highlightSpans(text, [
      { text: "delta", start: 17, end: 22 },
      { text: "alpha", start: 0, end: 5 },
    ]);
    const container = document.createElement("div");
    container.append(...nodes);
    const marks = [...container.querySelectorAll("mark")].map((m) => m.textContent);
    expect(marks).toEqual(["alpha", "delta"]);
    expect(container.textContent).toBe(text);
  });

  it("ignores out-of-range spans rather than corrupting the text", () => {
    const text = "short text";
    const container = document.createElement("div");
    container.append(...highlightSpans(text, [{ text: "x", start: 50, end: 60 }]));
    expect(container.querySelector("mark")).toBeNull();
    expect(container.textContent).toBe(text);
  });
});

describe("renderCard", () => {
  const card = makeCard(
    "bk-1",
    "She whispered to herself and waited by the door.",
    [
      {
        id: "an-1",
        name: "Internal Monologue",
        dimensions: ["Character"],
        cues: [{ text: "whispered to herself", start: 4, end: 24 }],
      },
      {
        id: "an-2",
        name: "Quiet Tension",
        dimensions: ["Emotional", "Pacing"],
        cues: [],
      },
    ],
    ["Opportunity"],
  );

  it("renders one clickable chip per strategy", () => {
    const node = renderCard(card, "with-plot");
    const chips = node.querySelectorAll(".strategy-chip");
    expect(chips).toHaveLength(2);
    expect(chips[0].textContent).toBe("Internal Monologue");
  });

  it("opens the explanation panel with dimensions and highlighted cues", () => {
    const node = renderCard(card, "with-plot");
    (node.querySelector(".strategy-chip") as HTMLButtonElement).click();
    const panel = node.querySelector(".explanation-panel")!;
    expect(panel.querySelector(".explanation")!.textContent).toContain("Internal Monologue");
    expect(panel.querySelectorAll(".dimension-tag")).toHaveLength(1);
    const mark = panel.querySelector("mark")!;
    expect(mark.textContent).toBe("whispered to herself");
  });

  it("shows turning-point tags", () => {
    const node = renderCard(card, "with-plot");
    expect(node.querySelector(".tp-tag")!.textContent).toBe("Opportunity");
  });

  it("omits block text in more-brief view", () => {
    const brief = renderCard(card, "more-brief");
    expect(brief.querySelector(".block-text")).toBeNull();
    const full = renderCard(card, "with-plot");
    expect(full.querySelector(".block-text")).not.toBeNull();
  });
});

describe("renderBrowser", () => {
  it("preserves the server-provided order (search ranking)", () => {
    const cards = [
      makeCard("bk-b", "second card text", [], [], 1),
      makeCard("bk-a", "first card text", [], [], 0),
    ];
    const container = document.createElement("div");
    renderBrowser(container, cards, "with-plot");
    const ids = [...container.querySelectorAll(".card")].map((c) =>
      c.getAttribute("data-block-id"),
    );
    expect(ids).toEqual(["bk-b", "bk-a"]);
  });
});
