// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, type Arc } from "../src/api.js";
import { App } from "../src/main.js";
import { defaultState, installMockService, makeCard, type MockState } from "./mock_service.js";

function arcOf(storyId: string, pairs: [string, number, number][]): Arc {
  return {
    id: storyId,
    points: pairs.map(([blockId, x, y], i) => ({
      block_id: blockId,
      index: i,
      adjectives: ["calm", "calm", "calm"],
      raw_valence: (y + 1) / 2,
      signed_valence: y,
      coverage: 3,
      x,
      y,
    })),
  };
}

let state: MockState;
let app: App;

beforeEach(async () => {
  state = defaultState();
  state.cards = [
    makeCard("bk-1", "An opening beat.", [], ["Opportunity"], 0),
    makeCard("bk-2", "A resolution beat.", [], ["Climax"], 1),
    makeCard("bk-3", "A quiet beat.", [], [], 2),
  ];
  state.arcs = [
    arcOf("st-aaa", [
      ["bk-1", 0.0, 0.4],
      ["bk-2", 0.5, -0.6],
      ["bk-3", 1.0, 0.8],
    ]),
  ];
  state.userArc = arcOf("dr-000001", [
    ["bk-d-000", 0.0, 0.1],
    ["bk-d-001", 1.0, -0.2],
  ]);
  installMockService(state);
  document.body.innerHTML = '<div id="root"></div>';
  app = new App(new ApiClient(""), document.getElementById("root")!);
  await app.start(state.draftId);
});

describe("turning-point filtering", () => {
  it("updates cards and scatter points from one /v1/blocks response", async () => {
    state.requests.length = 0;
    await app.applyTurningPointFilter("Climax");

    const blockRequests = state.requests.filter((r) => r.startsWith("GET /v1/blocks"));
    expect(blockRequests).toEqual(["GET /v1/blocks?turning_point=Climax"]);

    const cardIds = [...document.querySelectorAll(".card")].map((c) =>
      c.getAttribute("data-block-id"),
    );
    expect(cardIds).toEqual(["bk-2"]);

    const pointIds = [...document.querySelectorAll(".example-point")].map((c) =>
      c.getAttribute("data-block-id"),
    );
    expect(pointIds).toEqual(["bk-2"]);
  });

  it("clearing the filter restores all cards and points", async () => {
    await app.applyTurningPointFilter("Climax");
    await app.applyTurningPointFilter(null);
    expect(document.querySelectorAll(".card")).toHaveLength(3);
    expect(document.querySelectorAll(".example-point")).toHaveLength(3);
  });
});

describe("arc rendering", () => {
  it("draws the user arc as the red line and the auto overlay in yellow", () => {
    const user = document.querySelector(".user-arc")!;
    expect(user.getAttribute("stroke")).toBe("#d93025");
    const auto = document.querySelector(".overlay-auto")!;
    expect(auto.getAttribute("stroke")).toBe("#f2c230");
  });

  it("hovering a point highlights the matching browser card", () => {
    const dot = document.querySelector('.example-point[data-block-id="bk-2"]')!;
    dot.dispatchEvent(new Event("mouseenter"));
    const linked = document.querySelector(".card.hover-linked");
    expect(linked).not.toBeNull();
    expect(linked!.getAttribute("data-block-id")).toBe("bk-2");
    dot.dispatchEvent(new Event("mouseleave"));
    expect(document.querySelector(".card.hover-linked")).toBeNull();
  });

  it("clicking a point toggles a green overlay for that story", () => {
    const dot = document.querySelector('.example-point[data-story-id="st-aaa"]')!;
    dot.dispatchEvent(new Event("click"));
    // st-aaa is already the auto overlay; toggle still registers in state
    expect(app.state.selectedOverlays).toContain("st-aaa");
  });
});
