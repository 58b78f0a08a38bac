/**
 * Story-Arc Inspector: the draft arc as a red line over a scatter of
 * example-block points, with a yellow most-similar overlay, green
 * click-overlays, a rectangular brush, and turning-point filter chips.
 *
 * All coordinates come from the service (x normalized to [0,1], y signed
 * valence in [-1,1]); this module only projects them to pixels.
 */

import type { Arc, ArcPoint } from "./api.js";
import { clear, el, svgEl } from "./dom.js";

export interface ArcViewOptions {
  width?: number;
  height?: number;
  /** fired when the user brushes a rectangle, in data coordinates */
  onBrush?: (x0: number, x1: number, y0: number, y1: number) => void;
  onHoverPoint?: (blockId: string | null) => void;
  onClickPoint?: (storyId: string, blockId: string) => void;
  onTurningPointFilter?: (tp: string | null) => void;
}

export const TURNING_POINT_TYPES = [
  "Opportunity",
  "Change of Plans",
  "Point of No Return",
  "Major Setback",
  "Climax",
] as const;

const PAD = 24;

export class ArcView {
  readonly root: HTMLElement;
  private readonly svg: SVGSVGElement;
  private readonly width: number;
  private readonly height: number;
  private readonly opts: ArcViewOptions;
  private activeTp: string | null = null;
  private brushStart: { px: number; py: number } | null = null;
  private brushRect: SVGRectElement | null = null;

  constructor(opts: ArcViewOptions = {}) {
    this.opts = opts;
    this.width = opts.width ?? 640;
    this.height = opts.height ?? 320;
    this.root = el("div", { class: "arc-view" });
    this.root.append(this.filterChips());
    this.svg = svgEl("svg", {
      class: "arc-plot",
      viewBox: `0 0 ${this.width} ${this.height}`,
      width: String(this.width),
      height: String(this.height),
    });
    this.root.append(this.svg);
    this.wireBrush();
  }

  private filterChips(): HTMLElement {
    const bar = el("div", { class: "tp-filters" });
    for (const tp of TURNING_POINT_TYPES) {
      const chip = el("button", { class: "tp-chip", "data-tp": tp }, [tp]);
      chip.addEventListener("click", () => {
        this.activeTp = this.activeTp === tp ? null : tp;
        for (const other of bar.querySelectorAll(".tp-chip")) {
          other.classList.toggle("active", other.getAttribute("data-tp") === this.activeTp);
        }
        this.opts.onTurningPointFilter?.(this.activeTp);
      });
      bar.append(chip);
    }
    return bar;
  }

  private px(x: number): number {
    return PAD + x * (this.width - 2 * PAD);
  }

  private py(y: number): number {
    // y in [-1, 1]; +1 at the top
    return PAD + ((1 - y) / 2) * (this.height - 2 * PAD);
  }

  private toDataX(px: number): number {
    return Math.min(1, Math.max(0, (px - PAD) / (this.width - 2 * PAD)));
  }

  private toDataY(py: number): number {
    return Math.min(1, Math.max(-1, 1 - (2 * (py - PAD)) / (this.height - 2 * PAD)));
  }

  private wireBrush(): void {
    this.svg.addEventListener("mousedown", (ev) => {
      const { offsetX, offsetY } = ev as MouseEvent;
      this.brushStart = { px: offsetX, py: offsetY };
      this.brushRect?.remove();
      this.brushRect = svgEl("rect", { class: "brush", fill: "rgba(100,140,255,0.2)" });
      this.svg.append(this.brushRect);
    });
    this.svg.addEventListener("mousemove", (ev) => {
      if (!this.brushStart || !this.brushRect) return;
      const { offsetX, offsetY } = ev as MouseEvent;
      const x = Math.min(this.brushStart.px, offsetX);
      const y = Math.min(this.brushStart.py, offsetY);
      this.brushRect.setAttribute("x", String(x));
      this.brushRect.setAttribute("y", String(y));
      this.brushRect.setAttribute("width", String(Math.abs(offsetX - this.brushStart.px)));
      this.brushRect.setAttribute("height", String(Math.abs(offsetY - this.brushStart.py)));
    });
    this.svg.addEventListener("mouseup", (ev) => {
      if (!this.brushStart) return;
      const { offsetX, offsetY } = ev as MouseEvent;
      const x0 = this.toDataX(Math.min(this.brushStart.px, offsetX));
      const x1 = this.toDataX(Math.max(this.brushStart.px, offsetX));
      const y0 = this.toDataY(Math.max(this.brushStart.py, offsetY));
      const y1 = this.toDataY(Math.min(this.brushStart.py, offsetY));
      this.brushStart = null;
      this.opts.onBrush?.(x0, x1, y0, y1);
    });
  }

  private polyline(points: ArcPoint[], cls: string, color: string): SVGPolylineElement {
    const line = svgEl("polyline", {
      class: cls,
      fill: "none",
      stroke: color,
      "stroke-width": "2",
      points: points.map((p) => `${this.px(p.x)},${this.py(p.y)}`).join(" "),
    });
    return line;
  }

  /**
   * Redraw the plot.
   *
   * @param userArc      the draft arc (red line), may be null before analysis
   * @param exampleArcs  all example arcs; their points form the scatter
   * @param autoOverlay  story id of the most similar arc (yellow)
   * @param greenOverlays story ids toggled on by the user (green)
   * @param visibleBlocks when set, only scatter points whose block id is in
   *                      this set are shown (one filter response drives both
   *                      the browser cards and this plot)
   */
  render(
    userArc: Arc | null,
    exampleArcs: Arc[],
    autoOverlay: string | null,
    greenOverlays: string[],
    visibleBlocks: Set<string> | null = null,
  ): void {
    clear(this.svg);
    this.brushRect = null;

    const axis = svgEl("line", {
      class: "axis",
      x1: String(PAD),
      y1: String(this.py(0)),
      x2: String(this.width - PAD),
      y2: String(this.py(0)),
      stroke: "#ccc",
      "stroke-dasharray": "4 4",
    });
    this.svg.append(axis);

    for (const arc of exampleArcs) {
      for (const p of arc.points) {
        if (visibleBlocks && !visibleBlocks.has(p.block_id)) continue;
        const dot = svgEl("circle", {
          class: "example-point",
          "data-block-id": p.block_id,
          "data-story-id": arc.id,
          cx: String(this.px(p.x)),
          cy: String(this.py(p.y)),
          r: "4",
          fill: "#9aa0a6",
        });
        dot.addEventListener("mouseenter", () => this.opts.onHoverPoint?.(p.block_id));
        dot.addEventListener("mouseleave", () => this.opts.onHoverPoint?.(null));
        dot.addEventListener("click", () => this.opts.onClickPoint?.(arc.id, p.block_id));
        this.svg.append(dot);
      }
    }

    for (const arc of exampleArcs) {
      if (arc.id === autoOverlay) {
        this.svg.append(this.polyline(arc.points, "overlay-auto", "#f2c230"));
      } else if (greenOverlays.includes(arc.id)) {
        this.svg.append(this.polyline(arc.points, "overlay-selected", "#3aa655"));
      }
    }

    if (userArc && userArc.points.length) {
      this.svg.append(this.polyline(userArc.points, "user-arc", "#d93025"));
    }
  }
}
