/**
 * Markdown-style block editor. Blocks map 1:1 to draft blocks; pressing
 * Enter creates a new block through the service, and blurring a changed
 * block patches its text.
 */

import type { ApiClient, DraftDoc } from "./api.js";
import { clear, el } from "./dom.js";

export class BlockEditor {
  readonly root: HTMLElement;
  private draft: DraftDoc | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly draftId: string,
    private readonly onChange: (draft: DraftDoc) => void = () => {},
  ) {
    this.root = el("section", { class: "block-editor" });
  }

  async refresh(): Promise<DraftDoc> {
    const draft = await this.api.getDraft(this.draftId);
    this.draft = draft;
    this.render(draft);
    this.onChange(draft);
    return draft;
  }

  private render(draft: DraftDoc): void {
    clear(this.root);
    for (const block of draft.blocks) {
      this.root.append(this.renderBlock(block.id, block.index, block.text));
    }
  }

  private renderBlock(blockId: string, index: number, text: string): HTMLElement {
    const area = el("textarea", {
      class: "editor-block",
      "data-block-id": blockId,
      "data-index": String(index),
      rows: String(Math.max(2, Math.ceil(text.length / 80))),
    });
    area.value = text;
    area.addEventListener("keydown", (ev) => {
      if ((ev as KeyboardEvent).key === "Enter" && !(ev as KeyboardEvent).shiftKey) {
        ev.preventDefault();
        void this.api.insertBlock(this.draftId, index + 1, "").then(() => this.refresh());
      }
    });
    area.addEventListener("blur", () => {
      const current = this.draft?.blocks.find((b) => b.id === blockId);
      if (current && current.text !== area.value) {
        void this.api.patchBlock(this.draftId, blockId, area.value).then(() => this.refresh());
      }
    });
    return area;
  }
}
