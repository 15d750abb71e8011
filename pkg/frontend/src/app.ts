/**
 * App layer: owns the state, debounces checking, and keeps at most one
 * in-flight check with newest-wins cancellation.  DOM wiring lives in the
 * host page; everything here is head-less and unit-testable.
 */

import { CheckerClient } from "./client.js";
import { renderDocView, type DomNode } from "./render.js";
import {
  goalPanelText,
  initialState,
  reduce,
  type Action,
  type EditorState,
} from "./state.js";
import { parseDoc, renderDoc } from "./wpdoc.js";

const CHECK_DEBOUNCE_MS = 300;

export class EditorApp {
  private state: EditorState;
  private readonly client: CheckerClient;
  private readonly libraryText: string;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private checkGeneration = 0;
  /** True while the server is unreachable; bars go grey and a banner shows. */
  offline = false;

  constructor(docText: string, client: CheckerClient, libraryText = "") {
    this.state = initialState(parseDoc(docText));
    this.client = client;
    this.libraryText = libraryText;
  }

  get current(): EditorState {
    return this.state;
  }

  dispatch(action: Action): EditorState {
    this.state = reduce(this.state, action);
    if (this.state.dirty) this.scheduleCheck();
    return this.state;
  }

  /** Serialize the current document for saving to a `.wpd` file. */
  save(): string {
    return renderDoc(this.state.doc);
  }

  view(): DomNode {
    return renderDocView(this.state.doc, this.state.lastCheck);
  }

  goalPanel(): string {
    return goalPanelText(this.state);
  }

  private scheduleCheck(): void {
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => void this.checkNow(), CHECK_DEBOUNCE_MS);
  }

  /** The explicit "check now" button bypasses the debounce. */
  async checkNow(): Promise<void> {
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
    const generation = ++this.checkGeneration;
    this.state = reduce(this.state, { type: "checked" });
    const docText = renderDoc(this.state.doc);
    try {
      const result = await this.client.check(docText, this.libraryText);
      if (generation !== this.checkGeneration) return; // superseded
      this.offline = false;
      this.state = reduce(this.state, { type: "check-result", result });
      await this.refreshGoals(docText);
    } catch {
      if (generation !== this.checkGeneration) return;
      this.offline = true;
    }
  }

  private async refreshGoals(docText: string): Promise<void> {
    try {
      const result = await this.client.goals(
        docText,
        this.state.cursor,
        this.libraryText,
      );
      this.state = reduce(this.state, { type: "goals-result", result });
    } catch {
      // no goal at the cursor (e.g. outside any proof) — clear the panel
      this.state = reduce(this.state, { type: "goals-result", result: null });
    }
  }
}
