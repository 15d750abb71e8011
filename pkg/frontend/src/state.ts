/**
 * Editor state and the pure reducer that guards it.
 *
 * The central invariant lives here: with teacher mode off, every edit that
 * targets content outside an input area is rejected before anything else
 * happens — no document mutation, no server call, just a toast.
 */

import type { CheckResult, GoalsResult } from "./protocol.js";
import type { Block, InnerBlock, WaterDoc } from "./wpdoc.js";

export interface Position {
  line: number;
  col: number;
}

export interface PanelState {
  symbols: boolean;
  fullContext: boolean;
  expand: boolean;
  help: boolean;
}

export interface EditorState {
  doc: WaterDoc;
  teacherMode: boolean;
  cursor: Position;
  panels: PanelState;
  lastCheck: CheckResult | null;
  lastGoals: GoalsResult | null;
  /** Transient message shown to the user; null when nothing to show. */
  toast: string | null;
  /** Set on every accepted edit so the app layer can schedule a check. */
  dirty: boolean;
}

/**
 * Where an edit lands: a top-level block, or an inner block of an
 * input area / hint ([blockIndex, innerIndex]).
 */
export type BlockPath = [number] | [number, number];

export type Action =
  | { type: "edit"; path: BlockPath; text: string }
  | { type: "set-teacher-mode"; on: boolean }
  | { type: "set-cursor"; position: Position }
  | { type: "toggle-panel"; panel: keyof PanelState }
  | { type: "check-result"; result: CheckResult }
  | { type: "goals-result"; result: GoalsResult | null }
  | { type: "dismiss-toast" }
  | { type: "checked" };

export function initialState(doc: WaterDoc): EditorState {
  return {
    doc,
    teacherMode: false,
    cursor: { line: 1, col: 1 },
    panels: { symbols: true, fullContext: false, expand: false, help: false },
    lastCheck: null,
    lastGoals: null,
    toast: null,
    dirty: false,
  };
}

function blockAt(doc: WaterDoc, path: BlockPath): Block | InnerBlock | null {
  const top = doc.blocks[path[0]];
  if (top === undefined) return null;
  if (path.length === 1) return top;
  if (top.kind !== "input-area" && top.kind !== "hint") return null;
  return top.blocks[path[1]] ?? null;
}

function editAllowed(doc: WaterDoc, path: BlockPath, teacherMode: boolean): boolean {
  if (teacherMode) return blockAt(doc, path) !== null;
  const top = doc.blocks[path[0]];
  return (
    top !== undefined &&
    top.kind === "input-area" &&
    path.length === 2 &&
    top.blocks[path[1]] !== undefined
  );
}

function withEditedBlock(doc: WaterDoc, path: BlockPath, text: string): WaterDoc {
  const blocks = doc.blocks.map((b, index) => {
    if (index !== path[0]) return b;
    if (path.length === 1) {
      if (b.kind === "text") return { ...b, markdown: text };
      if (b.kind === "code") return { ...b, text };
      return b;
    }
    if (b.kind !== "input-area" && b.kind !== "hint") return b;
    const inner = b.blocks.map((c, j) => {
      if (j !== path[1]) return c;
      return c.kind === "text" ? { ...c, markdown: text } : { ...c, text };
    });
    return { ...b, blocks: inner };
  });
  return { ...doc, blocks };
}

export function reduce(state: EditorState, action: Action): EditorState {
  switch (action.type) {
    case "edit": {
      if (!editAllowed(state.doc, action.path, state.teacherMode)) {
        return {
          ...state,
          toast: "This part of the document can only be edited in teacher mode.",
        };
      }
      return {
        ...state,
        doc: withEditedBlock(state.doc, action.path, action.text),
        dirty: true,
        toast: null,
      };
    }
    case "set-teacher-mode":
      return { ...state, teacherMode: action.on };
    case "set-cursor":
      return { ...state, cursor: action.position };
    case "toggle-panel":
      return {
        ...state,
        panels: { ...state.panels, [action.panel]: !state.panels[action.panel] },
      };
    case "check-result":
      return { ...state, lastCheck: action.result };
    case "goals-result":
      return { ...state, lastGoals: action.result };
    case "dismiss-toast":
      return { ...state, toast: null };
    case "checked":
      return { ...state, dirty: false };
  }
}

/**
 * Text for the goal panel.  The default view is exactly the server's
 * goalOnly string; the full context appears only after the user opens
 * that panel explicitly.
 */
export function goalPanelText(state: EditorState): string {
  const goals = state.lastGoals;
  if (goals === null) return "";
  if (!state.panels.fullContext) return goals.goalOnly;
  const ctx = goals.fullContext;
  const lines = [
    ...ctx.variables.map((v) => `${v.name} : ${v.sort}`),
    ...ctx.hypotheses.map((h) => `${h.label} : ${h.statement}`),
    "─".repeat(20),
    ctx.target,
  ];
  return lines.join("\n");
}
