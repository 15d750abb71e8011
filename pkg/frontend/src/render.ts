/**
 * Render a document to a DOM description: plain nested objects the app
 * layer turns into real elements.  Keeping this a pure function makes the
 * layout testable without a browser.
 *
 * Hints render collapsed (toggled by click), the preamble collapses
 * behind a marker line, and input areas get a bordered editable region
 * with a status bar colored from the last check.
 */

import type { CheckResult } from "./protocol.js";
import type { Block, InnerBlock, WaterDoc } from "./wpdoc.js";

export interface DomNode {
  tag: string;
  attrs: Record<string, string>;
  children: (DomNode | string)[];
}

function el(tag: string, attrs: Record<string, string>, ...children: (DomNode | string)[]): DomNode {
  return { tag, attrs, children };
}

/** Minimal markdown: paragraphs, #-headings, `$...$` math spans. */
function renderMarkdown(markdown: string): DomNode {
  const children: DomNode[] = [];
  for (const para of markdown.split(/\n{2,}/)) {
    const text = para.trim();
    if (text === "") continue;
    const heading = /^(#{1,6})\s+(.*)$/s.exec(text);
    if (heading) {
      children.push(el(`h${heading[1].length}`, {}, heading[2]));
      continue;
    }
    const parts: (DomNode | string)[] = [];
    for (const piece of text.split(/(\$[^$]+\$)/)) {
      if (piece.startsWith("$") && piece.endsWith("$") && piece.length > 2) {
        parts.push(el("span", { class: "math" }, piece.slice(1, -1)));
      } else if (piece !== "") {
        parts.push(piece);
      }
    }
    children.push(el("p", {}, ...parts));
  }
  return el("div", { class: "markdown" }, ...children);
}

function renderCode(code: { text: string }, editable: boolean): DomNode {
  return el(
    "pre",
    { class: "proof-code", contenteditable: editable ? "true" : "false" },
    code.text,
  );
}

function renderInner(blocks: readonly InnerBlock[], editable: boolean): DomNode[] {
  return blocks.map((b) =>
    b.kind === "text" ? renderMarkdown(b.markdown) : renderCode(b, editable),
  );
}

function renderBlock(block: Block, areaIndex: () => number, check: CheckResult | null): DomNode {
  switch (block.kind) {
    case "text":
      return renderMarkdown(block.markdown);
    case "code":
      return renderCode(block, false);
    case "input-area": {
      const index = areaIndex();
      const status = check?.areaStatus[index] ?? "grey";
      return el(
        "div",
        { class: `input-area status-${status}`, "data-area": String(index) },
        el("div", { class: "status-bar" }),
        ...renderInner(block.blocks, true),
      );
    }
    case "hint":
      return el(
        "details",
        { class: "hint" },
        el("summary", {}, block.title),
        ...renderInner(block.blocks, false),
      );
  }
}

export function renderDocView(doc: WaterDoc, check: CheckResult | null = null): DomNode {
  let seen = 0;
  const nextArea = () => seen++;
  const preamble = el(
    "details",
    { class: "preamble" },
    el("summary", {}, "document preamble"),
    ...doc.preamble.map((line) => el("div", {}, line)),
  );
  return el(
    "article",
    { class: "wpd" },
    preamble,
    ...doc.blocks.map((b) => renderBlock(b, nextArea, check)),
  );
}
