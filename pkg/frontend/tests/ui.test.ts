import { describe, expect, it } from "vitest";

import { renderDocView, type DomNode } from "../src/render.js";
import { expandSnippet, insertAt } from "../src/snippets.js";
import { parseDoc } from "../src/wpdoc.js";

function find(node: DomNode, pred: (n: DomNode) => boolean): DomNode[] {
  const hits: DomNode[] = pred(node) ? [node] : [];
  for (const child of node.children) {
    if (typeof child !== "string") hits.push(...find(child, pred));
  }
  return hits;
}

describe("document view", () => {
  const doc = parseDoc(
    "#wp 1\n#library a.wpl\n# Sheet\nSee $\\varepsilon$.\n" +
      "<input-area>\n```proof\nQed.\n```\n</input-area>\n" +
      '<hint title="stuck?">\nTry harder.\n</hint>\n',
  );

  it("collapses the preamble and hints, borders input areas", () => {
    const view = renderDocView(doc);
    const details = find(view, (n) => n.tag === "details");
    expect(details.map((n) => n.attrs.class)).toEqual(["preamble", "hint"]);
    const areas = find(view, (n) => n.attrs.class?.includes("input-area"));
    expect(areas).toHaveLength(1);
    // without a check result the status bar is grey
    expect(areas[0].attrs.class).toContain("status-grey");
  });

  it("marks only input-area code as editable and renders math spans", () => {
    const view = renderDocView(doc);
    const editable = find(view, (n) => n.attrs.contenteditable === "true");
    expect(editable).toHaveLength(1);
    const math = find(view, (n) => n.attrs.class === "math");
    expect(math[0].children).toEqual(["\\varepsilon"]);
  });

  it("colors area bars from the last check result", () => {
    const check = { sentences: [], units: [], areaStatus: ["red" as const] };
    const view = renderDocView(doc, check);
    const areas = find(view, (n) => n.attrs.class?.includes("input-area"));
    expect(areas[0].attrs.class).toContain("status-red");
  });
});

describe("snippets", () => {
  it("expands server snippet templates into text plus tab-stops", () => {
    const { text, stops } = expandSnippet("Take ${1:x} : ${2:ℝ}.");
    expect(text).toBe("Take x : ℝ.");
    expect(stops).toEqual([
      { index: 1, start: 5, end: 6, placeholder: "x" },
      { index: 2, start: 9, end: 10, placeholder: "ℝ" },
    ]);
  });

  it("leaves templates without stops alone", () => {
    expect(expandSnippet("Qed.")).toEqual({ text: "Qed.", stops: [] });
  });

  it("inserts symbol-panel characters at the cursor", () => {
    expect(insertAt("Take x : .", 9, "ℝ")).toBe("Take x : ℝ.");
  });
});
