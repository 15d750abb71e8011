/**
 * Client-side mirror of the `.wpd` mixed-document format.
 *
 * The checker owns the format; this module only needs to read documents
 * the server accepts and to save documents the server parses back to the
 * same structure (the round-trip tests pin that down).
 */

export const FORMAT_HEADER = "#wp 1";

export interface TextBlock {
  kind: "text";
  markdown: string;
}

export interface CodeBlock {
  kind: "code";
  text: string;
  /** 1-based document line of the first code line; 0 when synthesized. */
  startLine: number;
}

export interface InputAreaBlock {
  kind: "input-area";
  blocks: InnerBlock[];
}

export interface HintBlock {
  kind: "hint";
  title: string;
  blocks: InnerBlock[];
}

export type InnerBlock = TextBlock | CodeBlock;
export type Block = TextBlock | CodeBlock | InputAreaBlock | HintBlock;

export interface WaterDoc {
  version: string;
  preamble: string[];
  blocks: Block[];
}

export class DocError extends Error {
  readonly line: number;
  constructor(message: string, line: number) {
    super(`line ${line}: ${message}`);
    this.line = line;
  }
}

const HINT_OPEN = /^<hint title="([^"]*)">$/;
const AREA_CLOSERS = ["</input-area>", "<\\input-area>"];

export function parseDoc(text: string): WaterDoc {
  const lines = text.split("\n");
  // split("\n") leaves a trailing "" for newline-terminated files
  if (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0 || lines[0].trim() !== FORMAT_HEADER) {
    throw new DocError(`missing \`${FORMAT_HEADER}\` header`, 1);
  }

  const preamble: string[] = [];
  let i = 1;
  while (i < lines.length && lines[i].startsWith("#")) {
    preamble.push(lines[i]);
    i += 1;
  }

  const blocks: Block[] = [];
  let container: { kind: "input-area" | "hint"; openLine: number; title: string; blocks: InnerBlock[] } | null = null;
  const textLines: string[] = [];
  let codeLines: string[] | null = null;
  let codeOpenLine = 0;

  const sink = (): Block[] | InnerBlock[] => (container ? container.blocks : blocks);
  const flushText = () => {
    if (textLines.length > 0) {
      sink().push({ kind: "text", markdown: textLines.join("\n") + "\n" });
      textLines.length = 0;
    }
  };

  for (let lineno = i + 1; lineno <= lines.length; lineno++) {
    const line = lines[lineno - 1];
    const stripped = line.trim();
    if (codeLines !== null) {
      if (stripped === "```") {
        const body = codeLines.length > 0 ? codeLines.join("\n") + "\n" : "";
        sink().push({ kind: "code", text: body, startLine: codeOpenLine });
        codeLines = null;
      } else {
        codeLines.push(line);
      }
      continue;
    }
    if (stripped === "```proof") {
      flushText();
      codeLines = [];
      codeOpenLine = lineno + 1;
    } else if (stripped === "<input-area>") {
      flushText();
      if (container) throw new DocError("input areas and hints cannot nest", lineno);
      container = { kind: "input-area", openLine: lineno, title: "", blocks: [] };
    } else if (AREA_CLOSERS.includes(stripped)) {
      if (!container || container.kind !== "input-area") {
        throw new DocError("closing marker without an open input area", lineno);
      }
      flushText();
      blocks.push({ kind: "input-area", blocks: container.blocks });
      container = null;
    } else if (HINT_OPEN.test(stripped)) {
      flushText();
      if (container) throw new DocError("input areas and hints cannot nest", lineno);
      const title = HINT_OPEN.exec(stripped)![1];
      container = { kind: "hint", openLine: lineno, title, blocks: [] };
    } else if (stripped === "</hint>") {
      if (!container || container.kind !== "hint") {
        throw new DocError("closing marker without an open hint", lineno);
      }
      flushText();
      blocks.push({ kind: "hint", title: container.title, blocks: container.blocks });
      container = null;
    } else {
      textLines.push(line);
    }
  }
  if (codeLines !== null) {
    throw new DocError("unterminated ```proof block", codeOpenLine - 1);
  }
  if (container) {
    throw new DocError(`unclosed ${container.kind === "hint" ? "hint" : "area"}`, container.openLine);
  }
  flushText();
  return { version: "1", preamble, blocks };
}

function renderInner(blocks: readonly InnerBlock[] | readonly Block[]): string {
  let out = "";
  for (const b of blocks) {
    switch (b.kind) {
      case "text":
        out += b.markdown;
        break;
      case "code":
        out += "```proof\n" + b.text + "```\n";
        break;
      case "input-area":
        out += "<input-area>\n" + renderInner(b.blocks) + "</input-area>\n";
        break;
      case "hint":
        out += `<hint title="${b.title}">\n` + renderInner(b.blocks) + "</hint>\n";
        break;
    }
  }
  return out;
}

export function renderDoc(doc: WaterDoc): string {
  let head = FORMAT_HEADER + "\n";
  for (const line of doc.preamble) head += line + "\n";
  return head + renderInner(doc.blocks);
}

/** Input-area indices in document order, as paths into `doc.blocks`. */
export function inputAreaIndices(doc: WaterDoc): number[] {
  const out: number[] = [];
  doc.blocks.forEach((b, index) => {
    if (b.kind === "input-area") out.push(index);
  });
  return out;
}
