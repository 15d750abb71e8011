/**
 * Snippet templates with `${n:placeholder}` tab-stops, as served by
 * `wp/complete`.  Expansion returns the literal text plus the resolved
 * tab-stop ranges so the editor can cycle through them.
 */

export interface TabStop {
  index: number;
  /** Character offsets into the expanded text. */
  start: number;
  end: number;
  placeholder: string;
}

export interface ExpandedSnippet {
  text: string;
  /** Sorted by tab-stop index; cursor goes to the first one. */
  stops: TabStop[];
}

const STOP = /\$\{(\d+):([^}]*)\}/g;

export function expandSnippet(template: string): ExpandedSnippet {
  let text = "";
  let last = 0;
  const stops: TabStop[] = [];
  for (const match of template.matchAll(STOP)) {
    text += template.slice(last, match.index);
    const placeholder = match[2];
    stops.push({
      index: Number(match[1]),
      start: text.length,
      end: text.length + placeholder.length,
      placeholder,
    });
    text += placeholder;
    last = match.index + match[0].length;
  }
  text += template.slice(last);
  stops.sort((a, b) => a.index - b.index);
  return { text, stops };
}

/** Insert plain text (e.g. a symbol-panel click) at a character offset. */
export function insertAt(text: string, offset: number, insertion: string): string {
  return text.slice(0, offset) + insertion + text.slice(offset);
}
