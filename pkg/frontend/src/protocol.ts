/** Wire types for the checker's JSON-RPC protocol (see ../protocol.md). */

export interface Span {
  startLine: number;
  startCol: number;
  endLine: number;
  endCol: number;
}

export interface SentenceResult {
  status: "ok" | "error" | "skipped";
  span: Span;
  diagnostic: string | null;
  goalsAfter: string[];
}

export interface UnitResult {
  name: string;
  verdict: "correct" | "incomplete" | "incorrect";
  firstDiagnostic: string | null;
}

export interface CheckResult {
  sentences: SentenceResult[];
  units: UnitResult[];
  areaStatus: ("green" | "red")[];
}

export interface GoalsResult {
  goalOnly: string;
  goalCount: number;
  fullContext: {
    variables: { name: string; sort: string }[];
    hypotheses: { label: string; statement: string }[];
    target: string;
  };
}

export interface CompletionItem {
  label: string;
  insertText: string;
  kind: "symbol" | "snippet";
}

export interface RpcError {
  code: number;
  message: string;
}

export interface RpcResponse<T> {
  id: number;
  result?: T;
  error?: RpcError;
}
