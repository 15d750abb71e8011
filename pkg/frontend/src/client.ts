/** Thin JSON-RPC client for the checker's HTTP endpoint (`wp serve --http`). */

import type {
  CheckResult,
  CompletionItem,
  GoalsResult,
  RpcResponse,
} from "./protocol.js";
import type { Position } from "./state.js";

export class RpcFailure extends Error {
  readonly code: number;
  constructor(code: number, message: string) {
    super(message);
    this.code = code;
  }
}

type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

export class CheckerClient {
  private nextId = 1;
  private readonly url: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "http://127.0.0.1:8040", fetchImpl: FetchLike = fetch) {
    this.url = baseUrl.replace(/\/$/, "") + "/rpc";
    this.fetchImpl = fetchImpl;
  }

  private async call<T>(method: string, params: object): Promise<T> {
    const request = { id: this.nextId++, method, params };
    const response = await this.fetchImpl(this.url, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    const payload = (await response.json()) as RpcResponse<T>;
    if (payload.error) {
      throw new RpcFailure(payload.error.code, payload.error.message);
    }
    return payload.result as T;
  }

  check(docText: string, libraryText = ""): Promise<CheckResult> {
    return this.call("wp/check", { docText, libraryText });
  }

  goals(docText: string, position: Position, libraryText = ""): Promise<GoalsResult> {
    return this.call("wp/goals", { docText, libraryText, position });
  }

  help(docText: string, position: Position, libraryText = ""): Promise<{ suggestion: string }> {
    return this.call("wp/help", { docText, libraryText, position });
  }

  expand(name: string, formula: string, libraryText = ""): Promise<{ expanded: string }> {
    return this.call("wp/expand", { libraryText, name, formula });
  }

  complete(prefix: string): Promise<{ items: CompletionItem[] }> {
    return this.call("wp/complete", { prefix });
  }

  version(): Promise<{ protocol: string; grammar: string; checker: string }> {
    return this.call("wp/version", {});
  }
}
