/** HTTP client: debounced evaluate for dragging, single-flight discover.
 *
 * A new drag cancels the in-flight evaluate via AbortController; at most one
 * discover request runs at a time.
 */

import { DiscoverResponse, EvaluateResponse } from "./types.js";

export interface ApiOptions {
  baseUrl?: string;
  fetchImpl?: typeof fetch;
  debounceMs?: number;
}

export class ApiClient {
  private baseUrl: string;
  private fetchImpl: typeof fetch;
  private debounceMs: number;
  private evalTimer: ReturnType<typeof setTimeout> | null = null;
  private evalResolve: ((value: EvaluateResponse | null) => void) | null = null;
  private evalAbort: AbortController | null = null;
  private discovering = false;

  constructor(options: ApiOptions = {}) {
    this.baseUrl = options.baseUrl ?? "";
    this.fetchImpl = options.fetchImpl ?? fetch.bind(globalThis);
    this.debounceMs = options.debounceMs ?? 75;
  }

  /** Debounced: rapid calls collapse to one request; superseded callers
   * (both waiting and in flight) resolve to null. */
  evaluateDebounced(dsl: string): Promise<EvaluateResponse | null> {
    if (this.evalTimer !== null) {
      clearTimeout(this.evalTimer);
      this.evalResolve?.(null);
    }
    return new Promise((resolve, reject) => {
      this.evalResolve = resolve;
      this.evalTimer = setTimeout(() => {
        this.evalTimer = null;
        this.evalResolve = null;
        this.evaluateNow(dsl).then(resolve, reject);
      }, this.debounceMs);
    });
  }

  async evaluateNow(dsl: string): Promise<EvaluateResponse | null> {
    if (this.evalAbort) this.evalAbort.abort();
    const abort = new AbortController();
    this.evalAbort = abort;
    try {
      const resp = await this.fetchImpl(`${this.baseUrl}/api/evaluate`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ construction: dsl }),
        signal: abort.signal,
      });
      if (!resp.ok) {
        const detail = await resp.json().catch(() => ({}));
        throw new ApiError(resp.status, detail);
      }
      return (await resp.json()) as EvaluateResponse;
    } catch (err) {
      if ((err as Error).name === "AbortError") return null; // superseded
      throw err;
    } finally {
      if (this.evalAbort === abort) this.evalAbort = null;
    }
  }

  get busy(): boolean {
    return this.discovering;
  }

  async discover(
    dsl: string,
    target: string,
    config: Record<string, unknown> = {}
  ): Promise<DiscoverResponse> {
    if (this.discovering) throw new ApiError(0, { detail: "a discovery is already running" });
    this.discovering = true;
    try {
      const resp = await this.fetchImpl(`${this.baseUrl}/api/discover`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ construction: dsl, target, config }),
      });
      if (!resp.ok) {
        const detail = await resp.json().catch(() => ({}));
        throw new ApiError(resp.status, detail);
      }
      return (await resp.json()) as DiscoverResponse;
    } finally {
      this.discovering = false;
    }
  }
}

export class ApiError extends Error {
  status: number;
  detail: unknown;

  constructor(status: number, detail: unknown) {
    super(`request failed (${status})`);
    this.status = status;
    this.detail = detail;
  }
}
