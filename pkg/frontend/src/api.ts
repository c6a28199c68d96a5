/** Typed client for the triage service HTTP API. */

import type {
  CorpusStats,
  Label,
  QueueFilters,
  QueuePage,
  TriageItem,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** A label submission lost to an earlier writer; carries the label that won. */
export class ConflictError extends Error {
  constructor(readonly winningLabel: string) {
    super(`conflict: server kept label "${winningLabel}"`);
    this.name = "ConflictError";
  }
}

export interface SubmitResult {
  status: string;
  label: string;
  idempotent: boolean;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    readonly token?: string,
  ) {}

  private headers(): Record<string, string> {
    const headers: Record<string, string> = {
      "content-type": "application/json",
    };
    if (this.token) headers["authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: this.headers(),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 409) {
      const payload = await response.json().catch(() => ({}));
      const winning = payload?.detail?.winning_label;
      if (typeof winning === "string") throw new ConflictError(winning);
      throw new ApiError(409, JSON.stringify(payload?.detail ?? payload));
    }
    if (!response.ok) {
      const text = await response.text().catch(() => "");
      throw new ApiError(response.status, text || response.statusText);
    }
    return (await response.json()) as T;
  }

  corpusStats(): Promise<CorpusStats> {
    return this.request<CorpusStats>("GET", "/corpus/stats");
  }

  /** Paged queue view; filtering happens server-side, order is the server's.
   * Labeled items are included so a reload reproduces full server state;
   * the store separates pending from labeled without reordering. */
  queue(filters: QueueFilters = {}, offset = 0, limit = 100): Promise<QueuePage> {
    const params = new URLSearchParams();
    params.set("status", "all");
    if (filters.minScore !== undefined) params.set("min_score", String(filters.minScore));
    if (filters.maxScore !== undefined) params.set("max_score", String(filters.maxScore));
    if (filters.provenance) params.set("provenance", filters.provenance);
    params.set("offset", String(offset));
    params.set("limit", String(limit));
    return this.request<QueuePage>("GET", `/triage/queue?${params}`);
  }

  async next(): Promise<TriageItem | null> {
    const payload = await this.request<{ item: TriageItem | null }>(
      "GET",
      "/triage/next",
    );
    return payload.item;
  }

  submitLabel(
    profileId: string,
    label: Label,
    annotator: string,
  ): Promise<SubmitResult> {
    return this.request<SubmitResult>(
      "POST",
      `/triage/${encodeURIComponent(profileId)}/label`,
      { label, annotator },
    );
  }

  /** Rebuild the server-side queue by scoring unlabeled profiles. */
  score(): Promise<unknown> {
    return this.request("POST", "/score", {});
  }
}
