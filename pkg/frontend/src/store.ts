/** Client-side state for the review queue.
 *
 * The server is the single source of truth: the store renders what it was
 * given, in the order it was given, and a full reload rebuilds exactly the
 * server state. Submissions are optimistic (the item leaves the pending
 * list immediately) with three honest outcomes: committed, conflicted
 * (server's winning label is displayed, nothing merged), or retained for
 * retry after a network failure.
 */

import { ApiClient, ConflictError } from "./api.js";
import type {
  CorpusStats,
  Label,
  QueueFilters,
  TriageItem,
} from "./types.js";

export interface Notice {
  kind: "conflict" | "error" | "info";
  message: string;
  profileId?: string;
  winningLabel?: string;
}

export interface RetainedSubmission {
  profileId: string;
  label: Label;
}

export type SubmitOutcome = "committed" | "conflict" | "retained" | "in-flight";

type Listener = () => void;

export class TriageStore {
  items: TriageItem[] = [];
  total = 0;
  stats: CorpusStats | null = null;
  filters: QueueFilters = {};
  selectedId: string | null = null;
  notices: Notice[] = [];
  loadError: string | null = null;

  private inFlight = new Set<string>();
  private retained: RetainedSubmission[] = [];
  private listeners = new Set<Listener>();

  constructor(
    private readonly api: ApiClient,
    readonly annotator: string = "analyst",
  ) {}

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  /** Fetch queue and stats; server order is kept verbatim. */
  async load(): Promise<void> {
    try {
      const [page, stats] = await Promise.all([
        this.api.queue(this.filters),
        this.api.corpusStats(),
      ]);
      this.items = page.items;
      this.total = page.total;
      this.stats = stats;
      this.loadError = null;
    } catch (error) {
      this.loadError = error instanceof Error ? error.message : String(error);
    }
    this.emit();
  }

  /** Full reset, as a browser reload would do. */
  async reload(): Promise<void> {
    this.items = [];
    this.total = 0;
    this.stats = null;
    this.selectedId = null;
    this.notices = [];
    await this.load();
  }

  async setFilters(filters: QueueFilters): Promise<void> {
    this.filters = filters;
    await this.load();
  }

  pendingItems(): TriageItem[] {
    return this.items.filter((item) => item.status === "pending");
  }

  find(profileId: string): TriageItem | undefined {
    return this.items.find((item) => item.profile_id === profileId);
  }

  select(profileId: string | null): void {
    this.selectedId = profileId;
    this.emit();
  }

  selected(): TriageItem | null {
    if (this.selectedId === null) return null;
    return this.find(this.selectedId) ?? null;
  }

  retainedSubmissions(): readonly RetainedSubmission[] {
    return this.retained;
  }

  /** Label one item. Optimistic removal from pending; the in-flight guard
   * makes a double click a no-op, so one decision is one log entry. */
  async submit(profileId: string, label: Label): Promise<SubmitOutcome> {
    const item = this.find(profileId);
    if (!item || item.status !== "pending") return "in-flight";
    if (this.inFlight.has(profileId)) return "in-flight";
    this.inFlight.add(profileId);

    item.status = "labeled";
    item.label = label;
    this.emit();

    try {
      await this.api.submitLabel(profileId, label, this.annotator);
      await this.refreshStats();
      return "committed";
    } catch (error) {
      if (error instanceof ConflictError) {
        // The server's decision stands; show it, never merge.
        item.label = error.winningLabel;
        this.notices.push({
          kind: "conflict",
          message: `${profileId}: another analyst already labeled this ` +
            `"${error.winningLabel}"`,
          profileId,
          winningLabel: error.winningLabel,
        });
        await this.refreshStats();
        return "conflict";
      }
      // Network or server failure: revert and keep the submission around.
      item.status = "pending";
      item.label = null;
      this.retained.push({ profileId, label });
      this.notices.push({
        kind: "error",
        message: `${profileId}: submission failed and was retained for retry`,
        profileId,
      });
      return "retained";
    } finally {
      this.inFlight.delete(profileId);
      this.emit();
    }
  }

  /** Re-send submissions that failed on network errors. */
  async retryRetained(): Promise<void> {
    const queued = this.retained;
    this.retained = [];
    for (const submission of queued) {
      await this.submit(submission.profileId, submission.label);
    }
  }

  async refreshStats(): Promise<void> {
    try {
      this.stats = await this.api.corpusStats();
      this.loadError = null;
    } catch (error) {
      this.loadError = error instanceof Error ? error.message : String(error);
    }
    this.emit();
  }

  dismissNotice(index: number): void {
    this.notices.splice(index, 1);
    this.emit();
  }
}
