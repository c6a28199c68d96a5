/** Shapes of the service's JSON responses. Every field rendered by the UI
 * must trace back to one of these; the client never infers its own. */

export type Label = "gang" | "nongang" | "unsure";

export const LABELS: Label[] = ["gang", "nongang", "unsure"];

export interface BlockTermEvidence {
  term: string;
  count: number;
  weight: number | null;
  contribution: number;
}

export interface EmojiChainEvidence {
  chain: string;
  count: number;
}

export interface YoutubeEvidence {
  video_ids: string[];
  keyword_hits: string[];
  descriptions: string[];
}

export interface Evidence {
  description: string;
  blocks: Record<string, BlockTermEvidence[]>;
  emoji_chains: EmojiChainEvidence[];
  image_tags: string[];
  youtube: YoutubeEvidence;
}

export type ItemStatus = "pending" | "labeled" | "skipped";

export interface TriageItem {
  profile_id: string;
  score: number;
  evidence: Evidence;
  status: ItemStatus;
  partial_features: boolean;
  label: string | null;
}

export interface QueuePage {
  items: TriageItem[];
  total: number;
  offset: number;
}

export interface CorpusStats {
  profiles: number;
  counts: Record<string, number>;
  label_log_entries: number;
  pending_triage: number;
}

export interface QueueFilters {
  minScore?: number;
  maxScore?: number;
  provenance?: string;
}
