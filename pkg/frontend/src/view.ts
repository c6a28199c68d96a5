/** DOM rendering. Stateless with respect to truth: everything drawn here
 * comes from the store, which mirrors the server. Evidence panels keep a
 * fixed family order: image tags, words per block, emoji, videos. */

import type { TriageStore } from "./store.js";
import type { Label, TriageItem } from "./types.js";

const BLOCK_TITLES: Record<string, string> = {
  T: "tweet terms",
  P: "profile terms",
  E: "emoji",
  I: "image tags",
  Y: "video terms",
};

function el(
  tag: string,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  for (const child of children) node.append(child);
  return node;
}

function statsWidget(store: TriageStore): HTMLElement {
  const stats = store.stats;
  if (!stats) return el("div", { class: "stats" }, ["stats unavailable"]);
  const counts = Object.entries(stats.counts)
    .map(([label, n]) => `${label} ${n}`)
    .join(" · ");
  return el("div", { class: "stats" }, [
    `${stats.profiles} profiles · ${counts} · ` +
      `${stats.label_log_entries} log entries · ` +
      `${stats.pending_triage} pending review`,
  ]);
}

function noticeBar(store: TriageStore): HTMLElement {
  const bar = el("div", { class: "notices" });
  if (store.loadError) {
    const retry = el("button", {}, ["retry"]);
    retry.addEventListener("click", () => void store.load());
    bar.append(el("div", { class: "notice error" }, [
      `service unreachable: ${store.loadError} `, retry,
    ]));
  }
  store.notices.forEach((notice, index) => {
    const dismiss = el("button", {}, ["dismiss"]);
    dismiss.addEventListener("click", () => store.dismissNotice(index));
    bar.append(el("div", { class: `notice ${notice.kind}` }, [
      notice.message, " ", dismiss,
    ]));
  });
  if (store.retainedSubmissions().length > 0) {
    const retry = el("button", {}, ["retry now"]);
    retry.addEventListener("click", () => void store.retryRetained());
    bar.append(el("div", { class: "notice error" }, [
      `${store.retainedSubmissions().length} submission(s) waiting for retry `,
      retry,
    ]));
  }
  return bar;
}

function filterControls(store: TriageStore): HTMLElement {
  const minScore = el("input", {
    type: "number", step: "0.05", min: "0", max: "1",
    placeholder: "min score",
    value: store.filters.minScore?.toString() ?? "",
  }) as HTMLInputElement;
  const provenance = el("input", {
    type: "text", placeholder: "provenance",
    value: store.filters.provenance ?? "",
  }) as HTMLInputElement;
  const apply = el("button", {}, ["apply"]);
  apply.addEventListener("click", () => {
    void store.setFilters({
      minScore: minScore.value === "" ? undefined : Number(minScore.value),
      provenance: provenance.value || undefined,
    });
  });
  return el("div", { class: "filters" }, [minScore, provenance, apply]);
}

function queueList(store: TriageStore): HTMLElement {
  const pending = store.pendingItems();
  if (pending.length === 0) {
    return el("div", { class: "queue empty" }, ["no pending items"]);
  }
  const rows = pending.map((item) => {
    const row = el("div", {
      class: `row${item.profile_id === store.selectedId ? " selected" : ""}`,
      "data-profile": item.profile_id,
    }, [
      el("span", { class: "score" }, [item.score.toFixed(3)]),
      el("span", { class: "pid" }, [item.profile_id]),
      item.partial_features
        ? el("span", { class: "flag" }, ["partial features"])
        : "",
    ]);
    row.addEventListener("click", () => store.select(item.profile_id));
    return row;
  });
  return el("div", { class: "queue" }, rows);
}

function evidencePanel(store: TriageStore, item: TriageItem): HTMLElement {
  const evidence = item.evidence;
  const sections: (Node | string)[] = [
    el("h2", {}, [`${item.profile_id} — score ${item.score.toFixed(3)}`]),
    el("p", { class: "description" }, [evidence.description || "(no description)"]),
  ];

  if (evidence.image_tags.length) {
    sections.push(el("h3", {}, ["image tags"]));
    sections.push(el("div", { class: "chips" },
      evidence.image_tags.map((tag) => el("span", { class: "chip" }, [tag]))));
  }

  for (const [block, rows] of Object.entries(evidence.blocks)) {
    if (!rows.length) continue;
    sections.push(el("h3", {}, [BLOCK_TITLES[block] ?? block]));
    sections.push(el("ul", {}, rows.map((row) =>
      el("li", {}, [`${row.term} ×${row.count}`]))));
  }

  if (evidence.emoji_chains.length) {
    sections.push(el("h3", {}, ["emoji chains"]));
    sections.push(el("ul", {}, evidence.emoji_chains.map((chain) =>
      el("li", {}, [`${chain.chain} ×${chain.count}`]))));
  }

  if (evidence.youtube.video_ids.length) {
    sections.push(el("h3", {}, ["videos"]));
    const hits = evidence.youtube.keyword_hits.join(", ") || "none";
    sections.push(el("p", {}, [
      `${evidence.youtube.video_ids.length} link(s) · keyword hits: ${hits}`,
    ]));
  }

  const buttons = el("div", { class: "actions" });
  const shortcuts: [Label, string][] = [["gang", "g"], ["nongang", "n"], ["unsure", "u"]];
  for (const [label, key] of shortcuts) {
    const button = el("button", { class: `label-${label}` }, [`${label} (${key})`]);
    button.addEventListener("click", () =>
      void store.submit(item.profile_id, label));
    buttons.append(button);
  }
  sections.push(buttons);
  return el("div", { class: "evidence" }, sections);
}

/** Rebuild the whole app view from store state. */
export function render(store: TriageStore, root: HTMLElement): void {
  root.replaceChildren(
    el("header", {}, [el("h1", {}, ["triage queue"]), statsWidget(store)]),
    noticeBar(store),
    el("main", {}, [
      el("div", {}, [filterControls(store), queueList(store)]),
      (() => {
        const item = store.selected();
        return item
          ? evidencePanel(store, item)
          : el("div", { class: "evidence empty" }, ["select an item to review"]);
      })(),
    ]),
  );
}

/** One keydown listener for the three label shortcuts. */
export function bindShortcuts(store: TriageStore): void {
  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) return;
    const mapping: Record<string, Label> = { g: "gang", n: "nongang", u: "unsure" };
    const label = mapping[event.key];
    const item = store.selected();
    if (label && item && item.status === "pending") {
      void store.submit(item.profile_id, label);
    }
  });
}
