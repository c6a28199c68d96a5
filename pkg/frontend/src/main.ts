/** Entry point: configuration, wiring, and the stats poll loop.
 *
 * Configuration comes from query parameters with localStorage fallback:
 *   ?api=http://127.0.0.1:8800&token=...&annotator=ann
 */

import { ApiClient } from "./api.js";
import { TriageStore } from "./store.js";
import { bindShortcuts, render } from "./view.js";

const POLL_INTERVAL_MS = 3000;

function setting(name: string, fallback: string): string {
  const params = new URLSearchParams(window.location.search);
  const fromQuery = params.get(name);
  if (fromQuery) {
    window.localStorage.setItem(`gangscope.${name}`, fromQuery);
    return fromQuery;
  }
  return window.localStorage.getItem(`gangscope.${name}`) ?? fallback;
}

function start(): void {
  const api = new ApiClient(
    setting("api", "http://127.0.0.1:8800"),
    setting("token", "") || undefined,
  );
  const store = new TriageStore(api, setting("annotator", "analyst"));
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");

  store.subscribe(() => render(store, root));
  bindShortcuts(store);
  void store.load();
  window.setInterval(() => void store.refreshStats(), POLL_INTERVAL_MS);
}

start();
