/**
 * DOM entry point: wires the store to the document. All rendering goes
 * through views.ts; all service traffic goes through api.ts.
 */

import { createApi } from "./api.js";
import { ConsoleStore } from "./state.js";
import { renderApp } from "./views.js";

function serviceBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  return (fromQuery ?? "").replace(/\/$/, "");
}

function splitLines(value: string): string[] {
  return value
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
}

function downloadResult(store: ConsoleStore): void {
  const { resultText, session } = store.state;
  if (resultText === null || !session) {
    return;
  }
  const blob = new Blob([resultText], { type: "text/plain" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = `${session.id}-repaired.tbox`;
  anchor.click();
  URL.revokeObjectURL(url);
}

export function mount(root: HTMLElement): ConsoleStore {
  const api = createApi(serviceBaseUrl());
  const store = new ConsoleStore(api);

  store.subscribe((state) => {
    root.innerHTML = renderApp(state);
  });
  root.innerHTML = renderApp(store.state);

  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    if (form.dataset.action !== "open") {
      return;
    }
    event.preventDefault();
    const fields = new FormData(form);
    void store
      .open(
        String(fields.get("tbox") ?? ""),
        splitLines(String(fields.get("missing") ?? "")),
        splitLines(String(fields.get("wrong") ?? "")),
      )
      .then(() => store.startPolling());
  });

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) {
      return;
    }
    const { action, axiom, verdict, repair } = target.dataset;
    switch (action) {
      case "attach": {
        const input = root.querySelector<HTMLInputElement>("input[name=sessionId]");
        if (input && input.value.trim()) {
          void store.attach(input.value.trim()).then(() => store.startPolling());
        }
        break;
      }
      case "answer":
        if (axiom && verdict) {
          void store.answer(axiom, verdict as "true" | "false" | "unknown");
        }
        break;
      case "revise":
        if (axiom && verdict) {
          void store.answer(axiom, verdict as "true" | "false" | "unknown", true);
        }
        break;
      case "execute":
        if (repair) {
          void store.execute(repair);
        }
        break;
      case "retry":
        void store.retry();
        break;
      case "download":
        event.preventDefault();
        downloadResult(store);
        break;
    }
  });

  return store;
}

const root = document.getElementById("app");
if (root) {
  mount(root);
}
