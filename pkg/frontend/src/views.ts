/**
 * Pure view functions: console state in, HTML string out. Everything shown
 * here restates a service response field; nothing is derived client-side.
 */

import { AnalysisView, QueryItem, RepairView } from "./api.js";
import { ConsoleState } from "./state.js";

const html = String.raw;

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function renderApp(state: ConsoleState): string {
  const body = state.session
    ? html`
        ${renderSessionHeader(state)}
        <div class="columns">
          <section class="column">
            ${renderQueue(state)}
            ${renderHistory(state)}
          </section>
          <section class="column">
            ${renderRepairs(state)}
            ${state.analysis ? renderMatrix(state.analysis) : ""}
            ${renderResult(state)}
          </section>
        </div>
      `
    : renderSetup(state);
  return html`${renderBanner(state)}${body}`;
}

export function renderBanner(state: ConsoleState): string {
  if (!state.banner) {
    return "";
  }
  const retry = state.banner.retry
    ? html`<button data-action="retry">retry</button>`
    : "";
  return html`<div class="banner banner-${state.banner.kind}" role="alert">
    ${escapeHtml(state.banner.text)} ${retry}
  </div>`;
}

export function renderSetup(state: ConsoleState): string {
  return html`<form class="setup" data-action="open">
    <h2>Start a debugging session</h2>
    <label>TBox <textarea name="tbox" rows="12" required></textarea></label>
    <label>Missing axioms (one per line)
      <textarea name="missing" rows="3"></textarea></label>
    <label>Wrong axioms (one per line)
      <textarea name="wrong" rows="3"></textarea></label>
    <button type="submit" ${state.busy ? "disabled" : ""}>Create session</button>
    <p>or attach to an existing session:
      <input name="sessionId" placeholder="session id">
      <button type="button" data-action="attach">Attach</button></p>
  </form>`;
}

function renderSessionHeader(state: ConsoleState): string {
  const session = state.session!;
  return html`<header class="session">
    <h2>Session <code>${escapeHtml(session.id)}</code></h2>
    <span class="phase phase-${escapeHtml(state.phase)}">${escapeHtml(state.phase)}</span>
    <span class="answered">${state.answeredCount} answered</span>
  </header>`;
}

export function renderQueue(state: ConsoleState): string {
  const rows = state.queue.map((query) => renderQuery(query, state)).join("");
  const empty = state.queue.length
    ? ""
    : html`<p class="queue-empty">no pending queries — phase
        <strong>${escapeHtml(state.phase)}</strong></p>`;
  return html`<div class="queue">
    <h3>Oracle queue</h3>
    ${empty}
    <ul>${rows}</ul>
    ${renderPrudentNote(state)}
  </div>`;
}

function renderQuery(query: QueryItem, state: ConsoleState): string {
  const axiom = escapeHtml(query.axiom);
  const prompt =
    state.revisePrompt === query.axiom
      ? html`<span class="revise-prompt">already answered — revise instead?</span>`
      : "";
  return html`<li class="query" data-axiom="${axiom}">
    <code class="axiom">${axiom}</code>
    <span class="context">${escapeHtml(query.context)}</span>
    <span class="verdicts">
      <button data-action="answer" data-axiom="${axiom}" data-verdict="true">True</button>
      <button data-action="answer" data-axiom="${axiom}" data-verdict="false">False</button>
      <button data-action="answer" data-axiom="${axiom}" data-verdict="unknown">Unknown</button>
    </span>
    ${prompt}
  </li>`;
}

function renderPrudentNote(state: ConsoleState): string {
  if (!state.prudentExcluded.length) {
    return "";
  }
  const items = state.prudentExcluded
    .map(
      (axiom) =>
        html`<li class="prudent-excluded"><code>${escapeHtml(axiom)}</code></li>`,
    )
    .join("");
  return html`<div class="prudent">
    <h4>Answered unknown (prudently excluded from additions)</h4>
    <ul>${items}</ul>
  </div>`;
}

export function renderHistory(state: ConsoleState): string {
  const answers = state.history.filter(
    (event) => event.type === "answer-received" || event.type === "answer-revised",
  );
  const rows = answers
    .map((event) => {
      const axiom = escapeHtml(event.axiom ?? "");
      const revised =
        event.type === "answer-revised"
          ? html`<span class="revised-mark">revised</span>`
          : "";
      return html`<li class="history-row" data-axiom="${axiom}">
        <code>${axiom}</code>
        <span class="verdict verdict-${escapeHtml(event.verdict ?? "")}">${escapeHtml(event.verdict ?? "")}</span>
        ${revised}
        <span class="revise">
          <button data-action="revise" data-axiom="${axiom}" data-verdict="true">→ true</button>
          <button data-action="revise" data-axiom="${axiom}" data-verdict="false">→ false</button>
          <button data-action="revise" data-axiom="${axiom}" data-verdict="unknown">→ unknown</button>
        </span>
      </li>`;
    })
    .join("");
  return html`<div class="history">
    <h3>Answer history</h3>
    <ul>${rows}</ul>
  </div>`;
}

export function renderRepairs(state: ConsoleState): string {
  if (!state.repairs.length) {
    return html`<div class="repairs"><h3>Repairs</h3>
      <p class="repairs-empty">none proposed yet</p></div>`;
  }
  const cards = state.repairs
    .map((repair) => renderRepairCard(repair, state))
    .join("");
  return html`<div class="repairs"><h3>Repairs</h3>
    <div class="cards">${cards}</div></div>`;
}

export function renderRepairCard(repair: RepairView, state: ConsoleState): string {
  const stale = state.stale.includes(repair.id);
  const executed = state.executedRepair === repair.id;
  const adds = repair.add
    .map((axiom) => html`<li class="add"><code>${escapeHtml(axiom)}</code></li>`)
    .join("");
  const deletes = repair.delete
    .map((axiom) => html`<li class="delete"><code>${escapeHtml(axiom)}</code></li>`)
    .join("");
  const conditions = Object.entries(repair.verification.conditions)
    .map(
      ([name, ok]) =>
        html`<span class="clause clause-${ok ? "ok" : "bad"}">${escapeHtml(name)} ${ok ? "✓" : "✗"}</span>`,
    )
    .join("");
  const verified = repair.verification.holds
    ? html`<span class="badge badge-verified">verified</span>`
    : html`<span class="badge badge-unverified">does not verify</span>`;
  const executeControl = executed
    ? html`<span class="badge badge-executed">executed</span>`
    : html`<button data-action="execute" data-repair="${escapeHtml(repair.id)}"
        ${state.executedRepair ? "disabled" : ""}>Execute</button>`;
  return html`<article class="card ${stale ? "stale" : ""}" data-repair="${escapeHtml(repair.id)}">
    <header>
      <code class="repair-id">${escapeHtml(repair.id)}</code>
      <span class="origin">${escapeHtml(repair.origin)}</span>
      ${verified}
      ${stale ? html`<span class="badge badge-stale">stale — refreshing</span>` : ""}
    </header>
    <div class="axioms">
      <h4>add</h4><ul>${adds || html`<li class="none">nothing</li>`}</ul>
      <h4>delete</h4><ul>${deletes || html`<li class="none">nothing</li>`}</ul>
    </div>
    <div class="verification">${conditions}</div>
    <div class="preference-badges">${renderPreferenceBadges(repair.id, state.analysis)}</div>
    ${executeControl}
  </article>`;
}

export function renderPreferenceBadges(
  repairId: string,
  analysis: AnalysisView | null,
): string {
  if (!analysis) {
    return "";
  }
  const badges: string[] = [];
  if (analysis.skyline.includes(repairId)) {
    badges.push(html`<span class="badge badge-skyline">skyline</span>`);
  }
  for (const [preference, winners] of Object.entries(analysis.optimal)) {
    if (winners.includes(repairId)) {
      badges.push(
        html`<span class="badge badge-optimal">optimal: ${escapeHtml(preference)}</span>`,
      );
    }
  }
  const certificate = analysis.certificates[repairId];
  if (certificate) {
    if (certificate.maximallyComplete) {
      badges.push(html`<span class="badge badge-certificate">maximally complete</span>`);
    } else {
      badges.push(
        html`<span class="badge badge-witness">misses ${certificate.missingTrue.length} true axioms</span>`,
      );
    }
    if (certificate.minimallyIncorrect) {
      badges.push(html`<span class="badge badge-certificate">minimally incorrect</span>`);
    } else {
      badges.push(
        html`<span class="badge badge-witness">entails ${certificate.falseEntailed.length} false axioms</span>`,
      );
    }
  }
  return badges.join("");
}

export function renderMatrix(analysis: AnalysisView): string {
  const ids = analysis.candidates;
  const heads = ids
    .map((id) => html`<th><code>${escapeHtml(id)}</code></th>`)
    .join("");
  const rows = ids
    .map((row) => {
      const cells = ids
        .map((col) => {
          if (row === col) {
            return html`<td class="self">—</td>`;
          }
          const cell = analysis.matrix[row]?.[col];
          if (!cell) {
            return html`<td></td>`;
          }
          return html`<td>
            <span class="rel">complete: ${escapeHtml(cell.completeness)}</span>
            <span class="rel">correct: ${escapeHtml(cell.correctness)}</span>
            <span class="rel">subset: ${escapeHtml(cell.subset)}</span>
          </td>`;
        })
        .join("");
      return html`<tr><th><code>${escapeHtml(row)}</code></th>${cells}</tr>`;
    })
    .join("");
  return html`<div class="matrix">
    <h3>Pairwise comparison</h3>
    <table><thead><tr><th></th>${heads}</tr></thead><tbody>${rows}</tbody></table>
  </div>`;
}

export function renderResult(state: ConsoleState): string {
  if (!state.executedRepair || state.resultText === null) {
    return "";
  }
  return html`<div class="result">
    <h3>Repaired TBox</h3>
    <p>repair <code>${escapeHtml(state.executedRepair)}</code> executed —
      <a href="#" data-action="download">download result</a></p>
    <pre class="result-text">${escapeHtml(state.resultText)}</pre>
  </div>`;
}
