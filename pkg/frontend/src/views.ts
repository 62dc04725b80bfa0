// Pure render functions: data in, HTML string out. All interactivity is
// wired by main.ts through data-action attributes, so every view is unit
// testable without a DOM.

import { esc, labelBadge, matchPercent, monthStrip, scoreGauge } from "./format";
import type {
  BandConfig,
  DecisionRecord,
  PdpDocument,
  QueueItem,
  StoredAssessment,
} from "./types";
import { GUIDELINE_CATEGORIES } from "./types";

export type QueueSort = "score" | "label" | "received";

export interface QueueFilter {
  status: "pending" | "decided" | "all";
  scenario: string; // scenario id substring, "" = all
  sort: QueueSort;
}

const LABEL_ORDER = { highly_suspicious: 0, suspicious: 1, safe: 2 } as const;

export function sortQueue(items: QueueItem[], sort: QueueSort): QueueItem[] {
  const copy = [...items];
  if (sort === "score") copy.sort((a, b) => b.summary.score - a.summary.score);
  if (sort === "label")
    copy.sort(
      (a, b) =>
        LABEL_ORDER[a.summary.label] - LABEL_ORDER[b.summary.label] ||
        b.summary.score - a.summary.score,
    );
  return copy;
}

export function renderQueuePage(
  items: QueueItem[],
  filter: QueueFilter,
  topScenarios: Map<string, string>,
  scenarioIds: string[],
): string {
  const sorted = sortQueue(items, filter.sort);
  const visible = filter.scenario
    ? sorted.filter((i) => (topScenarios.get(i.assessment_id) ?? "").includes(filter.scenario))
    : sorted;

  const rows = visible
    .map((item) => {
      const s = item.summary;
      const scenario = topScenarios.get(item.assessment_id) ?? "";
      return `<tr class="queue-row" data-action="open" data-id="${esc(item.assessment_id)}">
  <td>${labelBadge(s.label, s.score)}</td>
  <td class="subject">${esc(s.subject)}</td>
  <td class="from">${esc(s.from_address)}</td>
  <td class="scenario">${esc(scenario)}</td>
  <td class="status status-${esc(item.status)}">${esc(item.status)}</td>
</tr>`;
    })
    .join("\n");

  const scenarioOptions = ["", ...scenarioIds]
    .map(
      (sid) =>
        `<option value="${esc(sid)}"${sid === filter.scenario ? " selected" : ""}>${
          sid ? esc(sid) : "all scenarios"
        }</option>`,
    )
    .join("");

  const body = visible.length
    ? `<table class="queue"><thead><tr><th>risk</th><th>subject</th><th>from</th><th>top scenario</th><th>status</th></tr></thead><tbody>${rows}</tbody></table>`
    : `<p class="empty-state">No ${filter.status === "all" ? "" : filter.status + " "}assessments in the queue.</p>`;

  return `<section class="page page-queue">
<h1>Triage queue</h1>
<div class="toolbar">
  <select data-action="filter-status">
    <option value="pending"${filter.status === "pending" ? " selected" : ""}>pending</option>
    <option value="decided"${filter.status === "decided" ? " selected" : ""}>decided</option>
    <option value="all"${filter.status === "all" ? " selected" : ""}>all</option>
  </select>
  <select data-action="filter-scenario">${scenarioOptions}</select>
  <select data-action="sort">
    <option value="score"${filter.sort === "score" ? " selected" : ""}>sort by score</option>
    <option value="label"${filter.sort === "label" ? " selected" : ""}>sort by label</option>
    <option value="received"${filter.sort === "received" ? " selected" : ""}>as received</option>
  </select>
  <button data-action="refresh">refresh</button>
</div>
${body}
</section>`;
}

export function resolvePdpReference(pdp: PdpDocument, ref: string): string {
  const parts = ref.split("/");
  if (parts[0] === "scenario_links" && parts.length === 2) {
    const link = pdp.scenario_links[Number(parts[1])];
    if (link) return `${link.scenario_id} exploits ${link.pvp_path}: ${link.rationale}`;
  }
  if (parts[0] === "time_dependent_risks" && parts.length === 2) {
    const risk = pdp.time_dependent_risks[Number(parts[1])];
    if (risk) return `elevated in months [${risk.months.join(", ")}]: ${risk.description}`;
  }
  if (parts[0] === "defense_guidelines" && parts.length === 3) {
    const item = (pdp.defense_guidelines[parts[1]] ?? [])[Number(parts[2])];
    if (item) return `${parts[1].replace(/_/g, " ")}: ${item.text}`;
  }
  if (parts[0] === "high_risk_vulnerabilities" && parts.length === 2) {
    const vuln = pdp.high_risk_vulnerabilities[Number(parts[1])];
    if (vuln) return `${vuln.pvp_path}: ${vuln.rationale}`;
  }
  return ref;
}

export function renderAssessmentPage(
  record: StoredAssessment,
  pdp: PdpDocument | null,
  bands: BandConfig,
  decision: DecisionRecord | null,
  errorMessage = "",
): string {
  const a = record.assessment;
  const scenarios = a.matched_scenarios
    .map((m) => {
      const parts = Object.entries(m.components)
        .map(([name, value]) => `${esc(name)} ${matchPercent(value)}`)
        .join(" · ");
      return `<li class="match"><b>${esc(m.scenario_id)}</b> (${matchPercent(m.match_score)}) <span class="components">${parts}</span></li>`;
    })
    .join("\n");

  const references = a.pdp_references
    .map((ref) => {
      const text = pdp ? resolvePdpReference(pdp, ref) : ref;
      return `<li class="pdp-ref"><code>${esc(ref)}</code> ${esc(text)}</li>`;
    })
    .join("\n");

  const actions = a.recommended_actions
    .map((action) => `<li class="action">${esc(action)}</li>`)
    .join("\n");

  const decisionBlock = decision
    ? `<p class="decided">Decided: <b>${esc(decision.decision)}</b> by ${esc(decision.actor || "unknown")} at ${esc(decision.decided_at)}${decision.note ? ` — ${esc(decision.note)}` : ""}</p>`
    : `<div class="decision-form">
  <input type="text" placeholder="actor" data-field="actor">
  <input type="text" placeholder="note (optional)" data-field="note">
  <label><input type="checkbox" data-field="allowlist"> also allowlist sender on verify</label>
  <button data-action="decide" data-decision="verified_safe">verify safe</button>
  <button data-action="decide" data-decision="reported">report</button>
  <button data-action="decide" data-decision="deferred">defer</button>
</div>`;

  const error = errorMessage ? `<p class="error-banner">${esc(errorMessage)}</p>` : "";

  return `<section class="page page-assessment" data-id="${esc(record.assessment_id)}">
<p><a href="#/queue">&larr; back to queue</a></p>
<h1>${esc(record.summary.subject)}</h1>
<p class="from">From ${esc(record.summary.from_address)} · received ${esc(record.received_at)} · ${esc(a.mode)} · ${esc(a.engine_version)}</p>
${scoreGauge(a.score, bands)}
<p>${labelBadge(a.label, a.score)}</p>
${error}
<h2>Matched scenarios</h2>
${scenarios ? `<ul class="matches">${scenarios}</ul>` : `<p class="empty-state">No scenario matched.</p>`}
<h2>Defense-profile references</h2>
${references ? `<ul class="pdp-refs">${references}</ul>` : `<p class="empty-state">None cited.</p>`}
<h2>Explanation</h2>
<pre class="explanation">${esc(a.explanation)}</pre>
<h2>Recommended actions</h2>
<ul class="actions">${actions}</ul>
<h2>Decision</h2>
${decisionBlock}
</section>`;
}

export function renderProfilePage(targetId: string, pdp: PdpDocument): string {
  const risks = pdp.time_dependent_risks
    .map(
      (risk) =>
        `<li class="risk">${monthStrip(risk.months)} ${esc(risk.description)} <span class="scenario-ids">${esc(risk.scenario_ids.join(", "))}</span></li>`,
    )
    .join("\n");

  const categories = GUIDELINE_CATEGORIES.map((category) => {
    const items = pdp.defense_guidelines[category] ?? [];
    const list = items.length
      ? `<ul>${items
          .map(
            (item) =>
              `<li>${esc(item.text)}${item.scenario_ids.length ? ` <span class="scenario-ids">(${esc(item.scenario_ids.join(", "))})</span>` : ""}</li>`,
          )
          .join("\n")}</ul>`
      : `<p class="empty-state">No entries.</p>`;
    return `<section class="guideline-category" data-category="${esc(category)}">
<h3>${esc(category.replace(/_/g, " "))}</h3>
${list}
</section>`;
  }).join("\n");

  const vulnerabilities = pdp.high_risk_vulnerabilities
    .map((vuln) => `<li><code>${esc(vuln.pvp_path)}</code> ${esc(vuln.rationale)}</li>`)
    .join("\n");

  return `<section class="page page-profile" data-target="${esc(targetId)}">
<p><a href="#/queue">&larr; back to queue</a></p>
<h1>Defense profile: ${esc(targetId)}</h1>
<p class="meta">generated ${esc(pdp.generated_at)} · schema ${esc(pdp.schema_version)}</p>
<h2>High-risk vulnerabilities</h2>
<ul class="vulns">${vulnerabilities}</ul>
<h2>Time-dependent risks</h2>
<ul class="risks">${risks}</ul>
<h2>Defense guidelines</h2>
${categories}
</section>`;
}

export function renderLoginPage(message = ""): string {
  return `<section class="page page-login">
<h1>whaling-guard triage</h1>
<p>Enter the service bearer token (kept in memory for this session only; leave empty if the service runs without one).</p>
${message ? `<p class="error-banner">${esc(message)}</p>` : ""}
<input type="password" placeholder="bearer token" data-field="token">
<button data-action="login">connect</button>
</section>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner" data-action="retry">API error: ${esc(message)} — click to retry.</div>`;
}

export function renderNotFound(what: string): string {
  return `<section class="page page-notfound"><h1>Not found</h1><p>${esc(what)}</p><p><a href="#/queue">back to queue</a></p></section>`;
}
