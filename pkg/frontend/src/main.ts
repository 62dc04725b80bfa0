// Hash-routed single-page client: #/queue, #/assessments/<id>, #/profiles/<id>.
// The bearer token is held in memory only and entered on the login screen.

import { ApiClient, ApiError } from "./api";
import type { BandConfig, DecisionRecord, QueueItem } from "./types";
import { DEFAULT_BANDS } from "./types";
import {
  QueueFilter,
  renderAssessmentPage,
  renderErrorBanner,
  renderLoginPage,
  renderNotFound,
  renderProfilePage,
  renderQueuePage,
} from "./views";

const api = new ApiClient("");
let bands: BandConfig = DEFAULT_BANDS;
let connected = false;
const filter: QueueFilter = { status: "pending", scenario: "", sort: "score" };

const root = document.getElementById("app") as HTMLElement;

function field(name: string): string {
  const input = root.querySelector<HTMLInputElement>(`[data-field="${name}"]`);
  return input ? (input.type === "checkbox" ? String(input.checked) : input.value) : "";
}

async function showQueue(): Promise<void> {
  try {
    const status = filter.status === "all" ? undefined : filter.status;
    const items: QueueItem[] = await api.queue(status);
    const topScenarios = new Map<string, string>();
    const scenarioIds = new Set<string>();
    for (const item of items) {
      const stored = await api.assessment(item.assessment_id);
      const top = stored.assessment.matched_scenarios[0];
      if (top) {
        topScenarios.set(item.assessment_id, top.scenario_id);
        scenarioIds.add(top.scenario_id);
      }
    }
    root.innerHTML = renderQueuePage(items, filter, topScenarios, [...scenarioIds].sort());
  } catch (err) {
    root.innerHTML = renderErrorBanner(err instanceof Error ? err.message : String(err));
  }
}

async function showAssessment(id: string, errorMessage = ""): Promise<void> {
  try {
    const stored = await api.assessment(id);
    const decisions = await api.decisions();
    const decision: DecisionRecord | null =
      decisions.find((d) => d.assessment_id === id) ?? null;
    let pdp = null;
    try {
      pdp = (await api.profile(stored.target_id)).pdp;
    } catch {
      pdp = null; // assessment still renders with raw reference paths
    }
    root.innerHTML = renderAssessmentPage(stored, pdp, bands, decision, errorMessage);
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      root.innerHTML = renderNotFound(`assessment ${id}`);
      return;
    }
    root.innerHTML = renderErrorBanner(err instanceof Error ? err.message : String(err));
  }
}

async function showProfile(targetId: string): Promise<void> {
  try {
    const profile = await api.profile(targetId);
    root.innerHTML = renderProfilePage(targetId, profile.pdp);
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      root.innerHTML = renderNotFound(`profile ${targetId}`);
      return;
    }
    root.innerHTML = renderErrorBanner(err instanceof Error ? err.message : String(err));
  }
}

async function route(): Promise<void> {
  if (!connected) {
    root.innerHTML = renderLoginPage();
    return;
  }
  const hash = window.location.hash || "#/queue";
  const assessmentMatch = hash.match(/^#\/assessments\/(.+)$/);
  const profileMatch = hash.match(/^#\/profiles\/(.+)$/);
  if (assessmentMatch) {
    await showAssessment(decodeURIComponent(assessmentMatch[1]));
  } else if (profileMatch) {
    await showProfile(decodeURIComponent(profileMatch[1]));
  } else {
    await showQueue();
  }
}

async function connect(): Promise<void> {
  api.setToken(field("token"));
  try {
    const info = await api.config();
    bands = info.bands;
    connected = true;
    window.location.hash = "#/queue";
    await route();
  } catch (err) {
    root.innerHTML = renderLoginPage(err instanceof Error ? err.message : String(err));
  }
}

async function decide(button: HTMLElement): Promise<void> {
  const section = root.querySelector<HTMLElement>(".page-assessment");
  const id = section?.dataset.id;
  const decision = button.dataset.decision;
  if (!id || !decision) return;
  const actor = field("actor");
  const note = field("note");
  const wantAllowlist = field("allowlist") === "true";
  try {
    const record = await api.decide(id, decision, note, actor);
    if (decision === "verified_safe" && wantAllowlist) {
      const stored = await api.assessment(id);
      try {
        await api.addAllowlist(stored.summary.from_address, actor, record.decision_id);
      } catch (err) {
        if (!(err instanceof ApiError && err.status === 409)) throw err;
      }
    }
    await showAssessment(id);
  } catch (err) {
    // surface double-decision conflicts verbatim instead of silently reloading
    const message = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
    await showAssessment(id, message);
  }
}

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target) return;
  const action = target.dataset.action;
  if (action === "login") void connect();
  if (action === "refresh" || action === "retry") void route();
  if (action === "open") {
    window.location.hash = `#/assessments/${encodeURIComponent(target.dataset.id ?? "")}`;
  }
  if (action === "decide") void decide(target);
});

root.addEventListener("change", (event) => {
  const target = event.target as HTMLSelectElement;
  const action = target.dataset.action;
  if (action === "filter-status") filter.status = target.value as QueueFilter["status"];
  if (action === "filter-scenario") filter.scenario = target.value;
  if (action === "sort") filter.sort = target.value as QueueFilter["sort"];
  if (action?.startsWith("filter") || action === "sort") void route();
});

window.addEventListener("hashchange", () => void route());
void route();
