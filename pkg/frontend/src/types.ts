// Mirrors of the /v1 API payloads. Views render these verbatim; the client
// never recomputes scores or labels.

export type Label = "safe" | "suspicious" | "highly_suspicious";

export interface QueueSummary {
  subject: string;
  from_address: string;
  label: Label;
  score: number;
}

export interface QueueItem {
  assessment_id: string;
  status: "pending" | "decided";
  summary: QueueSummary;
}

export interface ScenarioMatch {
  scenario_id: string;
  match_score: number;
  components: Record<string, number>;
}

export interface Assessment {
  email_id: string;
  label: Label;
  score: number;
  matched_scenarios: ScenarioMatch[];
  pdp_references: string[];
  explanation: string;
  recommended_actions: string[];
  mode: string;
  engine_version: string;
}

export interface StoredAssessment {
  assessment_id: string;
  target_id: string;
  received_at: string;
  summary: QueueSummary;
  assessment: Assessment;
}

export interface DecisionRecord {
  decision_id: string;
  assessment_id: string;
  decision: "verified_safe" | "reported" | "deferred";
  note: string;
  actor: string;
  decided_at: string;
}

export interface GuidelineItem {
  text: string;
  scenario_ids: string[];
}

export interface TimeDependentRisk {
  months: number[];
  description: string;
  scenario_ids: string[];
}

export interface PdpDocument {
  target_id: string;
  high_risk_vulnerabilities: { pvp_path: string; rationale: string }[];
  time_dependent_risks: TimeDependentRisk[];
  scenario_links: { scenario_id: string; pvp_path: string; rationale: string }[];
  defense_guidelines: Record<string, GuidelineItem[]>;
  generated_at: string;
  schema_version: string;
}

export interface ProfileResponse {
  target_id: string;
  pvp: Record<string, unknown>;
  scenarios: Record<string, unknown>;
  pdp: PdpDocument;
}

export interface BandConfig {
  suspicious_threshold: number;
  high_threshold: number;
}

export interface ServiceInfo {
  engine_version: string;
  bands: BandConfig;
  labels: Label[];
}

export const GUIDELINE_CATEGORIES = [
  "impersonation_recognition",
  "objective_specific_defenses",
  "context_precautions",
  "social_engineering_resilience",
  "risk_amplifying_conditions",
  "verification_procedures",
] as const;

// Static mirror of the engine defaults, replaced by /v1/config at runtime so
// gauge colors can never contradict server-side labels.
export const DEFAULT_BANDS: BandConfig = { suspicious_threshold: 30, high_threshold: 65 };
