// Thin fetch client for the /v1 API. The bearer token lives in memory only.

import type {
  DecisionRecord,
  ProfileResponse,
  QueueItem,
  ServiceInfo,
  StoredAssessment,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private token: string = "",
  ) {}

  setToken(token: string): void {
    this.token = token;
  }

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      ...init,
      headers: { ...this.headers(), ...(init.headers ?? {}) },
    });
    if (response.status === 204) return undefined as T;
    let body: unknown;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) {
      const err = (body as { error?: { code?: string; message?: string } })?.error;
      throw new ApiError(response.status, err?.code ?? "http_error", err?.message ?? response.statusText);
    }
    return body as T;
  }

  config(): Promise<ServiceInfo> {
    return this.request("/v1/config");
  }

  queue(status?: "pending" | "decided"): Promise<QueueItem[]> {
    const suffix = status ? `?status=${status}` : "";
    return this.request(`/v1/queue${suffix}`);
  }

  assessment(id: string): Promise<StoredAssessment> {
    return this.request(`/v1/assessments/${encodeURIComponent(id)}`);
  }

  decide(assessmentId: string, decision: string, note: string, actor: string): Promise<DecisionRecord> {
    return this.request("/v1/decisions", {
      method: "POST",
      body: JSON.stringify({ assessment_id: assessmentId, decision, note, actor }),
    });
  }

  decisions(): Promise<DecisionRecord[]> {
    return this.request("/v1/decisions");
  }

  profile(targetId: string): Promise<ProfileResponse> {
    return this.request(`/v1/profiles/${encodeURIComponent(targetId)}`);
  }

  targets(): Promise<string[]> {
    return this.request("/v1/targets");
  }

  addAllowlist(addressOrDomain: string, addedBy: string, linkedDecisionId?: string): Promise<unknown> {
    return this.request("/v1/allowlist", {
      method: "POST",
      body: JSON.stringify({
        address_or_domain: addressOrDomain,
        added_by: addedBy,
        linked_decision_id: linkedDecisionId ?? null,
      }),
    });
  }

  allowlist(): Promise<{ address_or_domain: string }[]> {
    return this.request("/v1/allowlist");
  }
}
