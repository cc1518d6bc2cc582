/** Thin typed client for the /v1 gateway. The UI computes no epidemiology;
 * every number it shows comes through here. */
import type {
  ActionSpec, CountyInfo, FramePayload, GeoCollection, Metric,
  ScenarioInfo, SeriesPayload, SummaryPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: Array<{ field: string; message: string }> = [],
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "error";
  let message = `${response.status} ${response.statusText}`;
  let details: Array<{ field: string; message: string }> = [];
  try {
    const body = await response.json();
    code = body.code ?? code;
    message = body.message ?? message;
    details = body.details ?? details;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, message, details);
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}/v1${path}`, init);
    if (!response.ok) throw await parseError(response);
    return response.json() as Promise<T>;
  }

  geometry(): Promise<GeoCollection> {
    return this.request("/inputs/geometry");
  }

  counties(): Promise<{ counties: CountyInfo[] }> {
    return this.request("/inputs/counties");
  }

  createScenario(config: Record<string, unknown>): Promise<{ id: string }> {
    return this.request("/scenarios", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ config }),
    });
  }

  runScenario(id: string): Promise<{ id: string; status: string }> {
    return this.request(`/scenarios/${id}/run`, { method: "POST" });
  }

  branchScenario(id: string, branchDay: number, actions: ActionSpec[]):
      Promise<{ id: string; parent_id: string; branch_day: number }> {
    return this.request(`/scenarios/${id}/branch`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ branch_day: branchDay, actions }),
    });
  }

  listScenarios(): Promise<{ scenarios: ScenarioInfo[] }> {
    return this.request("/scenarios");
  }

  frame(id: string, day: number, metric: Metric): Promise<FramePayload> {
    return this.request(`/scenarios/${id}/frames/${day}?metric=${metric}`);
  }

  series(id: string, counties: string[], metric: Metric): Promise<SeriesPayload> {
    const list = encodeURIComponent(counties.join(","));
    return this.request(`/scenarios/${id}/series?metric=${metric}&counties=${list}`);
  }

  summary(id: string): Promise<SummaryPayload> {
    return this.request(`/scenarios/${id}/summary`);
  }

  async exportCsv(id: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/v1/scenarios/${id}/export.csv`);
    if (!response.ok) throw await parseError(response);
    return response.text();
  }
}
