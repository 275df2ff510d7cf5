/** Typed client for the matchsticks HTTP API. All geometry math stays on
 * the server; this client only transports JSON. */

export type Vec2 = [number, number];
export type EdgePair = [number, number];

export interface CreateSessionResponse {
  session_id: string;
  n_vertices: number;
  n_edges: number;
}

export interface GraphResponse {
  vertices: Vec2[];
  edges: EdgePair[];
  markers: Record<string, number>;
}

export interface RigidityInfo {
  rank: number;
  internal_dof: number;
  classification: "rigid" | "flexible";
  gap_ratio: number | null;
  ill_conditioned: boolean;
  unrefined_input: boolean;
}

export interface ReportResponse {
  verification: { overall: boolean; unit_ok: boolean; crossing_ok: boolean };
  rigidity: RigidityInfo;
  max_residual: number;
}

export interface StepResponse {
  coordinates: Vec2[];
  max_residual: number;
  arclength: number;
}

export interface TracePoint {
  step: number;
  arclength: number;
  monitor: number;
  max_residual: number;
}

export interface SteerResponse extends StepResponse {
  monitor: number;
  target: number;
  trace: TracePoint[];
}

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const resp = await this.fetchImpl(this.base + path, init);
    const payload = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      // surface the server's message verbatim
      const message = (payload as { error?: string }).error ?? `HTTP ${resp.status}`;
      throw new ApiError(resp.status, message);
    }
    return payload as T;
  }

  createSession(msgText: string): Promise<CreateSessionResponse> {
    return this.request("POST", "/sessions", { msg_text: msgText });
  }

  getGraph(id: string): Promise<GraphResponse> {
    return this.request("GET", `/sessions/${id}/graph`);
  }

  getReport(id: string): Promise<ReportResponse> {
    return this.request("GET", `/sessions/${id}/report`);
  }

  getFlexModes(id: string): Promise<{ modes: number[][] }> {
    return this.request("GET", `/sessions/${id}/flexmodes`);
  }

  step(id: string, modeIndex: number, h: number): Promise<StepResponse> {
    return this.request("POST", `/sessions/${id}/step`, { mode_index: modeIndex, h });
  }

  steer(id: string, a: number, b: number, target: number): Promise<SteerResponse> {
    return this.request("POST", `/sessions/${id}/steer`, { a, b, target });
  }

  reset(id: string): Promise<StepResponse> {
    return this.request("POST", `/sessions/${id}/reset`, {});
  }
}
