// Thin typed client for the tsol JSON API.  All board computation happens
// server-side; the client never re-implements fillings or move legality.

export type Cell = [number, number];

export interface PatternJson {
  cells: Cell[];
}

export interface MoveJson {
  anchor: Cell;
  from: Cell;
  to: Cell;
}

export interface NormalFormPart {
  v: Cell;
  n: number;
  k: number;
}

export interface FillResponse {
  filling: PatternJson;
  decomposition: NormalFormPart[];
  excess: number;
}

export interface SequenceJson {
  start: PatternJson;
  moves: MoveJson[];
}

export class ApiError extends Error {
  constructor(
    public code: string,
    public status: number,
    detail?: string,
  ) {
    super(detail ?? code);
  }
}

async function request<T>(url: string, body?: unknown): Promise<T> {
  const resp = await fetch(
    url,
    body === undefined
      ? undefined
      : {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify(body),
        },
  );
  const payload = await resp.json();
  if (!resp.ok) {
    throw new ApiError(payload.error ?? "unknown", resp.status, payload.detail);
  }
  return payload as T;
}

export class Client {
  constructor(private base: string = "") {}

  health(): Promise<{ status: string }> {
    return request(`${this.base}/api/health`);
  }

  fill(pattern: PatternJson): Promise<FillResponse> {
    return request(`${this.base}/api/fill`, { pattern });
  }

  moves(pattern: PatternJson): Promise<MoveJson[]> {
    return request<{ moves: MoveJson[] }>(`${this.base}/api/moves`, { pattern }).then(
      (r) => r.moves,
    );
  }

  apply(pattern: PatternJson, move: MoveJson): Promise<PatternJson> {
    return request<{ pattern: PatternJson }>(`${this.base}/api/apply`, {
      pattern,
      move,
    }).then((r) => r.pattern);
  }

  normalForm(pattern: PatternJson): Promise<{ parts: NormalFormPart[] }> {
    return request(`${this.base}/api/normal-form`, { pattern });
  }

  normalizePath(pattern: PatternJson): Promise<SequenceJson> {
    return request(`${this.base}/api/normalize-path`, { pattern });
  }

  preset(name: string, seed = 0): Promise<PatternJson> {
    return request(`${this.base}/api/preset?name=${encodeURIComponent(name)}&seed=${seed}`);
  }
}
