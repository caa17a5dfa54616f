/** Thin typed client over the session endpoints.  The transport is
 * injectable so tests can replay recorded exchanges. */

import type {
  BoundsResponse,
  CreateResponse,
  EmbeddingJson,
  MutateResponse,
  MutationVertex,
  PolygonResponse,
  QuadNumJson,
} from "./types";

export type Transport = (
  method: string,
  path: string,
  body?: unknown,
) => Promise<{ status: number; json: unknown }>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly name: string,
    detail?: string,
  ) {
    super(detail ? `${name}: ${detail}` : name);
  }
}

export function fetchTransport(baseUrl: string): Transport {
  return async (method, path, body) => {
    const res = await fetch(baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return { status: res.status, json: await res.json() };
  };
}

async function expectOk<T>(p: Promise<{ status: number; json: unknown }>): Promise<T> {
  const { status, json } = await p;
  if (status !== 200) {
    const err = json as { error?: string; detail?: string };
    throw new ApiError(status, err.error ?? `HTTP ${status}`, err.detail);
  }
  return json as T;
}

export class ExplorerApi {
  constructor(private readonly transport: Transport) {}

  createSession(preset: string): Promise<CreateResponse>;
  createSession(beta: QuadNumJson): Promise<CreateResponse>;
  createSession(arg: string | QuadNumJson): Promise<CreateResponse> {
    const body = typeof arg === "string" ? { preset: arg } : { beta: arg };
    return expectOk(this.transport("POST", "/sessions", body));
  }

  getPolygon(id: string): Promise<PolygonResponse> {
    return expectOk(this.transport("GET", `/sessions/${id}/polygon`));
  }

  mutate(id: string, vertex: MutationVertex): Promise<MutateResponse> {
    return expectOk(this.transport("POST", `/sessions/${id}/mutate`, { vertex }));
  }

  undo(id: string): Promise<PolygonResponse> {
    return expectOk(this.transport("POST", `/sessions/${id}/undo`));
  }

  getEmbedding(id: string): Promise<EmbeddingJson> {
    return expectOk(this.transport("GET", `/sessions/${id}/embedding`));
  }

  getBounds(
    id: string,
    params: { kmax?: number; lo?: string; hi?: string; samples?: number } = {},
  ): Promise<BoundsResponse> {
    const q = new URLSearchParams();
    if (params.kmax !== undefined) q.set("kmax", String(params.kmax));
    if (params.lo !== undefined) q.set("lo", params.lo);
    if (params.hi !== undefined) q.set("hi", params.hi);
    if (params.samples !== undefined) q.set("samples", String(params.samples));
    const suffix = q.size ? `?${q.toString()}` : "";
    return expectOk(this.transport("GET", `/sessions/${id}/bounds${suffix}`));
  }
}
