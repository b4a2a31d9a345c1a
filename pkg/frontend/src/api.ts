/** Typed client over an injectable transport so tests can record every
 * request the console issues. */

import type {
  MemoryResponse,
  ObjectPayload,
  SceneResponse,
  SessionParams,
  SessionResponse,
  WhatIfResponse,
} from "./types.js";

export interface TransportRequest {
  method: "GET" | "POST" | "PATCH";
  path: string;
  body?: unknown;
}

export type Transport = (request: TransportRequest) => Promise<unknown>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service responded ${status}`);
  }
}

export function fetchTransport(baseUrl: string): Transport {
  return async ({ method, path, body }) => {
    const response = await fetch(baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, payload?.detail ?? payload);
    }
    return payload;
  };
}

export class TeachingClient {
  constructor(private readonly transport: Transport) {}

  async createSession(params: Partial<SessionParams> & { seed?: number }): Promise<SessionResponse> {
    return (await this.transport({
      method: "POST",
      path: "/sessions",
      body: params,
    })) as SessionResponse;
  }

  async postScene(
    sessionId: string,
    objects: ObjectPayload[],
    sceneId: string,
    forceLearn = false,
  ): Promise<SceneResponse> {
    return (await this.transport({
      method: "POST",
      path: `/sessions/${sessionId}/scenes`,
      body: { objects, scene_id: sceneId, force_learn: forceLearn },
    })) as SceneResponse;
  }

  async whatIf(
    sessionId: string,
    objects: ObjectPayload[],
    fuzzinessOverride?: number,
  ): Promise<WhatIfResponse> {
    const body: Record<string, unknown> = { objects, scene_id: "what_if" };
    if (fuzzinessOverride !== undefined) {
      body.fuzziness_override = fuzzinessOverride;
    }
    return (await this.transport({
      method: "POST",
      path: `/sessions/${sessionId}/what-if`,
      body,
    })) as WhatIfResponse;
  }

  async getMemory(sessionId: string): Promise<MemoryResponse> {
    return (await this.transport({
      method: "GET",
      path: `/sessions/${sessionId}/memory`,
    })) as MemoryResponse;
  }

  async annotate(sessionId: string, categoryId: number, label: string | null): Promise<void> {
    await this.transport({
      method: "POST",
      path: `/sessions/${sessionId}/annotations`,
      body: { category_id: categoryId, label },
    });
  }

  async setParams(
    sessionId: string,
    params: { th_membership?: number; th_similarity?: number },
  ): Promise<void> {
    await this.transport({
      method: "PATCH",
      path: `/sessions/${sessionId}/params`,
      body: params,
    });
  }
}
