import { describe, expect, it } from "vitest";

import { TeachingClient, type TransportRequest } from "../src/api.js";
import { MutationQueue, WhatIfThrottle } from "../src/whatIfQueue.js";
import { whatIfFixture } from "./fixtures.js";
import type { ObjectPayload } from "../src/types.js";

function recordingClient(log: TransportRequest[]): TeachingClient {
  return new TeachingClient(async (request) => {
    log.push(request);
    return whatIfFixture();
  });
}

function token(x: number): ObjectPayload {
  return { id: "glass", x, y: 0.2, shapes: { CYLINDER: 1.0 } };
}

/** Drives the throttle with a manual clock and scheduler; the transport
 * log records the clock time of every issued request. */
function harness(log: TransportRequest[], intervalMs = 200) {
  let now = 0;
  const issueTimes: number[] = [];
  const scheduled: Array<{ at: number; run: () => void }> = [];
  const client = new TeachingClient(async (request) => {
    log.push(request);
    issueTimes.push(now);
    return whatIfFixture();
  });
  const throttle = new WhatIfThrottle(
    client,
    "session-1",
    () => undefined,
    intervalMs,
    () => now,
    (callback, delay) => {
      scheduled.push({ at: now + delay, run: callback });
    },
  );
  const advance = (toTime: number) => {
    now = toTime;
    for (const entry of [...scheduled]) {
      if (entry.at <= now) {
        scheduled.splice(scheduled.indexOf(entry), 1);
        entry.run();
      }
    }
  };
  return { throttle, advance, issueTimes };
}

describe("what-if drag discipline", () => {
  it("issues only what-if requests, never a mutating call", async () => {
    const log: TransportRequest[] = [];
    const { throttle, advance } = harness(log);
    for (let tick = 0; tick < 60; tick += 1) {
      throttle.push([token(tick / 100)]);
      advance(tick * 16); // ~60 fps drag
    }
    advance(2_000);
    await Promise.resolve();
    expect(log.length).toBeGreaterThan(0);
    for (const request of log) {
      expect(request.method).toBe("POST");
      expect(request.path).toBe("/sessions/session-1/what-if");
    }
  });

  it("never exceeds five requests per second", async () => {
    const log: TransportRequest[] = [];
    const { throttle, advance, issueTimes } = harness(log);
    for (let tick = 0; tick <= 500; tick += 1) {
      advance(tick * 8); // 125 drag ticks per second for four seconds
      throttle.push([token(tick / 800)]);
    }
    advance(10_000);
    expect(issueTimes.length).toBeGreaterThan(5);
    for (let i = 1; i < issueTimes.length; i += 1) {
      expect(issueTimes[i] - issueTimes[i - 1]).toBeGreaterThanOrEqual(200);
    }
    // Sliding one-second windows never contain more than five requests.
    for (const start of issueTimes) {
      const inWindow = issueTimes.filter((t) => t >= start && t < start + 1000);
      expect(inWindow.length).toBeLessThanOrEqual(5);
    }
  });

  it("coalesces to the latest placement", async () => {
    const log: TransportRequest[] = [];
    const { throttle, advance } = harness(log);
    throttle.push([token(0.1)]); // issued immediately
    throttle.push([token(0.2)]); // coalesced
    throttle.push([token(0.3)]); // coalesced, wins
    advance(250);
    await Promise.resolve();
    expect(log.length).toBe(2);
    const lastBody = log[1].body as { objects: ObjectPayload[] };
    expect(lastBody.objects[0].x).toBe(0.3);
  });
});

describe("mutation queue", () => {
  it("keeps at most one mutating request in flight", async () => {
    const queue = new MutationQueue();
    let inFlight = 0;
    let peak = 0;
    const operation = () =>
      new Promise<void>((resolve) => {
        inFlight += 1;
        peak = Math.max(peak, inFlight);
        setTimeout(() => {
          inFlight -= 1;
          resolve();
        }, 5);
      });
    await Promise.all([
      queue.submit(operation),
      queue.submit(operation),
      queue.submit(operation),
    ]);
    expect(peak).toBe(1);
  });

  it("propagates results and failures to callers", async () => {
    const queue = new MutationQueue();
    const value = await queue.submit(async () => 42);
    expect(value).toBe(42);
    await expect(
      queue.submit(async () => {
        throw new Error("boom");
      }),
    ).rejects.toThrow("boom");
    // The queue keeps draining after a failure.
    expect(await queue.submit(async () => "next")).toBe("next");
  });
});
