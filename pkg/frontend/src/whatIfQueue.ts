/** Request discipline for the live console.
 *
 * WhatIfThrottle rate-limits the read-only what-if previews fired while
 * a token is dragged: at most one request per interval (default 200 ms,
 * i.e. 5/s), always coalescing to the latest placement, never issuing a
 * mutating call.  MutationQueue serializes the mutating endpoints: one
 * in-flight request per session, later submissions queued client-side.
 */

import type { ObjectPayload, WhatIfResponse } from "./types.js";
import type { TeachingClient } from "./api.js";

export type Clock = () => number;
export type Scheduler = (callback: () => void, delayMs: number) => void;

export class WhatIfThrottle {
  private lastIssued = -Infinity;
  private pending: ObjectPayload[] | null = null;
  private scheduled = false;
  private requestCount = 0;

  constructor(
    private readonly client: TeachingClient,
    private readonly sessionId: string,
    private readonly onResult: (response: WhatIfResponse) => void,
    private readonly intervalMs = 200,
    private readonly clock: Clock = () => Date.now(),
    private readonly scheduler: Scheduler = (cb, ms) => {
      setTimeout(cb, ms);
    },
    private readonly fuzzinessOverride?: number,
  ) {}

  get issuedRequests(): number {
    return this.requestCount;
  }

  /** Called on every drag tick; only the newest placement survives. */
  push(objects: ObjectPayload[]): void {
    this.pending = objects;
    const now = this.clock();
    if (now - this.lastIssued >= this.intervalMs) {
      this.flush();
    } else if (!this.scheduled) {
      this.scheduled = true;
      this.scheduler(() => {
        this.scheduled = false;
        if (this.pending !== null) {
          this.flush();
        }
      }, this.intervalMs - (now - this.lastIssued));
    }
  }

  private flush(): void {
    if (this.pending === null) {
      return;
    }
    const objects = this.pending;
    this.pending = null;
    this.lastIssued = this.clock();
    this.requestCount += 1;
    void this.client
      .whatIf(this.sessionId, objects, this.fuzzinessOverride)
      .then((response) => this.onResult(response))
      .catch(() => {
        /* previews are best-effort; errors surface on real submissions */
      });
  }
}

export class MutationQueue {
  private queue: Array<() => Promise<void>> = [];
  private busy = false;

  /** Enqueue a mutating call; resolves when that call completes. */
  submit<T>(operation: () => Promise<T>): Promise<T> {
    return new Promise<T>((resolve, reject) => {
      this.queue.push(async () => {
        try {
          resolve(await operation());
        } catch (error) {
          reject(error);
        }
      });
      void this.drain();
    });
  }

  private async drain(): Promise<void> {
    if (this.busy) {
      return;
    }
    this.busy = true;
    while (this.queue.length > 0) {
      const next = this.queue.shift()!;
      await next();
    }
    this.busy = false;
  }
}
