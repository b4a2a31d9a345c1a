/** DOM wiring for the teaching console.
 *
 * All reasoning happens service-side; this file moves tokens, issues
 * requests through the tested client/queue modules, and injects the
 * rendered panels.  The bench maps 1.4 x 1.0 meters onto the canvas
 * with +front pointing up the screen.
 */

import { ApiError, TeachingClient, fetchTransport } from "./api.js";
import { renderClassificationGraph, renderMemoryGraph } from "./graphView.js";
import { kernelGrid } from "./kernelOverlay.js";
import {
  renderObservationSummary,
  renderValidationIssues,
  renderWhatIfPanel,
} from "./panels.js";
import {
  CanvasScene,
  nextTokenId,
  toObjectsPayload,
  validateScene,
} from "./sceneModel.js";
import { MutationQueue, WhatIfThrottle } from "./whatIfQueue.js";
import type { ClassificationDoc, SessionResponse } from "./types.js";

const BENCH_WIDTH_M = 1.4;
const BENCH_HEIGHT_M = 1.0;

const SHAPE_GLYPHS: Record<string, string> = {
  SPHERE: "●",
  CONE: "▲",
  CYLINDER: "▮",
  PLANE: "▬",
};

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

interface ConsoleState {
  session: SessionResponse;
  scene: CanvasScene;
  selectedToken: string | null;
  lastClassification: ClassificationDoc | null;
  liveWhatIf: boolean;
  overlayRelation: string | null;
  sceneCounter: number;
}

async function boot(): Promise<void> {
  const baseUrl =
    (window as unknown as { FSIT_BASE_URL?: string }).FSIT_BASE_URL ??
    "http://127.0.0.1:8765";
  const client = new TeachingClient(fetchTransport(baseUrl));
  const session = await client.createSession({
    fuzziness: Number((element<HTMLInputElement>("fuzziness") as HTMLInputElement).value),
  });
  const state: ConsoleState = {
    session,
    scene: { tokens: [] },
    selectedToken: null,
    lastClassification: null,
    liveWhatIf: true,
    overlayRelation: null,
    sceneCounter: 0,
  };
  const mutations = new MutationQueue();
  const throttle = new WhatIfThrottle(
    client,
    session.session_id,
    (response) => {
      state.lastClassification = response.classification;
      element("whatif-panel").innerHTML = renderWhatIfPanel(response);
      void refreshMemory();
    },
  );

  const bench = element<HTMLDivElement>("bench");
  const overlayCanvas = element<HTMLCanvasElement>("kernel-overlay");

  function toScreen(x: number, y: number): [number, number] {
    const rect = bench.getBoundingClientRect();
    return [
      (x / BENCH_WIDTH_M) * rect.width,
      rect.height - (y / BENCH_HEIGHT_M) * rect.height,
    ];
  }

  function toBench(clientX: number, clientY: number): [number, number] {
    const rect = bench.getBoundingClientRect();
    const x = ((clientX - rect.left) / rect.width) * BENCH_WIDTH_M;
    const y = ((rect.bottom - clientY) / rect.height) * BENCH_HEIGHT_M;
    return [
      Math.min(BENCH_WIDTH_M, Math.max(0, x)),
      Math.min(BENCH_HEIGHT_M, Math.max(0, y)),
    ];
  }

  function drawTokens(): void {
    for (const node of bench.querySelectorAll(".token")) {
      node.remove();
    }
    for (const token of state.scene.tokens) {
      const div = document.createElement("div");
      div.className = `token${token.id === state.selectedToken ? " selected" : ""}`;
      div.dataset.tokenId = token.id;
      const [sx, sy] = toScreen(token.x, token.y);
      div.style.left = `${sx}px`;
      div.style.top = `${sy}px`;
      const confidence = token.confidences[token.shape] ?? 1;
      div.textContent = `${SHAPE_GLYPHS[token.shape] ?? "?"}`;
      div.title = `${token.id} (${token.shape} ${confidence.toFixed(2)})`;
      bench.appendChild(div);
    }
    element("validation").innerHTML = renderValidationIssues(
      validateScene(state.scene),
    );
  }

  function drawOverlay(): void {
    const context = overlayCanvas.getContext("2d");
    if (!context) {
      return;
    }
    context.clearRect(0, 0, overlayCanvas.width, overlayCanvas.height);
    if (!state.overlayRelation || !state.selectedToken) {
      return;
    }
    const token = state.scene.tokens.find((t) => t.id === state.selectedToken);
    if (!token) {
      return;
    }
    const params = state.session.params.kernel;
    const cells = 41;
    const grid = kernelGrid(params, state.overlayRelation, cells);
    const rect = bench.getBoundingClientRect();
    const spanPx = (2 * params.distance_cutoff * rect.width) / BENCH_WIDTH_M;
    const cellPx = spanPx / cells;
    const [cx, cy] = toScreen(token.x, token.y);
    for (let row = 0; row < cells; row += 1) {
      for (let column = 0; column < cells; column += 1) {
        const alpha = grid[row][column];
        if (alpha <= 0.01) {
          continue;
        }
        context.fillStyle = `rgba(231, 111, 81, ${alpha * 0.5})`;
        context.fillRect(
          cx - spanPx / 2 + column * cellPx,
          cy - spanPx / 2 + row * cellPx,
          cellPx + 0.5,
          cellPx + 0.5,
        );
      }
    }
  }

  async function refreshMemory(): Promise<void> {
    const response = await client.getMemory(session.session_id);
    element("memory-panel").innerHTML = renderMemoryGraph(
      response.memory,
      state.lastClassification,
    );
  }

  function fireWhatIf(): void {
    if (state.liveWhatIf && state.scene.tokens.length > 0) {
      if (validateScene(state.scene).length === 0) {
        throttle.push(toObjectsPayload(state.scene));
      }
    }
  }

  // -- palette -------------------------------------------------------------
  for (const button of document.querySelectorAll<HTMLButtonElement>(".palette button")) {
    button.addEventListener("click", () => {
      const shape = button.dataset.shape!;
      const token = {
        id: nextTokenId(shape),
        shape,
        x: BENCH_WIDTH_M / 2,
        y: BENCH_HEIGHT_M / 2,
        confidences: { [shape]: 1.0 },
      };
      state.scene.tokens.push(token);
      state.selectedToken = token.id;
      syncConfidenceSlider();
      drawTokens();
      drawOverlay();
      fireWhatIf();
    });
  }

  // -- dragging --------------------------------------------------------------
  let dragging: string | null = null;
  bench.addEventListener("pointerdown", (event) => {
    const target = (event.target as HTMLElement).closest(".token");
    if (target instanceof HTMLElement && target.dataset.tokenId) {
      dragging = target.dataset.tokenId;
      state.selectedToken = dragging;
      syncConfidenceSlider();
      drawTokens();
      drawOverlay();
      bench.setPointerCapture(event.pointerId);
    }
  });
  bench.addEventListener("pointermove", (event) => {
    if (!dragging) {
      return;
    }
    const token = state.scene.tokens.find((t) => t.id === dragging);
    if (!token) {
      return;
    }
    [token.x, token.y] = toBench(event.clientX, event.clientY);
    drawTokens();
    drawOverlay();
    fireWhatIf();
  });
  bench.addEventListener("pointerup", () => {
    dragging = null;
  });

  // -- confidence slider -------------------------------------------------------
  const slider = element<HTMLInputElement>("confidence");
  function syncConfidenceSlider(): void {
    const token = state.scene.tokens.find((t) => t.id === state.selectedToken);
    if (token) {
      slider.value = String(token.confidences[token.shape] ?? 1);
    }
  }
  slider.addEventListener("input", () => {
    const token = state.scene.tokens.find((t) => t.id === state.selectedToken);
    if (token) {
      token.confidences[token.shape] = Number(slider.value);
      drawTokens();
      fireWhatIf();
    }
  });

  element<HTMLButtonElement>("remove-token").addEventListener("click", () => {
    state.scene.tokens = state.scene.tokens.filter(
      (t) => t.id !== state.selectedToken,
    );
    state.selectedToken = null;
    drawTokens();
    drawOverlay();
  });

  // -- kernel overlay toggle ------------------------------------------------------
  element<HTMLSelectElement>("overlay-relation").addEventListener("change", (event) => {
    const value = (event.target as HTMLSelectElement).value;
    state.overlayRelation = value === "off" ? null : value;
    drawOverlay();
  });

  // -- live what-if toggle ---------------------------------------------------------
  element<HTMLInputElement>("live-whatif").addEventListener("change", (event) => {
    state.liveWhatIf = (event.target as HTMLInputElement).checked;
  });

  // -- observe / teach -----------------------------------------------------------
  async function submitScene(forceLearn: boolean): Promise<void> {
    const issues = validateScene(state.scene);
    element("validation").innerHTML = renderValidationIssues(issues);
    if (issues.length > 0 || state.scene.tokens.length === 0) {
      return;
    }
    state.sceneCounter += 1;
    const sceneId = `console_${state.sceneCounter}`;
    try {
      const response = await mutations.submit(() =>
        client.postScene(
          session.session_id,
          toObjectsPayload(state.scene),
          sceneId,
          forceLearn,
        ),
      );
      state.lastClassification = response.classification;
      element("observation-panel").innerHTML = renderObservationSummary(response);
      await refreshMemory();
    } catch (error) {
      if (error instanceof ApiError) {
        element("observation-panel").innerHTML = renderValidationIssues(
          Array.isArray(error.detail)
            ? (error.detail as Array<{ field: string; message: string }>)
            : [{ field: "scene", message: String(error.detail) }],
        );
      } else {
        throw error;
      }
    }
  }
  element<HTMLButtonElement>("observe").addEventListener("click", () => {
    void submitScene(false);
  });
  element<HTMLButtonElement>("teach").addEventListener("click", () => {
    void submitScene(true);
  });

  // -- annotations -----------------------------------------------------------------
  element("memory-panel").addEventListener("click", (event) => {
    const node = (event.target as HTMLElement).closest("[data-category]");
    if (!(node instanceof HTMLElement) || !node.dataset.category) {
      return;
    }
    const categoryId = Number(node.dataset.category);
    const label = window.prompt(`annotation for Phi${categoryId}`, "");
    if (label === null) {
      return;
    }
    void mutations
      .submit(() => client.annotate(session.session_id, categoryId, label || null))
      .then(refreshMemory);
  });

  // -- thresholds -----------------------------------------------------------------
  for (const name of ["th-membership", "th-similarity"] as const) {
    element<HTMLInputElement>(name).addEventListener("change", (event) => {
      const value = Number((event.target as HTMLInputElement).value);
      void mutations.submit(() =>
        client.setParams(
          session.session_id,
          name === "th-membership"
            ? { th_membership: value }
            : { th_similarity: value },
        ),
      );
    });
  }

  element("session-info").textContent =
    `session ${session.session_id.slice(0, 8)} | fuzziness ${session.params.fuzziness}`;
  element("classification-panel").innerHTML = renderClassificationGraph({
    scene_id: "none",
    nodes: [],
    edges: [],
  });
  await refreshMemory();
  drawTokens();
}

void boot().catch((error) => {
  element("session-info").textContent = `service unreachable: ${error}`;
});
