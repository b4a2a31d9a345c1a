import { beforeEach, describe, expect, it } from "vitest";

import {
  nextTokenId,
  resetTokenIds,
  toObjectsPayload,
  validateScene,
  type CanvasScene,
} from "../src/sceneModel.js";

function scene(tokens: CanvasScene["tokens"]): CanvasScene {
  return { tokens };
}

describe("scene validation mirrors the service rules", () => {
  beforeEach(resetTokenIds);

  it("accepts a clean layout", () => {
    const issues = validateScene(
      scene([
        { id: "ball_1", shape: "SPHERE", x: 0.2, y: 0.1, confidences: { SPHERE: 1 } },
        { id: "cone_1", shape: "CONE", x: 0.4, y: 0.3, confidences: { CONE: 0.8 } },
      ]),
    );
    expect(issues).toEqual([]);
  });

  it("flags duplicate ids", () => {
    const issues = validateScene(
      scene([
        { id: "a", shape: "SPHERE", x: 0, y: 0, confidences: { SPHERE: 1 } },
        { id: "a", shape: "CONE", x: 0.1, y: 0, confidences: { CONE: 1 } },
      ]),
    );
    expect(issues.some((i) => i.message.includes("duplicate"))).toBe(true);
  });

  it("flags all-zero confidences like the service does", () => {
    const issues = validateScene(
      scene([{ id: "a", shape: "SPHERE", x: 0, y: 0, confidences: { SPHERE: 0 } }]),
    );
    expect(issues.some((i) => i.field.endsWith(".shapes"))).toBe(true);
  });

  it("flags out-of-range confidences", () => {
    const issues = validateScene(
      scene([{ id: "a", shape: "SPHERE", x: 0, y: 0, confidences: { SPHERE: 1.4 } }]),
    );
    expect(issues.some((i) => i.field.includes("shapes.SPHERE"))).toBe(true);
  });

  it("emits the service payload shape", () => {
    const payload = toObjectsPayload(
      scene([{ id: "a", shape: "SPHERE", x: 0.25, y: 0.5, confidences: { SPHERE: 0.9 } }]),
    );
    expect(payload).toEqual([
      { id: "a", x: 0.25, y: 0.5, shapes: { SPHERE: 0.9 } },
    ]);
  });

  it("generates distinct ids per shape", () => {
    expect(nextTokenId("SPHERE")).toBe("sphere_1");
    expect(nextTokenId("SPHERE")).toBe("sphere_2");
    expect(nextTokenId("CONE")).toBe("cone_3");
  });
});
