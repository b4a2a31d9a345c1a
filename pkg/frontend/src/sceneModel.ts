/** Client-side scene state: tokens placed on the canvas with confidence
 * sliders. Mirrors the service's validation rules so obvious mistakes
 * surface inline before a request round-trip; the service remains the
 * authority and its 400 diagnostics are still rendered when they occur. */

import type { ObjectPayload } from "./types.js";

export interface PlacedToken {
  id: string;
  shape: string;
  x: number;
  y: number;
  /** Confidence per shape; usually just the primary shape's slider. */
  confidences: Record<string, number>;
}

export interface CanvasScene {
  tokens: PlacedToken[];
}

export interface ValidationIssue {
  field: string;
  message: string;
}

export function validateScene(scene: CanvasScene): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  const seen = new Set<string>();
  scene.tokens.forEach((token, index) => {
    const path = `objects[${index}]`;
    if (!/^[A-Za-z][A-Za-z0-9_]*$/.test(token.id)) {
      issues.push({ field: `${path}.id`, message: `invalid id '${token.id}'` });
    }
    if (seen.has(token.id)) {
      issues.push({ field: `${path}.id`, message: `duplicate id '${token.id}'` });
    }
    seen.add(token.id);
    if (!Number.isFinite(token.x) || !Number.isFinite(token.y)) {
      issues.push({ field: `${path}`, message: "position must be finite" });
    }
    const confidences = Object.values(token.confidences);
    if (!confidences.some((value) => value > 0)) {
      issues.push({
        field: `${path}.shapes`,
        message: "at least one shape confidence must be above 0",
      });
    }
    for (const [shape, value] of Object.entries(token.confidences)) {
      if (value < 0 || value > 1) {
        issues.push({
          field: `${path}.shapes.${shape}`,
          message: `confidence ${value} outside [0, 1]`,
        });
      }
    }
  });
  return issues;
}

export function toObjectsPayload(scene: CanvasScene): ObjectPayload[] {
  return scene.tokens.map((token) => ({
    id: token.id,
    x: token.x,
    y: token.y,
    shapes: { ...token.confidences },
  }));
}

let counter = 0;

export function nextTokenId(shape: string): string {
  counter += 1;
  return `${shape.toLowerCase()}_${counter}`;
}

export function resetTokenIds(): void {
  counter = 0;
}
