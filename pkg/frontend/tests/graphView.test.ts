import { describe, expect, it } from "vitest";

import { renderClassificationGraph, renderMemoryGraph } from "../src/graphView.js";
import {
  memoryEmptyFixture,
  memoryFixture,
  memoryMutualFixture,
  whatIfFixture,
} from "./fixtures.js";

describe("memory graph rendering from recorded fixtures", () => {
  it("renders every category and the root", () => {
    const memory = memoryFixture().memory;
    const svg = renderMemoryGraph(memory);
    expect(svg).toContain("<svg");
    expect(svg).toContain(">Phi</text>");
    for (const category of memory.categories) {
      expect(svg).toContain(`data-category="${category.id}"`);
      expect(svg).toContain(`Phi${category.id}`);
    }
  });

  it("labels every edge with the fixture degree at two decimals", () => {
    const memory = memoryFixture().memory;
    const svg = renderMemoryGraph(memory);
    expect(memory.edges.length).toBeGreaterThan(0);
    for (const edge of memory.edges) {
      const expected = edge.degree.toFixed(2);
      const marker = `data-edge="${edge.child}-${edge.parent}"`;
      expect(svg).toContain(marker);
      const segment = svg.slice(svg.indexOf(marker));
      const label = segment.match(/<text[^>]*>([\d.]+)<\/text>/);
      expect(label?.[1]).toBe(expected);
    }
  });

  it("shows annotations recorded on categories", () => {
    const memory = memoryFixture().memory;
    const annotated = memory.categories.find((c) => c.annotation !== null);
    expect(annotated).toBeDefined();
    expect(renderMemoryGraph(memory)).toContain(annotated!.annotation!);
  });

  it("draws mutual implications as paired curves", () => {
    const memory = memoryMutualFixture().memory;
    const forward = memory.edges.find((e) =>
      memory.edges.some((o) => o.child === e.parent && o.parent === e.child),
    );
    expect(forward).toBeDefined();
    const svg = renderMemoryGraph(memory);
    const curves = svg.match(/class="edge mutual"/g) ?? [];
    expect(curves.length).toBe(2);
    expect(svg).toContain(" Q "); // curved, not straight, paths
  });

  it("tints and badges the classification overlay", () => {
    const memory = memoryFixture().memory;
    const classification = whatIfFixture().classification;
    const svg = renderMemoryGraph(memory, classification);
    for (const node of classification.nodes) {
      const expected = `p=${node.degree.toFixed(2)} d=${node.similarity.toFixed(2)}`;
      expect(svg).toContain(expected);
    }
    const highlighted = svg.match(/class="node classified"/g) ?? [];
    expect(highlighted.length).toBe(classification.nodes.length);
  });

  it("renders an explicit empty state for fresh sessions", () => {
    const svg = renderMemoryGraph(memoryEmptyFixture().memory);
    expect(svg).toContain('data-empty="memory"');
    expect(svg).not.toContain("<svg");
  });

  it("is deterministic per snapshot", () => {
    const memory = memoryMutualFixture().memory;
    expect(renderMemoryGraph(memory)).toBe(renderMemoryGraph(memory));
  });
});

describe("classification graph rendering", () => {
  it("renders fixture nodes with exact badge strings", () => {
    const doc = whatIfFixture().classification;
    const svg = renderClassificationGraph(doc);
    for (const node of doc.nodes) {
      expect(svg).toContain(`data-category="${node.category_id}"`);
      expect(svg).toContain(
        `p=${node.degree.toFixed(2)} d=${node.similarity.toFixed(2)}`,
      );
    }
    for (const edge of doc.edges) {
      expect(svg).toContain(edge.degree.toFixed(2));
    }
  });

  it("renders the unclassified empty state", () => {
    const svg = renderClassificationGraph({ scene_id: "s", nodes: [], edges: [] });
    expect(svg).toContain('data-empty="classification"');
  });
});
