/** Deterministic SVG rendering of memory and classification graphs.
 *
 * Nodes are laid out in layers by longest implication path to the root
 * (mutual pairs share a layer), ordered by category id inside a layer,
 * so the same snapshot always renders the same picture.  Every degree
 * string comes from a response field via formatDegree; nothing is
 * computed client-side.
 */

import { escapeHtml, formatBadge, formatDegree } from "./format.js";
import type { ClassificationDoc, GraphEdge, MemoryDoc } from "./types.js";

const LAYER_HEIGHT = 110;
const NODE_SPACING = 170;
const MARGIN = 60;

interface NodeView {
  id: number;
  label: string;
  annotation: string | null;
  badge: string | null;
  highlighted: boolean;
}

interface Placed extends NodeView {
  x: number;
  y: number;
}

function mutualPairs(edges: GraphEdge[]): Set<string> {
  const present = new Set(edges.map((e) => `${e.child}->${e.parent}`));
  const mutual = new Set<string>();
  for (const edge of edges) {
    if (present.has(`${edge.parent}->${edge.child}`)) {
      mutual.add(`${edge.child}->${edge.parent}`);
    }
  }
  return mutual;
}

/** Longest-path layering toward the root; mutual pairs collapse to one rank. */
function assignLayers(ids: number[], edges: GraphEdge[]): Map<number, number> {
  const mutual = mutualPairs(edges);
  const acyclic = edges.filter((e) => !mutual.has(`${e.child}->${e.parent}`));
  const parents = new Map<number, number[]>();
  for (const edge of acyclic) {
    const list = parents.get(edge.child) ?? [];
    list.push(edge.parent);
    parents.set(edge.child, list);
  }
  const layers = new Map<number, number>();
  const visiting = new Set<number>();
  const layerOf = (id: number): number => {
    const known = layers.get(id);
    if (known !== undefined) {
      return known;
    }
    if (visiting.has(id)) {
      return 1; // defensive: unexpected cycle beyond mutual pairs
    }
    visiting.add(id);
    const above = (parents.get(id) ?? []).map(layerOf);
    const layer = above.length === 0 ? 1 : Math.max(...above) + 1;
    visiting.delete(id);
    layers.set(id, layer);
    return layer;
  };
  ids.forEach(layerOf);
  for (const key of mutual) {
    const [child, parent] = key.split("->").map(Number);
    const rank = Math.max(layerOf(child), layerOf(parent));
    layers.set(child, rank);
    layers.set(parent, rank);
  }
  return layers;
}

function place(nodes: NodeView[], edges: GraphEdge[], withRoot: boolean): {
  placed: Map<number, Placed>;
  width: number;
  height: number;
  rootX: number;
} {
  const layers = assignLayers(
    nodes.map((n) => n.id),
    edges,
  );
  const byLayer = new Map<number, NodeView[]>();
  for (const node of nodes) {
    const layer = layers.get(node.id) ?? 1;
    const list = byLayer.get(layer) ?? [];
    list.push(node);
    byLayer.set(layer, list);
  }
  const widest = Math.max(1, ...[...byLayer.values()].map((l) => l.length));
  const width = Math.max(2 * MARGIN + (widest - 1) * NODE_SPACING, 2 * MARGIN + NODE_SPACING);
  const depth = Math.max(1, ...byLayer.keys());
  const height = MARGIN * 2 + (depth + (withRoot ? 0 : -1)) * LAYER_HEIGHT;
  const placed = new Map<number, Placed>();
  for (const [layer, list] of [...byLayer.entries()].sort((a, b) => a[0] - b[0])) {
    list.sort((a, b) => a.id - b.id);
    const rowWidth = (list.length - 1) * NODE_SPACING;
    list.forEach((node, index) => {
      placed.set(node.id, {
        ...node,
        x: width / 2 - rowWidth / 2 + index * NODE_SPACING,
        y: MARGIN + (withRoot ? layer : layer - 1) * LAYER_HEIGHT,
      });
    });
  }
  return { placed, width, height, rootX: width / 2 };
}

function nodeSvg(node: Placed): string {
  const fill = node.highlighted ? "#f4978e" : "#dbe7ff";
  const stroke = node.highlighted ? "#c1121f" : "#3c6e71";
  const lines = [`Phi${node.id}`];
  if (node.annotation) {
    lines.push(escapeHtml(node.annotation));
  }
  if (node.badge) {
    lines.push(node.badge);
  }
  const text = lines
    .map(
      (line, index) =>
        `<tspan x="${node.x}" dy="${index === 0 ? 0 : 14}">${line}</tspan>`,
    )
    .join("");
  return (
    `<g class="node${node.highlighted ? " classified" : ""}" data-category="${node.id}">` +
    `<ellipse cx="${node.x}" cy="${node.y}" rx="72" ry="34" fill="${fill}" stroke="${stroke}" stroke-width="2"/>` +
    `<text x="${node.x}" y="${node.y - (lines.length - 1) * 7 + 4}" text-anchor="middle" font-size="12">${text}</text>` +
    `</g>`
  );
}

function edgeSvg(
  edge: GraphEdge,
  from: { x: number; y: number },
  to: { x: number; y: number },
  curved: boolean,
  bendSign: number,
): string {
  const label = formatDegree(edge.degree);
  const midX = (from.x + to.x) / 2;
  const midY = (from.y + to.y) / 2;
  let path: string;
  let labelX = midX;
  let labelY = midY - 6;
  if (curved) {
    // Paired curves for mutual implications: bend each direction to its
    // own side so both arrows and labels stay readable.
    const dx = to.x - from.x;
    const dy = to.y - from.y;
    const length = Math.hypot(dx, dy) || 1;
    const offsetX = (-dy / length) * 28 * bendSign;
    const offsetY = (dx / length) * 28 * bendSign;
    path = `M ${from.x} ${from.y} Q ${midX + offsetX} ${midY + offsetY} ${to.x} ${to.y}`;
    labelX = midX + offsetX;
    labelY = midY + offsetY - 4;
  } else {
    path = `M ${from.x} ${from.y} L ${to.x} ${to.y}`;
  }
  return (
    `<g class="edge${curved ? " mutual" : ""}" data-edge="${edge.child}-${edge.parent}">` +
    `<path d="${path}" fill="none" stroke="#55586a" stroke-width="1.4" marker-end="url(#arrow)"/>` +
    `<text x="${labelX}" y="${labelY}" text-anchor="middle" font-size="11" fill="#30323d">${label}</text>` +
    `</g>`
  );
}

const SVG_DEFS =
  `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ` +
  `markerWidth="7" markerHeight="7" orient="auto-start-reverse">` +
  `<path d="M 0 0 L 10 5 L 0 10 z" fill="#55586a"/></marker></defs>`;

export function renderMemoryGraph(
  memory: MemoryDoc,
  classification: ClassificationDoc | null = null,
): string {
  if (memory.categories.length === 0) {
    return (
      `<div class="empty-state" data-empty="memory">` +
      `No categories yet. Place shapes on the bench and observe a scene to teach the first one.` +
      `</div>`
    );
  }
  const classified = new Map(
    (classification?.nodes ?? []).map((node) => [node.category_id, node]),
  );
  const nodes: NodeView[] = memory.categories.map((category) => {
    const hit = classified.get(category.id);
    return {
      id: category.id,
      label: `Phi${category.id}`,
      annotation: category.annotation,
      badge: hit ? formatBadge(hit.degree, hit.similarity) : null,
      highlighted: hit !== undefined,
    };
  });
  const { placed, width, height, rootX } = place(nodes, memory.edges, true);
  const parts: string[] = [];
  parts.push(
    `<svg class="memory-graph" viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(SVG_DEFS);
  const rootY = MARGIN;
  parts.push(
    `<g class="node root"><ellipse cx="${rootX}" cy="${rootY}" rx="46" ry="26" ` +
      `fill="#f5f3f4" stroke="#30323d" stroke-width="2" stroke-dasharray="4 3"/>` +
      `<text x="${rootX}" y="${rootY + 4}" text-anchor="middle" font-size="12">Phi</text></g>`,
  );
  const mutual = mutualPairs(memory.edges);
  const hasParent = new Set(memory.edges.map((e) => e.child));
  for (const node of [...placed.values()].sort((a, b) => a.id - b.id)) {
    // The implicit root edge always has degree 1; drawn only when the
    // category has no other parent, keeping the picture uncluttered.
    if (!hasParent.has(node.id)) {
      parts.push(
        edgeSvg(
          { child: node.id, parent: 0, degree: 1.0 },
          node,
          { x: rootX, y: rootY + 26 },
          false,
          0,
        ),
      );
    }
  }
  const sortedEdges = [...memory.edges].sort((a, b) =>
    a.child - b.child || a.parent - b.parent,
  );
  for (const edge of sortedEdges) {
    const from = placed.get(edge.child)!;
    const to = placed.get(edge.parent)!;
    const isMutual = mutual.has(`${edge.child}->${edge.parent}`);
    parts.push(
      edgeSvg(edge, from, to, isMutual, edge.child < edge.parent ? 1 : -1),
    );
  }
  for (const node of [...placed.values()].sort((a, b) => a.id - b.id)) {
    parts.push(nodeSvg(node));
  }
  parts.push("</svg>");
  return parts.join("");
}

export function renderClassificationGraph(doc: ClassificationDoc): string {
  if (doc.nodes.length === 0) {
    return (
      `<div class="empty-state" data-empty="classification">` +
      `Scene unclassified: no category matched with a positive degree.` +
      `</div>`
    );
  }
  const nodes: NodeView[] = doc.nodes.map((node) => ({
    id: node.category_id,
    label: `Phi${node.category_id}`,
    annotation: node.annotation,
    badge: formatBadge(node.degree, node.similarity),
    highlighted: true,
  }));
  const { placed, width, height } = place(nodes, doc.edges, false);
  const parts = [
    `<svg class="classification-graph" viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">`,
    SVG_DEFS,
  ];
  const mutual = mutualPairs(doc.edges);
  for (const edge of [...doc.edges].sort((a, b) => a.child - b.child || a.parent - b.parent)) {
    const from = placed.get(edge.child)!;
    const to = placed.get(edge.parent)!;
    parts.push(
      edgeSvg(edge, from, to, mutual.has(`${edge.child}->${edge.parent}`), edge.child < edge.parent ? 1 : -1),
    );
  }
  for (const node of [...placed.values()].sort((a, b) => a.id - b.id)) {
    parts.push(nodeSvg(node));
  }
  parts.push("</svg>");
  return parts.join("");
}
