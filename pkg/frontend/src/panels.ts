/** HTML panels for classification results and observation feedback.
 * Pure string renderers: every number shown is a response field passed
 * through formatDegree. */

import { escapeHtml, formatDegree } from "./format.js";
import type { ClassificationDoc, SceneResponse, WhatIfResponse } from "./types.js";

export function renderClassificationPanel(doc: ClassificationDoc): string {
  if (doc.nodes.length === 0) {
    return `<p class="empty-state" data-empty="panel">No matching categories.</p>`;
  }
  const rows = doc.nodes
    .map((node) => {
      const name = node.annotation
        ? `Phi${node.category_id} (${escapeHtml(node.annotation)})`
        : `Phi${node.category_id}`;
      return (
        `<tr data-category="${node.category_id}">` +
        `<td>${name}</td>` +
        `<td class="degree">${formatDegree(node.degree)}</td>` +
        `<td class="similarity">${formatDegree(node.similarity)}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="classification"><thead>` +
    `<tr><th>category</th><th>p</th><th>d</th></tr>` +
    `</thead><tbody>${rows}</tbody></table>`
  );
}

export function renderObservationSummary(response: SceneResponse): string {
  const verdict = response.learned
    ? `learned a new category (memory size ${response.memory_size})`
    : `classified without learning (memory size ${response.memory_size})`;
  const edges = response.memory_delta.added_edges
    .map(
      (edge) =>
        `<li>Phi${edge.child} &rarr; Phi${edge.parent} @ ${formatDegree(edge.degree)}</li>`,
    )
    .join("");
  return (
    `<div class="observation"><p>${verdict}</p>` +
    (edges ? `<ul class="added-edges">${edges}</ul>` : "") +
    renderClassificationPanel(response.classification) +
    `</div>`
  );
}

export function renderWhatIfPanel(response: WhatIfResponse): string {
  const beliefs = Object.entries(response.beliefs.entries)
    .map(
      ([key, cardinality]) =>
        `<li><code>${escapeHtml(key)}</code> ${formatDegree(cardinality)}</li>`,
    )
    .join("");
  return (
    `<div class="what-if">` +
    `<p>preview at fuzziness ${formatDegree(response.fuzziness)}</p>` +
    renderClassificationPanel(response.classification) +
    `<details><summary>beliefs</summary><ul>${beliefs}</ul></details>` +
    `</div>`
  );
}

export function renderValidationIssues(
  issues: Array<{ field: string; message: string }>,
): string {
  if (issues.length === 0) {
    return "";
  }
  const items = issues
    .map(
      (issue) =>
        `<li><code>${escapeHtml(issue.field)}</code> ${escapeHtml(issue.message)}</li>`,
    )
    .join("");
  return `<ul class="validation-errors">${items}</ul>`;
}
