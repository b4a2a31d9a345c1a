/** Degree display formatting: everything the console shows rounds to two
 * decimals, matching the service's DOT labels. The underlying response
 * values are never re-derived client-side. */

export function formatDegree(value: number): string {
  return value.toFixed(2);
}

export function formatBadge(degree: number, similarity: number): string {
  return `p=${formatDegree(degree)} d=${formatDegree(similarity)}`;
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
