/** Kernel lobe overlay: a display-only heatmap of one relation's kernel
 * computed from the service-reported parameters.  Decorative context for
 * placing tokens; all real degrees come from service responses. */

import type { KernelParams } from "./types.js";

export function kernelDirection(
  params: KernelParams,
  relation: string,
): [number, number] {
  let [dx, dy] = params.base_direction;
  const norm = Math.hypot(dx, dy) || 1;
  dx /= norm;
  dy /= norm;
  for (const name of params.relations) {
    if (name === relation) {
      return [dx, dy];
    }
    [dx, dy] = [dy, -dx];
  }
  throw new Error(`relation '${relation}' is not a kernel relation`);
}

export function kernelValue(
  params: KernelParams,
  relation: string,
  offsetX: number,
  offsetY: number,
): number {
  const distance = Math.hypot(offsetX, offsetY);
  if (distance === 0) {
    return 0;
  }
  const [ux, uy] = kernelDirection(params, relation);
  const cosine = (offsetX * ux + offsetY * uy) / distance;
  if (cosine <= 0) {
    return 0;
  }
  const angular = cosine ** params.angular_exponent;
  let radial: number;
  if (distance <= params.distance_plateau) {
    radial = 1;
  } else if (distance >= params.distance_cutoff) {
    radial = 0;
  } else {
    radial =
      1 -
      (distance - params.distance_plateau) /
        (params.distance_cutoff - params.distance_plateau);
  }
  return angular * radial;
}

/** Sample the lobe on a square grid centered on the token (alpha values 0..1). */
export function kernelGrid(
  params: KernelParams,
  relation: string,
  cells: number,
): number[][] {
  const halfSpan = params.distance_cutoff;
  const grid: number[][] = [];
  for (let row = 0; row < cells; row += 1) {
    const line: number[] = [];
    for (let column = 0; column < cells; column += 1) {
      const x = -halfSpan + (2 * halfSpan * column) / (cells - 1);
      // Screen rows grow downward while the bench's front axis grows up.
      const y = halfSpan - (2 * halfSpan * row) / (cells - 1);
      line.push(kernelValue(params, relation, x, y));
    }
    grid.push(line);
  }
  return grid;
}
