/** Response and payload shapes of the teaching service JSON API (v1). */

export interface KernelParams {
  relations: [string, string, string, string];
  base_direction: [number, number];
  angular_exponent: number;
  distance_plateau: number;
  distance_cutoff: number;
  degree_floor: number;
}

export interface SessionParams {
  fuzziness: number;
  th_membership: number;
  th_similarity: number;
  mode: string;
  types: string[];
  kernel: KernelParams;
  noise: unknown | null;
}

export interface SessionResponse {
  schema_version: number;
  session_id: string;
  params: SessionParams;
}

export interface ObjectPayload {
  id: string;
  x: number;
  y: number;
  shapes: Record<string, number>;
}

export interface ClassificationNode {
  category_id: number;
  degree: number;
  similarity: number;
  annotation: string | null;
}

export interface GraphEdge {
  child: number;
  parent: number;
  degree: number;
}

export interface ClassificationDoc {
  scene_id: string;
  nodes: ClassificationNode[];
  edges: GraphEdge[];
}

export interface SceneResponse {
  schema_version: number;
  learned: boolean;
  classification: ClassificationDoc;
  memory_delta: {
    learned_category_id: number | null;
    added_edges: GraphEdge[];
  };
  memory_size: number;
}

export interface BeliefsDoc {
  scene_id: string;
  mode: string;
  entries: Record<string, number>;
  total_energy: number;
}

export interface WhatIfResponse {
  schema_version: number;
  fuzziness: number;
  classification: ClassificationDoc;
  beliefs: BeliefsDoc;
}

export interface MemoryCategory {
  id: number;
  restrictions: Record<string, number>;
  scene_id: string;
  timestamp: number;
  annotation: string | null;
}

export interface MemoryDoc {
  schema_version: number;
  kind: string;
  created_at: string;
  fuzziness: number;
  next_category_id: number;
  categories: MemoryCategory[];
  edges: GraphEdge[];
  interface: unknown;
}

export interface MemoryResponse {
  schema_version: number;
  memory: MemoryDoc;
}
