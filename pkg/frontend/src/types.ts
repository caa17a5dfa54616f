/** JSON payload shapes of the session service.  The client performs no
 * arithmetic on the exact values beyond parsing the attached decimal
 * renderings for display. */

/** a + b*sqrt(D) with arbitrary-precision integers as decimal strings. */
export interface QuadNumJson {
  a: [string, string];
  b: [string, string];
  D: number;
}

export interface AtfNodeJson {
  vertex: [QuadNumJson, QuadNumJson];
  ray: [number, number] | null;
  edge: [number, number];
  len: QuadNumJson;
}

export interface PolygonJson {
  beta: QuadNumJson;
  nodes: AtfNodeJson[];
  word: string;
}

export type VertexLabel = "O" | "Y" | "V" | "X";

export interface PolygonDisplay {
  labels: Record<VertexLabel, number>;
  side_decimals: Record<string, string>;
  side_pretty: Record<string, string>;
  vertex_decimals: [string, string][];
}

export interface PolygonResponse {
  polygon: PolygonJson;
  display: PolygonDisplay;
}

export interface CreateResponse extends PolygonResponse {
  id: string;
}

export interface EmbeddingJson {
  z: QuadNumJson;
  lambda: QuadNumJson;
  kind: string;
  label: string;
  z_decimal: string;
  lambda_decimal: string;
}

export interface MutateResponse extends PolygonResponse {
  embedding: EmbeddingJson | null;
}

export interface BoundSampleJson {
  z: QuadNumJson;
  lambda: QuadNumJson | null;
  kind: string;
  label: string;
  z_decimal: string;
  lambda_decimal?: string;
}

export interface VolumePointJson {
  z: QuadNumJson;
  z_decimal: string;
  value: string;
}

export interface BoundsResponse {
  envelope: BoundSampleJson[];
  sweep: BoundSampleJson[];
  volume: VolumePointJson[];
  embeddings: EmbeddingJson[];
}

export interface ServiceError {
  error: string;
  detail?: string;
}

export type MutationVertex = "x" | "y" | "v";
