/** Wire types for the skyset service. Field names mirror the JSON exactly;
 * the workbench never computes table semantics itself, it only displays
 * what these payloads say. */

export interface ColumnJson {
  label: string;
  categories: string[];
}

export interface RowJson {
  /** Cell text per column label; null marks an empty cell. */
  cells: Record<string, string | null>;
  doc: string;
  sentences: number[];
  status: "final" | "candidate";
  group: string | null;
}

export interface SourceJson {
  doc_id: string;
  title: string;
  domain: string;
  text: string;
  sentences: string[];
}

export interface TableJson {
  schema: ColumnJson[];
  rows: RowJson[];
  sources: SourceJson[];
}

export interface CandidateJson {
  group: string;
  doc: string;
  sentence: number;
  size: number;
  description: string;
}

export interface IssueJson {
  sentence: number;
  message: string;
  kind: "error" | "note";
}

export interface UploadResponse {
  table_id: string;
  revision: number;
  table: TableJson;
  candidates: CandidateJson[];
  issues: IssueJson[];
}

export interface TableResponse {
  table_id: string;
  revision: number;
  table: TableJson;
}

export interface RowsResponse {
  revision: number;
  rows: RowJson[];
}

export interface SearchHitJson {
  row: number;
  column: string;
  text: string;
}

export interface SearchResponse {
  revision: number;
  hits: SearchHitJson[];
}

export interface FindingJson {
  kind: "Ambiguous" | "Incomplete" | "Vague";
  doc: string;
  sentence: number;
  column: string | null;
  detail: string;
  suggestions: string[];
}

export interface FindingsResponse {
  revision: number;
  findings: FindingJson[];
}

export interface ResolveResponse {
  table_id: string;
  revision: number;
  table: TableJson;
}

export interface RenderResponse {
  revision: number;
  voice: string;
  sentences: string[];
}

/** Every service error shares this flat envelope. */
export interface ErrorEnvelope {
  code: string;
  message: string;
  detail: unknown;
}
