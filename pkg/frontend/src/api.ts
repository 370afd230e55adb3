/** Typed client for the skyset service. All table semantics live on the
 * server; this module only moves JSON and turns error envelopes into
 * typed exceptions. */

import type {
  ErrorEnvelope,
  FindingsResponse,
  RenderResponse,
  ResolveResponse,
  RowsResponse,
  SearchResponse,
  TableResponse,
  UploadResponse,
} from "./types.js";
import type { RowsQuery } from "./query.js";
import { rowsQueryParams } from "./query.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function throwEnvelope(response: Response): Promise<never> {
  let envelope: ErrorEnvelope | null = null;
  try {
    envelope = (await response.json()) as ErrorEnvelope;
  } catch {
    // fall through to the generic error below
  }
  if (envelope && typeof envelope.code === "string") {
    throw new ApiError(
      response.status, envelope.code, envelope.message, envelope.detail);
  }
  throw new ApiError(
    response.status, "http_error", `service returned ${response.status}`);
}

export interface UploadOptions {
  docId?: string;
  title?: string;
  domain?: string;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      await throwEnvelope(response);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  uploadDocument(text: string, options: UploadOptions = {}): Promise<UploadResponse> {
    const body: Record<string, string> = { text };
    if (options.docId !== undefined) body["doc_id"] = options.docId;
    if (options.title !== undefined) body["title"] = options.title;
    if (options.domain !== undefined) body["domain"] = options.domain;
    return this.post<UploadResponse>("/documents", body);
  }

  getTable(tableId: string): Promise<TableResponse> {
    return this.request<TableResponse>(`/tables/${tableId}`);
  }

  getRows(tableId: string, query: RowsQuery = {}): Promise<RowsResponse> {
    const encoded = rowsQueryParams(query).toString();
    const suffix = encoded === "" ? "" : `?${encoded}`;
    return this.request<RowsResponse>(`/tables/${tableId}/rows${suffix}`);
  }

  searchRows(tableId: string, needle: string): Promise<SearchResponse> {
    const params = new URLSearchParams({ search: needle });
    return this.request<SearchResponse>(
      `/tables/${tableId}/rows?${params.toString()}`);
  }

  getFindings(tableId: string): Promise<FindingsResponse> {
    return this.request<FindingsResponse>(`/tables/${tableId}/findings`);
  }

  resolve(
    tableId: string, group: string, choice: number, revision: number,
  ): Promise<ResolveResponse> {
    return this.post<ResolveResponse>(
      `/tables/${tableId}/resolve`, { group, choice, revision });
  }

  concat(tableIds: string[]): Promise<TableResponse> {
    return this.post<TableResponse>("/tables/concat", { table_ids: tableIds });
  }

  render(tableId: string, voice: string): Promise<RenderResponse> {
    const params = new URLSearchParams({ voice });
    return this.request<RenderResponse>(
      `/tables/${tableId}/render?${params.toString()}`);
  }
}
