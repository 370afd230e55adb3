import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { fixtureFetch, loadFixture, tableIdOf, uploadText } from "./helpers.js";

describe("ApiClient", () => {
  it("uploads a document and returns the translation", async () => {
    const stub = fixtureFetch(["stethoscope_upload"]);
    const client = new ApiClient("", stub.fetch);
    const response = await client.uploadDocument(
      uploadText("stethoscope_upload"), { docId: "doc1" });
    expect(response.table_id).toBe(tableIdOf("stethoscope_findings_open"));
    expect(response.revision).toBe(1);
    expect(response.table.rows).toHaveLength(2);
    expect(response.candidates).toHaveLength(1);
    expect(response.candidates[0]!.size).toBe(2);
  });

  it("turns a query error envelope into a typed exception", async () => {
    const stub = fixtureFetch(["students_rows_bad_filter"]);
    const client = new ApiClient("", stub.fetch);
    const promise = client.getRows(tableIdOf("students_rows_bad_filter"), {
      filters: [{ column: "NOPE", op: "contains", value: "x" }],
    });
    await expect(promise).rejects.toBeInstanceOf(ApiError);
    await expect(client.getRows(tableIdOf("students_rows_bad_filter"), {
      filters: [{ column: "NOPE", op: "contains", value: "x" }],
    })).rejects.toMatchObject({ status: 422, code: "bad_query" });
  });

  it("carries the server revision on a stale resolution", async () => {
    const fixture = loadFixture("stethoscope_conflict_resolve_stale");
    const request = fixture.request.body as {
      group: string; choice: number; revision: number;
    };
    const stub = fixtureFetch(["stethoscope_conflict_resolve_stale"]);
    const client = new ApiClient("", stub.fetch);
    await expect(client.resolve(
      tableIdOf("stethoscope_conflict_resolve_stale"),
      request.group, request.choice, request.revision,
    )).rejects.toMatchObject({
      status: 409,
      code: "stale_revision",
      detail: { revision: 2 },
    });
  });

  it("falls back to a generic error for non-envelope failures", async () => {
    const broken: typeof fetch = async () =>
      new Response("not json", { status: 500 });
    const client = new ApiClient("", broken);
    await expect(client.getTable("t1")).rejects.toMatchObject({
      status: 500,
      code: "http_error",
    });
  });
});
