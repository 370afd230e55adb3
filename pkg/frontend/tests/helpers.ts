/** Fixture-backed fetch for the test suite.
 *
 * Every fixture file records the request it answers, so the stub built
 * here routes by matching method, path, decoded query params, and JSON
 * body against those records. Repeated identical requests (findings
 * before and after a resolution) consume fixtures in the order they
 * were passed in.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export interface RecordedRequest {
  method: string;
  path: string;
  params: [string, string][];
  body: unknown;
}

export interface Fixture {
  request: RecordedRequest;
  status: number;
  body: unknown;
}

export function loadFixture(name: string): Fixture {
  const raw = readFileSync(join(FIXTURE_DIR, `${name}.json`), "utf8");
  return JSON.parse(raw) as Fixture;
}

/** The text the recorder uploaded for this fixture; pasting exactly it
 * guarantees the stub matches the upload request. */
export function uploadText(name: string): string {
  return (loadFixture(name).request.body as { text: string }).text;
}

/** Table id embedded in a fixture's request path ("/tables/t8/rows"). */
export function tableIdOf(name: string): string {
  const part = loadFixture(name).request.path.split("/")[2];
  if (part === undefined) throw new Error(`no table id in ${name}`);
  return part;
}

function canonical(value: unknown): string {
  if (value === null || typeof value !== "object") {
    return JSON.stringify(value) ?? "undefined";
  }
  if (Array.isArray(value)) {
    return `[${value.map(canonical).join(",")}]`;
  }
  const entries = Object.entries(value as Record<string, unknown>)
    .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
    .map(([key, inner]) => `${JSON.stringify(key)}:${canonical(inner)}`);
  return `{${entries.join(",")}}`;
}

function requestKey(
  method: string, path: string, params: [string, string][], body: unknown,
): string {
  const pairs = [...params].sort(
    (a, b) => a[0].localeCompare(b[0]) || a[1].localeCompare(b[1]));
  return `${method.toUpperCase()} ${path} ${canonical(pairs)} ` +
    canonical(body ?? null);
}

export interface StubFetch {
  fetch: typeof fetch;
  /** Total requests issued so far. */
  calls(): number;
}

export function fixtureFetch(names: string[]): StubFetch {
  const queues = new Map<string, Fixture[]>();
  for (const name of names) {
    const fixture = loadFixture(name);
    const request = fixture.request;
    const key = requestKey(
      request.method, request.path, request.params, request.body);
    const queue = queues.get(key) ?? [];
    queue.push(fixture);
    queues.set(key, queue);
  }

  let count = 0;
  const cursors = new Map<string, number>();
  const impl = async (
    input: RequestInfo | URL, init?: RequestInit,
  ): Promise<Response> => {
    count += 1;
    const url = new URL(String(input), "http://service.invalid");
    const method = init?.method ?? "GET";
    const body = typeof init?.body === "string" && init.body !== ""
      ? (JSON.parse(init.body) as unknown)
      : null;
    const pairs = [...url.searchParams.entries()] as [string, string][];
    const key = requestKey(method, url.pathname, pairs, body);
    const queue = queues.get(key);
    if (queue === undefined) {
      throw new Error(`no fixture matches ${key}`);
    }
    const index = cursors.get(key) ?? 0;
    cursors.set(key, index + 1);
    const fixture = queue[Math.min(index, queue.length - 1)]!;
    return new Response(JSON.stringify(fixture.body), {
      status: fixture.status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetch: impl as typeof fetch, calls: () => count };
}

/** Let every pending handler chain settle (macrotask after microtasks). */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
