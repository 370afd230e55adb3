/** Pure view-model: service payloads in, display structures out.
 *
 * Nothing here computes table semantics. Rows, findings, and candidate
 * descriptions are displayed exactly as the service sent them; the only
 * work is arranging them for the grid.
 */

import type { FindingJson, RowJson } from "./types.js";

/** Column label to highlight color, one hue per quintuple column. */
export const CATEGORY_COLORS: Record<string, string> = {
  "TOPIC/ROLE": "#b7e1a1",
  "SERVICE": "#f6e58d",
  "PRODUCT/RESOURCE": "#9fd8df",
  "PROCESS/REQ/RECIPIENT": "#e8b4f0",
  "CONDITION": "#f5c089",
};

export interface GridRow {
  row: RowJson;
  /** Finding kinds that apply to this row, deduplicated, sorted. */
  badges: string[];
  /** Rows sharing a candidate group get 1-based case numbers. */
  caseNumber: number | null;
}

export interface GridModel {
  labels: string[];
  rows: GridRow[];
  /** Candidate group name -> indices into rows, in table order. */
  groups: Map<string, number[]>;
}

function rowFindings(row: RowJson, findings: FindingJson[]): string[] {
  const kinds = new Set<string>();
  for (const finding of findings) {
    if (finding.doc === row.doc && row.sentences.includes(finding.sentence)) {
      kinds.add(finding.kind);
    }
  }
  return [...kinds].sort();
}

export function buildGrid(
  labels: string[], tableRows: RowJson[], findings: FindingJson[],
): GridModel {
  const groups = new Map<string, number[]>();
  const rows = tableRows.map((row, index) => {
    let caseNumber: number | null = null;
    if (row.group !== null) {
      const members = groups.get(row.group) ?? [];
      members.push(index);
      groups.set(row.group, members);
      caseNumber = members.length;
    }
    return { row, badges: rowFindings(row, findings), caseNumber };
  });
  return { labels, rows, groups };
}

export interface CellComparison {
  label: string;
  /** One text per rival reading, in case order; null for empty cells. */
  texts: (string | null)[];
  differs: boolean;
}

/** Side-by-side comparison of a candidate group's rows, marking the
 * cells where the readings disagree. */
export function compareCandidates(
  labels: string[], rivals: RowJson[],
): CellComparison[] {
  return labels.map((label) => {
    const texts = rivals.map((row) => row.cells[label] ?? null);
    const differs = new Set(texts).size > 1;
    return { label, texts, differs };
  });
}

/** Union of several row query results, preserving first-seen order.
 * Each element still came verbatim from one service response. */
export function unionRows(lists: RowJson[][]): RowJson[] {
  const seen = new Set<string>();
  const out: RowJson[] = [];
  for (const list of lists) {
    for (const row of list) {
      const key = JSON.stringify(row);
      if (!seen.has(key)) {
        seen.add(key);
        out.push(row);
      }
    }
  }
  return out;
}
