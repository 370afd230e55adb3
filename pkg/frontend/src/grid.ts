/** DOM builders for the workbench grid and its side panels. */

import type { FindingJson } from "./types.js";
import type { CellComparison, GridModel, GridRow } from "./viewmodel.js";
import { CATEGORY_COLORS } from "./viewmodel.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function badgeSpan(kind: string): HTMLSpanElement {
  const span = el("span", `badge badge-${kind.toLowerCase()}`, kind);
  span.dataset["kind"] = kind;
  return span;
}

function cellTd(text: string | null): HTMLTableCellElement {
  const td = el("td", text === null ? "cell cell-null" : "cell");
  td.textContent = text ?? "∅";
  return td;
}

export function renderGrid(model: GridModel): HTMLTableElement {
  const table = el("table", "grid");
  const thead = el("thead");
  const head = el("tr");
  thead.appendChild(head);
  table.appendChild(thead);
  for (const label of model.labels) {
    const th = el("th", "col-head", label);
    th.style.backgroundColor = CATEGORY_COLORS[label] ?? "#dddddd";
    head.appendChild(th);
  }
  head.appendChild(el("th", "col-head col-head-plain", "STATUS"));

  const body = el("tbody");
  table.appendChild(body);
  for (const gridRow of model.rows) {
    body.appendChild(renderRow(model.labels, gridRow));
  }
  return table;
}

function renderRow(labels: string[], gridRow: GridRow): HTMLTableRowElement {
  const tr = el("tr", gridRow.row.group === null ? "row" : "row row-candidate");
  tr.dataset["doc"] = gridRow.row.doc;
  if (gridRow.row.group !== null) {
    tr.dataset["group"] = gridRow.row.group;
  }
  for (const label of labels) {
    tr.appendChild(cellTd(gridRow.row.cells[label] ?? null));
  }
  const status = el("td", "cell cell-status");
  if (gridRow.caseNumber !== null) {
    status.appendChild(
      el("span", "case-label", `case ${gridRow.caseNumber}`));
  }
  for (const kind of gridRow.badges) {
    status.appendChild(badgeSpan(kind));
  }
  tr.appendChild(status);
  return tr;
}

/** Side-by-side rival readings with differing cells highlighted. */
export function renderComparison(
  group: string, comparison: CellComparison[], onChoose: (choice: number) => void,
): HTMLElement {
  const panel = el("div", "compare");
  panel.dataset["group"] = group;
  panel.appendChild(el("h3", "compare-title", `Rival readings: ${group}`));

  const cases = comparison[0]?.texts.length ?? 0;
  const table = el("table", "compare-grid");
  const thead = el("thead");
  const head = el("tr");
  thead.appendChild(head);
  table.appendChild(thead);
  head.appendChild(el("th", "col-head", ""));
  for (let i = 0; i < cases; i++) {
    head.appendChild(el("th", "col-head", `Case ${i + 1}`));
  }
  const body = el("tbody");
  table.appendChild(body);
  for (const cell of comparison) {
    const tr = el("tr");
    body.appendChild(tr);
    const th = el("th", "compare-label", cell.label);
    th.style.backgroundColor = CATEGORY_COLORS[cell.label] ?? "#dddddd";
    tr.appendChild(th);
    for (const text of cell.texts) {
      const td = cellTd(text);
      if (cell.differs) td.classList.add("cell-differs");
      tr.appendChild(td);
    }
  }
  panel.appendChild(table);

  const buttons = el("div", "compare-buttons");
  for (let i = 0; i < cases; i++) {
    const button = el("button", "choose", `Keep case ${i + 1}`);
    button.dataset["choice"] = String(i);
    button.addEventListener("click", () => onChoose(i));
    buttons.appendChild(button);
  }
  panel.appendChild(buttons);
  return panel;
}

export function renderFindings(findings: FindingJson[]): HTMLElement {
  const list = el("ul", "findings");
  if (findings.length === 0) {
    list.appendChild(el("li", "finding finding-none", "no findings"));
    return list;
  }
  for (const finding of findings) {
    const item = el("li", "finding");
    item.appendChild(badgeSpan(finding.kind));
    const where = finding.column
      ? `${finding.doc}:s${finding.sentence}:${finding.column}`
      : `${finding.doc}:s${finding.sentence}`;
    item.appendChild(el("span", "finding-where", where));
    item.appendChild(el("span", "finding-detail", finding.detail));
    if (finding.suggestions.length > 0) {
      item.appendChild(el(
        "span", "finding-suggestions",
        `try: ${finding.suggestions.join(", ")}`));
    }
    list.appendChild(item);
  }
  return list;
}
