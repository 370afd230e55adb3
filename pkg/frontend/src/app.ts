/** Workbench application: paste, resolve, explore.
 *
 * Every grid update awaits a service response first; resolution is never
 * applied optimistically. The revision from the last server echo rides
 * along on every mutation so concurrent edits surface as conflicts
 * instead of lost updates.
 */

import { ApiClient, ApiError } from "./api.js";
import type { FilterControl, FilterOp } from "./query.js";
import type { FindingJson, RowJson } from "./types.js";
import { renderComparison, renderFindings, renderGrid } from "./grid.js";
import { buildGrid, compareCandidates, unionRows } from "./viewmodel.js";

interface ViewState {
  tableId: string | null;
  revision: number;
  labels: string[];
  rows: RowJson[];
  findings: FindingJson[];
  descriptions: Map<string, string>;
  filters: FilterControl[];
  selectedGroup: string | null;
  /** Table ids uploaded this session, for concatenation. */
  uploaded: string[];
}

const FILTER_OPS: FilterOp[] = ["contains", "equals", "null", "not-null"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function option(value: string): HTMLOptionElement {
  const node = document.createElement("option");
  node.value = value;
  node.textContent = value;
  return node;
}

export class App {
  private readonly state: ViewState = {
    tableId: null,
    revision: 0,
    labels: [],
    rows: [],
    findings: [],
    descriptions: new Map(),
    filters: [],
    selectedGroup: null,
    uploaded: [],
  };

  private readonly paste: HTMLTextAreaElement;
  private readonly banner: HTMLElement;
  private readonly statusLine: HTMLElement;
  private readonly gridRegion: HTMLElement;
  private readonly compareRegion: HTMLElement;
  private readonly findingsRegion: HTMLElement;
  private readonly filterChips: HTMLElement;
  private readonly filterColumn: HTMLSelectElement;
  private readonly filterOp: HTMLSelectElement;
  private readonly filterValue: HTMLInputElement;
  private readonly roleInput: HTMLInputElement;
  private readonly searchInput: HTMLInputElement;
  private readonly sortSelect: HTMLSelectElement;
  private readonly sortReverse: HTMLInputElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {
    this.paste = el("textarea", "paste");
    this.paste.id = "paste";
    this.paste.placeholder = "Paste instructional text";

    const translate = el("button", "action", "Translate");
    translate.id = "translate";
    translate.addEventListener("click", () => void this.translate());

    const concatAll = el("button", "action", "Concatenate uploads");
    concatAll.id = "concat-all";
    concatAll.addEventListener("click", () => void this.concatUploads());

    this.banner = el("div", "banner banner-hidden");
    this.banner.id = "banner";
    this.statusLine = el("div", "status-line");
    this.statusLine.id = "status-line";

    this.filterColumn = el("select", "filter-column");
    this.filterOp = el("select", "filter-op");
    for (const op of FILTER_OPS) {
      this.filterOp.appendChild(option(op));
    }
    this.filterValue = el("input", "filter-value");
    this.filterValue.placeholder = "value";
    const addFilter = el("button", "action", "Add filter");
    addFilter.id = "add-filter";
    addFilter.addEventListener("click", () => void this.addFilter());
    const clearFilters = el("button", "action", "Clear filters");
    clearFilters.id = "clear-filters";
    clearFilters.addEventListener("click", () => void this.clearFilters());
    this.filterChips = el("div", "filter-chips");
    this.filterChips.id = "filter-chips";

    this.roleInput = el("input", "role-input");
    this.roleInput.id = "role-input";
    this.roleInput.placeholder = "roles, comma separated";
    const applyRoles = el("button", "action", "Filter roles");
    applyRoles.id = "apply-roles";
    applyRoles.addEventListener("click", () => void this.applyRoles());

    this.searchInput = el("input", "search-input");
    this.searchInput.id = "search-input";
    this.searchInput.placeholder = "search cells";
    const applySearch = el("button", "action", "Search");
    applySearch.id = "apply-search";
    applySearch.addEventListener("click", () => void this.applySearch());

    this.sortSelect = el("select", "sort-select");
    this.sortSelect.id = "sort-select";
    this.sortReverse = el("input", "sort-reverse");
    this.sortReverse.type = "checkbox";
    this.sortReverse.id = "sort-reverse";
    const applySort = el("button", "action", "Sort");
    applySort.id = "apply-sort";
    applySort.addEventListener("click", () => void this.applySort());

    this.gridRegion = el("div", "grid-region");
    this.gridRegion.id = "grid-region";
    this.compareRegion = el("div", "compare-region");
    this.compareRegion.id = "compare-region";
    this.findingsRegion = el("div", "findings-region");
    this.findingsRegion.id = "findings-region";

    const controls = el("div", "controls");
    controls.append(
      this.filterColumn, this.filterOp, this.filterValue, addFilter,
      clearFilters, this.filterChips, this.roleInput, applyRoles,
      this.searchInput, applySearch, this.sortSelect, this.sortReverse,
      applySort);

    root.append(
      this.paste, translate, concatAll, this.banner, this.statusLine,
      controls, this.gridRegion, this.compareRegion, this.findingsRegion);
  }

  // ------------------------------------------------------------ errors

  private showError(message: string): void {
    this.banner.textContent = message;
    this.banner.className = "banner banner-error";
  }

  private showConflict(message: string): void {
    this.banner.textContent = `${message} Reload to continue.`;
    this.banner.className = "banner banner-conflict";
    const reload = el("button", "action", "Reload table");
    reload.id = "reload-table";
    reload.addEventListener("click", () => void this.reloadTable());
    this.banner.appendChild(reload);
  }

  private clearBanner(): void {
    this.banner.textContent = "";
    this.banner.className = "banner banner-hidden";
  }

  private async guard(work: () => Promise<void>): Promise<void> {
    try {
      this.clearBanner();
      await work();
    } catch (error) {
      if (error instanceof ApiError) {
        if (error.status === 409) {
          this.showConflict(error.message);
        } else {
          this.showError(`${error.code}: ${error.message}`);
        }
        return;
      }
      throw error;
    }
  }

  // ------------------------------------------------------------ actions

  async translate(): Promise<void> {
    const text = this.paste.value.trim();
    if (text === "") {
      this.showError("enter some text to translate");
      return;
    }
    await this.guard(async () => {
      const docId = `doc${this.state.uploaded.length + 1}`;
      const response = await this.client.uploadDocument(text, { docId });
      this.state.tableId = response.table_id;
      this.state.revision = response.revision;
      this.state.labels = response.table.schema.map((col) => col.label);
      this.state.rows = response.table.rows;
      this.state.descriptions = new Map(
        response.candidates.map((c) => [c.group, c.description]));
      this.state.uploaded.push(response.table_id);
      this.state.filters = [];
      this.state.selectedGroup = null;
      await this.refreshFindings();
      this.redraw();
    });
  }

  async concatUploads(): Promise<void> {
    await this.guard(async () => {
      const response = await this.client.concat(this.state.uploaded);
      this.state.tableId = response.table_id;
      this.state.revision = response.revision;
      this.state.labels = response.table.schema.map((col) => col.label);
      this.state.rows = response.table.rows;
      this.state.filters = [];
      this.state.selectedGroup = null;
      await this.refreshFindings();
      this.redraw();
    });
  }

  async resolve(group: string, choice: number): Promise<void> {
    if (this.state.tableId === null) return;
    const tableId = this.state.tableId;
    await this.guard(async () => {
      const response = await this.client.resolve(
        tableId, group, choice, this.state.revision);
      this.state.revision = response.revision;
      this.state.rows = response.table.rows;
      this.state.selectedGroup = null;
      await this.refreshFindings();
      this.redraw();
    });
  }

  async reloadTable(): Promise<void> {
    if (this.state.tableId === null) return;
    const tableId = this.state.tableId;
    await this.guard(async () => {
      const response = await this.client.getTable(tableId);
      this.state.revision = response.revision;
      this.state.rows = response.table.rows;
      this.state.selectedGroup = null;
      await this.refreshFindings();
      this.redraw();
    });
  }

  private async refreshFindings(): Promise<void> {
    if (this.state.tableId === null) return;
    const response = await this.client.getFindings(this.state.tableId);
    this.state.findings = response.findings;
  }

  // ------------------------------------------------------------ explore

  private async fetchFiltered(): Promise<void> {
    if (this.state.tableId === null) return;
    const response = await this.client.getRows(
      this.state.tableId, { filters: this.state.filters });
    this.state.rows = response.rows;
    this.redraw();
  }

  async addFilter(): Promise<void> {
    const control: FilterControl = {
      column: this.filterColumn.value,
      op: this.filterOp.value as FilterOp,
      value: this.filterValue.value,
    };
    await this.guard(async () => {
      this.state.filters.push(control);
      try {
        await this.fetchFiltered();
      } catch (error) {
        this.state.filters.pop();
        throw error;
      }
    });
  }

  async clearFilters(): Promise<void> {
    this.state.filters = [];
    await this.guard(() => this.fetchFiltered());
  }

  /** One query per role needle; the grid shows the union. Covers the
   * "which of these rows apply to me" reading across several roles. */
  async applyRoles(): Promise<void> {
    if (this.state.tableId === null) return;
    const tableId = this.state.tableId;
    const needles = this.roleInput.value
      .split(",")
      .map((needle) => needle.trim())
      .filter((needle) => needle !== "");
    if (needles.length === 0) {
      this.showError("enter at least one role");
      return;
    }
    await this.guard(async () => {
      const responses = await Promise.all(needles.map((needle) =>
        this.client.getRows(tableId, {
          filters: [
            { column: "TOPIC/ROLE", op: "contains", value: needle },
          ],
        })));
      this.state.rows = unionRows(responses.map((r) => r.rows));
      this.redraw();
    });
  }

  async applySearch(): Promise<void> {
    if (this.state.tableId === null) return;
    const tableId = this.state.tableId;
    await this.guard(async () => {
      const response = await this.client.searchRows(
        tableId, this.searchInput.value);
      const region = this.gridRegion;
      region.textContent = "";
      const list = el("ul", "search-hits");
      list.id = "search-hits";
      for (const hit of response.hits) {
        list.appendChild(el(
          "li", "search-hit", `row ${hit.row} ${hit.column}: ${hit.text}`));
      }
      region.appendChild(list);
    });
  }

  async applySort(): Promise<void> {
    if (this.state.tableId === null) return;
    const tableId = this.state.tableId;
    await this.guard(async () => {
      const response = await this.client.getRows(tableId, {
        filters: this.state.filters,
        sort: this.sortSelect.value,
        reverse: this.sortReverse.checked,
      });
      this.state.rows = response.rows;
      this.redraw();
    });
  }

  // ------------------------------------------------------------ drawing

  private redraw(): void {
    this.statusLine.textContent = this.state.tableId === null
      ? "no table loaded"
      : `table ${this.state.tableId} at revision ${this.state.revision}`;

    for (const select of [this.filterColumn, this.sortSelect]) {
      select.textContent = "";
      for (const label of this.state.labels) {
        select.appendChild(option(label));
      }
    }

    this.filterChips.textContent = "";
    for (const control of this.state.filters) {
      const chip = el(
        "span", "chip",
        `${control.column} ${control.op} ${control.value}`.trim());
      this.filterChips.appendChild(chip);
    }

    const model = buildGrid(
      this.state.labels, this.state.rows, this.state.findings);
    this.gridRegion.textContent = "";
    const grid = renderGrid(model);
    for (const tr of grid.querySelectorAll<HTMLTableRowElement>(
        "tr.row-candidate")) {
      tr.addEventListener("click", () => {
        this.state.selectedGroup = tr.dataset["group"] ?? null;
        this.redrawComparison();
      });
    }
    this.gridRegion.appendChild(grid);

    this.findingsRegion.textContent = "";
    this.findingsRegion.appendChild(renderFindings(this.state.findings));
    this.redrawComparison();
  }

  private redrawComparison(): void {
    this.compareRegion.textContent = "";
    const group = this.state.selectedGroup;
    if (group === null) return;
    const rivals = this.state.rows.filter((row) => row.group === group);
    if (rivals.length === 0) return;
    const comparison = compareCandidates(this.state.labels, rivals);
    const panel = renderComparison(
      group, comparison, (choice) => void this.resolve(group, choice));
    const description = this.state.descriptions.get(group);
    if (description !== undefined) {
      panel.insertBefore(
        el("p", "compare-description", description),
        panel.children[1] ?? null);
    }
    this.compareRegion.appendChild(panel);
  }
}

export function mount(root: HTMLElement, client: ApiClient): App {
  return new App(root, client);
}

declare global {
  interface Window {
    skysetWorkbench?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("workbench")) {
  const root = document.getElementById("workbench") as HTMLElement;
  const base = root.dataset["service"] ?? "http://127.0.0.1:8000";
  window.skysetWorkbench = mount(root, new ApiClient(base));
}
