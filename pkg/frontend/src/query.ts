/** Serializing grid controls into the service's query grammar.
 *
 * A filter expression is "COLUMN OP" or "COLUMN OP VALUE"; the service
 * parses and validates it, so this module only formats. Invalid input
 * comes back as a bad_query envelope and is shown at the control.
 */

export type FilterOp = "equals" | "contains" | "null" | "not-null";

export interface FilterControl {
  column: string;
  op: FilterOp;
  value: string;
}

export interface RowsQuery {
  filters?: FilterControl[];
  sort?: string;
  reverse?: boolean;
}

export function filterExpression(control: FilterControl): string {
  const needsValue = control.op === "equals" || control.op === "contains";
  if (!needsValue) {
    return `${control.column} ${control.op}`;
  }
  return `${control.column} ${control.op} ${control.value}`;
}

export function rowsQueryParams(query: RowsQuery): URLSearchParams {
  const params = new URLSearchParams();
  for (const control of query.filters ?? []) {
    params.append("filter", filterExpression(control));
  }
  if (query.sort !== undefined) {
    params.set("sort", query.sort);
    if (query.reverse) {
      params.set("reverse", "true");
    }
  }
  return params;
}
