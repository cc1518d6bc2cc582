/** Scenario tree panel: decision history as an indented node list. */
import type { ScenarioInfo } from "./types.js";

export interface TreeRow {
  id: string;
  depth: number;
  label: string;
}

function describe(info: ScenarioInfo): string {
  const actions = info.actions
    .map((a) => `${a.kind.replace(/_/g, " ")}@${a.start_day}`)
    .join(", ");
  const prefix = info.parent_id ? `branch day ${info.branch_day}` : "root";
  return actions ? `${prefix}: ${actions}` : `${prefix}: no measures`;
}

/** Depth-first rows, parents before children, stable in insertion order. */
export function treeRows(scenarios: ScenarioInfo[]): TreeRow[] {
  const children = new Map<string | null, ScenarioInfo[]>();
  for (const info of scenarios) {
    const key = info.parent_id ?? null;
    if (!children.has(key)) children.set(key, []);
    children.get(key)!.push(info);
  }
  const rows: TreeRow[] = [];
  const walk = (parent: string | null, depth: number) => {
    for (const info of children.get(parent) ?? []) {
      rows.push({ id: info.id, depth, label: describe(info) });
      walk(info.id, depth + 1);
    }
  };
  walk(null, 0);
  return rows;
}

export class ScenarioTree {
  constructor(
    private root: HTMLElement,
    private onActivate: (id: string) => void,
  ) {}

  render(scenarios: ScenarioInfo[], activeId: string | null): void {
    this.root.replaceChildren(...treeRows(scenarios).map((row) => {
      const node = document.createElement("button");
      node.className = "tree-node" + (row.id === activeId ? " active" : "");
      node.style.marginLeft = `${row.depth * 14}px`;
      node.textContent = `${row.id.slice(0, 6)} · ${row.label}`;
      node.addEventListener("click", () => this.onActivate(row.id));
      return node;
    }));
  }
}
