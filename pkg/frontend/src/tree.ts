/**
 * Outline tree view over the children endpoint.
 *
 * Expansion is lazy and cached: the children of a path are fetched only on
 * its first expansion, so the number of children requests equals the number
 * of distinct paths ever expanded. Copies of one topic under different
 * parents are distinct rows (distinct paths) sharing a topic id, which is
 * how visited coloring hits every rendered copy at once.
 */

import { ChildEntry, LcsxApi, pathKey } from "./api.js";
import { UiSession } from "./session.js";

const ROOT_PATH = [0];
const ROOT_LABEL = "All Collection Subjects";

export interface TreeCallbacks {
  onSelect(path: number[]): void;
}

export class TreeView {
  private readonly cache = new Map<string, ChildEntry[]>();
  private readonly expanded = new Set<string>();
  private readonly failed = new Set<string>();
  private promisingPaths = new Set<string>();
  private selectedKey: string | null = null;
  private revealedKey: string | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: LcsxApi,
    private readonly session: UiSession,
    private readonly callbacks: TreeCallbacks,
  ) {}

  async init(): Promise<void> {
    await this.expand(ROOT_PATH);
  }

  isExpanded(path: number[]): boolean {
    return this.expanded.has(pathKey(path));
  }

  async expand(path: number[]): Promise<void> {
    const ok = await this.ensureChildren(path);
    if (ok) {
      this.expanded.add(pathKey(path));
    }
    this.render();
  }

  collapse(path: number[]): void {
    this.expanded.delete(pathKey(path));
    this.render();
  }

  setSelected(path: number[] | null): void {
    this.selectedKey = path ? pathKey(path) : null;
    this.render();
  }

  /** Mark exactly these paths as promising, expanding their ancestors. */
  async markPromising(paths: number[][]): Promise<void> {
    this.promisingPaths = new Set(paths.map(pathKey));
    for (const path of paths) {
      await this.expandAncestors(path);
    }
    this.render();
  }

  /** Expand down to a path and scroll it into view; selection is untouched. */
  async revealPath(path: number[]): Promise<void> {
    await this.expandAncestors(path);
    this.revealedKey = pathKey(path);
    this.render();
    const row = this.rowElement(this.revealedKey);
    row?.scrollIntoView?.({ block: "nearest" });
  }

  rowElement(key: string): HTMLElement | null {
    return this.container.querySelector(`[data-path="${key}"]`);
  }

  private async expandAncestors(path: number[]): Promise<void> {
    for (let depth = 1; depth < path.length; depth++) {
      const prefix = path.slice(0, depth);
      const ok = await this.ensureChildren(prefix);
      if (!ok) {
        return;
      }
      this.expanded.add(pathKey(prefix));
    }
  }

  private async ensureChildren(path: number[]): Promise<boolean> {
    const key = pathKey(path);
    if (this.cache.has(key)) {
      return true;
    }
    try {
      const response = await this.api.children(path);
      this.cache.set(key, response.children);
      this.failed.delete(key);
      return true;
    } catch {
      this.failed.add(key);
      return false;
    }
  }

  render(): void {
    this.container.textContent = "";
    this.renderRow(ROOT_PATH, null, 0);
  }

  private renderRow(path: number[], entry: ChildEntry | null, depth: number): void {
    const key = pathKey(path);
    const topic = path[path.length - 1]!;
    const row = document.createElement("div");
    row.className = "tree-row";
    row.dataset.path = key;
    row.dataset.topic = String(topic);
    row.style.paddingLeft = `${depth * 16}px`;
    row.classList.toggle("visited", this.session.visited.has(topic));
    row.classList.toggle("selected", this.selectedKey === key);
    row.classList.toggle("promising", this.promisingPaths.has(key));
    row.classList.toggle("revealed", this.revealedKey === key);

    const hasChildren = entry === null || entry.has_children;
    if (hasChildren) {
      const twisty = document.createElement("button");
      twisty.className = "twisty";
      twisty.type = "button";
      const open = this.expanded.has(key);
      twisty.textContent = open ? "▾" : "▸";
      twisty.setAttribute("aria-expanded", String(open));
      twisty.addEventListener("click", () => {
        if (this.expanded.has(key)) {
          this.collapse(path);
        } else {
          void this.expand(path);
        }
      });
      row.appendChild(twisty);
    } else {
      const spacer = document.createElement("span");
      spacer.className = "twisty-spacer";
      row.appendChild(spacer);
    }

    if (this.promisingPaths.has(key)) {
      const arrow = document.createElement("span");
      arrow.className = "promising-arrow";
      arrow.textContent = "➔";
      arrow.title = "promising branch for the current search";
      row.appendChild(arrow);
    }

    const label = document.createElement("a");
    label.className = "tree-label";
    label.href = "#";
    label.textContent = entry ? entry.heading : ROOT_LABEL;
    label.addEventListener("click", (event) => {
      event.preventDefault();
      this.callbacks.onSelect(path);
    });
    row.appendChild(label);

    if (entry) {
      const count = document.createElement("span");
      count.className = "badge badge-count";
      count.textContent = String(entry.subtree_count);
      count.title = "records under this topic";
      row.appendChild(count);
      if (entry.copy_count >= 2) {
        const copies = document.createElement("span");
        copies.className = "badge badge-copies";
        copies.textContent = `×${entry.copy_count}`;
        copies.title = "this topic has copies elsewhere in the tree";
        row.appendChild(copies);
      }
    }

    this.container.appendChild(row);

    if (this.failed.has(key)) {
      const retry = document.createElement("div");
      retry.className = "tree-retry";
      retry.style.paddingLeft = `${(depth + 1) * 16}px`;
      const button = document.createElement("button");
      button.type = "button";
      button.textContent = "Couldn't load children (retry)";
      button.addEventListener("click", () => void this.expand(path));
      retry.appendChild(button);
      this.container.appendChild(retry);
      return;
    }

    if (this.expanded.has(key)) {
      for (const child of this.cache.get(key) ?? []) {
        this.renderRow([...path, child.id], child, depth + 1);
      }
    }
  }
}
