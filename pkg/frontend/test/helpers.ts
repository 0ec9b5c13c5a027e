import { LcsxApi } from "../src/api.js";
import { App, AppElements } from "../src/app.js";
import { installMockApi, MockState, uiGolden } from "./mockApi.js";

export interface Harness {
  app: App;
  elements: AppElements;
  mock: MockState;
}

export function topicId(heading: string): number {
  const rootChildren = (uiGolden.children["0"] as { children: { id: number; heading: string }[] })
    .children;
  const direct = rootChildren.find((c) => c.heading === heading);
  if (direct) {
    return direct.id;
  }
  for (const payload of Object.values(uiGolden.children)) {
    const hit = (payload as { children: { id: number; heading: string }[] }).children.find(
      (c) => c.heading === heading,
    );
    if (hit) {
      return hit.id;
    }
  }
  throw new Error(`no fixture topic ${heading}`);
}

export async function mountApp(options: { syncUrl?: boolean } = {}): Promise<Harness> {
  const mock = installMockApi();
  document.body.innerHTML = `
    <input id="query" type="text">
    <button id="search-button" type="button">Search</button>
    <input id="descendants" type="checkbox">
    <nav id="tree"></nav>
    <section id="results"></section>
    <div id="toast"></div>
  `;
  const elements: AppElements = {
    tree: document.getElementById("tree")!,
    results: document.getElementById("results")!,
    queryInput: document.getElementById("query") as HTMLInputElement,
    searchButton: document.getElementById("search-button")!,
    descendantsToggle: document.getElementById("descendants") as HTMLInputElement,
    toast: document.getElementById("toast")!,
  };
  const app = new App(elements, new LcsxApi(""), options.syncUrl ?? false);
  await app.start();
  return { app, elements, mock };
}

export function rows(selector = ".tree-row"): HTMLElement[] {
  return Array.from(document.querySelectorAll(selector));
}

export function rowByPath(key: string): HTMLElement | null {
  return document.querySelector(`.tree-row[data-path="${key}"]`);
}

export function clickLabel(key: string): void {
  const row = rowByPath(key);
  if (!row) {
    throw new Error(`no rendered row for path ${key}`);
  }
  (row.querySelector(".tree-label") as HTMLElement).click();
}

export async function flush(): Promise<void> {
  for (let i = 0; i < 10; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
