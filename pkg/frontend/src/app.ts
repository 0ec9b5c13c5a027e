/**
 * Wires the two panels together: searches mark promising branches in the
 * tree, tree selections filter the result list, result topic links reveal
 * the nearest copy in the tree. Overlapping responses resolve last-write-wins
 * per panel via sequence numbers; state deep-links through URL params.
 */

import { ApiError, LcsxApi, SearchRequest, SearchResponse } from "./api.js";
import { ResultsView } from "./results.js";
import { UiSession } from "./session.js";
import { TreeView } from "./tree.js";

export interface AppElements {
  tree: HTMLElement;
  results: HTMLElement;
  queryInput: HTMLInputElement;
  searchButton: HTMLElement;
  descendantsToggle: HTMLInputElement;
  toast: HTMLElement;
}

export class App {
  readonly session = new UiSession();
  readonly tree: TreeView;
  readonly results: ResultsView;
  private searchSeq = 0;

  constructor(
    private readonly elements: AppElements,
    private readonly api: LcsxApi,
    private readonly syncUrl: boolean = true,
  ) {
    this.tree = new TreeView(elements.tree, api, this.session, {
      onSelect: (path) => void this.selectNode(path),
    });
    this.results = new ResultsView(elements.results, {
      onTopicClick: (topicId) => void this.openTopicLink(topicId),
    });
    elements.searchButton.addEventListener("click", () => void this.runSearch());
    elements.queryInput.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") {
        void this.runSearch();
      }
    });
    elements.descendantsToggle.addEventListener("change", () => {
      this.session.descendants = elements.descendantsToggle.checked;
      if (this.session.topicFilter !== null) {
        void this.refreshResults();
      }
    });
  }

  async start(): Promise<void> {
    await this.tree.init();
    if (this.syncUrl) {
      const params = new URLSearchParams(window.location.search);
      const query = params.get("q");
      if (query) {
        this.elements.queryInput.value = query;
        this.session.query = query;
      }
      const rawPath = params.get("path");
      if (rawPath) {
        const path = rawPath.split(",").map(Number);
        if (path.length > 1 && path[0] === 0 && path.every((t) => Number.isInteger(t))) {
          await this.tree.revealPath(path);
          await this.selectNode(path);
          return;
        }
      }
      if (query) {
        await this.runSearch();
      }
    }
  }

  /** Keyword search; combines with the active topic filter when one is set. */
  async runSearch(): Promise<void> {
    const query = this.elements.queryInput.value.trim();
    if (!query && this.session.topicFilter === null) {
      this.results.showValidation("Type search terms or select a topic first.");
      return;
    }
    this.session.query = query;
    await this.refreshResults();
  }

  private searchBody(): SearchRequest {
    const body: SearchRequest = { limit: 100 };
    if (this.session.query) {
      body.query = this.session.query;
    }
    if (this.session.topicFilter !== null) {
      body.topic = this.session.topicFilter;
      body.descendants = this.session.descendants;
    }
    if (this.session.lastSelected) {
      body.last_selected = this.session.lastSelected;
    }
    return body;
  }

  private async refreshResults(): Promise<void> {
    const seq = ++this.searchSeq;
    let response: SearchResponse;
    try {
      response = await this.api.search(this.searchBody());
    } catch (error) {
      if (seq === this.searchSeq) {
        this.results.showError(error instanceof ApiError ? error.message : "Search failed.");
      }
      return;
    }
    if (seq !== this.searchSeq) {
      return; // a newer request already resolved: discard stale response
    }
    this.results.render(response);
    await this.tree.markPromising(response.promising.map((p) => p.path));
    this.updateUrl();
  }

  /** Tree selection: filter the results and mark the topic visited. */
  async selectNode(path: number[]): Promise<void> {
    if (path.length <= 1) {
      this.session.clearSelection();
      this.tree.setSelected(null);
      this.updateUrl();
      if (this.session.query) {
        await this.refreshResults();
      }
      return;
    }
    this.session.select(path);
    this.tree.setSelected(path);
    await this.refreshResults();
  }

  /** Result hyperlink: reveal the nearest copy; no filter/visited change. */
  async openTopicLink(topicId: number): Promise<void> {
    try {
      const located = await this.api.locate(topicId, this.session.lastSelected);
      await this.tree.revealPath(located.path);
    } catch (error) {
      this.showToast(
        error instanceof ApiError && error.code === "NOT_FOUND"
          ? `Topic ${topicId} is not in the tree.`
          : "Could not locate topic.",
      );
    }
  }

  private showToast(message: string): void {
    this.elements.toast.textContent = message;
    this.elements.toast.classList.add("visible");
  }

  private updateUrl(): void {
    if (!this.syncUrl) {
      return;
    }
    const params = new URLSearchParams();
    if (this.session.query) {
      params.set("q", this.session.query);
    }
    if (this.session.lastSelected) {
      params.set("path", this.session.lastSelected.join(","));
    }
    const suffix = params.toString();
    window.history.replaceState(null, "", suffix ? `?${suffix}` : window.location.pathname);
  }
}
