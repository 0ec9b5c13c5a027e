/**
 * Ranked-results panel: "X out of Y results" header, one entry per record
 * with its assigned topics as hyperlinks into the tree.
 */

import { SearchResponse } from "./api.js";

export interface ResultsCallbacks {
  onTopicClick(topicId: number): void;
}

export class ResultsView {
  constructor(
    private readonly container: HTMLElement,
    private readonly callbacks: ResultsCallbacks,
  ) {}

  render(response: SearchResponse): void {
    this.container.textContent = "";
    const header = document.createElement("div");
    header.className = "results-header";
    header.textContent = `${response.results.length} out of ${response.total} results.`;
    this.container.appendChild(header);

    for (const result of response.results) {
      const entry = document.createElement("div");
      entry.className = "result";
      entry.dataset.recordId = result.id;

      const title = document.createElement("div");
      title.className = "result-title";
      title.textContent = result.year !== null ? `${result.title}, ${result.year}` : result.title;
      entry.appendChild(title);

      if (result.series) {
        const series = document.createElement("div");
        series.className = "result-series";
        series.textContent = `Series: ${result.series}`;
        entry.appendChild(series);
      }

      const topics = document.createElement("div");
      topics.className = "result-topics";
      for (const topic of result.topics) {
        const link = document.createElement("a");
        link.className = "topic-link";
        link.href = "#";
        link.dataset.topicId = String(topic.id);
        link.textContent = topic.heading;
        link.addEventListener("click", (event) => {
          event.preventDefault();
          this.callbacks.onTopicClick(topic.id);
        });
        topics.appendChild(link);
        topics.appendChild(document.createTextNode(" "));
      }
      entry.appendChild(topics);
      this.container.appendChild(entry);
    }
  }

  /** Validation message for an empty query; replaces the panel content. */
  showValidation(message: string): void {
    this.container.textContent = "";
    const note = document.createElement("div");
    note.className = "results-validation";
    note.textContent = message;
    this.container.appendChild(note);
  }

  /** API failure: keep whatever is shown, banner on top. */
  showError(message: string): void {
    this.clearError();
    const banner = document.createElement("div");
    banner.className = "results-error";
    banner.textContent = message;
    this.container.prepend(banner);
  }

  clearError(): void {
    this.container.querySelector(".results-error")?.remove();
  }
}
