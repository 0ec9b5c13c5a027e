import { LcsxApi } from "./api.js";
import { App, AppElements } from "./app.js";

function required<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing #${id}`);
  }
  return el as T;
}

const baseUrl =
  document.querySelector<HTMLMetaElement>('meta[name="lcsx-api-base"]')?.content ?? "";

const elements: AppElements = {
  tree: required("tree"),
  results: required("results"),
  queryInput: required<HTMLInputElement>("query"),
  searchButton: required("search-button"),
  descendantsToggle: required<HTMLInputElement>("descendants"),
  toast: required("toast"),
};

const app = new App(elements, new LcsxApi(baseUrl));
void app.start();
