/**
 * Typed client for the lcsx JSON API. The UI renders only what these
 * endpoints return; it never computes ranking, counts, or tree paths itself.
 */

export interface ChildEntry {
  id: number;
  heading: string;
  direct_count: number;
  subtree_count: number;
  has_children: boolean;
  copy_count: number;
}

export interface ChildrenResponse {
  path: number[];
  children: ChildEntry[];
}

export interface TopicRef {
  id: number;
  heading: string;
}

export interface ResultEntry {
  id: string;
  score: number;
  title: string;
  year: number | null;
  series: string | null;
  topics: TopicRef[];
}

export interface PromisingEntry {
  topic: number;
  heading: string;
  support: number;
  path: number[];
}

export interface SearchResponse {
  total: number;
  results: ResultEntry[];
  promising: PromisingEntry[];
}

export interface SearchRequest {
  query?: string;
  topic?: number;
  descendants?: boolean;
  limit?: number;
  offset?: number;
  last_selected?: number[];
}

export interface LocateResponse {
  topic: number;
  heading: string;
  path: number[];
  copy_count: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export const pathKey = (path: number[]): string => path.join(",");

export class LcsxApi {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      let code = "BAD_REQUEST";
      let message = response.statusText;
      try {
        const body = (await response.json()) as { code?: string; message?: string };
        code = body.code ?? code;
        message = body.message ?? message;
      } catch {
        // non-JSON error body: keep defaults
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  children(path: number[]): Promise<ChildrenResponse> {
    return this.request(`/api/tree/children?path=${encodeURIComponent(pathKey(path))}`);
  }

  search(body: SearchRequest): Promise<SearchResponse> {
    return this.request("/api/search", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  locate(topic: number, anchor: number[] | null): Promise<LocateResponse> {
    const anchorParam = anchor && anchor.length ? `&anchor=${encodeURIComponent(pathKey(anchor))}` : "";
    return this.request(`/api/locate?topic=${topic}${anchorParam}`);
  }
}
