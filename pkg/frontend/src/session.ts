/**
 * Browser-held interaction state. The service is stateless: whatever context
 * a request needs (anchor path, filter) is sent along each time. Visited
 * topics only ever grow within a session.
 */

export class UiSession {
  lastSelected: number[] | null = null;
  visited = new Set<number>();
  query = "";
  descendants = false;

  get topicFilter(): number | null {
    return this.lastSelected ? this.lastSelected[this.lastSelected.length - 1]! : null;
  }

  select(path: number[]): void {
    this.lastSelected = [...path];
    this.visited.add(path[path.length - 1]!);
  }

  clearSelection(): void {
    this.lastSelected = null;
  }
}
