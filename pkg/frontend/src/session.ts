/** Explorer view state: the single source of truth is the server.
 *
 * Every click re-renders from the returned payload (no optimistic
 * updates, no cross-session caching); replay tears down to a fresh
 * session and reapplies the word letter by letter, which is the designed
 * recovery path and guarantees determinism.
 */

import type { ExplorerApi } from "./api";
import type {
  BoundsResponse,
  EmbeddingJson,
  MutationVertex,
  PolygonResponse,
} from "./types";

export interface ViewState {
  sessionId: string;
  payload: PolygonResponse;
  word: string;
  embeddings: EmbeddingJson[];
  bounds: BoundsResponse | null;
  precision: number;
}

export function expandWord(word: string): MutationVertex[] {
  const out: MutationVertex[] = [];
  const re = /([xyv])\^?(\d*)/gy;
  let pos = 0;
  let m: RegExpExecArray | null;
  while ((m = re.exec(word)) !== null) {
    if (m.index !== pos) {
      throw new Error(`cannot parse word ${JSON.stringify(word)} at ${pos}`);
    }
    const count = m[2] === "" || m[2] === undefined ? 1 : Number.parseInt(m[2], 10);
    for (let i = 0; i < count; i += 1) {
      out.push(m[1] as MutationVertex);
    }
    pos = re.lastIndex;
  }
  if (pos !== word.length) {
    throw new Error(`cannot parse word ${JSON.stringify(word)} at ${pos}`);
  }
  return out;
}

export class ExplorerSession {
  private state: ViewState | null = null;

  constructor(
    private readonly api: ExplorerApi,
    private readonly preset: string = "main",
  ) {}

  get view(): ViewState {
    if (this.state === null) {
      throw new Error("session not started");
    }
    return this.state;
  }

  async start(): Promise<ViewState> {
    const res = await this.api.createSession(this.preset);
    this.state = {
      sessionId: res.id,
      payload: { polygon: res.polygon, display: res.display },
      word: res.polygon.word,
      embeddings: [],
      bounds: null,
      precision: 10,
    };
    return this.state;
  }

  /** Mutate at a clicked vertex; state is whatever the server returns. */
  async clickMutate(vertex: MutationVertex): Promise<ViewState> {
    const s = this.view;
    const res = await this.api.mutate(s.sessionId, vertex);
    s.payload = { polygon: res.polygon, display: res.display };
    s.word = res.polygon.word;
    if (res.embedding !== null) {
      s.embeddings = [...s.embeddings, res.embedding];
    }
    return s;
  }

  /** Pop one snapshot server-side; the marker trail drops with it. */
  async undo(): Promise<ViewState> {
    const s = this.view;
    const res = await this.api.undo(s.sessionId);
    s.payload = res;
    s.word = res.polygon.word;
    if (s.embeddings.length > 0) {
      s.embeddings = s.embeddings.slice(0, -1);
    }
    return s;
  }

  /** Reset to a fresh session and apply the word from scratch. */
  async replay(word: string): Promise<ViewState> {
    const letters = expandWord(word);
    await this.start();
    for (const letter of letters) {
      await this.clickMutate(letter);
    }
    return this.view;
  }

  async refreshBounds(params: { kmax?: number; lo?: string; hi?: string; samples?: number } = {}): Promise<ViewState> {
    const s = this.view;
    s.bounds = await this.api.getBounds(s.sessionId, params);
    return s;
  }

  setPrecision(digits: number): ViewState {
    const s = this.view;
    s.precision = Math.max(1, Math.floor(digits));
    return s;
  }
}
