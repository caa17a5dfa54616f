/** Replays recorded service exchanges (real payloads captured from the
 * session service; see fixtures/generate.py) through the client state
 * machine.  Determinism and bit-exactness are asserted on the JSON. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { ExplorerApi, type Transport } from "../src/api";
import { ExplorerSession, expandWord } from "../src/session";

interface RecordedEntry {
  method: string;
  path: string;
  body: unknown;
  response: unknown;
}

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8")) as T;
}

function replayTransport(flow: RecordedEntry[]): Transport {
  let i = 0;
  return async (method, path, body) => {
    const entry = flow[i];
    i += 1;
    if (!entry) {
      throw new Error(`unexpected request ${method} ${path}`);
    }
    expect(method).toBe(entry.method);
    expect(path).toBe(entry.path);
    expect(body ?? null).toEqual(entry.body ?? null);
    return { status: 200, json: structuredClone(entry.response) };
  };
}

const flowV2yx = fixture<RecordedEntry[]>("flow_v2yx.json");
const flowUndo = fixture<RecordedEntry[]>("flow_undo.json");
const flowI1 = fixture<RecordedEntry[]>("flow_i1.json");
const cliMutate = fixture<{ polygon: unknown }>("cli_v2yx.json");
const i1Exact = fixture<{
  z: unknown;
  lambda: unknown;
  z_decimal: string;
  lambda_decimal: string;
}>("i1_exact.json");

describe("click-driven mutation state", () => {
  it("clicks v,v,y,x and lands on the CLI's polygon JSON, identically", async () => {
    const session = new ExplorerSession(new ExplorerApi(replayTransport(flowV2yx)));
    await session.start();
    for (const vertex of ["v", "v", "y", "x"] as const) {
      await session.clickMutate(vertex);
    }
    expect(session.view.word).toBe("v2yx");
    expect(session.view.payload.polygon).toEqual(cliMutate.polygon);
  });

  it("undo restores the previous snapshot bit-exactly", async () => {
    const session = new ExplorerSession(new ExplorerApi(replayTransport(flowUndo)));
    const initial = await session.start();
    const snapshot = JSON.stringify(initial.payload);
    await session.clickMutate("v");
    expect(JSON.stringify(session.view.payload)).not.toBe(snapshot);
    await session.undo();
    expect(JSON.stringify(session.view.payload)).toBe(snapshot);
    expect(session.view.embeddings).toHaveLength(0);
  });

  it("replay of the word equals the click sequence bit-exactly", async () => {
    const clicked = new ExplorerSession(new ExplorerApi(replayTransport(flowV2yx)));
    await clicked.start();
    for (const vertex of ["v", "v", "y", "x"] as const) {
      await clicked.clickMutate(vertex);
    }
    // replay = fresh session + the same letters; the service is
    // deterministic, so the recorded exchange is the same
    const replayed = new ExplorerSession(new ExplorerApi(replayTransport(flowV2yx)));
    await replayed.replay("v2yx");
    expect(JSON.stringify(replayed.view.payload)).toBe(JSON.stringify(clicked.view.payload));
    expect(replayed.view.word).toBe(clicked.view.word);
  });

  it("embedding marker after word v2yxy0xy carries the service's corner values", async () => {
    const session = new ExplorerSession(new ExplorerApi(replayTransport(flowI1)));
    await session.replay("v2yxy0xy"); // y^0 contributes nothing: v,v,y,x,x,y
    expect(session.view.word).toBe("v2yx2y");
    const marker = session.view.embeddings.at(-1)!;
    expect(marker.z).toEqual(i1Exact.z);
    expect(marker.lambda).toEqual(i1Exact.lambda);
    expect(marker.z_decimal).toBe(i1Exact.z_decimal);
    expect(marker.lambda_decimal).toBe(i1Exact.lambda_decimal);
    // and it matches the dedicated embedding endpoint's body
    const lastResponse = flowI1.at(-1)!.response as Record<string, unknown>;
    expect(marker.z).toEqual(lastResponse.z);
    expect(marker.lambda).toEqual(lastResponse.lambda);
  });
});

describe("word grammar", () => {
  it("expands exponents, including zero", () => {
    expect(expandWord("v2yxy3xy")).toEqual([..."vvyxyyyxy"]);
    expect(expandWord("v2yxy0xy")).toEqual([..."vvyxxy"]);
    expect(expandWord("x^2y")).toEqual([..."xxy"]);
    expect(expandWord("")).toEqual([]);
  });

  it("rejects malformed words", () => {
    expect(() => expandWord("v2q")).toThrow(/cannot parse/);
    expect(() => expandWord("2v")).toThrow(/cannot parse/);
  });
});
