import { describe, expect, it } from "vitest";

import { createApi, QueryItem } from "../src/api.js";
import { ConsoleState, ConsoleStore, Scheduler } from "../src/state.js";
import { ANALYSIS, HISTORY, REPAIRS, RESULT_TEXT, SESSION } from "./fixtures.js";
import { ServiceStub } from "./stub.js";

const FIRST_QUEUE: QueryItem[] = [
  {
    axiom: "Endocarditis SubClassOf PathologicalPhenomenon",
    context: "candidate missing axiom",
  },
  {
    axiom: "GranulomaProcess SubClassOf NonNormalProcess",
    context: "candidate missing axiom",
  },
  {
    axiom: "PathologicalProcess SubClassOf GranulomaProcess",
    context: "candidate wrong axiom",
  },
];

function askingStub(): ServiceStub {
  return new ServiceStub({
    session: { ...SESSION, phase: "asking", answered: 0, executedRepair: null },
    queue: FIRST_QUEUE,
    repairs: [],
    analysis: null,
    history: [],
    resultText: RESULT_TEXT,
  });
}

function repairingStub(): ServiceStub {
  return new ServiceStub({
    session: { ...SESSION },
    queue: [],
    repairs: REPAIRS,
    analysis: ANALYSIS,
    history: HISTORY,
    resultText: RESULT_TEXT,
  });
}

function storeOver(stub: ServiceStub): ConsoleStore {
  return new ConsoleStore(createApi("", stub.fetchFn));
}

async function attached(stub: ServiceStub): Promise<ConsoleStore> {
  const store = storeOver(stub);
  await store.attach(stub.session.id);
  return store;
}

describe("queue mirroring", () => {
  it("shows exactly what /queries returned", async () => {
    const stub = askingStub();
    const store = await attached(stub);
    expect(store.state.queue).toEqual(FIRST_QUEUE);
    expect(store.state.phase).toBe("asking");
    expect(store.state.banner).toBeNull();
  });

  it("reflects the shrunken server queue after an answer", async () => {
    const stub = askingStub();
    const store = await attached(stub);
    await store.answer(FIRST_QUEUE[0].axiom, "true");
    const posted = stub.requests.find(
      (r) => r.method === "POST" && r.path.endsWith("/answers"),
    );
    expect(posted?.body).toEqual({
      axiom: FIRST_QUEUE[0].axiom,
      verdict: "true",
      revise: false,
    });
    expect(store.state.queue).toEqual(FIRST_QUEUE.slice(1));
    expect(store.state.answeredCount).toBe(1);
    expect(store.state.history.at(-1)).toMatchObject({
      type: "answer-received",
      axiom: FIRST_QUEUE[0].axiom,
      verdict: "true",
    });
  });

  it("keeps unknown answers on the prudently-excluded list", async () => {
    const stub = askingStub();
    const store = await attached(stub);
    await store.answer(FIRST_QUEUE[1].axiom, "unknown");
    expect(store.state.prudentExcluded).toEqual([FIRST_QUEUE[1].axiom]);
    await store.answer(FIRST_QUEUE[0].axiom, "true");
    expect(store.state.prudentExcluded).toEqual([FIRST_QUEUE[1].axiom]);
  });
});

describe("verdict conflicts and revision", () => {
  it("offers revision instead of an error on a 409", async () => {
    const stub = askingStub();
    const store = await attached(stub);
    stub.conflictNextAnswer = true;
    await store.answer(FIRST_QUEUE[0].axiom, "false");
    expect(store.state.revisePrompt).toBe(FIRST_QUEUE[0].axiom);
    expect(store.state.banner).toBeNull();
  });

  it("reposts with revise and marks repair cards stale until refreshed", async () => {
    const stub = repairingStub();
    const store = await attached(stub);
    const staleSeen: string[][] = [];
    store.subscribe((state: ConsoleState) => staleSeen.push(state.stale));
    await store.answer(HISTORY[4].axiom as string, "unknown", true);
    const posted = stub.requests
      .filter((r) => r.method === "POST" && r.path.endsWith("/answers"))
      .at(-1);
    expect(posted?.body).toMatchObject({ revise: true });
    const allIds = REPAIRS.map((r) => r.id);
    expect(staleSeen.some((ids) => ids.join() === allIds.join())).toBe(true);
    expect(store.state.stale).toEqual([]);
    expect(store.state.revisePrompt).toBeNull();
  });
});

describe("connection failures", () => {
  it("shows a retryable banner and stops polling instead of looping", async () => {
    const stub = askingStub();
    const store = await attached(stub);
    const delays: number[] = [];
    const pending: Array<() => void> = [];
    const scheduler: Scheduler = (delay, run) => {
      delays.push(delay);
      pending.push(run);
    };
    store.startPolling(scheduler);
    stub.offline = true;
    await Promise.resolve(pending.at(-1)!());
    expect(store.state.banner).toMatchObject({
      kind: "error",
      text: "cannot reach the service",
      retry: true,
    });
    expect(store.isPolling).toBe(false);
    const scheduledBefore = pending.length;
    expect(scheduledBefore).toBe(1);

    stub.offline = false;
    await store.retry(scheduler);
    expect(store.state.banner).toBeNull();
    expect(store.isPolling).toBe(true);
    expect(store.state.queue).toEqual(FIRST_QUEUE);
  });

  it("reports 404s as a missing session", async () => {
    const stub = askingStub();
    const store = storeOver(stub);
    await store.attach("nonesuch");
    expect(store.state.banner).toMatchObject({
      kind: "error",
      text: "session not found on the service",
      retry: true,
    });
  });
});

describe("polling backoff", () => {
  it("doubles the delay while idle and resets on change", async () => {
    const stub = askingStub();
    const store = await attached(stub);
    const delays: number[] = [];
    const pending: Array<() => void> = [];
    const scheduler: Scheduler = (delay, run) => {
      delays.push(delay);
      pending.push(run);
    };
    store.startPolling(scheduler);
    await Promise.resolve(pending[0]());
    await Promise.resolve(pending[1]());
    await Promise.resolve(pending[2]());
    stub.queue = stub.queue.slice(1); // the server moved
    await Promise.resolve(pending[3]());
    await Promise.resolve(pending[4]());
    expect(delays).toEqual([1000, 2000, 4000, 8000, 1000, 2000]);
  });

  it("caps the delay at sixteen seconds", async () => {
    const stub = askingStub();
    const store = await attached(stub);
    const delays: number[] = [];
    const pending: Array<() => void> = [];
    store.startPolling((delay, run) => {
      delays.push(delay);
      pending.push(run);
    });
    for (let i = 0; i < 8; i += 1) {
      await Promise.resolve(pending[i]());
    }
    expect(delays.at(-1)).toBe(16000);
    expect(Math.max(...delays)).toBe(16000);
  });

  it("stops by itself once the session is done", async () => {
    const stub = repairingStub();
    const store = await attached(stub);
    const pending: Array<() => void> = [];
    store.startPolling((_delay, run) => pending.push(run));
    await store.execute(REPAIRS[0].id);
    expect(store.state.phase).toBe("done");
    await Promise.resolve(pending.at(-1)!());
    expect(store.isPolling).toBe(false);
  });
});

describe("repairs and execution", () => {
  it("carries the repair list and analysis verbatim", async () => {
    const stub = repairingStub();
    const store = await attached(stub);
    expect(store.state.repairs).toEqual(REPAIRS);
    expect(store.state.analysis).toEqual(ANALYSIS);
  });

  it("prompts to re-verify when execution hits a stale 409", async () => {
    const stub = repairingStub();
    const store = await attached(stub);
    stub.staleNextExecute = true;
    await store.execute(REPAIRS[0].id);
    expect(store.state.banner?.kind).toBe("error");
    expect(store.state.banner?.text).toContain("no longer proposed");
    expect(store.state.banner?.text).toContain("re-verify");
    expect(store.state.banner?.retry).toBe(true);
    expect(store.state.executedRepair).toBeNull();
  });

  it("lands on the executed result exactly as the service serves it", async () => {
    const stub = repairingStub();
    const store = await attached(stub);
    await store.execute(REPAIRS[0].id);
    expect(store.state.executedRepair).toBe(REPAIRS[0].id);
    expect(store.state.phase).toBe("done");
    expect(store.state.resultText).toBe(RESULT_TEXT);
  });
});

describe("opening sessions", () => {
  it("creates a session and pulls the first queue", async () => {
    const stub = askingStub();
    const store = storeOver(stub);
    await store.open("concepts: A B\nax1: A SubClassOf B\n", ["A SubClassOf B"], []);
    const created = stub.requests[0];
    expect(created).toMatchObject({ method: "POST", path: "/sessions" });
    expect(created.body).toEqual({
      tbox: "concepts: A B\nax1: A SubClassOf B\n",
      missing: ["A SubClassOf B"],
      wrong: [],
    });
    expect(store.state.session?.id).toBe(stub.session.id);
    expect(store.state.queue).toEqual(FIRST_QUEUE);
    expect(store.state.busy).toBe(false);
  });

  it("surfaces an unreachable service at open time", async () => {
    const stub = askingStub();
    stub.offline = true;
    const store = storeOver(stub);
    await store.open("concepts: A\n", [], []);
    expect(store.state.session).toBeNull();
    expect(store.state.banner?.text).toBe("cannot reach the service");
  });
});
