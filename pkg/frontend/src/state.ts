/**
 * Console state machine. Holds exactly what the service last said plus the
 * small amount of UI bookkeeping (banners, stale markers, the revise
 * prompt); every refresh replaces the mirrored fields wholesale with the
 * server's answers.
 */

import {
  Api,
  AnalysisView,
  HistoryEvent,
  QueryItem,
  RepairView,
  ServiceError,
  SessionView,
  Verdict,
} from "./api.js";

export interface Banner {
  kind: "error" | "info";
  text: string;
  retry: boolean;
}

export interface ConsoleState {
  session: SessionView | null;
  phase: string;
  queue: QueryItem[];
  answeredCount: number;
  history: HistoryEvent[];
  repairs: RepairView[];
  analysis: AnalysisView | null;
  /** repair ids shown with a stale marker while a revision refresh runs */
  stale: string[];
  /** axioms the expert marked unknown (excluded from additions by policy) */
  prudentExcluded: string[];
  /** axiom that was rejected as already answered; offer revision */
  revisePrompt: string | null;
  executedRepair: string | null;
  resultText: string | null;
  banner: Banner | null;
  busy: boolean;
}

export type Scheduler = (delayMs: number, run: () => void) => void;

const POLL_BASE_MS = 1000;
const POLL_MAX_MS = 16000;

function initialState(): ConsoleState {
  return {
    session: null,
    phase: "idle",
    queue: [],
    answeredCount: 0,
    history: [],
    repairs: [],
    analysis: null,
    stale: [],
    prudentExcluded: [],
    revisePrompt: null,
    executedRepair: null,
    resultText: null,
    banner: null,
    busy: false,
  };
}

export class ConsoleStore {
  state: ConsoleState = initialState();

  private listeners: Array<(state: ConsoleState) => void> = [];
  private idlePolls = 0;
  private polling = false;

  constructor(private readonly api: Api) {}

  subscribe(listener: (state: ConsoleState) => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  private patch(changes: Partial<ConsoleState>): void {
    this.state = { ...this.state, ...changes };
    this.notify();
  }

  /** Create a session and pull its first queue. */
  async open(tbox: string, missing: string[], wrong: string[]): Promise<void> {
    this.patch({ busy: true, banner: null });
    try {
      const session = await this.api.createSession(tbox, missing, wrong);
      this.state = { ...initialState(), session };
      await this.refresh();
    } catch (error) {
      this.fail(error);
    } finally {
      this.patch({ busy: false });
    }
  }

  /** Attach to an existing session id. */
  async attach(sessionId: string): Promise<void> {
    this.patch({ busy: true, banner: null });
    try {
      const session = await this.api.session(sessionId);
      this.state = { ...initialState(), session };
      await this.refresh();
    } catch (error) {
      this.fail(error);
    } finally {
      this.patch({ busy: false });
    }
  }

  /** Re-pull everything the console shows from the service. */
  async refresh(): Promise<void> {
    const sid = this.state.session?.id;
    if (!sid) {
      return;
    }
    try {
      const session = await this.api.session(sid);
      const queue = await this.api.queue(sid);
      const history = await this.api.history(sid);
      const repairs = session.repairs.length ? await this.api.repairs(sid) : [];
      const analysis = repairs.length ? await this.api.analysis(sid) : null;
      const resultText = session.executedRepair
        ? await this.api.resultText(sid)
        : null;
      this.patch({
        session,
        phase: queue.phase,
        queue: queue.queries,
        answeredCount: session.answered,
        history,
        repairs,
        analysis,
        stale: [],
        executedRepair: session.executedRepair,
        resultText,
        banner: null,
      });
    } catch (error) {
      this.fail(error);
      throw error;
    }
  }

  /**
   * Submit one verdict. A 409 means the axiom was already answered — the
   * state then carries a revise prompt instead of an error. A revision
   * marks the currently shown repair cards stale until the refresh that
   * follows replaces them with the server's recomputed list.
   */
  async answer(axiom: string, verdict: Verdict, revise = false): Promise<void> {
    const sid = this.state.session?.id;
    if (!sid) {
      return;
    }
    if (revise) {
      this.patch({ stale: this.state.repairs.map((r) => r.id) });
    }
    try {
      await this.api.answer(sid, axiom, verdict, revise);
    } catch (error) {
      if (error instanceof ServiceError && error.status === 409) {
        this.patch({ revisePrompt: axiom, stale: [] });
        return;
      }
      this.patch({ stale: [] });
      this.fail(error);
      return;
    }
    const excluded =
      verdict === "unknown" && !this.state.prudentExcluded.includes(axiom)
        ? [...this.state.prudentExcluded, axiom]
        : this.state.prudentExcluded;
    this.patch({ prudentExcluded: excluded, revisePrompt: null });
    this.idlePolls = 0;
    await this.refresh().catch(() => undefined);
  }

  /** Execute one proposed repair; a 409 means it no longer verifies. */
  async execute(repairId: string): Promise<void> {
    const sid = this.state.session?.id;
    if (!sid) {
      return;
    }
    try {
      await this.api.execute(sid, repairId);
    } catch (error) {
      if (error instanceof ServiceError && error.status === 409) {
        this.patch({
          banner: {
            kind: "error",
            text:
              `repair ${repairId} is no longer proposed — answers changed; ` +
              "refresh and re-verify before executing",
            retry: true,
          },
        });
        return;
      }
      this.fail(error);
      return;
    }
    await this.refresh().catch(() => undefined);
  }

  /** Clear the error banner and pull fresh state; restarts polling. */
  async retry(scheduler: Scheduler = defaultScheduler): Promise<void> {
    this.patch({ banner: null });
    try {
      await this.refresh();
    } catch {
      return;
    }
    if (!this.polling) {
      this.startPolling(scheduler);
    }
  }

  /**
   * Poll the service while the session is live. The delay doubles while
   * nothing changes (up to a cap) and resets when something does; an error
   * stops polling entirely and leaves a banner with a retry action.
   */
  startPolling(scheduler: Scheduler = defaultScheduler): void {
    if (this.polling) {
      return;
    }
    this.polling = true;
    const tick = async () => {
      if (!this.polling) {
        return;
      }
      if (!this.state.session || this.state.phase === "done") {
        this.polling = false;
        return;
      }
      const before = snapshot(this.state);
      try {
        await this.refresh();
      } catch {
        this.polling = false;
        return;
      }
      this.idlePolls = snapshot(this.state) === before ? this.idlePolls + 1 : 0;
      scheduler(this.pollDelay(), tick);
    };
    scheduler(this.pollDelay(), tick);
  }

  stopPolling(): void {
    this.polling = false;
  }

  get isPolling(): boolean {
    return this.polling;
  }

  pollDelay(): number {
    return Math.min(POLL_BASE_MS * 2 ** this.idlePolls, POLL_MAX_MS);
  }

  private fail(error: unknown): void {
    const text =
      error instanceof ServiceError
        ? error.status === 404
          ? "session not found on the service"
          : `service error ${error.status}: ${describeDetail(error.detail)}`
        : "cannot reach the service";
    this.polling = false;
    this.patch({ banner: { kind: "error", text, retry: true } });
  }
}

function describeDetail(detail: unknown): string {
  if (detail && typeof detail === "object") {
    const record = detail as Record<string, unknown>;
    if (typeof record.error === "string") {
      return record.error;
    }
    if (typeof record.message === "string") {
      return record.message;
    }
  }
  return typeof detail === "string" ? detail : "request failed";
}

function snapshot(state: ConsoleState): string {
  return JSON.stringify({
    phase: state.phase,
    queue: state.queue,
    repairs: state.repairs.map((r) => r.id),
    answered: state.answeredCount,
    executed: state.executedRepair,
  });
}

const defaultScheduler: Scheduler = (delayMs, run) => {
  setTimeout(run, delayMs);
};
