// Session view-model and its transitions. The view renders exactly what the
// service said; no inference happens on the client.

import { ApiError, Conclusion, Question, ServiceClient, SessionState } from "./api";

export type Phase = "select" | "question" | "concluded" | "failed" | "aborted";

export interface UiSessionView {
  phase: Phase;
  kbLoaded: boolean;
  question: Question | null;
  conclusion: Conclusion | null;
  answered: string[]; // "attr=value", most recent first
  why: string[] | null; // explanation known-list, service order preserved
  banner: string | null;
  busy: boolean;
}

export function initialView(): UiSessionView {
  return {
    phase: "select",
    kbLoaded: false,
    question: null,
    conclusion: null,
    answered: [],
    why: null,
    banner: null,
    busy: false,
  };
}

export class ConsultApp {
  view: UiSessionView = initialView();
  private kbId: string | null = null;
  private sessionId: string | null = null;

  constructor(
    private client: ServiceClient,
    private onChange: (view: UiSessionView) => void = () => {},
  ) {}

  private update(patch: Partial<UiSessionView>): void {
    this.view = { ...this.view, ...patch };
    this.onChange(this.view);
  }

  private fail(error: unknown): void {
    const message =
      error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    this.update({ banner: message, busy: false });
  }

  dismissBanner(): void {
    this.update({ banner: null });
  }

  async uploadKb(text: string): Promise<void> {
    this.update({ busy: true, banner: null });
    try {
      this.kbId = await this.client.uploadKb(text);
      this.update({ kbLoaded: true, busy: false });
    } catch (error) {
      this.fail(error);
    }
  }

  useKbId(id: string): void {
    this.kbId = id;
    this.update({ kbLoaded: true, banner: null });
  }

  private applySessionState(state: SessionState): void {
    if (state.session_id) {
      this.sessionId = state.session_id;
    }
    if (state.status === "awaiting" && state.question) {
      this.update({ phase: "question", question: state.question, busy: false });
    } else if (state.status === "concluded" && state.conclusion) {
      this.update({
        phase: "concluded",
        question: null,
        conclusion: state.conclusion,
        busy: false,
      });
    } else if (state.status === "aborted") {
      this.update({ phase: "aborted", question: null, busy: false });
    } else {
      this.update({ phase: "failed", question: null, busy: false });
    }
  }

  async start(): Promise<void> {
    if (!this.kbId) {
      this.update({ banner: "load a knowledge base first" });
      return;
    }
    this.update({ busy: true, banner: null, answered: [], conclusion: null, why: null });
    try {
      this.applySessionState(await this.client.createSession(this.kbId));
    } catch (error) {
      this.fail(error);
    }
  }

  async answer(value: string): Promise<void> {
    if (!this.sessionId || this.view.busy || !this.view.question) {
      return; // requests are serialized per session
    }
    const fact = `${this.view.question.attribute}=${value}`;
    this.update({ busy: true, banner: null });
    try {
      const state = await this.client.answer(this.sessionId, value);
      if (value !== "exit") {
        this.update({ answered: [fact, ...this.view.answered] });
      }
      this.applySessionState(state);
      if (this.view.phase === "concluded" || this.view.phase === "failed") {
        const explanation = await this.client.explanation(this.sessionId);
        this.update({ why: explanation.known });
      }
    } catch (error) {
      this.fail(error);
    }
  }

  async exit(): Promise<void> {
    await this.answer("exit");
  }

  async restart(): Promise<void> {
    this.sessionId = null;
    await this.start();
  }
}
