/**
 * Drives one quiz session against the service. The flow only sequences
 * requests and stores what the service said; it never judges answers or
 * computes mastery itself. One flow (and so one active session) per tab.
 */

import type { AnswerReply, IqroApi, QuizQuestion, QuizResult } from "./api.js";

export interface Banner {
  verdict: "correct" | "wrong";
  message: string;
  correctDisplay: string;
  correctId: string;
}

export interface QuizFlowState {
  phase: "idle" | "question" | "finished";
  sessionId: string | null;
  question: QuizQuestion | null;
  banner: Banner | null;
  result: QuizResult | null;
  answered: number;
}

export class QuizFlow {
  private state: QuizFlowState = {
    phase: "idle",
    sessionId: null,
    question: null,
    banner: null,
    result: null,
    answered: 0,
  };

  constructor(
    private readonly api: IqroApi,
    private readonly learner: string,
  ) {}

  snapshot(): QuizFlowState {
    return { ...this.state };
  }

  /** Start a fresh session, replacing any session this tab was running. */
  async start(volume: number, lesson: number, seed?: number): Promise<QuizFlowState> {
    const started = await this.api.startQuiz(
      volume,
      lesson,
      this.learner,
      seed === undefined ? undefined : { seed },
    );
    this.state = {
      phase: "question",
      sessionId: started.session_id,
      question: started.question,
      banner: null,
      result: null,
      answered: 0,
    };
    return this.snapshot();
  }

  /** Submit an option index; the banner and result are the service's words. */
  async answer(chosenIndex: number): Promise<QuizFlowState> {
    if (this.state.phase !== "question" || this.state.sessionId === null) {
      throw new Error("no question to answer");
    }
    const reply: AnswerReply = await this.api.answer(this.state.sessionId, chosenIndex);
    this.state = {
      ...this.state,
      answered: this.state.answered + 1,
      banner: {
        verdict: reply.verdict,
        message: reply.message,
        correctDisplay: reply.correct_option.display,
        correctId: reply.correct_option.id,
      },
      question: reply.next_question,
      result: reply.result,
      phase: reply.result ? "finished" : "question",
    };
    return this.snapshot();
  }
}
