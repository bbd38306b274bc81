/**
 * Typed client for the session service JSON API.
 *
 * The client holds no quiz logic: verdicts, option sets, and mastery all
 * come from the service. Every fetched question passes through
 * assertNoAnswerKey, so a service that leaked the answer key would fail
 * loudly instead of silently enabling client-side cheating.
 */

export interface LessonSummary {
  id: string;
  title: string;
  ordinal: number;
  page_count: number;
}

export interface VolumeSummary {
  index: number;
  title: string;
  lessons: LessonSummary[];
}

export interface PackInfo {
  title: string;
  about: string;
  how_to: string;
  volumes: VolumeSummary[];
}

export interface AlphabetEntry {
  key: string;
  text: string;
  translit: string;
  audio: string;
  audio_url: string;
}

export interface PageItem {
  id: string;
  text: string;
  translit: string;
  audio_url: string;
}

export interface PageGrid {
  volume: number;
  lesson: number;
  page: number;
  page_count: number;
  lesson_id: string;
  lesson_title: string;
  rows: PageItem[][];
}

export interface QuizOption {
  id: string;
  display: string;
}

export interface QuizPrompt {
  audio_url?: string | null;
  text?: string | null;
}

export interface QuizQuestion {
  number: number;
  total: number;
  mode: string;
  prompt: QuizPrompt;
  options: QuizOption[];
}

export interface QuizConfigIn {
  num_questions?: number;
  num_options?: number;
  mode?: string;
  seed?: number;
  mastery_threshold?: number;
}

export interface QuizStart {
  session_id: string;
  volume: number;
  lesson: number;
  config: {
    num_questions: number;
    num_options: number;
    mode: string;
    seed: number;
    mastery_threshold: number;
  };
  question: QuizQuestion;
}

export interface QuizResult {
  correct_count: number;
  total: number;
  mastered: boolean;
}

export interface AnswerReply {
  verdict: "correct" | "wrong";
  message_key: string;
  message: string;
  correct_option: QuizOption;
  next_question: QuizQuestion | null;
  result: QuizResult | null;
}

export interface ProgressEntry {
  volume: number;
  lesson: number;
  attempts: number;
  best_score: number;
  mastered: boolean;
  last_seed: number;
}

export interface ProgressView {
  learner: string;
  lock_mode: boolean;
  entries: ProgressEntry[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

const FORBIDDEN_KEY_PARTS = ["correct_index", "target", "answer_key"];

/** Reject any fetched question payload that carries an answer key. */
export function assertNoAnswerKey(node: unknown, path = "question"): void {
  if (Array.isArray(node)) {
    node.forEach((value, i) => assertNoAnswerKey(value, `${path}[${i}]`));
    return;
  }
  if (node !== null && typeof node === "object") {
    for (const [key, value] of Object.entries(node)) {
      for (const part of FORBIDDEN_KEY_PARTS) {
        if (key.includes(part)) {
          throw new Error(`answer key leaked into ${path}.${key}`);
        }
      }
      assertNoAnswerKey(value, `${path}.${key}`);
    }
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class IqroApi {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  assetUrl(audioUrl: string): string {
    return this.base + audioUrl;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let code = "E_HTTP";
      let message = `${response.status} on ${path}`;
      try {
        const body = (await response.json()) as { code?: string; message?: string };
        if (body.code) code = body.code;
        if (body.message) message = body.message;
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  pack(): Promise<PackInfo> {
    return this.request<PackInfo>("/api/pack");
  }

  alphabet(): Promise<{ entries: AlphabetEntry[] }> {
    return this.request<{ entries: AlphabetEntry[] }>("/api/alphabet");
  }

  page(volume: number, lesson: number, page: number): Promise<PageGrid> {
    return this.request<PageGrid>(`/api/volumes/${volume}/lessons/${lesson}/pages/${page}`);
  }

  async startQuiz(
    volume: number,
    lesson: number,
    learner: string,
    config?: QuizConfigIn,
  ): Promise<QuizStart> {
    const started = await this.post<QuizStart>("/api/quiz", {
      volume,
      lesson,
      learner,
      ...(config ? { config } : {}),
    });
    assertNoAnswerKey(started.question);
    return started;
  }

  async answer(sessionId: string, chosenIndex: number): Promise<AnswerReply> {
    const reply = await this.post<AnswerReply>(`/api/quiz/${sessionId}/answer`, {
      chosen_index: chosenIndex,
    });
    if (reply.next_question) assertNoAnswerKey(reply.next_question);
    return reply;
  }

  progress(learner: string): Promise<ProgressView> {
    return this.request<ProgressView>(`/api/progress/${encodeURIComponent(learner)}`);
  }
}
