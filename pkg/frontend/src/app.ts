/**
 * App controller: owns the current view, fetches what each view needs from
 * the service, and re-renders. Kept separate from the browser entry point
 * so tests can drive a full app against a scripted service.
 */

import { ApiError, type IqroApi, type PackInfo } from "./api.js";
import type { AudioPort } from "./audio.js";
import { QuizFlow } from "./quizFlow.js";
import {
  describeView,
  renderAlphabet,
  renderHome,
  renderLesson,
  renderPicker,
  renderProgress,
  renderQuiz,
  renderTextView,
} from "./render.js";
import { clampPage, HOME, type View } from "./state.js";

export interface App {
  goto(view: View): Promise<void>;
  back(): Promise<void>;
  view(): View;
  learner(): string;
}

export async function createApp(
  doc: Document,
  root: HTMLElement,
  api: IqroApi,
  audio: AudioPort,
  learnerName = "default",
): Promise<App> {
  const pack: PackInfo = await api.pack();
  let current: View = HOME;
  let flow: QuizFlow | null = null; // one active quiz session per tab

  root.replaceChildren();
  const header = doc.createElement("header");
  const backButton = doc.createElement("button");
  backButton.className = "back";
  backButton.textContent = "⌂ menu";
  const title = doc.createElement("h1");
  title.className = "view-title";
  header.append(backButton, title);
  const status = doc.createElement("div");
  status.className = "status";
  const content = doc.createElement("main");
  content.className = "content";
  root.append(header, status, content);

  function setStatus(text: string): void {
    status.textContent = text;
  }

  async function playOrWarn(url: string, label: string): Promise<void> {
    const ok = await audio.play(api.assetUrl(url));
    setStatus(ok ? "" : `suara tidak dapat diputar (${label})`);
  }

  function show(view: View, node: HTMLElement): void {
    current = view;
    title.textContent = describeView(view, pack.title);
    backButton.style.visibility = view.kind === "home" ? "hidden" : "visible";
    content.replaceChildren(node);
  }

  async function build(view: View): Promise<HTMLElement> {
    switch (view.kind) {
      case "home":
        return renderHome(doc, (entry) => void goto(entry.view));
      case "about":
        return renderTextView(doc, "Tentang aplikasi", pack.about);
      case "howto":
        return renderTextView(doc, "Cara menggunakan", pack.how_to);
      case "file": {
        const { entries } = await api.alphabet();
        return renderAlphabet(doc, entries, (e) => void playOrWarn(e.audio_url, e.translit), true);
      }
      case "chart": {
        const { entries } = await api.alphabet();
        return renderAlphabet(doc, entries, (e) => void playOrWarn(e.audio_url, e.translit), false);
      }
      case "picker":
        return renderPicker(doc, pack, view.purpose, (volume, lesson) => {
          const target: View =
            view.purpose === "lesson"
              ? { kind: "lesson", volume, lesson, page: 1 }
              : { kind: "quiz", volume, lesson };
          void goto(target);
        });
      case "lesson": {
        const grid = await api.page(view.volume, view.lesson, view.page);
        return renderLesson(doc, grid, {
          onTap: (item) => void playOrWarn(item.audio_url, item.translit),
          onPage: (delta) => {
            const page = clampPage(view.page + delta, grid.page_count);
            if (page !== view.page) void goto({ ...view, page });
          },
        });
      }
      case "quiz": {
        flow = new QuizFlow(api, learnerName);
        await flow.start(view.volume, view.lesson);
        return quizNode();
      }
      case "progress": {
        const progress = await api.progress(learnerName);
        return renderProgress(doc, pack, progress);
      }
    }
  }

  function quizNode(): HTMLElement {
    const activeFlow = flow;
    if (!activeFlow) throw new Error("quiz flow not started");
    return renderQuiz(doc, activeFlow.snapshot(), {
      onAnswer: (index) => {
        void activeFlow
          .answer(index)
          .then(() => content.replaceChildren(quizNode()))
          .catch((error: unknown) => setStatus(errorText(error)));
      },
      onPlayPrompt: (url) => void playOrWarn(url, "soal"),
      onDone: () => void goto({ kind: "progress" }),
    });
  }

  function errorText(error: unknown): string {
    if (error instanceof ApiError) {
      if (error.code === "E_LOCKED") return "materi ini masih terkunci";
      return `${error.code}: ${error.message}`;
    }
    return String(error);
  }

  async function goto(view: View): Promise<void> {
    setStatus("");
    try {
      show(view, await build(view));
    } catch (error) {
      setStatus(errorText(error));
    }
  }

  backButton.addEventListener("click", () => void goto(HOME));
  await goto(HOME);

  return {
    goto,
    back: () => goto(HOME),
    view: () => current,
    learner: () => learnerName,
  };
}
