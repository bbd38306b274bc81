/**
 * DOM renderers, one per view. Arabic content renders right-to-left with
 * large tap targets; all strings shown for quiz verdicts come verbatim
 * from the service.
 */

import type { AlphabetEntry, PackInfo, PageGrid, PageItem, ProgressView } from "./api.js";
import type { QuizFlowState } from "./quizFlow.js";
import { homeMenu, type MenuEntry, type View } from "./state.js";

export interface LessonHandlers {
  onTap(item: PageItem): void;
  onPage(delta: number): void;
}

export interface QuizHandlers {
  onAnswer(index: number): void;
  onPlayPrompt(url: string): void;
  onDone(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderHome(doc: Document, onSelect: (entry: MenuEntry) => void): HTMLElement {
  const section = el(doc, "section", "home");
  const list = el(doc, "nav", "menu");
  for (const entry of homeMenu()) {
    const button = el(doc, "button", "menu-entry", entry.label);
    button.dataset.menu = entry.id;
    button.addEventListener("click", () => onSelect(entry));
    list.appendChild(button);
  }
  section.appendChild(list);
  return section;
}

export function renderTextView(doc: Document, heading: string, body: string): HTMLElement {
  const section = el(doc, "section", "text-view");
  section.appendChild(el(doc, "h2", undefined, heading));
  section.appendChild(el(doc, "p", "pack-text", body));
  return section;
}

export function renderAlphabet(
  doc: Document,
  entries: AlphabetEntry[],
  onPlay: (entry: AlphabetEntry) => void,
  withNames: boolean,
): HTMLElement {
  const section = el(doc, "section", "alphabet");
  const grid = el(doc, "div", "glyph-grid");
  grid.dir = "rtl";
  for (const entry of entries) {
    const cell = el(doc, "button", "glyph-cell");
    cell.dataset.letter = entry.key;
    cell.appendChild(el(doc, "span", "glyph", entry.text));
    if (withNames) cell.appendChild(el(doc, "span", "caption", entry.translit));
    cell.addEventListener("click", () => onPlay(entry));
    grid.appendChild(cell);
  }
  section.appendChild(grid);
  return section;
}

export function renderPicker(
  doc: Document,
  pack: PackInfo,
  purpose: "lesson" | "test",
  onPick: (volume: number, lesson: number) => void,
): HTMLElement {
  const section = el(doc, "section", "picker");
  section.appendChild(
    el(doc, "h2", undefined, purpose === "lesson" ? "Pilih materi" : "Pilih materi untuk test"),
  );
  for (const volume of pack.volumes) {
    const block = el(doc, "div", "volume");
    block.appendChild(el(doc, "h3", undefined, volume.title));
    for (const lesson of volume.lessons) {
      const button = el(doc, "button", "lesson-pick", lesson.title);
      button.dataset.volume = String(volume.index);
      button.dataset.lesson = String(lesson.ordinal);
      button.addEventListener("click", () => onPick(volume.index, lesson.ordinal));
      block.appendChild(button);
    }
    section.appendChild(block);
  }
  return section;
}

export function renderLesson(doc: Document, grid: PageGrid, handlers: LessonHandlers): HTMLElement {
  const section = el(doc, "section", "lesson");
  section.appendChild(
    el(doc, "h2", undefined, `${grid.lesson_title} — halaman ${grid.page}/${grid.page_count}`),
  );
  const pageGrid = el(doc, "div", "glyph-grid");
  pageGrid.dir = "rtl";
  for (const row of grid.rows) {
    const rowNode = el(doc, "div", "glyph-row");
    for (const item of row) {
      const cell = el(doc, "button", "glyph-cell");
      cell.dataset.item = item.id;
      cell.appendChild(el(doc, "span", "glyph", item.text));
      cell.appendChild(el(doc, "span", "caption", item.translit));
      cell.addEventListener("click", () => handlers.onTap(item));
      rowNode.appendChild(cell);
    }
    pageGrid.appendChild(rowNode);
  }
  section.appendChild(pageGrid);

  const pager = el(doc, "div", "pager");
  const prev = el(doc, "button", "page-prev", "⟵ sebelumnya");
  prev.disabled = grid.page <= 1;
  prev.addEventListener("click", () => handlers.onPage(-1));
  const next = el(doc, "button", "page-next", "berikutnya ⟶");
  next.disabled = grid.page >= grid.page_count;
  next.addEventListener("click", () => handlers.onPage(1));
  pager.append(prev, next);
  section.appendChild(pager);
  return section;
}

export function renderQuiz(doc: Document, state: QuizFlowState, handlers: QuizHandlers): HTMLElement {
  const section = el(doc, "section", "quiz");

  if (state.banner) {
    const banner = el(
      doc,
      "div",
      state.banner.verdict === "correct" ? "banner banner-benar" : "banner banner-salah",
      state.banner.message,
    );
    if (state.banner.verdict === "wrong") {
      banner.appendChild(el(doc, "div", "reveal", `Jawaban yang benar: ${state.banner.correctDisplay}`));
    }
    section.appendChild(banner);
  }

  if (state.phase === "finished" && state.result) {
    const done = el(doc, "div", "quiz-result");
    done.appendChild(el(doc, "h2", undefined, `Skor: ${state.result.correct_count}/${state.result.total}`));
    done.appendChild(
      el(
        doc,
        "span",
        state.result.mastered ? "badge badge-mastered" : "badge badge-unmastered",
        state.result.mastered ? "menguasai materi" : "belum menguasai materi",
      ),
    );
    const back = el(doc, "button", "quiz-done", "selesai");
    back.addEventListener("click", () => handlers.onDone());
    done.appendChild(back);
    section.appendChild(done);
    return section;
  }

  const question = state.question;
  if (!question) return section;

  section.appendChild(el(doc, "h2", undefined, `Soal ${question.number}/${question.total}`));
  const promptNode = el(doc, "div", "prompt");
  if (question.prompt.audio_url) {
    const play = el(doc, "button", "prompt-audio", "▶ putar suara");
    play.dataset.audio = question.prompt.audio_url;
    play.addEventListener("click", () => handlers.onPlayPrompt(question.prompt.audio_url as string));
    promptNode.appendChild(play);
  }
  if (question.prompt.text) {
    const glyph = el(doc, "div", "prompt-glyph", question.prompt.text);
    glyph.dir = "rtl";
    promptNode.appendChild(glyph);
  }
  section.appendChild(promptNode);

  const optionList = el(doc, "div", "options");
  optionList.dir = "rtl";
  question.options.forEach((option, index) => {
    const button = el(doc, "button", "option", option.display);
    button.dataset.option = String(index);
    button.dataset.optionId = option.id;
    button.addEventListener("click", () => handlers.onAnswer(index));
    optionList.appendChild(button);
  });
  section.appendChild(optionList);
  return section;
}

export function renderProgress(doc: Document, pack: PackInfo, progress: ProgressView): HTMLElement {
  const section = el(doc, "section", "progress");
  section.appendChild(el(doc, "h2", undefined, `Kemajuan ${progress.learner}`));
  const mastered = new Map(
    progress.entries.map((entry) => [`${entry.volume}:${entry.lesson}`, entry]),
  );
  for (const volume of pack.volumes) {
    const block = el(doc, "div", "volume");
    block.appendChild(el(doc, "h3", undefined, volume.title));
    for (const lesson of volume.lessons) {
      const entry = mastered.get(`${volume.index}:${lesson.ordinal}`);
      const row = el(doc, "div", "progress-row");
      row.dataset.volume = String(volume.index);
      row.dataset.lesson = String(lesson.ordinal);
      row.appendChild(el(doc, "span", "lesson-name", lesson.title));
      const badge = el(
        doc,
        "span",
        entry?.mastered ? "badge badge-mastered" : "badge badge-unmastered",
        entry?.mastered ? "menguasai" : entry ? `skor terbaik ${Math.round(entry.best_score * 100)}%` : "belum dicoba",
      );
      row.appendChild(badge);
      block.appendChild(row);
    }
    section.appendChild(block);
  }
  return section;
}

export function describeView(view: View, packTitle: string): string {
  switch (view.kind) {
    case "home":
      return packTitle;
    case "file":
      return "Huruf hijaiyah & pengucapannya";
    case "howto":
      return "Cara menggunakan";
    case "chart":
      return "Mengenal huruf hijaiyah";
    case "picker":
      return view.purpose === "lesson" ? "Materi" : "Test";
    case "lesson":
      return `Materi ${view.volume}.${view.lesson}`;
    case "quiz":
      return `Test materi ${view.volume}.${view.lesson}`;
    case "progress":
      return "Kemajuan belajar";
    case "about":
      return "About";
  }
}
