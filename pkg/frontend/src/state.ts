/**
 * Client view states, mirroring the menu hub: Home fans out to the letter
 * listing, help, chart, lesson picker (study or test), lesson pages, quiz,
 * progress, and about; back always returns home.
 */

export type View =
  | { kind: "home" }
  | { kind: "file" }
  | { kind: "howto" }
  | { kind: "chart" }
  | { kind: "picker"; purpose: "lesson" | "test" }
  | { kind: "lesson"; volume: number; lesson: number; page: number }
  | { kind: "quiz"; volume: number; lesson: number }
  | { kind: "progress" }
  | { kind: "about" };

export const HOME: View = { kind: "home" };

export function clampPage(page: number, pageCount: number): number {
  return Math.min(Math.max(page, 1), Math.max(pageCount, 1));
}

export interface MenuEntry {
  id: string;
  label: string;
  view: View;
}

/** Home menu, in display order. */
export function homeMenu(): MenuEntry[] {
  return [
    { id: "file", label: "File — huruf & pengucapan", view: { kind: "file" } },
    { id: "howto", label: "Cara menggunakan", view: { kind: "howto" } },
    { id: "chart", label: "Mengenal huruf hijaiyah", view: { kind: "chart" } },
    { id: "materi", label: "Materi", view: { kind: "picker", purpose: "lesson" } },
    { id: "test", label: "Test", view: { kind: "picker", purpose: "test" } },
    { id: "progress", label: "Kemajuan belajar", view: { kind: "progress" } },
    { id: "about", label: "About", view: { kind: "about" } },
  ];
}
