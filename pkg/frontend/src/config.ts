/**
 * Service base URL resolution, in priority order: explicit global set by the
 * host page, ?service= query parameter, saved value, same origin (the
 * default when the UI is mounted at /ui on the service itself).
 */

declare global {
  interface Window {
    IQRO_SERVICE_URL?: string;
  }
}

const STORAGE_KEY = "iqrokit.service_url";

export function serviceBaseUrl(win: Pick<Window, "location" | "localStorage"> & { IQRO_SERVICE_URL?: string }): string {
  if (win.IQRO_SERVICE_URL) return stripSlash(win.IQRO_SERVICE_URL);
  const fromQuery = new URLSearchParams(win.location.search).get("service");
  if (fromQuery) {
    try {
      win.localStorage.setItem(STORAGE_KEY, fromQuery);
    } catch {
      // storage may be unavailable (private mode); the query value still wins
    }
    return stripSlash(fromQuery);
  }
  try {
    const saved = win.localStorage.getItem(STORAGE_KEY);
    if (saved) return stripSlash(saved);
  } catch {
    // fall through to same-origin
  }
  return "";
}

function stripSlash(url: string): string {
  return url.endsWith("/") ? url.slice(0, -1) : url;
}
