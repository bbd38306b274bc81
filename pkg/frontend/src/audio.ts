/**
 * Tap-to-hear playback. Failures are expected (placeholder packs ship
 * silent or missing clips) and must never break the lesson flow, so
 * playUrl reports success as a boolean instead of throwing.
 */

export interface AudioPort {
  play(url: string): Promise<boolean>;
}

let sharedContext: AudioContext | null = null;

async function ensureContext(): Promise<AudioContext> {
  if (!sharedContext) {
    sharedContext = new AudioContext();
  }
  if (sharedContext.state === "suspended") {
    await sharedContext.resume();
  }
  return sharedContext;
}

export function webAudioPort(fetchFn: (url: string) => Promise<Response> = (url) => fetch(url)): AudioPort {
  return {
    async play(url: string): Promise<boolean> {
      try {
        const response = await fetchFn(url);
        if (!response.ok) return false;
        const bytes = await response.arrayBuffer();
        const ctx = await ensureContext();
        const buffer = await ctx.decodeAudioData(bytes);
        const source = ctx.createBufferSource();
        source.buffer = buffer;
        source.connect(ctx.destination);
        source.start();
        return true;
      } catch {
        return false;
      }
    },
  };
}
