/** Browser entry point: resolve the service URL and boot the app. */

import { IqroApi } from "./api.js";
import { createApp } from "./app.js";
import { webAudioPort } from "./audio.js";
import { serviceBaseUrl } from "./config.js";

const root = document.getElementById("app");
if (root) {
  const api = new IqroApi(serviceBaseUrl(window));
  let learner = "default";
  try {
    learner = localStorage.getItem("iqrokit.learner") ?? "default";
  } catch {
    // storage unavailable; anonymous learner
  }
  void createApp(document, root, api, webAudioPort(), learner).catch((error) => {
    root.textContent = `Tidak dapat terhubung ke layanan: ${String(error)}`;
  });
}
