"""Locale table for learner-facing messages.

The engine reports message keys; surfaces (CLI, service, UI) render them.
Indonesian is the shipped reference locale.
"""

from __future__ import annotations

DEFAULT_LOCALE = "id"

MESSAGES: dict[str, dict[str, str]] = {
    "id": {
        "answer.correct": "Jawaban Anda Benar",
        "answer.wrong": "Jawaban Anda Salah",
    },
}


def render_message(key: str, locale: str = DEFAULT_LOCALE) -> str:
    """Rendered text for ``key``; unknown keys fall back to the key itself."""
    return MESSAGES.get(locale, {}).get(key, key)
