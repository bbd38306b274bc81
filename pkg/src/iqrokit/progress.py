"""Per-learner progress persistence and lesson gating.

One JSON file per learner, written atomically (temp file + rename) so an
interrupted save never corrupts the previous state. Mastery is monotone:
once a lesson is mastered, later failing attempts never clear it.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import CorruptProgressError
from .model import ContentPack, lesson_at
from .quiz import LessonRef, QuizResult


@dataclass(frozen=True)
class LessonProgress:
    attempts: int = 0
    best_score: float = 0.0
    mastered: bool = False
    last_seed: int = 0


@dataclass(frozen=True)
class ProgressRecord:
    learner: str
    lock_mode: bool = False
    entries: dict[tuple[int, int], LessonProgress] = field(default_factory=dict)


def fresh_progress(learner: str, lock_mode: bool = False) -> ProgressRecord:
    return ProgressRecord(learner=learner, lock_mode=lock_mode, entries={})


def record_result(
    progress: ProgressRecord,
    lesson_ref: LessonRef,
    result: QuizResult,
    seed: int,
) -> ProgressRecord:
    """Fold one quiz result into the record; returns the updated record."""
    key = (lesson_ref.volume, lesson_ref.lesson)
    old = progress.entries.get(key, LessonProgress())
    score = result.correct_count / result.total
    entry = LessonProgress(
        attempts=old.attempts + 1,
        best_score=max(old.best_score, score),
        mastered=old.mastered or result.mastered,
        last_seed=seed,
    )
    entries = dict(progress.entries)
    entries[key] = entry
    return replace(progress, entries=entries)


def _previous_lesson(pack: ContentPack, lesson_ref: LessonRef) -> tuple[int, int] | None:
    """Coordinates of the lesson studied immediately before ``lesson_ref``,
    or None when it is the pack's first lesson."""
    if lesson_ref.lesson > 1:
        return (lesson_ref.volume, lesson_ref.lesson - 1)
    for volume in reversed(pack.volumes):
        if volume.index < lesson_ref.volume:
            return (volume.index, len(volume.lessons))
    return None


def is_unlocked(progress: ProgressRecord, pack: ContentPack, lesson_ref: LessonRef) -> bool:
    """True when the learner may study ``lesson_ref``.

    With lock_mode off every lesson is open (free navigation); with it on, a
    lesson opens once the immediately preceding lesson is mastered.
    """
    lesson_at(pack, lesson_ref.volume, lesson_ref.lesson)
    if not progress.lock_mode:
        return True
    prev = _previous_lesson(pack, lesson_ref)
    if prev is None:
        return True
    entry = progress.entries.get(prev)
    return entry is not None and entry.mastered


def progress_path(data_dir: str | Path, learner: str) -> Path:
    return Path(data_dir) / "progress" / f"{learner}.json"


def _to_dict(progress: ProgressRecord) -> dict:
    return {
        "learner": progress.learner,
        "lock_mode": progress.lock_mode,
        "entries": [
            {
                "volume": volume,
                "lesson": lesson,
                "attempts": entry.attempts,
                "best_score": entry.best_score,
                "mastered": entry.mastered,
                "last_seed": entry.last_seed,
            }
            for (volume, lesson), entry in sorted(progress.entries.items())
        ],
    }


def _from_dict(raw: dict) -> ProgressRecord:
    try:
        learner = raw["learner"]
        lock_mode = raw["lock_mode"]
        entries: dict[tuple[int, int], LessonProgress] = {}
        for row in raw["entries"]:
            key = (row["volume"], row["lesson"])
            if key in entries:
                raise ValueError(f"duplicate entry for {key}")
            entry = LessonProgress(
                attempts=row["attempts"],
                best_score=row["best_score"],
                mastered=row["mastered"],
                last_seed=row["last_seed"],
            )
            if not isinstance(entry.attempts, int) or isinstance(entry.attempts, bool):
                raise ValueError("attempts must be an integer")
            if not isinstance(entry.mastered, bool):
                raise ValueError("mastered must be a boolean")
            if not isinstance(entry.best_score, (int, float)) or not 0 <= entry.best_score <= 1:
                raise ValueError("best_score must lie in [0, 1]")
            entries[(int(key[0]), int(key[1]))] = entry
        if not isinstance(learner, str) or not isinstance(lock_mode, bool):
            raise ValueError("bad learner or lock_mode field")
        return ProgressRecord(learner=learner, lock_mode=lock_mode, entries=entries)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptProgressError(f"progress file is corrupt: {exc}") from None


def load_progress(path: str | Path, learner: str | None = None) -> ProgressRecord:
    """Load a learner's record; an absent file yields a fresh record (named
    after the file unless ``learner`` is given). An unreadable or malformed
    file raises E_CORRUPT rather than silently resetting history."""
    path = Path(path)
    if not path.exists():
        return fresh_progress(learner if learner is not None else path.stem)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptProgressError(f"progress file is corrupt: {exc}") from None
    if not isinstance(raw, dict):
        raise CorruptProgressError("progress file is corrupt: not an object")
    return _from_dict(raw)


def save_progress(progress: ProgressRecord, path: str | Path) -> None:
    """Atomic write: serialize to a temp file in the target directory, then
    rename over the destination."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(_to_dict(progress), ensure_ascii=False, indent=2) + "\n"
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(payload)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
