"""Local HTTP/JSON facade over the engine.

One pack per service instance, loaded and validated at startup (a pack with
validation errors refuses to start). All mutable state lives in the
in-memory quiz session table and in per-learner progress files; restarting
the service loses in-flight sessions but never touches progress history.
"""

from __future__ import annotations

import re
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import quiz as quiz_engine
from ..errors import (
    BadPathError,
    IqroError,
    LockedLessonError,
    UnknownAssetError,
    UnknownSessionError,
)
from ..locale import render_message
from ..model import lesson_at, page_at
from ..pack import ValidationReport, load_pack_dir
from ..progress import (
    ProgressRecord,
    is_unlocked,
    load_progress,
    progress_path,
    record_result,
    save_progress,
)
from ..quiz import LessonRef, PublicQuestion, QuizConfig, QuizSession
from . import schemas

DEFAULT_BIND = "127.0.0.1:7423"
SESSION_TTL_SECONDS = 24 * 60 * 60

_LEARNER_RE = re.compile(r"^[A-Za-z0-9_-]{1,64}$")

_STATUS_BY_CODE = {
    "E_UNKNOWN_ITEM": 404,
    "E_UNKNOWN_LESSON": 404,
    "E_UNKNOWN_SESSION": 404,
    "E_UNKNOWN_ASSET": 404,
    "E_POOL_TOO_SMALL": 422,
    "E_BAD_OPTION": 422,
    "E_SCHEMA": 422,
    "E_SESSION_FINISHED": 409,
    "E_SESSION_IN_PROGRESS": 409,
    "E_LOCKED": 409,
    "E_BAD_PATH": 400,
}


@dataclass
class ServiceConfig:
    pack_path: Path
    data_dir: Path
    bind_address: str = DEFAULT_BIND
    ui_dir: Path | None = None


class PackLoadError(Exception):
    """Startup refusal: the pack failed to parse or validate."""

    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass
class _SessionEntry:
    session: QuizSession
    learner: str
    last_access: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session table with idle-time eviction.

    Entries carry a per-session lock so concurrent answers to one session
    are serialized; distinct sessions never contend.
    """

    def __init__(self, ttl: float = SESSION_TTL_SECONDS, clock=time.monotonic):
        self._ttl = ttl
        self._clock = clock
        self._entries: dict[str, _SessionEntry] = {}
        self._lock = threading.Lock()

    def _evict_stale(self, now: float) -> None:
        dead = [sid for sid, e in self._entries.items() if now - e.last_access > self._ttl]
        for sid in dead:
            del self._entries[sid]

    def put(self, session: QuizSession, learner: str) -> None:
        now = self._clock()
        with self._lock:
            self._evict_stale(now)
            self._entries[session.session_id] = _SessionEntry(
                session=session, learner=learner, last_access=now
            )

    def get(self, session_id: str) -> _SessionEntry:
        now = self._clock()
        with self._lock:
            self._evict_stale(now)
            entry = self._entries.get(session_id)
            if entry is None:
                raise UnknownSessionError(f"no session {session_id!r}")
            entry.last_access = now
            return entry

    def __len__(self) -> int:
        return len(self._entries)


class _LearnerLocks:
    def __init__(self):
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def for_learner(self, learner: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(learner, threading.Lock())


def _audio_url(path: str) -> str:
    return "/" + path


def _question_out(question: PublicQuestion) -> schemas.QuestionOut:
    prompt = schemas.PromptOut()
    if question.prompt.audio is not None:
        prompt.audio_url = _audio_url(question.prompt.audio.path)
    if question.prompt.text is not None:
        prompt.text = question.prompt.text
    return schemas.QuestionOut(
        number=question.number,
        total=question.total,
        mode=question.mode,
        prompt=prompt,
        options=[schemas.OptionOut(id=o.id, display=o.display) for o in question.options],
    )


def _progress_out(progress: ProgressRecord) -> schemas.ProgressOut:
    return schemas.ProgressOut(
        learner=progress.learner,
        lock_mode=progress.lock_mode,
        entries=[
            schemas.ProgressEntryOut(
                volume=volume,
                lesson=lesson,
                attempts=entry.attempts,
                best_score=entry.best_score,
                mastered=entry.mastered,
                last_seed=entry.last_seed,
            )
            for (volume, lesson), entry in sorted(progress.entries.items())
        ],
    )


def _resolve_config(raw: schemas.QuizConfigIn | None) -> QuizConfig:
    raw = raw or schemas.QuizConfigIn()
    return QuizConfig(
        seed=raw.seed if raw.seed is not None else secrets.randbits(64),
        num_questions=raw.num_questions or quiz_engine.DEFAULT_NUM_QUESTIONS,
        num_options=raw.num_options or quiz_engine.DEFAULT_NUM_OPTIONS,
        mode=raw.mode or quiz_engine.QuizMode.AUDIO_TO_GLYPH,
        mastery_threshold=raw.mastery_threshold or quiz_engine.DEFAULT_MASTERY_THRESHOLD,
    )


def _check_learner(learner: str) -> str:
    if not _LEARNER_RE.match(learner):
        raise BadPathError(f"learner name {learner!r} is not allowed")
    return learner


def create_app(config: ServiceConfig) -> FastAPI:
    """Build the service application; raises PackLoadError when the pack at
    ``config.pack_path`` does not parse and validate cleanly."""
    pack_dir = Path(config.pack_path)
    try:
        pack, report = load_pack_dir(pack_dir)
    except OSError as exc:
        raise PackLoadError(f"cannot read pack at {pack_dir}: {exc}") from exc
    except IqroError as exc:
        raise PackLoadError(f"pack at {pack_dir} failed to parse: [{exc.code}] {exc.message}") from exc
    if not report.ok:
        raise PackLoadError(
            f"pack at {pack_dir} has {len(report.errors)} validation error(s)", report
        )

    data_dir = Path(config.data_dir)
    sessions = SessionStore()
    learner_locks = _LearnerLocks()

    app = FastAPI(title="iqrokit session service", version="0.1.0")
    app.state.pack = pack
    app.state.sessions = sessions
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET", "POST"], allow_headers=["*"]
    )

    @app.exception_handler(IqroError)
    async def engine_error_handler(_request: Request, exc: IqroError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"code": "E_SCHEMA", "message": str(exc.errors()[:1])}
        )

    @app.get("/api/pack", response_model=schemas.PackInfo)
    def pack_info() -> schemas.PackInfo:
        return schemas.PackInfo(
            title=pack.title,
            about=pack.about,
            how_to=pack.how_to,
            volumes=[
                schemas.VolumeSummary(
                    index=volume.index,
                    title=volume.title,
                    lessons=[
                        schemas.LessonSummary(
                            id=lesson.id,
                            title=lesson.title,
                            ordinal=ordinal,
                            page_count=len(lesson.pages),
                        )
                        for ordinal, lesson in enumerate(volume.lessons, start=1)
                    ],
                )
                for volume in pack.volumes
            ],
        )

    @app.get("/api/alphabet", response_model=schemas.AlphabetOut)
    def alphabet() -> schemas.AlphabetOut:
        return schemas.AlphabetOut(
            entries=[
                schemas.AlphabetEntryOut(
                    key=entry.key,
                    text=entry.text,
                    translit=entry.translit,
                    audio=entry.audio.path,
                    audio_url=_audio_url(entry.audio.path),
                )
                for entry in pack.alphabet
            ]
        )

    @app.get("/api/volumes/{volume}/lessons/{lesson}/pages/{page}", response_model=schemas.PageOut)
    def page_grid(volume: int, lesson: int, page: int) -> schemas.PageOut:
        grid = page_at(pack, volume, lesson, page)
        lesson_obj = lesson_at(pack, volume, lesson)
        return schemas.PageOut(
            volume=volume,
            lesson=lesson,
            page=page,
            page_count=len(lesson_obj.pages),
            lesson_id=lesson_obj.id,
            lesson_title=lesson_obj.title,
            rows=[
                [
                    schemas.PageItemOut(
                        id=item_id,
                        text=pack.items[item_id].text,
                        translit=pack.items[item_id].translit,
                        audio_url=_audio_url(pack.items[item_id].audio.path),
                    )
                    for item_id in row
                ]
                for row in grid.rows
            ],
        )

    @app.get("/api/progress/{learner}", response_model=schemas.ProgressOut)
    def learner_progress(learner: str) -> schemas.ProgressOut:
        _check_learner(learner)
        return _progress_out(load_progress(progress_path(data_dir, learner), learner))

    @app.post("/api/quiz", response_model=schemas.QuizStartOut)
    def start_quiz(body: schemas.QuizStartIn) -> schemas.QuizStartOut:
        learner = _check_learner(body.learner)
        quiz_config = _resolve_config(body.config)
        lesson_ref = LessonRef(volume=body.volume, lesson=body.lesson)
        progress = load_progress(progress_path(data_dir, learner), learner)
        if not is_unlocked(progress, pack, lesson_ref):
            raise LockedLessonError(
                f"lesson ({lesson_ref.volume}, {lesson_ref.lesson}) is locked until the previous lesson is mastered"
            )
        session = quiz_engine.start_quiz(pack, lesson_ref, quiz_config)
        sessions.put(session, learner)
        return schemas.QuizStartOut(
            session_id=session.session_id,
            volume=lesson_ref.volume,
            lesson=lesson_ref.lesson,
            config=schemas.QuizConfigOut(
                num_questions=quiz_config.num_questions,
                num_options=quiz_config.num_options,
                mode=quiz_config.mode,
                seed=quiz_config.seed,
                mastery_threshold=quiz_config.mastery_threshold,
            ),
            question=_question_out(quiz_engine.current_question(session)),
        )

    @app.post("/api/quiz/{session_id}/answer", response_model=schemas.AnswerOut)
    def answer(session_id: str, body: schemas.AnswerIn) -> schemas.AnswerOut:
        entry = sessions.get(session_id)
        with entry.lock:
            feedback, updated = quiz_engine.submit_answer(entry.session, body.chosen_index)
            entry.session = updated
            next_question = None
            result_out = None
            if updated.state is quiz_engine.SessionState.FINISHED:
                result = quiz_engine.finish(updated)
                with learner_locks.for_learner(entry.learner):
                    path = progress_path(data_dir, entry.learner)
                    progress = load_progress(path, entry.learner)
                    progress = record_result(
                        progress, updated.lesson_ref, result, updated.config.seed
                    )
                    save_progress(progress, path)
                result_out = schemas.ResultOut(
                    correct_count=result.correct_count,
                    total=result.total,
                    mastered=result.mastered,
                )
            else:
                next_question = _question_out(quiz_engine.current_question(updated))
        return schemas.AnswerOut(
            verdict=feedback.verdict.value,
            message_key=feedback.message_key,
            message=render_message(feedback.message_key),
            correct_option=schemas.OptionOut(
                id=feedback.correct_option.id, display=feedback.correct_option.display
            ),
            next_question=next_question,
            result=result_out,
        )

    @app.get("/assets/{asset_path:path}")
    def asset(asset_path: str) -> FileResponse:
        segments = asset_path.split("/")
        if (
            not asset_path
            or "\\" in asset_path
            or asset_path.startswith("/")
            or any(seg in ("", ".", "..") for seg in segments)
        ):
            raise BadPathError(f"bad asset path {asset_path!r}")
        target = pack_dir / "assets" / asset_path
        if not target.is_file():
            raise UnknownAssetError(f"no asset {asset_path!r}")
        media_type = "audio/wav" if asset_path.endswith(".wav") else None
        return FileResponse(target, media_type=media_type)

    if config.ui_dir is not None and Path(config.ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
