"""Seeded multiple-choice drills over a lesson's items.

Question generation is fully deterministic: a splitmix64 stream seeded from
the config drives every draw, so two sessions started with the same pack,
lesson, and config hold identical questions in identical option orders. The
procedure, in stream order:

1. Shuffle the lesson's distinct items (Fisher-Yates); that pass is the
   target sequence. When more questions are requested than the lesson has
   items, append further shuffled passes until enough targets exist, then
   truncate. Coverage comes before repetition.
2. For each target in turn: draw ``num_options - 1`` distractors without
   replacement from the candidate pool minus the target (successive bounded
   draws with removal), then shuffle target plus distractors into the final
   option order.

The candidate pool is the lesson's items; a lesson with fewer distinct
items than ``num_options`` falls back to the whole volume's items.

Sessions are immutable values: answering returns a new session.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, replace
from enum import Enum

from .errors import BadOptionError, PoolTooSmallError, SessionFinishedError, SessionInProgressError
from .model import AssetRef, ContentPack, GlyphItem, lesson_items, volume_items
from .rng import SplitMix64

DEFAULT_NUM_QUESTIONS = 10
DEFAULT_NUM_OPTIONS = 4
DEFAULT_MASTERY_THRESHOLD = 0.8

MSG_CORRECT = "answer.correct"
MSG_WRONG = "answer.wrong"


class QuizMode(str, Enum):
    AUDIO_TO_GLYPH = "audio_to_glyph"  # hear the sound, pick the glyph
    GLYPH_TO_TRANSLIT = "glyph_to_translit"  # see the glyph, pick the pronunciation


class Verdict(str, Enum):
    CORRECT = "correct"
    WRONG = "wrong"


class SessionState(str, Enum):
    IN_PROGRESS = "in_progress"
    FINISHED = "finished"


@dataclass(frozen=True)
class QuizConfig:
    seed: int
    num_questions: int = DEFAULT_NUM_QUESTIONS
    num_options: int = DEFAULT_NUM_OPTIONS
    mode: QuizMode = QuizMode.AUDIO_TO_GLYPH
    mastery_threshold: float = DEFAULT_MASTERY_THRESHOLD


@dataclass(frozen=True)
class LessonRef:
    volume: int
    lesson: int


@dataclass(frozen=True)
class Option:
    id: str
    display: str


@dataclass(frozen=True)
class QuizPrompt:
    """What the learner is shown: audio for AUDIO_TO_GLYPH, text otherwise."""

    audio: AssetRef | None = None
    text: str | None = None


@dataclass(frozen=True)
class Question:
    target_id: str
    prompt: QuizPrompt
    options: tuple[Option, ...]
    correct_index: int  # 0-based; withheld from learners by callers


@dataclass(frozen=True)
class PublicQuestion:
    """A question as shown to the learner: no answer key, no target id."""

    number: int  # 1-based position in the session
    total: int
    mode: QuizMode
    prompt: QuizPrompt
    options: tuple[Option, ...]


@dataclass(frozen=True)
class Answer:
    chosen_index: int
    correct: bool


@dataclass(frozen=True)
class QuizSession:
    session_id: str
    lesson_ref: LessonRef
    config: QuizConfig
    questions: tuple[Question, ...]
    cursor: int
    answers: tuple[Answer, ...]
    state: SessionState


@dataclass(frozen=True)
class Feedback:
    verdict: Verdict
    message_key: str
    correct_option: Option


@dataclass(frozen=True)
class QuizResult:
    correct_count: int
    total: int
    mastered: bool


def _validate_config(config: QuizConfig) -> None:
    if config.num_questions < 1:
        raise ValueError("num_questions must be >= 1")
    if config.num_options < 2:
        raise ValueError("num_options must be >= 2")
    if not 0 < config.mastery_threshold <= 1:
        raise ValueError("mastery_threshold must be in (0, 1]")
    if not 0 <= config.seed < (1 << 64):
        raise ValueError("seed must be a 64-bit unsigned integer")


def _display(item: GlyphItem, mode: QuizMode) -> str:
    return item.text if mode is QuizMode.AUDIO_TO_GLYPH else item.translit


def generate_question(
    rng: SplitMix64,
    pool: list[GlyphItem],
    target: GlyphItem,
    mode: QuizMode,
    num_options: int,
) -> Question:
    """One question: the target plus ``num_options - 1`` distinct distractors
    from ``pool`` minus the target, in seeded-shuffle order."""
    candidates = [item for item in pool if item.id != target.id]
    distractors: list[GlyphItem] = []
    for _ in range(num_options - 1):
        distractors.append(candidates.pop(rng.below(len(candidates))))
    ordered = rng.shuffled([target, *distractors])
    if mode is QuizMode.AUDIO_TO_GLYPH:
        prompt = QuizPrompt(audio=target.audio)
    else:
        prompt = QuizPrompt(text=target.text)
    return Question(
        target_id=target.id,
        prompt=prompt,
        options=tuple(Option(id=item.id, display=_display(item, mode)) for item in ordered),
        correct_index=next(i for i, item in enumerate(ordered) if item.id == target.id),
    )


def start_quiz(
    pack: ContentPack,
    lesson_ref: LessonRef,
    config: QuizConfig,
    session_id: str | None = None,
) -> QuizSession:
    """Create a session with all questions fixed up front.

    Raises E_UNKNOWN_LESSON for bad coordinates and E_POOL_TOO_SMALL when
    even the volume-wide fallback pool cannot fill one option set.
    """
    _validate_config(config)
    lesson_pool = lesson_items(pack, lesson_ref.volume, lesson_ref.lesson)
    pool = lesson_pool
    if len(pool) < config.num_options:
        pool = volume_items(pack, lesson_ref.volume)
    if len(pool) < config.num_options:
        raise PoolTooSmallError(
            f"{len(pool)} candidate items available, {config.num_options} options requested"
        )

    rng = SplitMix64(config.seed)
    targets: list[GlyphItem] = []
    while len(targets) < config.num_questions:
        targets.extend(rng.shuffled(lesson_pool))
    del targets[config.num_questions :]

    questions = tuple(
        generate_question(rng, pool, target, config.mode, config.num_options)
        for target in targets
    )
    return QuizSession(
        session_id=session_id if session_id is not None else secrets.token_hex(16),
        lesson_ref=lesson_ref,
        config=config,
        questions=questions,
        cursor=0,
        answers=(),
        state=SessionState.IN_PROGRESS,
    )


def current_question(session: QuizSession) -> PublicQuestion:
    """The question at the cursor, with the answer key withheld."""
    if session.state is not SessionState.IN_PROGRESS:
        raise SessionFinishedError("session is finished")
    question = session.questions[session.cursor]
    return PublicQuestion(
        number=session.cursor + 1,
        total=session.config.num_questions,
        mode=session.config.mode,
        prompt=question.prompt,
        options=question.options,
    )


def submit_answer(session: QuizSession, chosen_index: int) -> tuple[Feedback, QuizSession]:
    """Judge ``chosen_index`` against the current question and advance.

    Returns the feedback and the successor session value; the input session
    is never mutated.
    """
    if session.state is not SessionState.IN_PROGRESS:
        raise SessionFinishedError("session is finished")
    if not 0 <= chosen_index < session.config.num_options:
        raise BadOptionError(
            f"option index {chosen_index} out of range 0..{session.config.num_options - 1}"
        )
    question = session.questions[session.cursor]
    correct = chosen_index == question.correct_index
    feedback = Feedback(
        verdict=Verdict.CORRECT if correct else Verdict.WRONG,
        message_key=MSG_CORRECT if correct else MSG_WRONG,
        correct_option=question.options[question.correct_index],
    )
    cursor = session.cursor + 1
    updated = replace(
        session,
        cursor=cursor,
        answers=session.answers + (Answer(chosen_index=chosen_index, correct=correct),),
        state=SessionState.FINISHED
        if cursor == session.config.num_questions
        else SessionState.IN_PROGRESS,
    )
    return feedback, updated


def finish(session: QuizSession) -> QuizResult:
    """Final score and mastery verdict; only valid on a finished session."""
    if session.state is not SessionState.FINISHED:
        raise SessionInProgressError("session still has unanswered questions")
    correct_count = sum(1 for answer in session.answers if answer.correct)
    total = session.config.num_questions
    return QuizResult(
        correct_count=correct_count,
        total=total,
        mastered=correct_count / total >= session.config.mastery_threshold,
    )
