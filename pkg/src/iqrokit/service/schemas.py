"""Request/response models for the session service JSON API."""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..quiz import QuizMode


class ErrorBody(BaseModel):
    code: str
    message: str


class LessonSummary(BaseModel):
    id: str
    title: str
    ordinal: int
    page_count: int


class VolumeSummary(BaseModel):
    index: int
    title: str
    lessons: list[LessonSummary]


class PackInfo(BaseModel):
    title: str
    about: str
    how_to: str
    volumes: list[VolumeSummary]


class AlphabetEntryOut(BaseModel):
    key: str
    text: str
    translit: str
    audio: str
    audio_url: str


class AlphabetOut(BaseModel):
    entries: list[AlphabetEntryOut]


class PageItemOut(BaseModel):
    id: str
    text: str
    translit: str
    audio_url: str


class PageOut(BaseModel):
    volume: int
    lesson: int
    page: int
    page_count: int
    lesson_id: str
    lesson_title: str
    rows: list[list[PageItemOut]]


class QuizConfigIn(BaseModel):
    num_questions: int | None = Field(default=None, ge=1)
    num_options: int | None = Field(default=None, ge=2)
    mode: QuizMode | None = None
    seed: int | None = Field(default=None, ge=0, lt=1 << 64)
    mastery_threshold: float | None = Field(default=None, gt=0, le=1)


class QuizStartIn(BaseModel):
    volume: int
    lesson: int
    config: QuizConfigIn | None = None
    learner: str = "default"


class QuizConfigOut(BaseModel):
    num_questions: int
    num_options: int
    mode: QuizMode
    seed: int
    mastery_threshold: float


class OptionOut(BaseModel):
    id: str
    display: str


class PromptOut(BaseModel):
    audio_url: str | None = None
    text: str | None = None


class QuestionOut(BaseModel):
    number: int
    total: int
    mode: QuizMode
    prompt: PromptOut
    options: list[OptionOut]


class QuizStartOut(BaseModel):
    session_id: str
    volume: int
    lesson: int
    config: QuizConfigOut
    question: QuestionOut


class AnswerIn(BaseModel):
    chosen_index: int


class ResultOut(BaseModel):
    correct_count: int
    total: int
    mastered: bool


class AnswerOut(BaseModel):
    verdict: str
    message_key: str
    message: str
    correct_option: OptionOut
    next_question: QuestionOut | None = None
    result: ResultOut | None = None


class ProgressEntryOut(BaseModel):
    volume: int
    lesson: int
    attempts: int
    best_score: float
    mastered: bool
    last_seed: int


class ProgressOut(BaseModel):
    learner: str
    lock_mode: bool
    entries: list[ProgressEntryOut]
