"""Menu navigation state machine and in-lesson glyph tapping.

The app is a hub-and-spoke menu: Home leads to the letter listing, the help
text, the alphabet chart, a lesson, a quiz, or the about view; Back returns
to Home from any of them; Exit (from Home only) terminates. States and
actions are plain values, so navigation is a pure function and any action
sequence can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadTransitionError, GridIndexError
from .model import AlphabetEntry, AssetRef, ContentPack, lesson_at, lookup_item, page_at


@dataclass(frozen=True)
class Home:
    pass


@dataclass(frozen=True)
class FileInfo:
    pass


@dataclass(frozen=True)
class HowTo:
    pass


@dataclass(frozen=True)
class AlphabetChart:
    pass


@dataclass(frozen=True)
class About:
    pass


@dataclass(frozen=True)
class Exited:
    pass


@dataclass(frozen=True)
class LessonView:
    volume: int
    lesson: int
    page: int


@dataclass(frozen=True)
class QuizView:
    session_id: str


AppState = Home | FileInfo | HowTo | AlphabetChart | About | Exited | LessonView | QuizView


@dataclass(frozen=True)
class SelectFile:
    pass


@dataclass(frozen=True)
class SelectHowTo:
    pass


@dataclass(frozen=True)
class SelectAlphabet:
    pass


@dataclass(frozen=True)
class SelectAbout:
    pass


@dataclass(frozen=True)
class SelectLesson:
    volume: int
    lesson: int


@dataclass(frozen=True)
class SelectTest:
    volume: int
    lesson: int


@dataclass(frozen=True)
class NextPage:
    pass


@dataclass(frozen=True)
class PrevPage:
    pass


@dataclass(frozen=True)
class Back:
    pass


@dataclass(frozen=True)
class Exit:
    pass


MenuAction = (
    SelectFile
    | SelectHowTo
    | SelectAlphabet
    | SelectAbout
    | SelectLesson
    | SelectTest
    | NextPage
    | PrevPage
    | Back
    | Exit
)


def _bad(state: AppState, action: MenuAction) -> BadTransitionError:
    return BadTransitionError(
        f"action {type(action).__name__} is not available in state {type(state).__name__}"
    )


def quiz_view_id(volume: int, lesson: int) -> str:
    """Deterministic local identifier for the quiz view of one lesson.

    Navigation is pure, so it cannot mint random ids; callers that run real
    quiz sessions map this to a service session separately.
    """
    return f"quiz-v{volume}-l{lesson}"


def navigate(pack: ContentPack, state: AppState, action: MenuAction) -> AppState:
    """Apply ``action`` to ``state`` and return the successor state.

    Raises E_BAD_TRANSITION for any (state, action) pair outside the menu
    tree (the table is total), and E_UNKNOWN_LESSON when lesson coordinates
    do not exist in the pack.
    """
    if isinstance(state, Exited):
        raise _bad(state, action)

    if isinstance(state, Home):
        if isinstance(action, SelectFile):
            return FileInfo()
        if isinstance(action, SelectHowTo):
            return HowTo()
        if isinstance(action, SelectAlphabet):
            return AlphabetChart()
        if isinstance(action, SelectAbout):
            return About()
        if isinstance(action, SelectLesson):
            lesson_at(pack, action.volume, action.lesson)
            return LessonView(volume=action.volume, lesson=action.lesson, page=1)
        if isinstance(action, SelectTest):
            lesson_at(pack, action.volume, action.lesson)
            return QuizView(session_id=quiz_view_id(action.volume, action.lesson))
        if isinstance(action, Exit):
            return Exited()
        raise _bad(state, action)

    if isinstance(state, LessonView):
        if isinstance(action, Back):
            return Home()
        if isinstance(action, (NextPage, PrevPage)):
            count = len(lesson_at(pack, state.volume, state.lesson).pages)
            step = 1 if isinstance(action, NextPage) else -1
            page = min(max(state.page + step, 1), count)
            return LessonView(volume=state.volume, lesson=state.lesson, page=page)
        raise _bad(state, action)

    # FileInfo, HowTo, AlphabetChart, About, QuizView: Back is the only move.
    if isinstance(action, Back):
        return Home()
    raise _bad(state, action)


def tap_item(pack: ContentPack, state: LessonView, row: int, col: int) -> AssetRef:
    """Audio reference of the glyph at 1-based (row, col) on the current page.

    Playback is the caller's concern; the engine only hands back the binding.
    """
    page = page_at(pack, state.volume, state.lesson, state.page)
    if not 1 <= row <= len(page.rows):
        raise GridIndexError(f"row {row} outside page grid")
    row_ids = page.rows[row - 1]
    if not 1 <= col <= len(row_ids):
        raise GridIndexError(f"column {col} outside row {row}")
    return lookup_item(pack, row_ids[col - 1]).audio


def alphabet_chart(pack: ContentPack) -> list[AlphabetEntry]:
    """The pack alphabet in pack order (serves both the letter listing and
    the chart view)."""
    return list(pack.alphabet)


def help_text(pack: ContentPack) -> str:
    return pack.how_to
