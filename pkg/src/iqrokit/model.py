"""Domain model for content packs.

A pack is a curriculum: volumes contain lessons, lessons contain pages,
pages lay out rows of tappable glyph items. Items bind an Arabic-script
glyph to its pronunciation label and audio asset; the pack alphabet lists
the base letters those items derive from.

Everything here is an immutable value. Packs are safe to share between
threads once constructed; no operation mutates them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import UnknownLessonError, UnknownItemError

PACK_FORMAT_VERSION = 1

ITEM_ID_RE = re.compile(r"^[a-z0-9_]+$")

# Code-point ranges item text must stay within: Arabic, Arabic Presentation
# Forms A and B.
ARABIC_RANGES = ((0x0600, 0x06FF), (0xFB50, 0xFDFF), (0xFE70, 0xFEFF))


def is_arabic_text(text: str) -> bool:
    """True when every code point of ``text`` falls in the Arabic ranges."""
    return bool(text) and all(
        any(lo <= ord(ch) <= hi for lo, hi in ARABIC_RANGES) for ch in text
    )


@dataclass(frozen=True)
class AssetRef:
    """Pack-root-relative path of an asset, e.g. ``assets/audio/ba_fatha.wav``."""

    path: str


@dataclass(frozen=True)
class GlyphItem:
    """One tappable unit: a glyph, its pronunciation label, and its sound."""

    id: str
    text: str
    translit: str
    base_letter: str
    audio: AssetRef
    image: AssetRef | None = None  # optional raster fallback, ignored by the engine


@dataclass(frozen=True)
class AlphabetEntry:
    """A base letter of the pack alphabet with its name and pronunciation audio."""

    key: str
    text: str
    translit: str
    audio: AssetRef


@dataclass(frozen=True)
class Page:
    """Rows of item ids, laid out in learning order (top-to-bottom rows)."""

    rows: tuple[tuple[str, ...], ...]

    def item_ids(self) -> Iterator[str]:
        for row in self.rows:
            yield from row


@dataclass(frozen=True)
class Lesson:
    id: str
    title: str
    pages: tuple[Page, ...]

    def item_ids(self) -> Iterator[str]:
        for page in self.pages:
            yield from page.item_ids()


@dataclass(frozen=True)
class Volume:
    index: int
    title: str
    lessons: tuple[Lesson, ...]

    def item_ids(self) -> Iterator[str]:
        for lesson in self.lessons:
            yield from lesson.item_ids()


@dataclass(frozen=True)
class ContentPack:
    format_version: int
    title: str
    about: str
    how_to: str
    alphabet: tuple[AlphabetEntry, ...]
    items: dict[str, GlyphItem]
    volumes: tuple[Volume, ...]

    def alphabet_keys(self) -> set[str]:
        return {entry.key for entry in self.alphabet}


def lookup_item(pack: ContentPack, item_id: str) -> GlyphItem:
    """Return the item with ``item_id``; raise E_UNKNOWN_ITEM when absent."""
    try:
        return pack.items[item_id]
    except KeyError:
        raise UnknownItemError(f"no item with id {item_id!r}") from None


def lesson_at(pack: ContentPack, volume_index: int, lesson_ordinal: int) -> Lesson:
    """Return the ``lesson_ordinal``-th lesson (1-based) of the volume with
    ``volume_index``; raise E_UNKNOWN_LESSON when either coordinate is out of
    range."""
    for volume in pack.volumes:
        if volume.index == volume_index:
            if 1 <= lesson_ordinal <= len(volume.lessons):
                return volume.lessons[lesson_ordinal - 1]
            break
    raise UnknownLessonError(
        f"no lesson at volume {volume_index}, lesson {lesson_ordinal}"
    )


def volume_at(pack: ContentPack, volume_index: int) -> Volume:
    for volume in pack.volumes:
        if volume.index == volume_index:
            return volume
    raise UnknownLessonError(f"no volume with index {volume_index}")


def page_at(pack: ContentPack, volume_index: int, lesson_ordinal: int, page_no: int) -> Page:
    """Return the 1-based ``page_no`` of a lesson; coordinates beyond the pack
    raise E_UNKNOWN_LESSON."""
    lesson = lesson_at(pack, volume_index, lesson_ordinal)
    if not 1 <= page_no <= len(lesson.pages):
        raise UnknownLessonError(
            f"no page {page_no} in volume {volume_index}, lesson {lesson_ordinal}"
        )
    return lesson.pages[page_no - 1]


def distinct_items(pack: ContentPack, item_ids: Iterator[str]) -> list[GlyphItem]:
    """Items for ``item_ids`` in first-appearance order, duplicates dropped."""
    seen: set[str] = set()
    out: list[GlyphItem] = []
    for item_id in item_ids:
        if item_id not in seen:
            seen.add(item_id)
            out.append(lookup_item(pack, item_id))
    return out


def lesson_items(pack: ContentPack, volume_index: int, lesson_ordinal: int) -> list[GlyphItem]:
    """Distinct items of one lesson, in page/row/column reading order."""
    return distinct_items(pack, lesson_at(pack, volume_index, lesson_ordinal).item_ids())


def volume_items(pack: ContentPack, volume_index: int) -> list[GlyphItem]:
    """Distinct items of one volume, in lesson/page/row reading order."""
    return distinct_items(pack, volume_at(pack, volume_index).item_ids())
