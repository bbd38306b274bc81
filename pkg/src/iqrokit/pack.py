"""Content-pack manifest parsing, asset validation, and canonical output.

A pack lives in a directory:

    pack.json            manifest (schema below)
    assets/audio/*.wav   referenced audio files (any extension accepted)

Manifest schema, with key order equal to the canonical serialization order:

    {"format_version": 1, "title": str, "about": str, "how_to": str,
     "alphabet": [{"key","text","translit","audio"}, ...],
     "items": {id: {"text","translit","base_letter","audio"[,"image"]}, ...},
     "volumes": [{"index","title",
                  "lessons": [{"id","title","pages":[{"rows":[[id,...],...]},...]},...]},...]}

``parse_pack`` raises on structural problems (bad syntax, bad types,
duplicate ids, dangling references, wrong format version).
``validate_assets`` never raises: consistency findings between the pack and
the files actually on disk land in a ValidationReport. A pack is loadable
iff the report carries zero errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .errors import (
    BadVersionError,
    DanglingRefError,
    DuplicateIdError,
    ManifestSyntaxError,
    SchemaError,
)
from .model import (
    ARABIC_RANGES,
    ITEM_ID_RE,
    PACK_FORMAT_VERSION,
    AlphabetEntry,
    AssetRef,
    ContentPack,
    GlyphItem,
    Lesson,
    Page,
    Volume,
    is_arabic_text,
)

# Guard rails against pathological inputs; generous for real curricula.
MAX_MANIFEST_BYTES = 8 * 1024 * 1024
MAX_PACK_ITEMS = 10_000

ASSET_DIR = "assets"

_ROOT_KEYS = ("format_version", "title", "about", "how_to", "alphabet", "items", "volumes")
_ALPHABET_KEYS = ("key", "text", "translit", "audio")
_ITEM_KEYS = ("text", "translit", "base_letter", "audio")
_VOLUME_KEYS = ("index", "title", "lessons")
_LESSON_KEYS = ("id", "title", "pages")


@dataclass
class ValidationIssue:
    code: str
    path: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass
class ValidationReport:
    """Findings of the pack/asset consistency check; errors block loading,
    warnings never do."""

    errors: list[ValidationIssue] = field(default_factory=list)
    warnings: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict[str, list[dict[str, str]]]:
        return {
            "errors": [issue.to_dict() for issue in self.errors],
            "warnings": [issue.to_dict() for issue in self.warnings],
        }


class _JsonObject(dict):
    """dict that remembers its raw key sequence so duplicates survive parsing."""

    def __init__(self, pairs):
        super().__init__(pairs)
        self.keys_seen = [k for k, _ in pairs]


def _duplicate_key(obj: _JsonObject) -> str | None:
    seen: set[str] = set()
    for key in obj.keys_seen:
        if key in seen:
            return key
        seen.add(key)
    return None


def _expect_object(value: Any, path: str) -> _JsonObject:
    if not isinstance(value, _JsonObject):
        raise SchemaError(f"{path}: expected an object", path=path)
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"{path}: expected a list", path=path)
    return value


def _expect_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{path}: expected a string", path=path)
    return value


def _expect_int(value: Any, path: str) -> int:
    # bool is an int subclass; reject it explicitly
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{path}: expected an integer", path=path)
    return value


def _check_keys(obj: _JsonObject, allowed: Iterable[str], required: Iterable[str], path: str) -> None:
    dup = _duplicate_key(obj)
    if dup is not None:
        raise SchemaError(f"{path}: duplicate field {dup!r}", path=path)
    allowed_set = set(allowed)
    for key in obj:
        if key not in allowed_set:
            raise SchemaError(f"{path}: unknown field {key!r}", path=path)
    for key in required:
        if key not in obj:
            raise SchemaError(f"{path}: missing field {key!r}", path=path)


def _parse_asset_path(value: Any, path: str) -> AssetRef:
    text = _expect_str(value, path)
    if not text:
        raise SchemaError(f"{path}: asset path is empty", path=path)
    if "\\" in text:
        raise SchemaError(f"{path}: asset path must use forward slashes", path=path)
    if text.startswith("/"):
        raise SchemaError(f"{path}: asset path must be relative", path=path)
    segments = text.split("/")
    if any(seg in ("", ".", "..") for seg in segments):
        raise SchemaError(f"{path}: asset path {text!r} has invalid segments", path=path)
    if segments[0] != ASSET_DIR:
        raise SchemaError(f"{path}: asset path must live under {ASSET_DIR}/", path=path)
    return AssetRef(text)


def _check_item_text(text: str, path: str) -> None:
    if not text:
        raise SchemaError(f"{path}: glyph text is empty", path=path)
    for ch in text:
        if not any(lo <= ord(ch) <= hi for lo, hi in ARABIC_RANGES):
            raise SchemaError(
                f"{path}: U+{ord(ch):04X} is outside the Arabic code-point ranges",
                path=path,
            )


def parse_pack(
    manifest_bytes: bytes,
    *,
    max_bytes: int = MAX_MANIFEST_BYTES,
    max_items: int = MAX_PACK_ITEMS,
) -> ContentPack:
    """Parse manifest bytes into a ContentPack, enforcing every structural
    and referential invariant of the model."""
    if len(manifest_bytes) > max_bytes:
        raise SchemaError(f"manifest exceeds {max_bytes} bytes", path="")
    try:
        text = manifest_bytes.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ManifestSyntaxError(f"manifest is not valid UTF-8: {exc}") from None
    try:
        root = json.loads(text, object_pairs_hook=_JsonObject)
    except json.JSONDecodeError as exc:
        raise ManifestSyntaxError(f"manifest is not valid JSON: {exc}") from None

    root = _expect_object(root, "$")
    _check_keys(root, _ROOT_KEYS, _ROOT_KEYS, "$")

    version = _expect_int(root["format_version"], "format_version")
    if version != PACK_FORMAT_VERSION:
        raise BadVersionError(
            f"unsupported format_version {version} (expected {PACK_FORMAT_VERSION})",
            path="format_version",
        )

    title = _expect_str(root["title"], "title")
    about = _expect_str(root["about"], "about")
    how_to = _expect_str(root["how_to"], "how_to")

    alphabet: list[AlphabetEntry] = []
    seen_keys: set[str] = set()
    for i, raw in enumerate(_expect_list(root["alphabet"], "alphabet")):
        where = f"alphabet[{i}]"
        entry = _expect_object(raw, where)
        _check_keys(entry, _ALPHABET_KEYS, _ALPHABET_KEYS, where)
        key = _expect_str(entry["key"], f"{where}.key")
        if not key:
            raise SchemaError(f"{where}.key: empty key", path=f"{where}.key")
        if key in seen_keys:
            raise DuplicateIdError(f"{where}: duplicate alphabet key {key!r}", path=where)
        seen_keys.add(key)
        letter_text = _expect_str(entry["text"], f"{where}.text")
        if not letter_text:
            raise SchemaError(f"{where}.text: empty letter text", path=f"{where}.text")
        alphabet.append(
            AlphabetEntry(
                key=key,
                text=letter_text,
                translit=_expect_str(entry["translit"], f"{where}.translit"),
                audio=_parse_asset_path(entry["audio"], f"{where}.audio"),
            )
        )

    items_obj = _expect_object(root["items"], "items")
    dup = _duplicate_key(items_obj)
    if dup is not None:
        raise DuplicateIdError(f"items: item id {dup!r} declared twice", path=f"items.{dup}")
    if len(items_obj) > max_items:
        raise SchemaError(f"items: more than {max_items} items", path="items")
    items: dict[str, GlyphItem] = {}
    for item_id, raw in items_obj.items():
        where = f"items.{item_id}"
        if not ITEM_ID_RE.match(item_id):
            raise SchemaError(
                f"{where}: id must match [a-z0-9_]+", path=where
            )
        body = _expect_object(raw, where)
        _check_keys(body, _ITEM_KEYS + ("image",), _ITEM_KEYS, where)
        item_text = _expect_str(body["text"], f"{where}.text")
        _check_item_text(item_text, f"{where}.text")
        base_letter = _expect_str(body["base_letter"], f"{where}.base_letter")
        if base_letter not in seen_keys:
            raise DanglingRefError(
                f"{where}.base_letter: {base_letter!r} is not an alphabet key",
                path=f"{where}.base_letter",
            )
        image = None
        if "image" in body:
            image = _parse_asset_path(body["image"], f"{where}.image")
        items[item_id] = GlyphItem(
            id=item_id,
            text=item_text,
            translit=_expect_str(body["translit"], f"{where}.translit"),
            base_letter=base_letter,
            audio=_parse_asset_path(body["audio"], f"{where}.audio"),
            image=image,
        )

    volumes: list[Volume] = []
    seen_lesson_ids: set[str] = set()
    for vi, raw in enumerate(_expect_list(root["volumes"], "volumes")):
        where = f"volumes[{vi}]"
        vol = _expect_object(raw, where)
        _check_keys(vol, _VOLUME_KEYS, _VOLUME_KEYS, where)
        index = _expect_int(vol["index"], f"{where}.index")
        if index != vi + 1:
            raise SchemaError(
                f"{where}.index: volume indices must be consecutive from 1 (got {index})",
                path=f"{where}.index",
            )
        lessons: list[Lesson] = []
        raw_lessons = _expect_list(vol["lessons"], f"{where}.lessons")
        if not raw_lessons:
            raise SchemaError(f"{where}.lessons: volume has no lessons", path=f"{where}.lessons")
        for li, raw_lesson in enumerate(raw_lessons):
            lwhere = f"{where}.lessons[{li}]"
            lesson = _expect_object(raw_lesson, lwhere)
            _check_keys(lesson, _LESSON_KEYS, _LESSON_KEYS, lwhere)
            lesson_id = _expect_str(lesson["id"], f"{lwhere}.id")
            if not lesson_id:
                raise SchemaError(f"{lwhere}.id: empty lesson id", path=f"{lwhere}.id")
            if lesson_id in seen_lesson_ids:
                raise DuplicateIdError(
                    f"{lwhere}: duplicate lesson id {lesson_id!r}", path=lwhere
                )
            seen_lesson_ids.add(lesson_id)
            pages: list[Page] = []
            raw_pages = _expect_list(lesson["pages"], f"{lwhere}.pages")
            if not raw_pages:
                raise SchemaError(f"{lwhere}.pages: lesson has no pages", path=f"{lwhere}.pages")
            for pi, raw_page in enumerate(raw_pages):
                pwhere = f"{lwhere}.pages[{pi}]"
                page = _expect_object(raw_page, pwhere)
                _check_keys(page, ("rows",), ("rows",), pwhere)
                rows: list[tuple[str, ...]] = []
                for ri, raw_row in enumerate(_expect_list(page["rows"], f"{pwhere}.rows")):
                    rwhere = f"{pwhere}.rows[{ri}]"
                    row_ids = []
                    for ci, raw_id in enumerate(_expect_list(raw_row, rwhere)):
                        ref = _expect_str(raw_id, f"{rwhere}[{ci}]")
                        if ref not in items:
                            raise DanglingRefError(
                                f"{rwhere}[{ci}]: page references unknown item {ref!r}",
                                path=f"{rwhere}[{ci}]",
                            )
                        row_ids.append(ref)
                    rows.append(tuple(row_ids))
                pages.append(Page(rows=tuple(rows)))
            lessons.append(Lesson(id=lesson_id, title=_expect_str(lesson["title"], f"{lwhere}.title"), pages=tuple(pages)))
        volumes.append(Volume(index=index, title=_expect_str(vol["title"], f"{where}.title"), lessons=tuple(lessons)))

    return ContentPack(
        format_version=version,
        title=title,
        about=about,
        how_to=how_to,
        alphabet=tuple(alphabet),
        items=items,
        volumes=tuple(volumes),
    )


def validate_assets(pack: ContentPack, asset_listing: set[str]) -> ValidationReport:
    """Check the pack against the set of asset paths actually present.

    Errors: MISSING_AUDIO (a referenced audio file is absent), EMPTY_LESSON
    (a lesson whose pages hold zero items). Warnings: ORPHAN_ITEM (item on
    no page), ORPHAN_ASSET (listed file referenced by nothing). Pure: the
    listing is an explicit input, the filesystem is never consulted.
    """
    report = ValidationReport()
    referenced_paths: set[str] = set()

    for i, entry in enumerate(pack.alphabet):
        referenced_paths.add(entry.audio.path)
        if entry.audio.path not in asset_listing:
            report.errors.append(
                ValidationIssue(
                    code="MISSING_AUDIO",
                    path=f"alphabet[{i}].audio",
                    message=f'audio "{entry.audio.path}" for letter "{entry.key}" is missing',
                )
            )
    for item_id, item in pack.items.items():
        referenced_paths.add(item.audio.path)
        if item.image is not None:
            referenced_paths.add(item.image.path)
        if item.audio.path not in asset_listing:
            report.errors.append(
                ValidationIssue(
                    code="MISSING_AUDIO",
                    path=f"items.{item_id}.audio",
                    message=f'audio "{item.audio.path}" for item "{item_id}" is missing',
                )
            )

    on_some_page: set[str] = set()
    for vi, volume in enumerate(pack.volumes):
        for li, lesson in enumerate(volume.lessons):
            count = 0
            for item_id in lesson.item_ids():
                on_some_page.add(item_id)
                count += 1
            if count == 0:
                report.errors.append(
                    ValidationIssue(
                        code="EMPTY_LESSON",
                        path=f"volumes[{vi}].lessons[{li}]",
                        message=f'lesson "{lesson.id}" holds zero items',
                    )
                )

    for item_id in pack.items:
        if item_id not in on_some_page:
            report.warnings.append(
                ValidationIssue(
                    code="ORPHAN_ITEM",
                    path=f"items.{item_id}",
                    message=f'item "{item_id}" appears on no page',
                )
            )
    for asset_path in sorted(asset_listing):
        if asset_path not in referenced_paths:
            report.warnings.append(
                ValidationIssue(
                    code="ORPHAN_ASSET",
                    path=asset_path,
                    message=f'asset "{asset_path}" is referenced by nothing',
                )
            )
    return report


def _manifest_dict(pack: ContentPack) -> dict[str, Any]:
    items: dict[str, Any] = {}
    for item_id in sorted(pack.items):
        item = pack.items[item_id]
        body: dict[str, Any] = {
            "text": item.text,
            "translit": item.translit,
            "base_letter": item.base_letter,
            "audio": item.audio.path,
        }
        if item.image is not None:
            body["image"] = item.image.path
        items[item_id] = body
    return {
        "format_version": pack.format_version,
        "title": pack.title,
        "about": pack.about,
        "how_to": pack.how_to,
        "alphabet": [
            {"key": e.key, "text": e.text, "translit": e.translit, "audio": e.audio.path}
            for e in pack.alphabet
        ],
        "items": items,
        "volumes": [
            {
                "index": v.index,
                "title": v.title,
                "lessons": [
                    {
                        "id": lesson.id,
                        "title": lesson.title,
                        "pages": [{"rows": [list(row) for row in page.rows]} for page in lesson.pages],
                    }
                    for lesson in v.lessons
                ],
            }
            for v in pack.volumes
        ],
    }


def serialize_pack(pack: ContentPack) -> bytes:
    """Canonical manifest bytes: fixed key order, items in lexicographic id
    order, UTF-8, LF line endings, trailing newline. Deterministic, and a
    fixed point of parse -> serialize."""
    text = json.dumps(_manifest_dict(pack), ensure_ascii=False, indent=2)
    return (text + "\n").encode("utf-8")


def list_assets(pack_dir: str | Path) -> set[str]:
    """Relative paths (posix form) of every file under the pack's assets/."""
    root = Path(pack_dir)
    asset_root = root / ASSET_DIR
    if not asset_root.is_dir():
        return set()
    return {
        p.relative_to(root).as_posix()
        for p in asset_root.rglob("*")
        if p.is_file()
    }


def load_pack_dir(pack_dir: str | Path) -> tuple[ContentPack, ValidationReport]:
    """Parse ``pack.json`` in ``pack_dir`` and validate it against the files
    actually present. I/O errors (missing directory or manifest) propagate."""
    pack_dir = Path(pack_dir)
    manifest_bytes = (pack_dir / "pack.json").read_bytes()
    pack = parse_pack(manifest_bytes)
    return pack, validate_assets(pack, list_assets(pack_dir))
