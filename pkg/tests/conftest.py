"""Shared fixtures and pack builders for the test suite."""

from __future__ import annotations

import random

import pytest

from iqrokit.model import AlphabetEntry, AssetRef, ContentPack, GlyphItem, Lesson, Page, Volume
from iqrokit.refpack import build_minimal_pack, build_reference_pack, write_pack_dir

FATHA = "َ"
ARABIC_LETTERS = "ابتثجحخدذرزسشصضطظعغفقكلمنوهي"


def glyph(item_id: str, letter_index: int, base: str, translit: str = "x") -> GlyphItem:
    return GlyphItem(
        id=item_id,
        text=ARABIC_LETTERS[letter_index % len(ARABIC_LETTERS)] + FATHA,
        translit=translit,
        base_letter=base,
        audio=AssetRef(f"assets/audio/{item_id}.wav"),
    )


def letter(key: str, letter_index: int) -> AlphabetEntry:
    return AlphabetEntry(
        key=key,
        text=ARABIC_LETTERS[letter_index % len(ARABIC_LETTERS)],
        translit=key,
        audio=AssetRef(f"assets/audio/letter_{key}.wav"),
    )


def pack_of(volumes: list[Volume], items: dict[str, GlyphItem], alphabet: list[AlphabetEntry]) -> ContentPack:
    return ContentPack(
        format_version=1,
        title="Fixture Pack",
        about="fixture",
        how_to="fixture help",
        alphabet=tuple(alphabet),
        items=items,
        volumes=tuple(volumes),
    )


def small_quiz_pack() -> ContentPack:
    """Volume 1: lesson 1 holds 2 items, lesson 2 holds 8 more, so quizzes on
    lesson 1 must fall back to the volume pool."""
    alphabet = [letter("l0", 0)]
    items = {f"i{n}": glyph(f"i{n}", n, "l0", translit=f"t{n}") for n in range(10)}
    lesson1 = Lesson(id="les1", title="Lesson 1", pages=(Page(rows=(("i0", "i1"),)),))
    lesson2 = Lesson(
        id="les2",
        title="Lesson 2",
        pages=(Page(rows=(tuple(f"i{n}" for n in range(2, 10)),)),),
    )
    return pack_of([Volume(index=1, title="Vol 1", lessons=(lesson1, lesson2))], items, alphabet)


def three_lesson_pack() -> ContentPack:
    """Two lessons in volume 1 plus one in volume 2; exercises the
    cross-volume unlock rule. Each lesson holds 4 distinct items."""
    alphabet = [letter("l0", 0)]
    items = {f"g{n}": glyph(f"g{n}", n, "l0", translit=f"t{n}") for n in range(12)}
    lessons_v1 = (
        Lesson(id="v1l1", title="1.1", pages=(Page(rows=(("g0", "g1"), ("g2", "g3"))),)),
        Lesson(id="v1l2", title="1.2", pages=(Page(rows=(("g4", "g5"), ("g6", "g7"))),)),
    )
    lessons_v2 = (
        Lesson(id="v2l1", title="2.1", pages=(Page(rows=(("g8", "g9"), ("g10", "g11"))),)),
    )
    return pack_of(
        [
            Volume(index=1, title="Vol 1", lessons=lessons_v1),
            Volume(index=2, title="Vol 2", lessons=lessons_v2),
        ],
        items,
        alphabet,
    )


def random_pack(rng: random.Random) -> ContentPack:
    """A structurally valid pack with randomized shape and content, for
    round-trip properties. Orphan items and shared audio are allowed."""
    n_letters = rng.randint(1, 6)
    alphabet = [letter(f"k{n}", rng.randrange(28)) for n in range(n_letters)]
    keys = [entry.key for entry in alphabet]

    n_items = rng.randint(1, 12)
    items: dict[str, GlyphItem] = {}
    for n in range(n_items):
        item_id = f"it{n}"
        text = "".join(
            rng.choice(ARABIC_LETTERS) for _ in range(rng.randint(1, 3))
        ) + rng.choice(["", FATHA, "ِ", "ُ"])
        image = AssetRef(f"assets/images/{item_id}.png") if rng.random() < 0.2 else None
        items[item_id] = GlyphItem(
            id=item_id,
            text=text,
            translit=rng.choice(["a", "ba", "tsa", "", "qo'"]),
            base_letter=rng.choice(keys),
            audio=AssetRef(f"assets/audio/clip{rng.randint(0, n_items)}.wav"),
            image=image,
        )
    ids = list(items)

    volumes = []
    for v in range(rng.randint(1, 3)):
        lessons = []
        for l in range(rng.randint(1, 3)):
            pages = []
            for _p in range(rng.randint(1, 2)):
                rows = tuple(
                    tuple(rng.choice(ids) for _ in range(rng.randint(0, 4)))
                    for _ in range(rng.randint(0, 3))
                )
                pages.append(Page(rows=rows))
            lessons.append(Lesson(id=f"v{v}l{l}", title=f"Lesson {v}.{l}", pages=tuple(pages)))
        volumes.append(Volume(index=v + 1, title=f"Volume {v + 1}", lessons=tuple(lessons)))

    return ContentPack(
        format_version=1,
        title=rng.choice(["Pack", "Iqro' Pack", "βpack", "حزمة"]),
        about=rng.choice(["", "about text", "tentang aplikasi"]),
        how_to=rng.choice(["", "tap a letter to hear it"]),
        alphabet=tuple(alphabet),
        items=items,
        volumes=tuple(volumes),
    )


@pytest.fixture(scope="session")
def ref_pack() -> ContentPack:
    return build_reference_pack()


@pytest.fixture(scope="session")
def ref_pack_dir(tmp_path_factory):
    """The reference pack materialized on disk (manifest plus silent audio)."""
    dest = tmp_path_factory.mktemp("refpack")
    return write_pack_dir(build_reference_pack(), dest)


@pytest.fixture()
def minimal_pack() -> ContentPack:
    return build_minimal_pack()


def pytest_runtest_logreport(report):
    # One visible verdict line per acceptance criterion.
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {name}: {'PASS' if report.passed else 'FAIL'}", flush=True)
