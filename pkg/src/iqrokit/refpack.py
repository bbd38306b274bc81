"""Built-in packs: the Iqro' 1-4 reference curriculum and a minimal scaffold.

The reference pack transcribes a standard 28-letter hijaiyah chart into the
four-volume progression: volume 1 drills single letters with fathah, volume
2 the long-a (mad) reading, volume 3 kasrah, volume 4 dammah. Each volume
splits the alphabet into four lessons of seven letters, two pages each.

Audio files are silent placeholders; a real deployment replaces the files
under assets/audio/ with recordings while keeping the same names.
"""

from __future__ import annotations

import io
import wave
from pathlib import Path

from .model import AlphabetEntry, AssetRef, ContentPack, GlyphItem, Lesson, Page, Volume
from .pack import serialize_pack

FATHA = "َ"
KASRA = "ِ"
DAMMA = "ُ"
ALIF = "ا"
ALIF_MADDA = "آ"

# (key, letter, name, consonant prefix, emphatic). Emphatic letters take the
# Indonesian "o" colouring under fathah (ro, sho, qo, ...).
LETTERS = [
    ("alif", "ا", "alif", "", False),
    ("ba", "ب", "ba", "b", False),
    ("ta", "ت", "ta", "t", False),
    ("tsa", "ث", "tsa", "ts", False),
    ("jim", "ج", "jim", "j", False),
    ("ha", "ح", "ha", "h", False),
    ("kho", "خ", "kho", "kh", True),
    ("dal", "د", "dal", "d", False),
    ("dzal", "ذ", "dzal", "dz", False),
    ("ro", "ر", "ro", "r", True),
    ("zai", "ز", "zai", "z", False),
    ("sin", "س", "sin", "s", False),
    ("syin", "ش", "syin", "sy", False),
    ("shod", "ص", "shod", "sh", True),
    ("dhod", "ض", "dhod", "dh", True),
    ("tho", "ط", "tho", "th", True),
    ("zho", "ظ", "zho", "zh", True),
    ("ain", "ع", "'ain", "'", False),
    ("ghoin", "غ", "ghoin", "gh", True),
    ("fa", "ف", "fa", "f", False),
    ("qof", "ق", "qof", "q", True),
    ("kaf", "ك", "kaf", "k", False),
    ("lam", "ل", "lam", "l", False),
    ("mim", "م", "mim", "m", False),
    ("nun", "ن", "nun", "n", False),
    ("wau", "و", "wau", "w", False),
    ("heh", "ه", "ha", "h", False),
    ("ya", "ي", "ya", "y", False),
]

# Per-volume drill variants: id suffix, harakat rule, vowel labels.
_VARIANTS = [
    ("fatha", "Iqro' 1", "Huruf tunggal berharakat fathah"),
    ("mad", "Iqro' 2", "Bacaan panjang (mad) dengan fathah"),
    ("kasra", "Iqro' 3", "Huruf berharakat kasrah"),
    ("damma", "Iqro' 4", "Huruf berharakat dammah"),
]

_LESSON_SIZE = 7

ABOUT_TEXT = (
    "Belajar Membaca Iqro' memperkenalkan huruf hijaiyah mengikuti jenjang "
    "Iqro' 1 sampai Iqro' 4: huruf tunggal berharakat fathah, bacaan panjang, "
    "kasrah, dan dammah. Setiap huruf dilengkapi suara pengucapannya."
)

HOW_TO_TEXT = (
    "Pilih volume dan materi pada menu materi, lalu ketuk sebuah huruf untuk "
    "mendengar pengucapannya. Gunakan tombol halaman untuk berpindah dalam "
    "satu materi. Menu test menyajikan soal pilihan ganda dari materi yang "
    "sedang dipelajari; jawab benar minimal 80% untuk dinyatakan menguasai."
)


def _glyph_text(letter: str, variant: str) -> str:
    if variant == "fatha":
        return letter + FATHA
    if variant == "mad":
        if letter == ALIF:
            return ALIF_MADDA
        return letter + FATHA + ALIF
    if variant == "kasra":
        return letter + KASRA
    if variant == "damma":
        return letter + DAMMA
    raise ValueError(variant)


def _syllable(prefix: str, variant: str, emphatic: bool) -> str:
    if variant == "fatha":
        vowel = "o" if emphatic else "a"
    elif variant == "mad":
        vowel = "oo" if emphatic else "aa"
    elif variant == "kasra":
        vowel = "i"
    elif variant == "damma":
        vowel = "u"
    else:
        raise ValueError(variant)
    return prefix + vowel


def build_reference_pack() -> ContentPack:
    """The full Iqro' 1-4 reference pack as an in-memory value."""
    alphabet = tuple(
        AlphabetEntry(
            key=key,
            text=letter,
            translit=name,
            audio=AssetRef(f"assets/audio/letter_{key}.wav"),
        )
        for key, letter, name, _prefix, _emph in LETTERS
    )

    items: dict[str, GlyphItem] = {}
    volumes: list[Volume] = []
    for vol_no, (variant, vol_title, _desc) in enumerate(_VARIANTS, start=1):
        item_ids: list[str] = []
        for key, letter, _name, prefix, emphatic in LETTERS:
            item_id = f"{key}_{variant}"
            items[item_id] = GlyphItem(
                id=item_id,
                text=_glyph_text(letter, variant),
                translit=_syllable(prefix, variant, emphatic),
                base_letter=key,
                audio=AssetRef(f"assets/audio/{item_id}.wav"),
            )
            item_ids.append(item_id)

        lessons: list[Lesson] = []
        for lesson_no in range(1, len(LETTERS) // _LESSON_SIZE + 1):
            chunk = item_ids[(lesson_no - 1) * _LESSON_SIZE : lesson_no * _LESSON_SIZE]
            pages = (
                Page(rows=(tuple(chunk[0:2]), tuple(chunk[2:4]))),
                Page(rows=(tuple(chunk[4:6]), tuple(chunk[6:7]))),
            )
            lessons.append(
                Lesson(
                    id=f"iqro{vol_no}_materi{lesson_no}",
                    title=f"Materi {lesson_no}",
                    pages=pages,
                )
            )
        volumes.append(Volume(index=vol_no, title=vol_title, lessons=tuple(lessons)))

    return ContentPack(
        format_version=1,
        title="Belajar Membaca Iqro'",
        about=ABOUT_TEXT,
        how_to=HOW_TO_TEXT,
        alphabet=alphabet,
        items=items,
        volumes=tuple(volumes),
    )


def build_minimal_pack() -> ContentPack:
    """Smallest legal pack: one volume, one lesson, one page, one item."""
    return ContentPack(
        format_version=1,
        title="Pack Baru",
        about="Pack contoh berisi satu huruf.",
        how_to="Ketuk huruf untuk mendengar pengucapannya.",
        alphabet=(
            AlphabetEntry(
                key="alif",
                text="ا",
                translit="alif",
                audio=AssetRef("assets/audio/letter_alif.wav"),
            ),
        ),
        items={
            "alif": GlyphItem(
                id="alif",
                text="ا" + FATHA,
                translit="a",
                base_letter="alif",
                audio=AssetRef("assets/audio/alif.wav"),
            )
        },
        volumes=(
            Volume(
                index=1,
                title="Iqro' 1",
                lessons=(
                    Lesson(
                        id="iqro1_materi1",
                        title="Materi 1",
                        pages=(Page(rows=(("alif",),)),),
                    ),
                ),
            ),
        ),
    )


def silent_wav_bytes(duration: float = 0.2, sample_rate: int = 8000) -> bytes:
    """A valid mono 16-bit WAV holding silence; the placeholder asset body."""
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(sample_rate)
        wav.writeframes(b"\x00\x00" * int(duration * sample_rate))
    return buf.getvalue()


def referenced_audio_paths(pack: ContentPack) -> list[str]:
    paths = [entry.audio.path for entry in pack.alphabet]
    paths.extend(item.audio.path for item in pack.items.values())
    return sorted(set(paths))


def write_pack_dir(pack: ContentPack, dest: str | Path) -> Path:
    """Materialize a pack: canonical pack.json plus one silent placeholder
    file per referenced audio path. Returns the pack directory."""
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    (dest / "pack.json").write_bytes(serialize_pack(pack))
    wav = silent_wav_bytes()
    for rel in referenced_audio_paths(pack):
        target = dest / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(wav)
    return dest
