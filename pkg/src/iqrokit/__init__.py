"""iqrokit: content-pack engine for hijaiyah reading drills.

Packs bind Arabic glyphs to pronunciation audio; the engine provides lesson
navigation, deterministic multiple-choice quizzes, learner progress, a local
HTTP service, and a CLI.
"""

__version__ = "0.1.0"

from .errors import IqroError
from .model import AssetRef, ContentPack, GlyphItem, lesson_at, lookup_item
from .pack import ValidationReport, load_pack_dir, parse_pack, serialize_pack, validate_assets
from .quiz import QuizConfig, QuizMode, QuizSession, start_quiz

__all__ = [
    "AssetRef",
    "ContentPack",
    "GlyphItem",
    "IqroError",
    "QuizConfig",
    "QuizMode",
    "QuizSession",
    "ValidationReport",
    "__version__",
    "lesson_at",
    "load_pack_dir",
    "lookup_item",
    "parse_pack",
    "serialize_pack",
    "start_quiz",
    "validate_assets",
]
