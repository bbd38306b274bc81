"""Manifest parsing, asset validation, and canonical serialization."""

from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_pack
from iqrokit.errors import (
    BadVersionError,
    DanglingRefError,
    DuplicateIdError,
    ManifestSyntaxError,
    SchemaError,
)
from iqrokit.pack import (
    list_assets,
    load_pack_dir,
    parse_pack,
    serialize_pack,
    validate_assets,
)
from iqrokit.refpack import build_minimal_pack, referenced_audio_paths, write_pack_dir


def minimal_manifest() -> dict:
    return json.loads(serialize_pack(build_minimal_pack()).decode("utf-8"))


def to_bytes(manifest: dict) -> bytes:
    return json.dumps(manifest, ensure_ascii=False).encode("utf-8")


# --- parse_pack ---------------------------------------------------------


def test_parse_minimal_manifest():
    pack = parse_pack(to_bytes(minimal_manifest()))
    assert len(pack.items) == 1
    assert len(pack.volumes) == 1
    assert pack.volumes[0].title == "Iqro' 1"


def test_parse_duplicate_item_id():
    manifest = serialize_pack(build_minimal_pack()).decode("utf-8")
    item_block = """
    "alif": {
      "text": "\\u0627\\u064e",
      "translit": "a",
      "base_letter": "alif",
      "audio": "assets/audio/alif.wav"
    },"""
    doubled = manifest.replace('"items": {', '"items": {' + item_block, 1)
    assert doubled != manifest
    with pytest.raises(DuplicateIdError) as exc:
        parse_pack(doubled.encode("utf-8"))
    assert exc.value.code == "E_DUPLICATE_ID"


def test_parse_reference_pack_has_four_volumes(ref_pack):
    parsed = parse_pack(serialize_pack(ref_pack))
    assert len(parsed.volumes) == 4
    assert [v.title for v in parsed.volumes] == ["Iqro' 1", "Iqro' 2", "Iqro' 3", "Iqro' 4"]


def test_parse_rejects_bad_json():
    with pytest.raises(ManifestSyntaxError):
        parse_pack(b'{"format_version": 1,,}')


def test_parse_rejects_bad_utf8():
    with pytest.raises(ManifestSyntaxError):
        parse_pack(b'\xff\xfe{"format_version": 1}')


def test_parse_rejects_wrong_version():
    manifest = minimal_manifest()
    manifest["format_version"] = 2
    with pytest.raises(BadVersionError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_bool_version():
    manifest = minimal_manifest()
    manifest["format_version"] = True
    with pytest.raises(SchemaError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_missing_field():
    manifest = minimal_manifest()
    del manifest["how_to"]
    with pytest.raises(SchemaError) as exc:
        parse_pack(to_bytes(manifest))
    assert "how_to" in exc.value.message


def test_parse_rejects_unknown_field():
    manifest = minimal_manifest()
    manifest["extra"] = 1
    with pytest.raises(SchemaError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_duplicate_json_field():
    raw = to_bytes(minimal_manifest()).decode("utf-8")
    doubled = raw.replace('"title":', '"title": "x", "title":', 1)
    with pytest.raises(SchemaError) as exc:
        parse_pack(doubled.encode("utf-8"))
    assert "duplicate" in exc.value.message


def test_parse_rejects_non_arabic_item_text():
    manifest = minimal_manifest()
    manifest["items"]["alif"]["text"] = "abc"
    with pytest.raises(SchemaError) as exc:
        parse_pack(to_bytes(manifest))
    assert "Arabic" in exc.value.message


def test_parse_rejects_bad_item_id():
    manifest = minimal_manifest()
    manifest["items"]["Alif!"] = manifest["items"]["alif"]
    with pytest.raises(SchemaError):
        parse_pack(to_bytes(manifest))


@pytest.mark.parametrize(
    "path",
    ["", "/abs.wav", "assets/../x.wav", "assets//x.wav", "audio/x.wav", "assets\\x.wav", "assets/./x.wav"],
)
def test_parse_rejects_bad_asset_paths(path):
    manifest = minimal_manifest()
    manifest["items"]["alif"]["audio"] = path
    with pytest.raises(SchemaError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_dangling_page_ref():
    manifest = minimal_manifest()
    manifest["volumes"][0]["lessons"][0]["pages"][0]["rows"][0].append("ghost")
    with pytest.raises(DanglingRefError) as exc:
        parse_pack(to_bytes(manifest))
    assert exc.value.code == "E_DANGLING_REF"


def test_parse_rejects_dangling_base_letter():
    manifest = minimal_manifest()
    manifest["items"]["alif"]["base_letter"] = "ghost"
    with pytest.raises(DanglingRefError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_duplicate_alphabet_key():
    manifest = minimal_manifest()
    manifest["alphabet"].append(dict(manifest["alphabet"][0]))
    with pytest.raises(DuplicateIdError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_duplicate_lesson_id():
    manifest = minimal_manifest()
    lesson = manifest["volumes"][0]["lessons"][0]
    manifest["volumes"][0]["lessons"].append(dict(lesson))
    with pytest.raises(DuplicateIdError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_nonconsecutive_volume_indices():
    manifest = minimal_manifest()
    manifest["volumes"][0]["index"] = 2
    with pytest.raises(SchemaError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_volume_without_lessons():
    manifest = minimal_manifest()
    manifest["volumes"][0]["lessons"] = []
    with pytest.raises(SchemaError):
        parse_pack(to_bytes(manifest))


def test_parse_rejects_lesson_without_pages():
    manifest = minimal_manifest()
    manifest["volumes"][0]["lessons"][0]["pages"] = []
    with pytest.raises(SchemaError):
        parse_pack(to_bytes(manifest))


def test_parse_enforces_size_limits():
    data = to_bytes(minimal_manifest())
    with pytest.raises(SchemaError):
        parse_pack(data, max_bytes=10)
    with pytest.raises(SchemaError):
        parse_pack(data, max_items=0)


def test_parse_keeps_optional_image():
    manifest = minimal_manifest()
    manifest["items"]["alif"]["image"] = "assets/images/alif.png"
    pack = parse_pack(to_bytes(manifest))
    assert pack.items["alif"].image.path == "assets/images/alif.png"
    again = json.loads(serialize_pack(pack).decode("utf-8"))
    assert again["items"]["alif"]["image"] == "assets/images/alif.png"


# --- validate_assets ----------------------------------------------------


def test_missing_audio_reported_per_item(minimal_pack):
    report = validate_assets(minimal_pack, set())
    codes = {(issue.code, issue.path) for issue in report.errors}
    assert ("MISSING_AUDIO", "items.alif.audio") in codes
    assert ("MISSING_AUDIO", "alphabet[0].audio") in codes
    assert not report.warnings


def test_fully_consistent_pack_is_clean(minimal_pack):
    listing = set(referenced_audio_paths(minimal_pack))
    report = validate_assets(minimal_pack, listing)
    assert report.ok
    assert report.errors == [] and report.warnings == []


def test_orphan_asset_is_warning_only(minimal_pack):
    listing = set(referenced_audio_paths(minimal_pack)) | {"assets/audio/unused.wav"}
    report = validate_assets(minimal_pack, listing)
    assert report.errors == []
    assert [issue.code for issue in report.warnings] == ["ORPHAN_ASSET"]
    assert report.warnings[0].path == "assets/audio/unused.wav"


def test_orphan_item_is_warning():
    manifest = minimal_manifest()
    manifest["items"]["ba"] = {
        "text": "بَ",
        "translit": "ba",
        "base_letter": "alif",
        "audio": "assets/audio/ba.wav",
    }
    pack = parse_pack(to_bytes(manifest))
    listing = {"assets/audio/alif.wav", "assets/audio/letter_alif.wav", "assets/audio/ba.wav"}
    report = validate_assets(pack, listing)
    assert report.errors == []
    assert [(w.code, w.path) for w in report.warnings] == [("ORPHAN_ITEM", "items.ba")]


def test_empty_lesson_is_error():
    manifest = minimal_manifest()
    manifest["volumes"][0]["lessons"][0]["pages"] = [{"rows": [[]]}]
    pack = parse_pack(to_bytes(manifest))
    report = validate_assets(pack, set(referenced_audio_paths(pack)))
    codes = [issue.code for issue in report.errors]
    assert "EMPTY_LESSON" in codes
    assert report.errors[-1].path == "volumes[0].lessons[0]"


def test_validation_is_pure(minimal_pack):
    listing = set(referenced_audio_paths(minimal_pack)) | {"assets/audio/zz.wav", "assets/audio/aa.wav"}
    first = validate_assets(minimal_pack, listing)
    second = validate_assets(minimal_pack, set(listing))
    assert first.to_dict() == second.to_dict()


def test_image_refs_are_not_orphans():
    manifest = minimal_manifest()
    manifest["items"]["alif"]["image"] = "assets/images/alif.png"
    pack = parse_pack(to_bytes(manifest))
    listing = set(referenced_audio_paths(pack)) | {"assets/images/alif.png"}
    report = validate_assets(pack, listing)
    assert report.ok and not report.warnings


# --- serialize_pack -----------------------------------------------------


def test_serialize_is_canonical_and_deterministic(ref_pack):
    first = serialize_pack(ref_pack)
    second = serialize_pack(ref_pack)
    assert first == second
    assert b"\r" not in first
    text = first.decode("utf-8")
    assert text.endswith("\n")
    order = [text.index(f'"{key}"') for key in ("format_version", "title", "about", "how_to", "alphabet", "items", "volumes")]
    assert order == sorted(order)


def test_serialize_items_in_lexicographic_order(ref_pack):
    manifest = json.loads(serialize_pack(ref_pack).decode("utf-8"))
    ids = list(manifest["items"])
    assert ids == sorted(ids)


def test_roundtrip_minimal(minimal_pack):
    assert parse_pack(serialize_pack(minimal_pack)) == minimal_pack


def test_serialize_fixed_point_on_reference_pack(ref_pack):
    first = serialize_pack(ref_pack)
    assert serialize_pack(parse_pack(first)) == first


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_roundtrip_random_packs(seed):
    pack = random_pack(random.Random(seed))
    data = serialize_pack(pack)
    assert parse_pack(data) == pack
    assert serialize_pack(parse_pack(data)) == data


# --- rejection soundness -------------------------------------------------


def test_single_mutations_are_caught(ref_pack):
    manifest = json.loads(serialize_pack(ref_pack).decode("utf-8"))

    broken = json.loads(json.dumps(manifest))
    del broken["items"]["ba_fatha"]  # still referenced by a page
    with pytest.raises(DanglingRefError):
        parse_pack(to_bytes(broken))

    broken = json.loads(json.dumps(manifest))
    broken["items"]["ba_fatha_x"] = broken["items"].pop("ba_fatha")
    with pytest.raises(DanglingRefError):
        parse_pack(to_bytes(broken))

    listing = set(referenced_audio_paths(ref_pack))
    listing.discard("assets/audio/ba_fatha.wav")
    report = validate_assets(ref_pack, listing)
    assert [e.code for e in report.errors] == ["MISSING_AUDIO"]
    assert "ba_fatha" in report.errors[0].message


# --- pack directories ----------------------------------------------------


def test_write_then_load_pack_dir(tmp_path):
    pack_dir = write_pack_dir(build_minimal_pack(), tmp_path / "pack")
    pack, report = load_pack_dir(pack_dir)
    assert pack == build_minimal_pack()
    assert report.ok


def test_list_assets_relative_posix(ref_pack_dir):
    listing = list_assets(ref_pack_dir)
    assert "assets/audio/alif_fatha.wav" in listing
    assert all(path.startswith("assets/") for path in listing)
    assert "pack.json" not in listing
