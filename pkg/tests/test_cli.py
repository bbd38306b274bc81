"""CLI behaviour: exit codes, report output, scripted drills, scaffolding."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from iqrokit.cli import main
from iqrokit.pack import serialize_pack
from iqrokit.progress import fresh_progress, load_progress, progress_path, save_progress
from iqrokit.quiz import LessonRef, QuizConfig, start_quiz
from iqrokit.refpack import build_minimal_pack, build_reference_pack, write_pack_dir


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def cli_pack_dir(tmp_path_factory):
    return write_pack_dir(build_reference_pack(), tmp_path_factory.mktemp("cli") / "pack")


def correct_answers(seed: int, volume: int = 1, lesson: int = 1, n: int = 10) -> str:
    pack = build_reference_pack()
    session = start_quiz(pack, LessonRef(volume, lesson), QuizConfig(seed=seed, num_questions=n))
    return "".join(f"{q.correct_index}\n" for q in session.questions)


def test_validate_clean_pack(runner, cli_pack_dir):
    result = runner.invoke(main, ["validate", str(cli_pack_dir)])
    assert result.exit_code == 0
    assert "0 error(s), 0 warning(s)" in result.output


def test_validate_missing_audio(runner, tmp_path):
    pack_dir = write_pack_dir(build_reference_pack(), tmp_path / "pack")
    (pack_dir / "assets" / "audio" / "mim_kasra.wav").unlink()
    result = runner.invoke(main, ["validate", str(pack_dir)])
    assert result.exit_code == 1
    assert "MISSING_AUDIO" in result.output
    assert "mim_kasra" in result.output


def test_validate_json_output(runner, tmp_path):
    pack_dir = write_pack_dir(build_minimal_pack(), tmp_path / "pack")
    (pack_dir / "assets" / "audio" / "alif.wav").unlink()
    result = runner.invoke(main, ["validate", str(pack_dir), "--json"])
    assert result.exit_code == 1
    report = json.loads(result.output)
    assert set(report) == {"errors", "warnings"}
    assert report["errors"][0]["code"] == "MISSING_AUDIO"
    assert set(report["errors"][0]) == {"code", "path", "message"}


def test_validate_unparseable_manifest(runner, tmp_path):
    pack_dir = write_pack_dir(build_minimal_pack(), tmp_path / "pack")
    (pack_dir / "pack.json").write_text("{not json", encoding="utf-8")
    result = runner.invoke(main, ["validate", str(pack_dir)])
    assert result.exit_code == 1
    assert "E_SYNTAX" in result.output


def test_validate_missing_manifest_is_io_error(runner, tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    result = runner.invoke(main, ["validate", str(empty)])
    assert result.exit_code == 3


def test_stats_minimal_pack(runner, tmp_path):
    pack_dir = write_pack_dir(build_minimal_pack(), tmp_path / "pack")
    result = runner.invoke(main, ["stats", str(pack_dir)])
    assert result.exit_code == 0
    for line in ("volumes:      1", "lessons:      1", "pages:        1", "items:        1"):
        assert line in result.output


def test_stats_reference_pack(runner, cli_pack_dir):
    result = runner.invoke(main, ["stats", str(cli_pack_dir)])
    assert result.exit_code == 0
    assert "volumes:      4" in result.output
    assert "items:        112" in result.output
    assert "base letters: 28" in result.output
    assert "audio assets: 140" in result.output


def test_drill_with_all_correct_answers(runner, cli_pack_dir, tmp_path):
    result = runner.invoke(
        main,
        [
            "drill", str(cli_pack_dir),
            "--volume", "1", "--lesson", "1",
            "--seed", "7", "--learner", "tester",
            "--data-dir", str(tmp_path),
        ],
        input=correct_answers(7),
    )
    assert result.exit_code == 0
    assert result.output.count("Jawaban Anda Benar") == 10
    assert "menguasai materi" in result.output
    record = load_progress(progress_path(tmp_path, "tester"))
    assert record.entries[(1, 1)].mastered is True
    assert record.entries[(1, 1)].last_seed == 7


def test_drill_transcripts_are_reproducible(runner, cli_pack_dir, tmp_path):
    args = [
        "drill", str(cli_pack_dir),
        "--volume", "2", "--lesson", "2",
        "--seed", "42", "--data-dir", str(tmp_path),
    ]
    answers = "0\n" * 10
    first = runner.invoke(main, args, input=answers)
    second = runner.invoke(main, args, input=answers)
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output


def test_drill_wrong_answers_reveal_correct_option(runner, cli_pack_dir, tmp_path):
    pack = build_reference_pack()
    session = start_quiz(pack, LessonRef(1, 1), QuizConfig(seed=11))
    wrong = "".join(f"{(q.correct_index + 1) % 4}\n" for q in session.questions)
    result = runner.invoke(
        main,
        ["drill", str(cli_pack_dir), "--volume", "1", "--lesson", "1",
         "--seed", "11", "--data-dir", str(tmp_path)],
        input=wrong,
    )
    assert result.exit_code == 0
    assert result.output.count("Jawaban Anda Salah") == 10
    assert "jawaban benar:" in result.output
    assert "belum menguasai materi" in result.output
    assert "Skor: 0/10" in result.output


def test_drill_unknown_lesson_is_usage_error(runner, cli_pack_dir, tmp_path):
    result = runner.invoke(
        main,
        ["drill", str(cli_pack_dir), "--volume", "9", "--lesson", "1",
         "--data-dir", str(tmp_path)],
    )
    assert result.exit_code == 2


def test_drill_rejects_non_numeric_answer(runner, cli_pack_dir, tmp_path):
    result = runner.invoke(
        main,
        ["drill", str(cli_pack_dir), "--volume", "1", "--lesson", "1",
         "--seed", "1", "--data-dir", str(tmp_path)],
        input="banana\n",
    )
    assert result.exit_code == 2


def test_drill_respects_lock_mode(runner, cli_pack_dir, tmp_path):
    save_progress(fresh_progress("kid", lock_mode=True), progress_path(tmp_path, "kid"))
    result = runner.invoke(
        main,
        ["drill", str(cli_pack_dir), "--volume", "1", "--lesson", "2",
         "--learner", "kid", "--data-dir", str(tmp_path)],
    )
    assert result.exit_code == 1
    assert "terkunci" in result.output


def test_drill_glyph_to_translit_mode(runner, cli_pack_dir, tmp_path):
    result = runner.invoke(
        main,
        ["drill", str(cli_pack_dir), "--volume", "1", "--lesson", "1",
         "--seed", "3", "--mode", "glyph_to_translit", "--questions", "2",
         "--data-dir", str(tmp_path)],
        input="0\n0\n",
    )
    assert result.exit_code == 0
    assert "huruf:" in result.output


def test_serve_refuses_invalid_pack(runner, tmp_path, monkeypatch):
    import uvicorn

    def fail_run(*args, **kwargs):
        raise AssertionError("server must not start on an invalid pack")

    monkeypatch.setattr(uvicorn, "run", fail_run)
    pack_dir = write_pack_dir(build_minimal_pack(), tmp_path / "pack")
    (pack_dir / "assets" / "audio" / "alif.wav").unlink()
    result = runner.invoke(main, ["serve", str(pack_dir), "--data-dir", str(tmp_path)])
    assert result.exit_code == 1


def test_serve_uses_default_bind(runner, cli_pack_dir, tmp_path, monkeypatch):
    import uvicorn

    calls = {}

    def record_run(app, host, port):
        calls["host"], calls["port"] = host, port

    monkeypatch.setattr(uvicorn, "run", record_run)
    result = runner.invoke(main, ["serve", str(cli_pack_dir), "--data-dir", str(tmp_path)])
    assert result.exit_code == 0
    assert calls == {"host": "127.0.0.1", "port": 7423}


def test_serve_rejects_malformed_bind(runner, cli_pack_dir, tmp_path):
    result = runner.invoke(
        main, ["serve", str(cli_pack_dir), "--data-dir", str(tmp_path), "--bind", "nope"]
    )
    assert result.exit_code == 2


def test_new_pack_scaffold_validates(runner, tmp_path):
    dest = tmp_path / "fresh"
    created = runner.invoke(main, ["new-pack", str(dest)])
    assert created.exit_code == 0
    result = runner.invoke(main, ["validate", str(dest)])
    assert result.exit_code == 0


def test_new_pack_manifest_is_canonical(runner, tmp_path):
    dest = tmp_path / "fresh"
    runner.invoke(main, ["new-pack", str(dest)])
    assert (dest / "pack.json").read_bytes() == serialize_pack(build_minimal_pack())


def test_new_pack_refuses_non_empty_dir(runner, tmp_path):
    dest = tmp_path / "busy"
    dest.mkdir()
    (dest / "keep.txt").write_text("x")
    result = runner.invoke(main, ["new-pack", str(dest)])
    assert result.exit_code == 3
    assert (dest / "keep.txt").exists()
    assert not (dest / "pack.json").exists()


def test_new_pack_reference_flag(runner, tmp_path):
    dest = tmp_path / "ref"
    created = runner.invoke(main, ["new-pack", str(dest), "--reference"])
    assert created.exit_code == 0
    assert "112" in created.output
    result = runner.invoke(main, ["validate", str(dest)])
    assert result.exit_code == 0


def test_usage_error_exit_code(runner):
    assert runner.invoke(main, ["drill"]).exit_code == 2
    assert runner.invoke(main, ["no-such-command"]).exit_code == 2
