"""Operator and author command line: validate and inspect packs, run a
terminal drill, serve the HTTP API, scaffold new packs.

Exit codes: 0 success, 1 validation errors, 2 usage errors, 3 I/O errors.
"""

from __future__ import annotations

import json
import secrets
import sys
from pathlib import Path

import click

from .errors import IqroError, UnknownLessonError
from .locale import render_message
from .model import ContentPack
from .pack import ValidationIssue, ValidationReport, list_assets, parse_pack, validate_assets
from .progress import (
    is_unlocked,
    load_progress,
    progress_path,
    record_result,
    save_progress,
)
from .quiz import (
    DEFAULT_NUM_QUESTIONS,
    LessonRef,
    QuizConfig,
    QuizMode,
    SessionState,
    finish,
    start_quiz,
    submit_answer,
)
from .refpack import build_minimal_pack, build_reference_pack, write_pack_dir
from .service import DEFAULT_BIND, PackLoadError, ServiceConfig, create_app

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

_pack_dir_arg = click.argument(
    "pack_dir", type=click.Path(exists=True, file_okay=False, path_type=Path)
)


def _read_manifest(pack_dir: Path) -> bytes:
    try:
        return (pack_dir / "pack.json").read_bytes()
    except OSError as exc:
        click.echo(f"cannot read {pack_dir / 'pack.json'}: {exc}", err=True)
        raise SystemExit(EXIT_IO) from None


def _parse_or_report(pack_dir: Path) -> tuple[ContentPack | None, ValidationReport]:
    """Parse the manifest; a parse failure becomes a one-error report."""
    manifest = _read_manifest(pack_dir)
    try:
        return parse_pack(manifest), ValidationReport()
    except IqroError as exc:
        issue = ValidationIssue(code=exc.code, path=exc.path or "", message=exc.message)
        return None, ValidationReport(errors=[issue])


def _load_pack_or_exit(pack_dir: Path) -> ContentPack:
    pack, report = _parse_or_report(pack_dir)
    if pack is None:
        for issue in report.errors:
            click.echo(f"ERROR {issue.code} {issue.path}: {issue.message}", err=True)
        raise SystemExit(EXIT_VALIDATION)
    return pack


@click.group()
@click.version_option(package_name="iqrokit")
def main() -> None:
    """Content packs for learning to read the hijaiyah alphabet."""


@main.command()
@_pack_dir_arg
@click.option("--json", "as_json", is_flag=True, help="emit the report as JSON")
def validate(pack_dir: Path, as_json: bool) -> None:
    """Check a pack's structure and glyph/audio consistency."""
    pack, report = _parse_or_report(pack_dir)
    if pack is not None:
        report = validate_assets(pack, list_assets(pack_dir))
    if as_json:
        click.echo(json.dumps(report.to_dict(), ensure_ascii=False, indent=2))
    else:
        for issue in report.errors:
            click.echo(f"ERROR {issue.code} {issue.path}: {issue.message}")
        for issue in report.warnings:
            click.echo(f"WARN  {issue.code} {issue.path}: {issue.message}")
        click.echo(f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)")
    raise SystemExit(EXIT_OK if report.ok else EXIT_VALIDATION)


@main.command()
@_pack_dir_arg
def stats(pack_dir: Path) -> None:
    """Print pack content counts."""
    pack = _load_pack_or_exit(pack_dir)
    lessons = [lesson for volume in pack.volumes for lesson in volume.lessons]
    pages = [page for lesson in lessons for page in lesson.pages]
    audio_paths = {entry.audio.path for entry in pack.alphabet}
    audio_paths.update(item.audio.path for item in pack.items.values())
    click.echo(f"title:        {pack.title}")
    click.echo(f"volumes:      {len(pack.volumes)}")
    click.echo(f"lessons:      {len(lessons)}")
    click.echo(f"pages:        {len(pages)}")
    click.echo(f"items:        {len(pack.items)}")
    click.echo(f"base letters: {len({item.base_letter for item in pack.items.values()})}")
    click.echo(f"audio assets: {len(audio_paths)}")


@main.command()
@_pack_dir_arg
@click.option("--volume", required=True, type=int, help="volume index (1-based)")
@click.option("--lesson", required=True, type=int, help="lesson ordinal (1-based)")
@click.option("--seed", type=int, default=None, help="question seed; random when omitted")
@click.option("--questions", type=int, default=DEFAULT_NUM_QUESTIONS, show_default=True)
@click.option(
    "--mode",
    type=click.Choice([m.value for m in QuizMode]),
    default=QuizMode.AUDIO_TO_GLYPH.value,
    show_default=True,
)
@click.option("--learner", default="default", show_default=True)
@click.option(
    "--data-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    help="directory holding progress/<learner>.json",
)
def drill(
    pack_dir: Path,
    volume: int,
    lesson: int,
    seed: int | None,
    questions: int,
    mode: str,
    learner: str,
    data_dir: Path,
) -> None:
    """Run a multiple-choice drill in the terminal.

    Answers are read from stdin, one 0-based option index per line, so the
    command is fully scriptable. Audio prompts are indicated by printing the
    asset path and the pronunciation label.
    """
    pack = _load_pack_or_exit(pack_dir)
    lesson_ref = LessonRef(volume=volume, lesson=lesson)
    config = QuizConfig(
        seed=seed if seed is not None else secrets.randbits(64),
        num_questions=questions,
        mode=QuizMode(mode),
    )

    path = progress_path(data_dir, learner)
    progress = load_progress(path, learner)
    try:
        if not is_unlocked(progress, pack, lesson_ref):
            click.echo("materi ini masih terkunci: selesaikan materi sebelumnya dahulu")
            raise SystemExit(EXIT_VALIDATION)
        session = start_quiz(pack, lesson_ref, config)
    except UnknownLessonError as exc:
        raise click.UsageError(exc.message)
    except IqroError as exc:
        click.echo(f"[{exc.code}] {exc.message}", err=True)
        raise SystemExit(EXIT_VALIDATION)

    click.echo(f"{pack.title} — volume {volume}, materi {lesson}")
    click.echo(f"seed {config.seed}, {config.num_questions} soal, learner {learner}")
    while session.state is SessionState.IN_PROGRESS:
        question = session.questions[session.cursor]
        target = pack.items[question.target_id]
        click.echo(f"\nSoal {session.cursor + 1}/{config.num_questions}")
        if config.mode is QuizMode.AUDIO_TO_GLYPH:
            click.echo(f"  audio: {target.audio.path} ({target.translit})")
        else:
            click.echo(f"  huruf: {target.text}")
        for idx, option in enumerate(question.options):
            click.echo(f"  [{idx}] {option.display}")
        line = sys.stdin.readline()
        if not line:
            raise click.UsageError("stdin closed before the drill finished")
        line = line.strip()
        try:
            chosen = int(line)
        except ValueError:
            raise click.UsageError(f"expected a decimal option index, got {line!r}")
        if not 0 <= chosen < config.num_options:
            raise click.UsageError(f"option index {chosen} out of range 0..{config.num_options - 1}")
        feedback, session = submit_answer(session, chosen)
        click.echo(render_message(feedback.message_key))
        if feedback.verdict.value == "wrong":
            click.echo(f"  jawaban benar: {feedback.correct_option.display}")

    result = finish(session)
    progress = record_result(progress, lesson_ref, result, config.seed)
    save_progress(progress, path)
    click.echo(f"\nSkor: {result.correct_count}/{result.total}")
    click.echo("menguasai materi" if result.mastered else "belum menguasai materi")


@main.command()
@_pack_dir_arg
@click.option("--bind", default=DEFAULT_BIND, show_default=True, help="host:port to listen on")
@click.option(
    "--data-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("."),
    help="directory holding progress files",
)
@click.option(
    "--ui-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="static learner UI to mount at /ui",
)
def serve(pack_dir: Path, bind: str, data_dir: Path, ui_dir: Path | None) -> None:
    """Serve the pack over the local HTTP/JSON API."""
    import uvicorn

    try:
        app = create_app(ServiceConfig(pack_path=pack_dir, data_dir=data_dir, ui_dir=ui_dir))
    except PackLoadError as exc:
        click.echo(str(exc), err=True)
        if exc.report is not None:
            for issue in exc.report.errors:
                click.echo(f"ERROR {issue.code} {issue.path}: {issue.message}", err=True)
        raise SystemExit(EXIT_VALIDATION)
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise click.UsageError(f"--bind must look like host:port, got {bind!r}")
    uvicorn.run(app, host=host, port=int(port))


@main.command("new-pack")
@click.argument("dest", type=click.Path(path_type=Path))
@click.option("--reference", is_flag=True, help="write the full Iqro' 1-4 reference pack")
def new_pack(dest: Path, reference: bool) -> None:
    """Scaffold a valid pack (canonical manifest plus placeholder audio)."""
    if dest.exists():
        if not dest.is_dir():
            click.echo(f"{dest} exists and is not a directory", err=True)
            raise SystemExit(EXIT_IO)
        if any(dest.iterdir()):
            click.echo(f"refusing to write into non-empty directory {dest}", err=True)
            raise SystemExit(EXIT_IO)
    pack = build_reference_pack() if reference else build_minimal_pack()
    write_pack_dir(pack, dest)
    click.echo(f"wrote {pack.title!r} to {dest} ({len(pack.items)} item(s))")


if __name__ == "__main__":
    main()
