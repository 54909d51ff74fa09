"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from latinkeys import android, charstats, corpus, layout as layout_mod, preview, synthesis
from latinkeys.config import EmitConfig, load_config
from latinkeys.unicode_base import LATIN_BLOCKS, decomposition_census, load_fallback_table

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, UsageError):
        return EXIT_USAGE
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_DATA


def _describe(exc: BaseException) -> str:
    if isinstance(exc, FileNotFoundError) and exc.filename:
        return f"no such file: {exc.filename}"
    return str(exc)


# --- shared steps -------------------------------------------------------------


def build_tally(texts: Sequence[str | Path], wordlists: Sequence[str | Path]) -> charstats.CharacterTally:
    if not texts and not wordlists:
        raise UsageError("give at least one --text or --wordlist input")
    docs = [corpus.load_plain_text(p) for p in texts]
    lists = [corpus.load_word_frequency_list(p) for p in wordlists]
    return charstats.tally(docs, lists)


def _flatten(values) -> list[str]:
    return [v for group in values or [] for v in group]


def _configs(args, **extra):
    overrides = {
        "language_tag": getattr(args, "language", None),
        "base_layout": getattr(args, "base_layout", None),
        "min_count": getattr(args, "min_count", None),
        **extra,
    }
    return load_config(getattr(args, "config", None), overrides)


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# --- subcommands ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    t = build_tally(_flatten(args.text), _flatten(args.wordlist))
    report = charstats.report_tsv(t)
    if args.out:
        _write_text(Path(args.out), report)
    else:
        sys.stdout.write(report)
    return EXIT_OK


def cmd_synth(args) -> int:
    synth_cfg, _ = _configs(args)
    t = build_tally(_flatten(args.text), _flatten(args.wordlist))
    lay, report = synthesis.synthesize(t, synth_cfg)
    out = Path(args.out)
    stem = android.resource_tag(synth_cfg.language_tag)
    _write_text(out / f"{stem}.csv", layout_mod.serialize_csv(lay))
    _write_text(out / f"{stem}.report.tsv", synthesis.report_tsv(report))
    if args.preview:
        _write_text(Path(args.preview), preview.render_svg(lay))
    print(f"{synth_cfg.language_tag}: base {report.base_layout_chosen}, "
          f"{len(report.placements)} long-press letters, "
          f"{len(report.unplaceable)} unplaceable, {len(report.warnings)} warnings")
    return EXIT_OK


def _read_layout(path: str, language_tag: str, base_layout: str | None) -> layout_mod.Layout:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return layout_mod.parse_csv(text, name=language_tag, language_tag=language_tag,
                                    base_layout_name=base_layout or "")
    except layout_mod.LayoutError as e:
        raise layout_mod.LayoutError(f"{path}: {e}") from None


def cmd_emit(args) -> int:
    synth_cfg, emit_cfg = _configs(args)
    if synth_cfg.language_tag == "und":
        raise UsageError("emit needs --language (or language_tag in --config)")
    lay = _read_layout(args.layout, synth_cfg.language_tag, synth_cfg.base_layout)
    manifest = android.emit_package(lay, emit_cfg, args.out, force=args.force)
    for f in manifest.files:
        print(f"{'shared' if f.shared else 'wrote '} {f.path} ({f.size} bytes)")
    print(f"{len(manifest.registry_entries)} registry entries -> "
          f"{Path(args.out) / android.MANIFEST_NAME}")
    if args.preview:
        _write_text(Path(args.preview), preview.render_svg(lay))
    return EXIT_OK


def cmd_preview(args) -> int:
    lay = _read_layout(args.layout, "und", None)
    svg = preview.render_svg(lay, args.view)
    if args.out:
        _write_text(Path(args.out), svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_census(args) -> int:
    table = load_fallback_table(args.fallback_table) if args.fallback_table else None
    census = decomposition_census(LATIN_BLOCKS, table)
    total = census.decomposable + census.fallback + len(census.uncovered)
    print(f"decomposable\t{census.decomposable}")
    print(f"fallback\t{census.fallback}")
    print(f"uncovered\t{len(census.uncovered)}")
    print(f"total\t{total}")
    for ch in census.uncovered:
        print(f"uncovered\t{ch}\tU+{ord(ch):04X}")
    return EXIT_OK


# --- pipeline -------------------------------------------------------------------


@dataclass
class PipelineJob:
    language_tag: str
    texts: list[Path] = field(default_factory=list)
    wordlists: list[Path] = field(default_factory=list)
    config: Path | None = None
    out: Path = Path(".")


@dataclass
class JobResult:
    job: PipelineJob
    code: int = EXIT_OK
    message: str = ""
    layout: layout_mod.Layout | None = None
    emit_config: EmitConfig | None = None


def read_jobs(path: str | Path, out_root: str | Path) -> list[PipelineJob]:
    """Read a jobs TSV: ``language<TAB>text<TAB>wordlist<TAB>config``.

    Path lists are ``;``-separated and relative to the jobs file. Each job
    writes to ``<out_root>/<language>/``.
    """
    path = Path(path)
    base = path.parent
    out_root = Path(out_root)
    jobs = []
    lines = path.read_text(encoding="utf-8").splitlines()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#") or line.startswith("language\t"):
            continue
        cells = (line.split("\t") + ["", "", ""])[:4]
        tag = cells[0].strip()
        if not tag:
            raise UsageError(f"{path}:{lineno}: missing language tag")
        paths = [[base / p.strip() for p in cell.split(";") if p.strip()] for cell in cells[1:3]]
        config = base / cells[3].strip() if cells[3].strip() else None
        jobs.append(PipelineJob(tag, paths[0], paths[1], config,
                                out_root / android.resource_tag(tag)))
    seen: dict[Path, str] = {}
    for job in jobs:
        if job.out in seen:
            raise UsageError(
                f"jobs {seen[job.out]!r} and {job.language_tag!r} share output directory {job.out}"
            )
        seen[job.out] = job.language_tag
    return jobs


def run_job(job: PipelineJob) -> JobResult:
    """Analyze and synthesize one language, writing its CSV, reports and preview."""
    try:
        synth_cfg, emit_cfg = load_config(job.config, {"language_tag": job.language_tag})
        t = build_tally(job.texts, job.wordlists)
        lay, report = synthesis.synthesize(t, synth_cfg)
        stem = android.resource_tag(job.language_tag)
        _write_text(job.out / f"{stem}.tally.tsv", charstats.report_tsv(t))
        _write_text(job.out / f"{stem}.csv", layout_mod.serialize_csv(lay))
        _write_text(job.out / f"{stem}.report.tsv", synthesis.report_tsv(report))
        _write_text(job.out / f"{stem}.svg", preview.render_svg(lay))
        return JobResult(job, layout=lay, emit_config=emit_cfg,
                         message=f"base {report.base_layout_chosen}, "
                                 f"{len(report.placements)} long-press letters")
    except Exception as e:  # noqa: BLE001 - one bad job must not stop the batch
        return JobResult(job, _exit_code(e), _describe(e))


def run_pipeline(jobs: list[PipelineJob], out_root: str | Path, workers: int = 1,
                 force: bool = False) -> list[JobResult]:
    out_root = Path(out_root)
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        results = list(pool.map(run_job, jobs))

    grids = android.known_grids(out_root, exclude=[j.language_tag for j in jobs])
    manifests = []
    for result in results:
        if result.code != EXIT_OK:
            continue
        try:
            m = android.write_package(result.layout, result.emit_config, out_root, grids, force)
        except Exception as e:  # noqa: BLE001
            result.code, result.message = _exit_code(e), _describe(e)
            continue
        manifests.append(m)
        for f in m.files:
            if f.kind == "layout_grid" and not f.shared:
                grids.setdefault(f.path.rsplit("/", 1)[-1], f.path)
    android.update_manifest(out_root, manifests)
    return results


def cmd_pipeline(args) -> int:
    jobs = read_jobs(args.jobs_file, args.out)
    results = run_pipeline(jobs, args.out, args.jobs, args.force)
    worst = EXIT_OK
    for r in results:
        status = "ok" if r.code == EXIT_OK else "failed"
        print(f"{r.job.language_tag}\t{status}\t{r.message}")
        worst = max(worst, r.code)
    ok = sum(r.code == EXIT_OK for r in results)
    print(f"{ok}/{len(results)} languages succeeded", file=sys.stderr)
    return worst


# --- argument parsing -----------------------------------------------------------


def _add_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--text", action="append", nargs="+", metavar="PATH",
                   help="plain UTF-8 corpus file(s)")
    p.add_argument("--wordlist", action="append", nargs="+", metavar="PATH",
                   help="word<TAB>count frequency list(s)")


def _add_config(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="key = value config file")
    p.add_argument("--language", metavar="TAG", help="BCP 47 language tag")
    p.add_argument("--base-layout", metavar="NAME",
                   help=f"base layout ({', '.join(layout_mod.BUILTIN_LAYOUTS)})")
    p.add_argument("--min-count", type=int, metavar="N",
                   help="drop letters seen fewer than N times (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latinkeys",
                     description="Design Latin-script keyboard layouts from corpus data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="character frequency report (TSV)")
    _add_inputs(p)
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="design a layout; writes <tag>.csv and <tag>.report.tsv")
    _add_inputs(p)
    _add_config(p)
    p.add_argument("--out", default=".", metavar="DIR")
    p.add_argument("--preview", metavar="SVG", help="also write an SVG preview")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("emit", help="write the Android XML package for a layout CSV")
    p.add_argument("layout", help="layout CSV")
    _add_config(p)
    p.add_argument("--out", default="out", metavar="DIR")
    p.add_argument("--force", action="store_true", help="overwrite conflicting files")
    p.add_argument("--preview", metavar="SVG", help="also write an SVG preview")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("preview", help="render a layout CSV as SVG")
    p.add_argument("layout", help="layout CSV")
    p.add_argument("--view", choices=("default", "shift"), default="default")
    p.add_argument("--out", metavar="SVG", help="write here instead of stdout")
    p.set_defaults(func=cmd_preview)

    p = sub.add_parser("census", help="decomposition census of the Latin blocks")
    p.add_argument("--fallback-table", metavar="PATH", help="override the shipped table")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("pipeline", help="run analyze, synth and emit for many languages")
    p.add_argument("jobs_file", help="TSV: language, text paths, wordlist paths, config")
    p.add_argument("--out", default="out", metavar="DIR")
    p.add_argument("--jobs", type=int, default=4, metavar="N", help="worker threads")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help and argument errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, OSError, ValueError) as e:
        print(f"latinkeys {args.command}: {_describe(e)}", file=sys.stderr)
        return _exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
