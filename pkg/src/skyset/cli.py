"""Command line interface.

Subcommands: translate, lint, query, concat, render, stats. Output is
deterministic: the same inputs and flags produce byte-identical output.
Exit codes: 0 clean, 1 completed but findings remain, 2 hard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine.pipeline import (
    TranslationOptions,
    TranslationResult,
    translate_document,
)
from .lexicon import (
    CueLexicon,
    Glossary,
    LexiconError,
    default_lexicon,
    load_glossaries,
    load_lexicon,
)
from .lint import (
    DEFAULT_REQUIRED,
    findings_to_json,
    format_findings,
    lint_result,
)
from .model import Category, make_quintuple_schema
from .render import RenderError, render_table
from .stats import (
    ExperimentData,
    bundled_experiment,
    censoring_report,
    load_experiment_csv,
    mean_ratio,
    pooled_mse,
    summarize,
    tukey_hsd,
)
from .store import (
    StoreError,
    concat_tables,
    csv_text,
    filter_rows,
    json_text,
    load_table,
    parse_filter,
    resolve_candidate,
    search_table,
    sort_rows,
    tsv_text,
    save_table,
)

_TABLE_FORMATS = ("tsv", "csv", "json")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _table_text(table, fmt: str) -> str:
    if fmt == "tsv":
        return tsv_text(table)
    if fmt == "csv":
        return csv_text(table)
    return json_text(table)


def _load_lexicon(path: str | None) -> CueLexicon:
    return load_lexicon(path) if path else default_lexicon()


def _load_glossary(paths: list[str]) -> Glossary | None:
    return load_glossaries(paths) if paths else None


def _required_categories(names: list[str]) -> frozenset[Category]:
    if not names:
        return DEFAULT_REQUIRED
    return frozenset(Category.parse(n) for n in names)


def _add_translate_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="text file to translate, or - for stdin")
    parser.add_argument("--doc-id", default="doc", help="document identifier")
    parser.add_argument("--title", default="", help="document title")
    parser.add_argument("--domain", default="", help="subject domain")
    parser.add_argument(
        "--lexicon", metavar="PATH",
        help="cue lexicon file (default: SKYSET_LEXICON or the bundled one)")
    parser.add_argument(
        "--glossary", action="append", default=[], metavar="PATH",
        help="domain glossary for vagueness checks; repeatable")
    parser.add_argument(
        "--required", action="append", default=[], metavar="CATEGORY",
        help="category a row must state (replaces the default "
             "TopicRole+Service set); repeatable")
    parser.add_argument(
        "--no-strip-articles", action="store_true",
        help="keep articles in cell phrases")
    parser.add_argument(
        "--strip-suffixes", action="store_true",
        help="also reduce service verbs to base form")
    parser.add_argument(
        "--keep-passive", action="store_true",
        help="do not rewrite passive sentences around their agent")
    parser.add_argument(
        "--no-merge-refinements", action="store_true",
        help="keep refinement sentences as their own rows")
    parser.add_argument(
        "--no-split-alternatives", action="store_true",
        help="keep coordinated alternatives in one row")


def _translate(args: argparse.Namespace) -> tuple[TranslationResult, list]:
    lexicon = _load_lexicon(args.lexicon)
    glossary = _load_glossary(args.glossary)
    options = TranslationOptions(
        strip_articles=not args.no_strip_articles,
        strip_plural_suffix=args.strip_suffixes,
        normalize_passive=not args.keep_passive,
        merge_refinements=not args.no_merge_refinements,
        split_alternatives=not args.no_split_alternatives,
    )
    result = translate_document(
        _read_input(args.input),
        doc_id=args.doc_id, title=args.title, domain=args.domain,
        options=options, lexicon=lexicon)
    for spec in getattr(args, "resolve", []):
        group, sep, index_text = spec.rpartition("=")
        if not sep or not index_text.isdigit():
            raise StoreError(f"bad --resolve {spec!r}; use GROUP=INDEX")
        try:
            resolve_candidate(result.table, group, int(index_text))
        except (KeyError, IndexError) as exc:
            raise StoreError(f"--resolve {spec}: {exc}") from exc
    findings = lint_result(
        result, required=_required_categories(args.required),
        glossary=glossary, lexicon=lexicon)
    return result, findings


def _cmd_translate(args: argparse.Namespace) -> int:
    result, findings = _translate(args)
    _write_output(_table_text(result.table, args.format), args.output)
    if args.findings:
        _write_output(
            json.dumps(findings_to_json(findings), indent=2) + "\n",
            args.findings)
    for issue in result.errors:
        print(f"sentence {issue.sentence_index}: {issue.message}",
              file=sys.stderr)
    return 1 if findings or result.errors else 0


def _cmd_lint(args: argparse.Namespace) -> int:
    result, findings = _translate(args)
    if args.json:
        _write_output(
            json.dumps(findings_to_json(findings), indent=2) + "\n",
            args.output)
    else:
        _write_output(format_findings(findings) + "\n", args.output)
    for issue in result.errors:
        print(f"sentence {issue.sentence_index}: {issue.message}",
              file=sys.stderr)
    return 1 if findings or result.errors else 0


def _cmd_query(args: argparse.Namespace) -> int:
    schema = make_quintuple_schema()
    table = load_table(args.table, schema=schema)
    conditions = [parse_filter(f, table.schema) for f in args.filter]
    if conditions:
        table = filter_rows(table, conditions)
    if args.search is not None:
        lines = [
            f"{hit.row_index}\t{hit.column}\t{hit.text}"
            for hit in search_table(table, args.search)
        ]
        _write_output("\n".join(lines) + "\n" if lines else "", args.output)
        return 0
    if args.sort is not None:
        cond = parse_filter(f"{args.sort} not-null", table.schema)
        table = sort_rows(table, cond.column, reverse=args.reverse)
    _write_output(_table_text(table, args.format), args.output)
    return 0


def _cmd_concat(args: argparse.Namespace) -> int:
    schema = make_quintuple_schema()
    tables = [load_table(p, schema=schema) for p in args.tables]
    merged = concat_tables(tables)
    if args.output and args.output != "-":
        save_table(merged, args.output, format=args.format)
    else:
        _write_output(_table_text(merged, args.format), None)
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    schema = make_quintuple_schema()
    table = load_table(args.table, schema=schema)
    sentences = render_table(table, voice=args.voice)
    _write_output("\n".join(sentences) + "\n" if sentences else "",
                  args.output)
    return 0


def _format_p(p: float) -> str:
    return f"{p:.2e}" if p < 0.001 else f"{p:.3f}"


def _stats_report(data: ExperimentData, alpha: float,
                  limit: float | None) -> str:
    lines = ["group  n  mean      std"]
    for s in summarize(data):
        lines.append(f"{s.group:<5} {s.n:>2}  {s.mean:>8.4f}  {s.std:>8.4f}")
    result = tukey_hsd(data, alpha=alpha)
    lines.append("")
    lines.append(
        f"pooled MSE {pooled_mse(data):.4f} on {result.df} degrees of freedom")
    lines.append(
        f"critical range q={result.q_critical:.4f} (k={data.k}, "
        f"alpha={alpha:g}), interval half-width "
        f"{result.q_critical * result.se:.4f}")
    lines.append("")
    lines.append("pair     diff       interval               p        significant")
    for c in result.comparisons:
        label = f"{c.second}-{c.first}"
        interval = f"[{c.lower:.2f}, {c.upper:.2f}]"
        lines.append(
            f"{label:<8} {c.diff:>+8.2f}  {interval:<21}  "
            f"{_format_p(c.p_value):<9} {'yes' if c.reject else 'no'}")
    means = {s.group: s.mean for s in summarize(data)}
    slow = max(data.groups, key=lambda g: means[g])
    fast = min(data.groups, key=lambda g: means[g])
    ratio = mean_ratio(data, slow, fast)
    lines.append("")
    lines.append(
        f"mean {slow} time is {ratio:.1f}x the mean {fast} time")
    if limit is not None:
        censored = censoring_report(data, limit)
        if censored:
            where = ", ".join(
                f"{c.group} participant {c.participant}" for c in censored)
            lines.append(
                f"censored at {limit:g}: {where} (true times at least the "
                "limit; affected means are understated)")
    return "\n".join(lines) + "\n"


def _cmd_stats(args: argparse.Namespace) -> int:
    if args.data:
        data = load_experiment_csv(args.data)
        limit = args.limit
    else:
        data = bundled_experiment()
        # The bundled data was collected with a 300-second ceiling.
        limit = args.limit if args.limit is not None else 300.0
    _write_output(_stats_report(data, args.alpha, limit), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skyset",
        description="translate instructional text into quintuple tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="text to table")
    _add_translate_options(p)
    p.add_argument("--resolve", action="append", default=[],
                   metavar="GROUP=INDEX",
                   help="settle a candidate group by row index; repeatable")
    p.add_argument("--format", choices=_TABLE_FORMATS, default="tsv")
    p.add_argument("--output", "-o", metavar="PATH")
    p.add_argument("--findings", metavar="PATH",
                   help="also write lint findings as JSON")
    p.set_defaults(fn=_cmd_translate)

    p = sub.add_parser("lint", help="report ambiguity, gaps, and vagueness")
    _add_translate_options(p)
    p.add_argument("--json", action="store_true",
                   help="findings as JSON instead of text")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(fn=_cmd_lint)

    p = sub.add_parser("query", help="filter, search, or sort a saved table")
    p.add_argument("table", help="table file (tsv, csv, or json)")
    p.add_argument("--filter", action="append", default=[],
                   metavar="'COLUMN OP [VALUE]'",
                   help="keep rows matching all filters; ops: equals, "
                        "contains, null, not-null")
    p.add_argument("--search", metavar="NEEDLE",
                   help="print matching cells instead of a table")
    p.add_argument("--sort", metavar="COLUMN")
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--format", choices=_TABLE_FORMATS, default="tsv")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(fn=_cmd_query)

    p = sub.add_parser("concat", help="stack tables into one")
    p.add_argument("tables", nargs="+", help="table files")
    p.add_argument("--format", choices=_TABLE_FORMATS, default="tsv")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(fn=_cmd_concat)

    p = sub.add_parser("render", help="table rows back to sentences")
    p.add_argument("table", help="table file")
    p.add_argument("--voice", choices=("active", "passive"), default="active")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("stats", help="timing experiment analysis")
    p.add_argument("--data", metavar="CSV",
                   help="participant,<group>,... file (default: bundled)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--limit", type=float,
                   help="measurement ceiling for the censoring report")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(fn=_cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (StoreError, LexiconError, RenderError) as exc:
        print(f"skyset: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"skyset: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
