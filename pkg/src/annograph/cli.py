"""Command-line interface: validate, convert, query, and stats.

Pipeline conventions: data goes to stdout, diagnostics to stderr, and
"-" means stdin or stdout. Exit codes partition outcomes so scripts can
branch on them: 0 success, 1 validation failure, 2 parse failure (or
unusable input), 3 unsupported conversion.

Column-format inputs bind each file to its arc type on the command
line, e.g. ``annograph stats --from timit-columns W=sa1.wrd P=sa1.phn``.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from collections import Counter

from . import __version__
from .aif import parse_aif, parse_lexicon, serialize_aif, serialize_lexicon
from .content import summarize
from .errors import AnnotationError, InvalidGraphError, UnsupportedConversionError
from .graph import AnnotationGraph
from .sets import AnnotationSet, from_graph
from .tiers import parse_tier, build_graph


class _InputError(ValueError):
    """Unusable command-line input; reported as a parse failure."""


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _write(path: str, data: bytes) -> None:
    """Write output, atomically when it goes to a real file."""
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".annograph-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _single(paths: list[str], fmt: str) -> str:
    if len(paths) != 1:
        raise _InputError(f"format {fmt!r} takes exactly one input, got {len(paths)}")
    return paths[0]


def _binding(arg: str) -> tuple[str, str]:
    arc_type, sep, path = arg.partition("=")
    if not sep or not arc_type:
        raise _InputError(f"column input must be TYPE=PATH (e.g. W=sa1.wrd), got {arg!r}")
    return arc_type, path


def _load_graph(args: argparse.Namespace, resolve: bool = True) -> AnnotationGraph:
    if args.from_format == "timit-columns":
        tiers = []
        for spec in args.inputs:
            arc_type, path = _binding(spec)
            tiers.append(parse_tier(_read(path), arc_type, source_name=path))
        return build_graph(tiers, args.timeline)
    path = _single(args.inputs, args.from_format)
    return parse_aif(_read(path), strict=args.strict, resolve=resolve)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args: argparse.Namespace) -> int:
    failed = False
    if args.from_format == "lexicon":
        # A lexicon has no structural invariants beyond its shape, so
        # parsing it successfully is the whole check.
        for path in args.inputs:
            parse_lexicon(_read(path), strict=args.strict)
        return 0
    if args.from_format == "timit-columns":
        reports = [(" ".join(args.inputs), _load_graph(args).validate())]
    else:
        reports = []
        for path in args.inputs:
            graph = parse_aif(_read(path), strict=args.strict, resolve=False)
            reports.append((path, graph.validate()))
    prefix = len(reports) > 1
    for label, report in reports:
        for line in report.lines():
            print(f"{label}: {line}" if prefix else line, file=sys.stderr)
        failed = failed or bool(report)
    return 1 if failed else 0


def cmd_convert(args: argparse.Namespace) -> int:
    src, dst = args.from_format, args.to_format
    if (src, dst) == ("timit-columns", "aif") or (src, dst) == ("aif", "aif"):
        data = serialize_aif(_load_graph(args))
    elif (src, dst) == ("lexicon", "lexicon"):
        path = _single(args.inputs, src)
        data = serialize_lexicon(parse_lexicon(_read(path), strict=args.strict))
    else:
        raise UnsupportedConversionError(src, dst)
    _write(args.output, data)
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    annotations = from_graph(_load_graph(args))
    matches = sorted(annotations.annotations)
    for ann_type in args.types or ():
        keep = set(annotations.by_type(ann_type))
        matches = [i for i in matches if i in keep]
    for name, value in args.features or ():
        keep = set(annotations.by_feature(name, value))
        matches = [i for i in matches if i in keep]
    for group in args.signal_groups or ():
        keep = set(annotations.by_signal_group(group))
        matches = [i for i in matches if i in keep]
    for ann_id in matches:
        print(_query_line(annotations, ann_id))
    return 0


def _query_line(annotations: AnnotationSet, ann_id: str) -> str:
    ann = annotations.annotations[ann_id]
    ends = []
    for anchor_id in (ann.region.anchors[0], ann.region.anchors[-1]):
        anchor = annotations.anchors.get(anchor_id)
        if anchor is not None and anchor.offsets is not None:
            ends.append(str(anchor.offsets[0]))
        else:
            ends.append("?")
    return f"{ann_id} {ann.ann_type} {ends[0]}..{ends[1]} {summarize(ann.content)}".rstrip()


def cmd_stats(args: argparse.Namespace) -> int:
    graph = _load_graph(args)
    anchored = sum(1 for node in graph.nodes.values() if node.anchored)
    lines = [
        f"signals:{len(graph.signals)}",
        f"timelines:{len(graph.timelines)}",
        f"nodes:{len(graph.nodes)}",
        f"anchored:{anchored}",
        f"unanchored:{len(graph.nodes) - anchored}",
        f"arcs:{len(graph.arcs)}",
    ]
    counts = Counter(arc.arc_type for arc in graph.arcs.values())
    lines.extend(f"type.{arc_type}:{counts[arc_type]}" for arc_type in sorted(counts))
    for line in lines:
        print(line)
    if args.figures:
        # matplotlib is slow to import; only the figure path pays for it
        from . import figures

        os.makedirs(args.figures, exist_ok=True)
        tier_path = os.path.join(args.figures, "tiers.png")
        hist_path = os.path.join(args.figures, "types.png")
        figures.render_tier_figure(graph, tier_path)
        figures.render_type_histogram(graph, hist_path)
        print(f"wrote {tier_path}", file=sys.stderr)
        print(f"wrote {hist_path}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _feature_filter(arg: str) -> tuple[str, str]:
    name, sep, value = arg.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {arg!r}")
    return name, value


def _add_common(sub: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    sub.add_argument(
        "inputs",
        nargs="+",
        metavar="INPUT",
        help="input path, - for stdin; for timit-columns use TYPE=PATH bindings",
    )
    sub.add_argument(
        "--from",
        dest="from_format",
        choices=formats,
        default="aif",
        help="input format (default: aif)",
    )
    sub.add_argument(
        "--strict",
        action="store_true",
        help="reject unknown XML elements and attributes instead of skipping them",
    )
    sub.add_argument(
        "--timeline",
        default="T",
        metavar="ID",
        help="timeline id for graphs built from column tiers (default: T)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annograph",
        description="Validate, convert, query, and summarize annotation documents.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser(
        "validate", help="check documents and report violations to stderr"
    )
    _add_common(validate, ("aif", "timit-columns", "lexicon"))
    validate.set_defaults(func=cmd_validate)

    convert = sub.add_parser("convert", help="convert between document formats")
    _add_common(convert, ("aif", "timit-columns", "lexicon"))
    convert.add_argument(
        "--to",
        dest="to_format",
        required=True,
        choices=("aif", "timit-columns", "lexicon", "report-text"),
        help="output format",
    )
    convert.add_argument(
        "-o",
        "--output",
        default="-",
        help="output path, - for stdout (default); written atomically",
    )
    convert.set_defaults(func=cmd_convert)

    query = sub.add_parser(
        "query", help="print matching annotations, one per line, to stdout"
    )
    _add_common(query, ("aif", "timit-columns"))
    query.add_argument(
        "--type",
        dest="types",
        action="append",
        metavar="TYPE",
        help="keep annotations of this type (repeatable; filters are conjoined)",
    )
    query.add_argument(
        "--feature",
        dest="features",
        action="append",
        type=_feature_filter,
        metavar="NAME=VALUE",
        help="keep annotations carrying this feature value (repeatable)",
    )
    query.add_argument(
        "--signal-group",
        dest="signal_groups",
        action="append",
        metavar="ID",
        help="keep annotations on this signal group / timeline (repeatable)",
    )
    query.set_defaults(func=cmd_query)

    stats = sub.add_parser("stats", help="print count statistics as key:value lines")
    _add_common(stats, ("aif", "timit-columns"))
    stats.add_argument(
        "--figures",
        metavar="DIR",
        help="also render tier and type-histogram figures as PNG files into DIR",
    )
    stats.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedConversionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvalidGraphError as exc:
        for line in exc.report.lines():
            print(line, file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AnnotationError, OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
