"""
koszul-lab - Koszulity of layered-graph algebras and the minimality search
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

import config
from enumeration import GraphEnumerator, canonical_key
from layered_graph import StructuralMode, load_graphs
from notifier import TelegramNotifier
from search import GraphSearch, analyse_graph
from storage import ResultStore
from utils import KoszulLabError, format_profile, parse_profile, setup_logging, write_jsonl


def cmd_enumerate(args) -> int:
    profile = parse_profile(args.profile)
    mode = StructuralMode.from_name(args.mode)
    enumerator = GraphEnumerator(mode, uniform_only=args.uniform_only)
    records = [
        {"key": canonical_key(g).hex(), "edges": g.edge_count, "uniform": g.is_uniform(), "graph": g.to_dict()}
        for g in enumerator.enumerate(profile)
    ]
    if args.output:
        write_jsonl(args.output, records)
        logging.info(f"Catalog written to {args.output}")
    print(len(records))
    return 0


def cmd_check(args) -> int:
    mode = StructuralMode.from_name(args.mode)
    graphs = load_graphs(args.file)
    status = 0
    for g in graphs:
        if args.dot:
            print(g.to_dot(), end="")
            continue
        report = analyse_graph(g, mode, bound=args.bound, cohomology=args.cohomology,
                               use_pinch=False if args.no_pinch else None)
        print(json.dumps(report, indent=2, sort_keys=True))
        if not report["validation"]["valid"]:
            logging.error(f"{args.file}: {report['validation']['violations'][0]}")
            status = 1
    return status


def cmd_search(args) -> int:
    mode = StructuralMode.from_name(args.mode)
    profiles = [parse_profile(text) for text in args.profiles] if args.profiles else None
    store = ResultStore(args.output)
    notifier = TelegramNotifier() if args.notify else None
    search = GraphSearch(mode, jobs=args.jobs, store=store, notifier=notifier,
                         use_pinch=False if args.no_pinch else None, bound=args.bound,
                         resume=not args.fresh, write_dot=args.dot)
    report = search.run(args.max_vertices, profiles, height_filter=not args.no_height_filter,
                        pinch_filter=False if args.no_pinch_filter else None)

    for row in report.rows:
        print(f"{format_profile(row['profile'])}: {row['total']} graphs, {row['uniform']} uniform, "
              f"{row['koszul']} Koszul, {row['non_koszul']} non-Koszul")
    for found in report.non_koszul:
        print(f"non-Koszul: {format_profile(found['profile'])} with {found['edges']} edges, key {found['key']}")
    print(f"Report: {store.out_dir}/{config.REPORT_FILE}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="koszul-lab",
                                     description="Koszulity of A(Γ) for uniform layered graphs")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--log-file", default=config.LOG_FILE)
    modes = list(config.MODE_PROFILES)
    sub = parser.add_subparsers(dest="command")

    enum_parser = sub.add_parser("enumerate", help="enumerate graphs of a profile up to isomorphism")
    enum_parser.add_argument("--profile", required=True, help="layer sizes, e.g. 1,2,2,2,1")
    enum_parser.add_argument("--mode", choices=modes, default=config.DEFAULT_MODE)
    enum_parser.add_argument("--uniform-only", action="store_true")
    enum_parser.add_argument("-o", "--output", help="JSONL catalog file")
    enum_parser.set_defaults(func=cmd_enumerate)

    check_parser = sub.add_parser("check", help="analyse the graph(s) in a JSON or JSONL file")
    check_parser.add_argument("file")
    check_parser.add_argument("--bound", type=int, help="degree bound for the Hilbert series (default 2N)")
    check_parser.add_argument("--cohomology", nargs=2, type=int, metavar=("LEVEL", "K"),
                              help="cochain counts of the window below each vertex at LEVEL")
    check_parser.add_argument("--mode", choices=modes, default='unique-min-only')
    check_parser.add_argument("--no-pinch", action="store_true", help="disable the pinch shortcut")
    check_parser.add_argument("--dot", action="store_true", help="print the DOT rendering instead")
    check_parser.set_defaults(func=cmd_check)

    search_parser = sub.add_parser("search", help="exhaustive search for non-Koszul graphs")
    search_parser.add_argument("--max-vertices", type=int, required=True)
    search_parser.add_argument("--mode", choices=modes, default=config.DEFAULT_MODE)
    search_parser.add_argument("--profile", dest="profiles", action="append",
                               help="restrict to this profile (repeatable)")
    search_parser.add_argument("--no-height-filter", action="store_true", help="also search height ≤ 3")
    search_parser.add_argument("--no-pinch-filter", action="store_true",
                               help="also search profiles with a singleton interior level")
    search_parser.add_argument("--no-pinch", action="store_true", help="disable the pinch shortcut")
    search_parser.add_argument("--bound", type=int, help="numerical Koszulity degree bound")
    search_parser.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
    search_parser.add_argument("-o", "--output", default=config.DEFAULT_OUTPUT_DIR, help="output directory")
    search_parser.add_argument("--fresh", action="store_true", help="ignore existing catalogs")
    search_parser.add_argument("--dot", action="store_true", help="also write DOT files for non-Koszul graphs")
    search_parser.add_argument("--notify", action="store_true", help="send Telegram alerts")
    search_parser.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        print_usage()
        return 0

    setup_logging(args.log_file, logging.DEBUG if args.verbose else logging.INFO)
    try:
        return args.func(args)
    except KoszulLabError as e:
        logging.error(f"{args.command} failed: {e}")
        return e.exit_code
    except KeyboardInterrupt:
        logging.info("Stopped by user")
        return 130


def print_usage():
    """Print usage information"""
    print("""
koszul-lab - Koszulity of A(Γ) for uniform layered graphs

Usage:
  python3 main.py <command> [options]

Commands:
  enumerate   --profile 1,2,2,2,1 [--mode MODE] [--uniform-only] [-o FILE]
  check       FILE [--bound D] [--cohomology LEVEL K] [--mode MODE] [--no-pinch] [--dot]
  search      --max-vertices 9 [--mode MODE] [--no-height-filter] [--jobs J] [-o DIR]

Modes:
  unique-max        unique minimal and maximal vertex (default)
  top-maximal       every maximal vertex on the top level
  unique-min-only   unique minimal vertex only

Examples:
  python3 main.py enumerate --profile 1,2,2,2,1 --uniform-only   # prints 5
  python3 main.py search --max-vertices 9 --jobs 4              # finds H
  python3 main.py check h.json --cohomology 4 4                   # H: cochains [1,7,13,6]

Exit codes:
  0 success, 1 invalid input, 2 internal limit exceeded

Configuration:
  Copy config_template.py to config_local.py to override defaults.
    """)


if __name__ == "__main__":
    sys.exit(main())
