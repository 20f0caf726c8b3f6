"""Command line front end: parse sentences against a grammar and lexicon."""

from __future__ import annotations

import argparse
import sys

from .disambiguator import diagnose, disambiguate
from .errors import WcdpError
from .model import load_lexicon, make_sentence, tokenize
from .grammar import load_grammar
from .oracle import best_k
from .render import analysis_record, assignment_record, to_json_line, to_text

EXIT_OK = 0
EXIT_GRAMMAR = 1
EXIT_IO = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcdp",
        description="Weighted constraint dependency parser.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("parse", help="disambiguate sentences")
    p.add_argument("-g", "--grammar", required=True, help="grammar file")
    p.add_argument("-l", "--lexicon", required=True, help="lexicon file")
    p.add_argument("-s", "--sentence", help="inline input sentence")
    p.add_argument("-i", "--input", help="file with one sentence per line")
    p.add_argument("--mode", choices=("propagate", "oracle"),
                   default="propagate")
    p.add_argument("--top-k", type=int, default=1,
                   help="number of results in oracle mode")
    p.add_argument("--trace", action="store_true",
                   help="include pruning/activation trace")
    p.add_argument("--diagnose", action="store_true",
                   help="include violation diagnosis")
    p.add_argument("--format", choices=("text", "json-lines"),
                   default="text")
    return parser


def _iter_sentences(args) -> list[str]:
    if args.sentence is not None:
        return [args.sentence]
    if args.input is not None:
        with open(args.input, encoding="utf-8") as handle:
            return [line for line in handle.read().splitlines() if line.strip()]
    return [line for line in sys.stdin.read().splitlines() if line.strip()]


def run(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if args.top_k < 1:
        print("error: --top-k must be >= 1", file=err)
        return EXIT_IO
    try:
        grammar = load_grammar(args.grammar)
        lexicon = load_lexicon(args.lexicon)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except WcdpError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_GRAMMAR

    try:
        lines = _iter_sentences(args)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO

    records = []
    for line in lines:
        if not tokenize(line):
            continue
        sentence = make_sentence(lexicon, line)
        if args.mode == "oracle":
            for rank, scored in enumerate(
                    best_k(sentence, grammar, k=args.top_k), start=1):
                records.append(assignment_record(sentence, scored, rank))
        else:
            holder: list = []
            analysis = disambiguate(sentence, grammar, net_out=holder)
            net = holder[0]
            trace = net.trace if args.trace else None
            report = diagnose(analysis, net) if args.diagnose else None
            records.append(
                analysis_record(sentence, analysis, trace=trace,
                                diagnosis=report))

    for record in records:
        if args.format == "json-lines":
            print(to_json_line(record), file=out)
        else:
            print(to_text(record), file=out)
            print(file=out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
