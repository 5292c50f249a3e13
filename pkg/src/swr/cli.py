"""Command-line interface.

Subcommands: summarize, eval, tune-delta, dump-graph. Exit codes:
0 success, 1 input error, 2 warnings escalated under --strict.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from swr import __version__
from swr.corpus import CorpusError, build_document
from swr.diversity import affinity_matrix, rwmd_matrix, sentence_bags
from swr.embeddings import EmbeddingLoadError, load_embeddings, stem_vectors
from swr.graph import GraphConstructionError, build_word_graph, dump_edges
from swr.pipeline import (SYSTEMS, PipelineConfig, has_warnings,
                          kept_surfaces, make_filter_config, run_dataset,
                          summarize, tune_delta)
from swr.selection import parse_budget

log = logging.getLogger("swr.cli")

_INPUT_ERRORS = (CorpusError, EmbeddingLoadError, GraphConstructionError,
                 FileNotFoundError, IsADirectoryError, ValueError, OSError)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", type=int, default=2,
                        help="co-occurrence window size (default 2)")
    parser.add_argument("--delta", type=float, default=0.8,
                        help="semantic edge similarity threshold in (0,1)")
    parser.add_argument("--alpha", type=float, default=0.85,
                        help="damping factor (default 0.85)")
    parser.add_argument("--gamma", type=float, default=1.0,
                        help="RBF kernel width (default 1)")
    parser.add_argument("--profile", default="inverted_pyramid",
                        choices=("inverted_pyramid", "uniform"),
                        help="article structure profile")
    parser.add_argument("--budget", default="100w",
                        help="summary budget: 100w, 3s, 800c, 30%%w, 30%%s")
    parser.add_argument("--ablate", default="",
                        help="comma list from NSE,NAS,NSC,NSP")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--min-token-len", type=int, default=2)
    parser.add_argument("--language", default="en")
    parser.add_argument("--embeddings", help="word vector file (text format)")
    parser.add_argument("--stopwords", help="stop-word list file")
    parser.add_argument("--tag-lexicon", help="word<TAB>tag lexicon file")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--no-eval-stemming", action="store_true",
                        help="disable stemming inside the ROUGE scorer")
    parser.add_argument("--aggregation", default="average",
                        choices=("average", "max"),
                        help="multi-reference aggregation")
    parser.add_argument("--strict", action="store_true",
                        help="exit 2 on convergence/degeneracy warnings")


def _config_from(args: argparse.Namespace) -> PipelineConfig:
    ablations = frozenset(
        a.strip().upper() for a in args.ablate.split(",") if a.strip())
    return PipelineConfig(
        window=args.window, delta=args.delta, alpha=args.alpha,
        gamma=args.gamma, profile=args.profile,
        budget=parse_budget(args.budget), ablations=ablations,
        seed=args.seed, min_token_len=args.min_token_len,
        language=args.language, embeddings_path=args.embeddings,
        stopwords_path=args.stopwords, tag_lexicon_path=args.tag_lexicon,
        eval_stemming=not args.no_eval_stemming,
        aggregation=args.aggregation, workers=args.workers)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _cmd_summarize(args: argparse.Namespace) -> int:
    config = _config_from(args)
    text = _read_input(args.input)
    result, diagnostics, trace = summarize(
        config, text, source_id=args.input, return_trace=True)
    doc = build_document(text, args.input, make_filter_config(config))
    separator = "\n" if args.sep == "newline" else " "
    summary = result.text(doc, separator)
    if args.output:
        Path(args.output).write_text(summary + "\n", encoding="utf-8")
    else:
        print(summary)
    if args.json_out:
        record = {
            "indices": result.selected,
            "sizes": {"words": result.total_words,
                      "sentences": result.total_sentences,
                      "chars": result.total_chars},
            "flags": {"over_budget": result.over_budget,
                      "converged": diagnostics["converged"],
                      "bias_fallback": diagnostics["bias_fallback"]},
            "diagnostics": diagnostics,
        }
        Path(args.json_out).write_text(
            json.dumps(record, sort_keys=True, indent=2) + "\n",
            encoding="utf-8")
    if args.dump_scores:
        _dump_scores(trace, args.dump_scores)
    if args.dump_affinity:
        _dump_affinity(config, doc, args.dump_affinity)
    if args.strict and has_warnings(diagnostics):
        return 2
    return 0


def _dump_scores(trace: dict, prefix: str) -> None:
    words = "".join("%s\t%.10g\n" % (stem, trace["word_score"][stem])
                    for stem in sorted(trace["word_score"]))
    Path(prefix + ".words.tsv").write_text(words, encoding="utf-8")
    sentences = "".join("%d\t%.10g\n" % (idx, trace["salience"][idx])
                        for idx in sorted(trace["salience"]))
    Path(prefix + ".sentences.tsv").write_text(sentences, encoding="utf-8")


def _dump_affinity(config: PipelineConfig, doc, path: str) -> None:
    table = None
    if config.embeddings_path:
        table = load_embeddings(config.embeddings_path,
                                vocab_filter=kept_surfaces(doc))
    vector_index = stem_vectors(doc, table) if table else {}
    dist, _ = rwmd_matrix(sentence_bags(doc, vector_index))
    matrix = affinity_matrix(dist, config.gamma)
    lines = ["\t".join("%.10g" % v for v in row) for row in matrix]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _cmd_eval(args: argparse.Namespace) -> int:
    config = _config_from(args)
    budgets = [parse_budget(b) for b in args.budgets] if args.budgets \
        else [config.budget]
    systems = ([s.strip() for s in args.systems.split(",") if s.strip()]
               if args.systems else None)
    rows = run_dataset(config, args.dataset, systems=systems,
                       budgets=budgets, out_csv=args.out)
    if not args.out:
        print(",".join(("doc_id", "system", "budget", "r1", "r2", "rsu4")))
        for row in rows:
            print(",".join(row[c] for c in
                           ("doc_id", "system", "budget", "r1", "r2", "rsu4")))
    skipped = sum(1 for row in rows if row["system"] == "skipped")
    if skipped:
        log.warning("%d document(s) skipped for missing references", skipped)
        if args.strict:
            return 2
    return 0


def _cmd_tune_delta(args: argparse.Namespace) -> int:
    config = _config_from(args)
    grid = [float(v) for v in args.grid.split(",") if v.strip()]
    best, rows = tune_delta(config, args.dataset, grid, out_csv=args.out)
    for row in rows:
        print("delta=%s mean_r1=%s" % (row["delta"], row["mean_r1"]))
    print("best_delta=%g" % best)
    return 0


def _cmd_dump_graph(args: argparse.Namespace) -> int:
    config = _config_from(args)
    text = _read_input(args.input)
    doc = build_document(text, args.input, make_filter_config(config))
    table = None
    if config.embeddings_path:
        table = load_embeddings(config.embeddings_path,
                                vocab_filter=kept_surfaces(doc))
    vector_index = stem_vectors(doc, table) if table else {}
    graph = build_word_graph(doc, vector_index, window=config.window,
                             threshold=config.delta,
                             semantic="NSE" not in config.ablations)
    dump_edges(graph, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swr",
        description="Semantic word-graph extractive summarizer")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize one document")
    p.add_argument("--input", required=True, help="text file, or - for stdin")
    p.add_argument("--output", help="summary file (default stdout)")
    p.add_argument("--json-out", help="write a JSON record of the run")
    p.add_argument("--sep", choices=("space", "newline"), default="space",
                   help="separator between selected sentences")
    p.add_argument("--dump-scores", metavar="PREFIX",
                   help="write PREFIX.words.tsv and PREFIX.sentences.tsv")
    p.add_argument("--dump-affinity", metavar="PATH",
                   help="write the sentence affinity matrix as TSV")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("eval", help="evaluate systems over a dataset")
    p.add_argument("--dataset", required=True,
                   help="directory of per-document subdirectories")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--budgets", action="append", metavar="BUDGET",
                   help="budget to evaluate (repeatable)")
    p.add_argument("--systems",
                   help="comma list; default %s" % ",".join(SYSTEMS))
    _add_config_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("tune-delta",
                       help="sweep the semantic threshold on a dev set")
    p.add_argument("--dataset", required=True)
    p.add_argument("--grid", required=True,
                   help="comma list of thresholds, e.g. 0.4,0.6,0.8")
    p.add_argument("--out", help="sweep CSV output path")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_tune_delta)

    p = sub.add_parser("dump-graph", help="write the word graph edge list")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_dump_graph)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"swr: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
