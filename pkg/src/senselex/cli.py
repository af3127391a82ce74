"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error (missing/malformed
files, store failures).  Analysis commands accept ``--json`` for
machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .corpus import (
    TagsetMap,
    distribution_matrix,
    extract_pairs,
    pair_order_stats,
    parse_tagged_corpus,
    read_pairs,
    write_pairs,
)
from .embeddings import save_embeddings, train_embeddings
from .errors import SenselexError
from .features import (
    FeatureConfig,
    PolarityLexicons,
    assemble,
    load_polarity_bigrams,
    load_polarity_unigrams,
    read_reviews,
    tokenize,
)
from .lexio import SenseLookup, load_lexicon
from .learners.experiment import ExperimentConfig, run_experiment
from .service.app import ServiceConfig, serve_forever
from .service.store import Store

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _open_out(path: str | None):
    return open(path, "w", encoding="utf-8") if path and path != "-" else sys.stdout


def build_parser() -> _Parser:
    parser = _Parser(prog="senselex",
                     description="Sense/polarity lexicon tooling: annotation "
                                 "service, corpus statistics, featurization, "
                                 "and the classifier experiment grid.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the annotation HTTP service")
    serve.add_argument("--config", help="service config file (key = value)")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.add_argument("--store")
    serve.add_argument("--static", help="directory with the web UI bundle")

    imp = sub.add_parser("import-lexicon", help="load lexicon JSON lines into a store")
    imp.add_argument("--store", required=True)
    imp.add_argument("--input", required=True)

    exp = sub.add_parser("export-lexicon", help="write lexicon JSON lines from a store")
    exp.add_argument("--store", required=True)
    exp.add_argument("--pos", choices=["verb", "adverb", "adjective"])
    exp.add_argument("--kind", choices=["sense", "polarity"])
    exp.add_argument("--status")
    exp.add_argument("--output", help="path or - for stdout")

    pairs = sub.add_parser("extract-pairs",
                           help="extract adverb/verb pairs from a tagged corpus")
    pairs.add_argument("--corpus", required=True)
    pairs.add_argument("--tagset", help="tag category map (key = value)")
    pairs.add_argument("--window", type=int, default=1)
    pairs.add_argument("--strict", action="store_true",
                       help="fail on tags missing from the tagset map")
    pairs.add_argument("--output", help="write pair JSON lines here")
    pairs.add_argument("--json", action="store_true",
                       help="print order stats as JSON")

    dist = sub.add_parser("distribution",
                          help="adverb sense-class x verb sense-type matrix")
    dist.add_argument("--pairs", help="pair JSON lines (from extract-pairs)")
    dist.add_argument("--corpus", help="tagged corpus (extract pairs inline)")
    dist.add_argument("--tagset")
    dist.add_argument("--window", type=int, default=1)
    dist.add_argument("--lexicon", required=True, help="lexicon JSON lines")
    dist.add_argument("--order", choices=["AdverbVerb", "VerbAdverb"],
                      help="restrict to one surface order (default: pooled)")
    dist.add_argument("--json", action="store_true")

    emb = sub.add_parser("train-embeddings", help="train skip-gram word vectors")
    emb.add_argument("--reviews", required=True, help="review corpus JSON lines")
    emb.add_argument("--dim", type=int, default=200)
    emb.add_argument("--window", type=int, default=5)
    emb.add_argument("--negatives", type=int, default=5)
    emb.add_argument("--epochs", type=int, default=5)
    emb.add_argument("--lr", type=float, default=0.025)
    emb.add_argument("--min-count", type=int, default=1)
    emb.add_argument("--seed", type=int, default=0)
    emb.add_argument("--output", required=True)

    feat = sub.add_parser("featurize", help="emit per-review feature vectors")
    feat.add_argument("--reviews", required=True)
    feat.add_argument("--embeddings", required=True)
    feat.add_argument("--polarity-unigrams")
    feat.add_argument("--polarity-bigrams")
    feat.add_argument("--sense-lexicon")
    feat.add_argument("--use-polarity", action="store_true")
    feat.add_argument("--use-sense", action="store_true")
    feat.add_argument("--normalize-counts", action="store_true",
                      help="divide count features by review length")
    feat.add_argument("--output", help="path or - for stdout")

    run = sub.add_parser("experiment", help="run the classifier x feature grid")
    run.add_argument("--config", required=True)
    run.add_argument("--json", action="store_true")
    run.add_argument("--output", help="write the JSON report here")

    return parser


def _cmd_serve(args) -> int:
    cfg = ServiceConfig.load(args.config)
    if args.host:
        cfg.host = args.host
    if args.port is not None:
        cfg.port = args.port
    if args.store:
        cfg.store_dir = args.store
    if args.static:
        cfg.static_dir = args.static
    serve_forever(cfg)
    return EXIT_OK


def _cmd_import(args) -> int:
    records = load_lexicon(args.input)
    store = Store(args.store)
    count = store.import_lexicon(records)
    print(f"imported {count} entries into {args.store}")
    return EXIT_OK


def _cmd_export(args) -> int:
    store = Store(args.store)
    out = _open_out(args.output)
    try:
        for line in store.export_lines(pos=args.pos, kind=args.kind,
                                       status=args.status):
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _load_tagset(path: str | None) -> TagsetMap:
    return TagsetMap.load(path) if path else TagsetMap()


def _cmd_extract_pairs(args) -> int:
    tagset = _load_tagset(args.tagset)
    with open(args.corpus, encoding="utf-8") as fh:
        sentences = parse_tagged_corpus(fh, tagset, strict=args.strict)
    pairs = extract_pairs(sentences, tagset, window=args.window)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_pairs(pairs, fh)
    stats = pair_order_stats(pairs)
    if args.json:
        print(json.dumps({"sentences": len(sentences), "pairs": len(pairs),
                          **stats}))
    else:
        print(f"sentences: {len(sentences)}")
        print(f"pairs: {len(pairs)} "
              f"(adverb-verb: {stats['adverb_verb_count']}, "
              f"verb-adverb: {stats['verb_adverb_count']})")
    return EXIT_OK


def _cmd_distribution(args) -> int:
    if bool(args.pairs) == bool(args.corpus):
        raise SenselexError("give exactly one of --pairs or --corpus")
    if args.pairs:
        with open(args.pairs, encoding="utf-8") as fh:
            pairs = read_pairs(fh)
    else:
        tagset = _load_tagset(args.tagset)
        with open(args.corpus, encoding="utf-8") as fh:
            sentences = parse_tagged_corpus(fh, tagset)
        pairs = extract_pairs(sentences, tagset, window=args.window)
    lookup = SenseLookup(load_lexicon(args.lexicon))
    matrix = distribution_matrix(pairs, lookup, order=args.order)
    if args.json:
        print(json.dumps(matrix.to_json_dict()))
    else:
        print(matrix.render_text())
    return EXIT_OK


def _cmd_train_embeddings(args) -> int:
    with open(args.reviews, encoding="utf-8") as fh:
        reviews = read_reviews(fh)
    table = train_embeddings([tokenize(r.text) for r in reviews],
                             dim=args.dim, window=args.window,
                             negatives=args.negatives, epochs=args.epochs,
                             lr=args.lr, min_count=args.min_count,
                             seed=args.seed)
    with open(args.output, "w", encoding="utf-8") as fh:
        save_embeddings(table, fh)
    print(f"trained {len(table)} vectors of dim {table.dim} -> {args.output}")
    return EXIT_OK


def _cmd_featurize(args) -> int:
    from .embeddings import load_embeddings
    with open(args.reviews, encoding="utf-8") as fh:
        reviews = read_reviews(fh)
    with open(args.embeddings, encoding="utf-8") as fh:
        table = load_embeddings(fh)
    lexicons = None
    if args.use_polarity:
        if not args.polarity_unigrams:
            raise SenselexError("--use-polarity needs --polarity-unigrams")
        lexicons = PolarityLexicons()
        with open(args.polarity_unigrams, encoding="utf-8") as fh:
            load_polarity_unigrams(fh, lexicons)
        if args.polarity_bigrams:
            with open(args.polarity_bigrams, encoding="utf-8") as fh:
                load_polarity_bigrams(fh, lexicons)
    lookup = None
    if args.use_sense:
        if not args.sense_lexicon:
            raise SenselexError("--use-sense needs --sense-lexicon")
        lookup = SenseLookup(load_lexicon(args.sense_lexicon))
    config = FeatureConfig(use_polarity=args.use_polarity,
                           use_sense=args.use_sense)
    out = _open_out(args.output)
    try:
        for review in reviews:
            fv = assemble(review.text, table, config, lexicons, lookup,
                          normalize_counts=args.normalize_counts)
            out.write(json.dumps({
                "id": review.review_id, "label": review.label,
                "values": [float(v) for v in fv.values],
                "all_oov": fv.all_oov}) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig.from_file(args.config)
    result = run_experiment(cfg)
    if args.json:
        print(result.render_json())
    else:
        print("accuracy (% mean ± std over seeds)")
        print(result.render_accuracy_table())
        print()
        print("neural network detail (macro averages over seeds)")
        print(result.render_mlp_table())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(result.render_json() + "\n")
    return EXIT_OK


_COMMANDS = {
    "serve": _cmd_serve,
    "import-lexicon": _cmd_import,
    "export-lexicon": _cmd_export,
    "extract-pairs": _cmd_extract_pairs,
    "distribution": _cmd_distribution,
    "train-embeddings": _cmd_train_embeddings,
    "featurize": _cmd_featurize,
    "experiment": _cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SenselexError as exc:
        sys.stderr.write(f"error [{exc.code}]: {exc.message}\n")
        return EXIT_DATA
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
