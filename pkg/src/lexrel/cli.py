"""Command-line surface: extract-keywords, train, evaluate, classify, sweep.

Machine-readable artifacts go to files or stdout; logs go to stderr.
Exit codes: 0 success, 1 operational runtime failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from pathlib import Path

from . import __version__
from .classifier import load_model, predict_batch, save_model, train
from .config import KNOWN_KEYS, PipelineConfig, apply_setting, load_config
from .corpus import Document, load_corpus
from .errors import ConfigError, DimensionMismatchError, InputError, LexrelError
from .evaluation import (
    ResultRow,
    baseline_always_positive,
    baseline_majority,
    baseline_manual_keywords,
    compute_metrics,
    format_results,
    summarize,
)
from .ngrams import accumulate_stats, extraction_fingerprint, write_stats_tsv
from .pipeline import ke_fingerprint, vectorize_corpus
from .preprocess import preprocess_fingerprint
from .scoring import load_keywords, save_keywords, select_keywords


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat key=value config file")
    parser.add_argument("--seed", type=int, help="override train.seed")
    parser.add_argument("--threads", type=int, default=1, help="per-document worker threads")


def _pipeline_config(args) -> PipelineConfig:
    config = PipelineConfig()
    if args.config:
        config = load_config(args.config, config)
    if args.seed is not None:
        config = apply_setting(config, "train.seed", str(args.seed))
    return config


def _require(value, args_config: PipelineConfig, path_key: str, flag: str):
    if value:
        return value
    from_config = args_config.paths.get(path_key)
    if from_config:
        return from_config
    raise ConfigError(f"missing required {flag} (or paths.{path_key} in the config file)")


def _check_keyword_fingerprint(keywords, config: PipelineConfig) -> None:
    expected = ke_fingerprint(config.preprocess, config.extraction, config.scoring)
    if keywords.config_fingerprint and keywords.config_fingerprint != expected:
        _log(
            "warning: keyword file fingerprint "
            f"{keywords.config_fingerprint} does not match current config {expected}; "
            "results may be inconsistent"
        )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_extract_keywords(args) -> int:
    config = _pipeline_config(args)
    corpus = load_corpus(_require(args.train, config, "train_corpus", "--train"))
    stats = accumulate_stats(corpus, config.preprocess, config.extraction)
    if args.dump_stats:
        write_stats_tsv(stats, args.dump_stats)
        _log(f"dumped stats for {len(stats)} terms -> {args.dump_stats}")
    keywords = select_keywords(
        stats,
        (corpus.n_positive, corpus.n_negative),
        config.scoring,
        config_fingerprint=ke_fingerprint(config.preprocess, config.extraction, config.scoring),
    )
    save_keywords(keywords, args.out)
    _log(f"extracted {len(keywords)} keywords -> {args.out}")
    for kw in keywords.keywords[:10]:
        _log(f"  {kw.score:.4f}  {kw.term}")
    return 0


def cmd_train(args) -> int:
    config = _pipeline_config(args)
    corpus = load_corpus(_require(args.train, config, "train_corpus", "--train"))
    keywords = load_keywords(_require(args.keywords, config, "keywords", "--keywords"))
    _check_keyword_fingerprint(keywords, config)

    _log(f"vectorizing {len(corpus)} documents over {len(keywords)} keywords")
    vectors = vectorize_corpus(corpus, keywords, config.preprocess, config.features, args.threads)

    log_path = Path(args.log) if args.log else Path(args.out).with_suffix(".log")
    with log_path.open("w", encoding="utf-8", newline="\n") as log_fh:
        log_fh.write("epoch\ttrain_loss\tval_loss\tlr\timproved\n")

        def log_hook(epoch, train_loss, val_loss, lr, improved):
            log_fh.write(
                f"{epoch}\t{train_loss:.6f}\t{val_loss:.6f}\t{lr:.3e}\t{int(improved)}\n"
            )

        model = train(
            vectors,
            [d.label for d in corpus],
            config.architecture,
            config.train,
            threshold=config.threshold,
            log_hook=log_hook,
        )
    save_model(model, args.out)
    _log(
        f"trained {model.layer_sizes} in {model.training_meta.epochs_run} epochs "
        f"(best val loss {model.training_meta.final_val_loss:.6f}) -> {args.out}"
    )
    return 0


def cmd_evaluate(args) -> int:
    config = _pipeline_config(args)
    model = load_model(_require(args.model, config, "model", "--model"))
    keywords = load_keywords(_require(args.keywords, config, "keywords", "--keywords"))
    _check_keyword_fingerprint(keywords, config)
    if len(keywords) != model.input_dim:
        raise DimensionMismatchError(
            f"model expects {model.input_dim} features but keyword file has {len(keywords)}"
        )
    test_corpus = load_corpus(_require(args.test, config, "test_corpus", "--test"))

    rows = []
    started = time.perf_counter()
    vectors = vectorize_corpus(test_corpus, keywords, config.preprocess, config.features, args.threads)
    predictions, _ = predict_batch(model, vectors)
    truths = [d.label for d in test_corpus]
    rows.append(
        ResultRow(
            run_name="model",
            metrics=compute_metrics(predictions, truths),
            n_keywords=len(keywords),
            wall_seconds=time.perf_counter() - started,
        )
    )

    if args.with_baselines:
        train_labels = truths
        if args.train:
            train_labels = [d.label for d in load_corpus(args.train)]
        started = time.perf_counter()
        rows.append(
            ResultRow(
                "baseline_majority",
                baseline_majority(train_labels, truths),
                0,
                time.perf_counter() - started,
            )
        )
        started = time.perf_counter()
        rows.append(
            ResultRow(
                "baseline_always_positive",
                baseline_always_positive(truths),
                0,
                time.perf_counter() - started,
            )
        )
        if args.manual_keywords:
            started = time.perf_counter()
            rows.append(
                ResultRow(
                    "baseline_manual_keywords",
                    baseline_manual_keywords(args.manual_keywords, test_corpus, config.preprocess),
                    0,
                    time.perf_counter() - started,
                )
            )

    table = format_results(rows)
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
    else:
        sys.stdout.write(table)
    for row in rows:
        _log(summarize(row))
    return 0


def _classify_inputs(paths: list[str]) -> list[Document]:
    documents: list[Document] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            for txt in sorted(path.glob("*.txt")):
                documents.append(Document(id=str(txt), text=txt.read_text(encoding="utf-8")))
        elif path.suffix == ".jsonl":
            loaded = load_corpus(path, require_labels=False)
            documents.extend(loaded)
        else:
            documents.append(Document(id=str(path), text=path.read_text(encoding="utf-8")))
    if not documents:
        raise InputError("no input documents found")
    return documents


def cmd_classify(args) -> int:
    import json

    config = _pipeline_config(args)
    model = load_model(_require(args.model, config, "model", "--model"))
    keywords = load_keywords(_require(args.keywords, config, "keywords", "--keywords"))
    _check_keyword_fingerprint(keywords, config)
    documents = _classify_inputs(args.inputs)

    started = time.perf_counter()
    vectors = vectorize_corpus(documents, keywords, config.preprocess, config.features, args.threads)
    labels, probs = predict_batch(model, vectors)
    elapsed = time.perf_counter() - started

    out_fh = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        for doc, label, prob in zip(documents, labels, probs):
            out_fh.write(
                json.dumps({"id": doc.id, "label": label.value, "probability": float(prob)})
                + "\n"
            )
    finally:
        if args.out:
            out_fh.close()
    rate = len(documents) / elapsed if elapsed > 0 else float("inf")
    _log(f"classified {len(documents)} documents in {elapsed:.2f}s ({rate:.1f} docs/s)")
    return 0


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def _parse_grid(path: str) -> list[tuple[str, list[str]]]:
    grid: list[tuple[str, list[str]]] = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read grid file {path}: {exc}") from exc
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"grid line {line_no}: expected 'key = v1, v2, ...'")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"grid line {line_no}: unknown config key {key!r}")
        splitter = "|" if "|" in raw else ","
        values = [v.strip() for v in raw.split(splitter) if v.strip()]
        if not values:
            raise ConfigError(f"grid line {line_no}: no values for {key!r}")
        grid.append((key, values))
    if not grid:
        raise ConfigError(f"grid file {path} is empty")
    return grid


def cmd_sweep(args) -> int:
    base = _pipeline_config(args)
    grid = _parse_grid(args.grid)
    train_corpus = load_corpus(_require(args.train, base, "train_corpus", "--train"))
    test_corpus = load_corpus(_require(args.test, base, "test_corpus", "--test"))

    keys = [key for key, _ in grid]
    stats_cache: dict[tuple[str, str], dict] = {}
    rows = []
    combos = list(itertools.product(*(values for _, values in grid)))
    _log(f"sweeping {len(combos)} combinations of {', '.join(keys)}")
    for combo in combos:
        config = base
        for key, value in zip(keys, combo):
            config = apply_setting(config, key, value)
        run_name = ",".join(
            f"{key.split('.', 1)[1]}={value}" for key, value in zip(keys, combo)
        )
        started = time.perf_counter()

        cache_key = (
            preprocess_fingerprint(config.preprocess),
            extraction_fingerprint(config.extraction),
        )
        if cache_key not in stats_cache:
            stats_cache[cache_key] = accumulate_stats(
                train_corpus, config.preprocess, config.extraction
            )
        keywords = select_keywords(
            stats_cache[cache_key],
            (train_corpus.n_positive, train_corpus.n_negative),
            config.scoring,
            config_fingerprint=ke_fingerprint(config.preprocess, config.extraction, config.scoring),
        )
        train_vecs = vectorize_corpus(
            train_corpus, keywords, config.preprocess, config.features, args.threads
        )
        test_vecs = vectorize_corpus(
            test_corpus, keywords, config.preprocess, config.features, args.threads
        )
        model = train(
            train_vecs,
            [d.label for d in train_corpus],
            config.architecture,
            config.train,
            threshold=config.threshold,
        )
        predictions, _ = predict_batch(model, test_vecs)
        metrics = compute_metrics(predictions, [d.label for d in test_corpus])
        row = ResultRow(
            run_name=run_name,
            metrics=metrics,
            n_keywords=len(keywords),
            wall_seconds=time.perf_counter() - started,
        )
        rows.append(row)
        _log(summarize(row))

    table = format_results(rows)
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
    else:
        sys.stdout.write(table)
    return 0


# ---------------------------------------------------------------------------
# Parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexrel",
        description="Contrastive keyword extraction and shallow neural "
        "classification for legal document relevance.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract-keywords", help="run the KE stage on a labeled corpus")
    _add_common(p)
    p.add_argument("--train", metavar="JSONL", help="labeled training corpus")
    p.add_argument("--out", required=True, metavar="JSON", help="keyword file to write")
    p.add_argument("--dump-stats", metavar="TSV", help="also dump raw term statistics")
    p.set_defaults(func=cmd_extract_keywords)

    p = sub.add_parser("train", help="train the classifier on a vectorized corpus")
    _add_common(p)
    p.add_argument("--train", metavar="JSONL", help="labeled training corpus")
    p.add_argument("--keywords", metavar="JSON", help="keyword file from extract-keywords")
    p.add_argument("--out", required=True, metavar="JSON", help="model file to write")
    p.add_argument("--log", metavar="TSV", help="per-epoch loss log (default: <out>.log)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="evaluate a model on a labeled corpus")
    _add_common(p)
    p.add_argument("--model", metavar="JSON")
    p.add_argument("--keywords", metavar="JSON")
    p.add_argument("--test", metavar="JSONL", help="labeled test corpus")
    p.add_argument("--train", metavar="JSONL", help="train corpus (for the majority baseline)")
    p.add_argument("--with-baselines", action="store_true", help="add baseline rows")
    p.add_argument("--manual-keywords", metavar="TXT", help="manual keyword list baseline")
    p.add_argument("--out", metavar="TSV", help="write results table here instead of stdout")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("classify", help="label new documents")
    _add_common(p)
    p.add_argument("--model", metavar="JSON")
    p.add_argument("--keywords", metavar="JSON")
    p.add_argument("inputs", nargs="+", metavar="INPUT",
                   help="JSONL corpus, directory of .txt files, or .txt files")
    p.add_argument("--out", metavar="JSONL", help="write predictions here instead of stdout")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="grid-sweep hyperparameters and tabulate results")
    _add_common(p)
    p.add_argument("--grid", required=True, metavar="TXT", help="key = v1, v2, ... per line")
    p.add_argument("--train", metavar="JSONL")
    p.add_argument("--test", metavar="JSONL")
    p.add_argument("--out", metavar="TSV", help="write results table here instead of stdout")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _log(f"error: {exc}")
        return 2
    except FileNotFoundError as exc:
        _log(f"error: {exc}")
        return 2
    except LexrelError as exc:
        _log(f"error: {exc}")
        return 1
    except OSError as exc:
        _log(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
