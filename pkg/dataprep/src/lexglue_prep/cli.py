"""Entry point: prepare_lexglue --out DIR [--mode ...] [--seed N] [--with-entities] [--limit N]."""

from __future__ import annotations

import argparse
import sys

from .download import HttpRowsLoader
from .errors import DataprepError
from .prepare import prepare


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prepare_lexglue",
        description="Download the four ingested LexGLUE subsets, label them for "
        "binary relevance and write train/val/test JSONL corpora plus a manifest.",
    )
    parser.add_argument("--out", required=True, metavar="DIR", help="output directory")
    parser.add_argument("--mode", choices=("realistic", "original"), default="realistic",
                        help="realistic resamples each split to the target class "
                        "ratios; original keeps every document")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--with-entities", action="store_true",
                        help="annotate person-name byte spans (needs spacy)")
    parser.add_argument("--limit", type=int, metavar="N",
                        help="cap each split at N documents (smoke tests)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    loader = HttpRowsLoader()
    try:
        manifest = prepare(
            args.out,
            loader=loader,
            mode=args.mode,
            seed=args.seed,
            with_entities=args.with_entities,
            limit=args.limit,
            describe=loader.describe,
        )
    except DataprepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for split, info in manifest["splits"].items():
        print(
            f"{split}: {info['n_documents']} docs "
            f"({info['relevant_ratio_percent']}% relevant) -> {info['file']}",
            file=sys.stderr,
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
