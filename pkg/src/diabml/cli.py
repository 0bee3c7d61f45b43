"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 input/parse error, 3 output I/O error,
4 evaluation error, 5 model error.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .classifiers import (
    DEFAULT_CONFIGS,
    C45Params,
    ClassifierConfig,
    Kind,
    KnnParams,
    ModelError,
    NbParams,
    SmoParams,
    model_from_json,
    model_to_json,
    predict_label,
    train,
)
from .data import DataError, Dataset, schema_default
from .evaluation import EvaluationError, compare_all
from .ingest import GeneratorParams, generate_synthetic, parse_csv, parse_unlabeled_csv, write_csv
from .preprocess import discretize_dataset, discretize_record, discretized_schema
from .report import dumps_report, plot_data_csv, render_table

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_OUTPUT, EXIT_EVAL, EXIT_MODEL = range(6)

CLASSIFIER_NAMES = {
    "c45": Kind.C45,
    "nb": Kind.NAIVE_BAYES,
    "knn": Kind.KNN,
    "svm": Kind.SVM,
    "majority": Kind.MAJORITY,
}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_OUTPUT, f"cannot write {path}: {exc.strerror or exc}") from exc


def _load_dataset(path: str) -> Dataset:
    try:
        return discretize_dataset(parse_csv(_read_text(path), schema_default()))
    except DataError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from exc


def _check_folds(folds: int, dataset: Dataset) -> None:
    if folds < 2:
        raise CliError(EXIT_INPUT, f"invalid --folds {folds}: need at least 2")
    if folds > len(dataset.records):
        raise CliError(EXIT_INPUT, f"invalid --folds {folds}: only {len(dataset.records)} records")


def _config_from_args(args) -> ClassifierConfig:
    kind = CLASSIFIER_NAMES[args.classifier]
    try:
        if kind is Kind.C45:
            return ClassifierConfig(kind, c45=C45Params(args.min_split))
        if kind is Kind.NAIVE_BAYES:
            return ClassifierConfig(kind, nb=NbParams(args.alpha))
        if kind is Kind.KNN:
            return ClassifierConfig(kind, knn=KnnParams(args.k))
        if kind is Kind.SVM:
            return ClassifierConfig(kind, svm=SmoParams(C=args.C, seed=args.svm_seed))
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    return ClassifierConfig(kind)


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def cmd_generate(args) -> int:
    try:
        params = GeneratorParams(args.n, args.noise, args.seed)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    _write_text(args.out, write_csv(generate_synthetic(params)))
    print(f"wrote {args.n} records to {args.out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    dataset = _load_dataset(args.data)
    print(f"{args.data}: {len(dataset.records)} valid records")
    return EXIT_OK


def _run_compare(dataset, folds, seed, configs):
    try:
        return compare_all(dataset, folds, seed, configs, generated_at=_timestamp())
    except (EvaluationError, ValueError) as exc:
        raise CliError(EXIT_EVAL, f"evaluation failed: {exc}") from exc


def cmd_evaluate(args) -> int:
    config = _config_from_args(args)
    dataset = _load_dataset(args.data)
    _check_folds(args.folds, dataset)
    report = _run_compare(dataset, args.folds, args.seed, [config])
    sys.stdout.write(render_table(report))
    if args.report:
        _write_text(args.report, dumps_report(report))
    return EXIT_OK


def cmd_compare(args) -> int:
    dataset = _load_dataset(args.data)
    _check_folds(args.folds, dataset)
    report = _run_compare(dataset, args.folds, args.seed, DEFAULT_CONFIGS)
    sys.stdout.write(render_table(report))
    if args.report:
        _write_text(args.report, dumps_report(report))
    if args.plot_data:
        _write_text(args.plot_data, plot_data_csv(report))
    return EXIT_OK


def cmd_train(args) -> int:
    config = _config_from_args(args)
    dataset = _load_dataset(args.data)
    try:
        model = train(config, dataset)
    except ValueError as exc:
        raise CliError(EXIT_EVAL, f"training failed: {exc}") from exc
    _write_text(args.model, model_to_json(model))
    print(f"trained {config.kind.value} on {len(dataset.records)} records -> {args.model}")
    return EXIT_OK


def cmd_predict(args) -> int:
    try:
        text = Path(args.model).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_MODEL, f"cannot read model {args.model}: {exc.strerror or exc}") from exc
    try:
        model = model_from_json(text, expected_schema=discretized_schema())
    except ModelError as exc:
        raise CliError(EXIT_MODEL, f"{args.model}: {exc}") from exc
    schema = schema_default()
    try:
        records = parse_unlabeled_csv(_read_text(args.data), schema)
    except DataError as exc:
        raise CliError(EXIT_INPUT, f"{args.data}: {exc}") from exc
    lines = ["row,predicted"]
    for i, r in enumerate(records):
        lines.append(f"{i},{predict_label(model, discretize_record(schema, r))}")
    out = "\n".join(lines) + "\n"
    if args.out:
        _write_text(args.out, out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _add_classifier_args(p) -> None:
    p.add_argument("--classifier", required=True, choices=sorted(CLASSIFIER_NAMES))
    p.add_argument("--k", type=int, default=5, help="KNN neighbours (default 5)")
    p.add_argument("--alpha", type=float, default=1.0, help="Naive Bayes smoothing (default 1.0)")
    p.add_argument("--C", type=float, default=1.0, help="SVM box constraint (default 1.0)")
    p.add_argument("--min-split", type=int, default=2, help="C4.5 minimum records to split (default 2)")
    p.add_argument("--svm-seed", type=int, default=0, help="SMO candidate-order seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diabml", description="Diabetes-risk classifier benchmark.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a synthetic dataset CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="check a dataset CSV against the schema")
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("evaluate", help="cross-validate one classifier")
    _add_classifier_args(p)
    p.add_argument("--data", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="cross-validate all classifiers on shared folds")
    p.add_argument("--data", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.add_argument("--plot-data")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("train", help="fit a classifier on a full dataset and save it")
    _add_classifier_args(p)
    p.add_argument("--data", required=True)
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="label rows with a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_predict)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"diabml: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())
