"""Command-line interface.

Subcommands cover each pipeline stage (normalize, stats, rebalance,
train, predict, ingest, ensemble, evaluate, analyze) plus `run`, which
executes the full experiment described by a YAML run configuration:
normalize, rebalance, train or ingest every configured model, ensemble
the predictions and evaluate everything against the gold labels.

Exit codes: 0 success, 1 usage error, 2 data/config error, 3 numeric
failure (diverged training).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import yaml

from . import __version__
from .classifier import (
    ModelConfig,
    PredictionVector,
    TrainingDivergedError,
    load_model,
    load_predictions,
    predict,
    save_model,
    train,
    write_predictions,
)
from .corpus import CorpusSplit, LabeledExample, load_split, rebalance, stats, write_split
from .ensemble import (
    AlignmentError,
    LabelSequence,
    hard_vote,
    labels_from_split,
    load_labels,
    soft_vote,
    write_labels,
)
from .lexicons import Lexicons
from .metrics import error_listing, evaluate, render_report, report_key_values
from .normalize import normalize_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

# The seven reference hyperparameter rows used when a run config does
# not list its own models: shared batch size 16, learning rate 2e-05
# (3e-05 for the last), epochs and seeds varying per model.
DEFAULT_MODEL_GRID: tuple[tuple[str, ModelConfig], ...] = (
    ("model1", ModelConfig(batch_size=16, learning_rate=2e-05, epochs=1, seed=96)),
    ("model2", ModelConfig(batch_size=16, learning_rate=2e-05, epochs=2, seed=144)),
    ("model3", ModelConfig(batch_size=16, learning_rate=2e-05, epochs=2, seed=380343)),
    ("model4", ModelConfig(batch_size=16, learning_rate=2e-05, epochs=3, seed=1)),
    ("model5", ModelConfig(batch_size=16, learning_rate=2e-05, epochs=3, seed=25)),
    ("model6", ModelConfig(batch_size=16, learning_rate=2e-05, epochs=4, seed=747)),
    ("model7", ModelConfig(batch_size=16, learning_rate=3e-05, epochs=2, seed=380343)),
)

DEFAULT_REBALANCE_SEED = 2020


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class ModelSpec:
    """One entry of a run config: either hyperparameters to train with
    or a path to an externally produced prediction file."""

    model_id: str
    config: ModelConfig | None = None
    predictions_path: Path | None = None


@dataclass
class RunConfig:
    eval_path: Path
    output_dir: Path
    models: list[ModelSpec]
    train_path: Path | None = None
    mode: str = "both"
    threshold: float = 0.5
    rebalance_seed: int = DEFAULT_REBALANCE_SEED
    apply_normalizer: bool = True
    lexicon_overrides: dict[str, str] | None = None

    def __post_init__(self):
        if self.mode not in ("hard", "soft", "both"):
            raise ValueError(f"ensemble mode must be hard, soft or both, not {self.mode!r}")
        if not self.models:
            raise ValueError("run config needs at least one model")
        if any(m.config is not None for m in self.models) and self.train_path is None:
            raise ValueError("paths.train is required when a model must be trained")


def load_run_config(
    path: str | Path,
    output_override: str | None = None,
    mode_override: str | None = None,
    threshold_override: float | None = None,
    rebalance_seed_override: int | None = None,
) -> RunConfig:
    """Parse a YAML run configuration (documented in the README).

    Paths inside the file resolve relative to the file; command-line
    overrides resolve relative to the working directory.
    """
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: run config must be a mapping")
    paths = raw.get("paths", {})
    if not isinstance(paths, dict):
        raise ValueError(f"{path}: 'paths' must be a mapping")
    base = Path(path).parent

    def resolve(p):
        return base / p if p is not None else None

    eval_path = paths.get("eval")
    if eval_path is None:
        raise ValueError(f"{path}: paths.eval is required")
    if output_override is not None:
        output = Path(output_override)
    elif paths.get("output") is not None:
        output = resolve(paths["output"])
    else:
        raise ValueError(f"{path}: paths.output is required (or pass --output)")

    models: list[ModelSpec] = []
    if "models" in raw:
        entries = raw["models"]
        if not isinstance(entries, list) or not entries:
            raise ValueError(f"{path}: 'models' must be a non-empty list")
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict):
                raise ValueError(f"{path}: models[{i}] must be a mapping")
            model_id = str(entry.get("id", f"model{i + 1}"))
            if "predictions" in entry:
                extra = set(entry) - {"id", "predictions"}
                if extra:
                    raise ValueError(
                        f"{path}: models[{i}] mixes 'predictions' with {sorted(extra)}"
                    )
                models.append(
                    ModelSpec(model_id=model_id, predictions_path=resolve(entry["predictions"]))
                )
            else:
                allowed = {"id", "batch_size", "learning_rate", "epochs", "seed", "max_tokens"}
                extra = set(entry) - allowed
                if extra:
                    raise ValueError(f"{path}: models[{i}] has unknown keys {sorted(extra)}")
                kwargs = {k: entry[k] for k in allowed - {"id"} if k in entry}
                models.append(ModelSpec(model_id=model_id, config=ModelConfig(**kwargs)))
    else:
        models = [ModelSpec(model_id=mid, config=cfg) for mid, cfg in DEFAULT_MODEL_GRID]
    if len({m.model_id for m in models}) != len(models):
        raise ValueError(f"{path}: model ids must be unique")

    ens = raw.get("ensemble", {})
    if not isinstance(ens, dict):
        raise ValueError(f"{path}: 'ensemble' must be a mapping")
    lex = paths.get("lexicons")
    overrides = None
    if lex is not None:
        if not isinstance(lex, dict):
            raise ValueError(f"{path}: paths.lexicons must be a mapping")
        unknown = set(lex) - {"charmap", "contractions", "abbreviations", "unigrams"}
        if unknown:
            raise ValueError(f"{path}: unknown lexicon keys {sorted(unknown)}")
        overrides = {k: str(resolve(v)) for k, v in lex.items()}

    mode = mode_override if mode_override is not None else str(ens.get("mode", "both"))
    threshold = (
        threshold_override
        if threshold_override is not None
        else float(ens.get("threshold", 0.5))
    )
    rebalance_seed = (
        rebalance_seed_override
        if rebalance_seed_override is not None
        else int(raw.get("rebalance_seed", DEFAULT_REBALANCE_SEED))
    )
    return RunConfig(
        eval_path=resolve(eval_path),
        output_dir=output,
        models=models,
        train_path=resolve(paths.get("train")),
        mode=mode,
        threshold=threshold,
        rebalance_seed=rebalance_seed,
        apply_normalizer=bool(raw.get("normalize", True)),
        lexicon_overrides=overrides,
    )


def _load_lexicons(args_or_none=None) -> Lexicons:
    kwargs = {}
    if args_or_none:
        kwargs = {k: v for k, v in args_or_none.items() if v is not None}
    return Lexicons.load(**kwargs)


def _normalized_copy(split: CorpusSplit, lexicons: Lexicons) -> CorpusSplit:
    examples = tuple(
        LabeledExample(id=ex.id, text=normalize_text(ex.text, lexicons), label=ex.label)
        for ex in split.examples
    )
    return CorpusSplit(name=split.name, examples=examples)


def _stage(name: str, fn):
    try:
        return fn()
    except TrainingDivergedError as exc:
        raise TrainingDivergedError(f"stage {name!r} failed: {exc}") from exc
    except (ValueError, OSError) as exc:
        raise ValueError(f"stage {name!r} failed: {exc}") from exc


def _add_lexicon_flags(sub):
    sub.add_argument("--charmap", help="override the character replacement table")
    sub.add_argument("--contractions", help="override the contraction dictionary")
    sub.add_argument("--abbreviations", help="override the abbreviation dictionary")
    sub.add_argument("--unigrams", help="override the segmentation lexicon")


def _lexicons_from_args(args) -> Lexicons:
    return _load_lexicons(
        {
            "charmap": args.charmap,
            "contractions": args.contractions,
            "abbreviations": args.abbreviations,
            "unigrams": args.unigrams,
        }
    )


def cmd_normalize(args) -> int:
    lexicons = _lexicons_from_args(args)
    split = load_split(args.input)
    write_split(_normalized_copy(split, lexicons), args.output)
    print(f"normalized {len(split)} rows -> {args.output}")
    return EXIT_OK


def cmd_stats(args) -> int:
    split = load_split(args.input)
    s = stats(split)
    print(f"informative\t{s.n_informative}")
    print(f"uninformative\t{s.n_uninformative}")
    print(f"total\t{s.total}")
    return EXIT_OK


def cmd_rebalance(args) -> int:
    split = load_split(args.input)
    out = rebalance(split, args.seed)
    write_split(out, args.output)
    s = stats(out)
    print(
        f"rebalanced {len(split)} -> {len(out)} rows "
        f"({s.n_informative}/{s.n_uninformative}) -> {args.output}"
    )
    return EXIT_OK


def cmd_train(args) -> int:
    config = ModelConfig(
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        seed=args.seed,
        max_tokens=args.max_tokens,
    )
    split = load_split(args.input)
    model = train(split, config)
    save_model(model, args.output)
    print(
        f"trained on {len(split)} examples, {len(model.vocabulary)} features, "
        f"loss {model.epoch_losses[0]:.6f} -> {model.epoch_losses[-1]:.6f}"
    )
    return EXIT_OK


def cmd_predict(args) -> int:
    model = load_model(args.model)
    split = load_split(args.input)
    model_id = args.model_id if args.model_id else Path(args.output).stem
    vector = predict(model, split, model_id=model_id)
    write_predictions(vector, args.output)
    print(f"wrote {len(vector)} predictions -> {args.output}")
    return EXIT_OK


def cmd_ingest(args) -> int:
    vector = load_predictions(args.input)
    if args.ids_from:
        reference = load_split(args.ids_from)
        expected = tuple(ex.id for ex in reference.examples)
        if vector.ids != expected:
            raise AlignmentError(
                f"{args.input}: id sequence does not match {args.ids_from}"
            )
    write_predictions(vector, args.output)
    print(f"ingested {len(vector)} predictions -> {args.output}")
    return EXIT_OK


def cmd_ensemble(args) -> int:
    vectors = [load_predictions(p) for p in args.predictions]
    vote = hard_vote if args.mode == "hard" else soft_vote
    sequence = vote(vectors, threshold=args.threshold)
    write_labels(sequence, args.output)
    print(f"{args.mode} vote over {len(vectors)} models -> {args.output}")
    return EXIT_OK


def _load_gold(path: str | Path) -> LabelSequence:
    with Path(path).open(encoding="utf-8") as fh:
        header = fh.readline().rstrip("\r\n")
    if header.startswith("Id\tText"):
        return labels_from_split(load_split(path))
    return load_labels(path)


def cmd_evaluate(args) -> int:
    predicted = load_labels(args.predicted)
    gold = _load_gold(args.gold)
    rep = evaluate(predicted, gold)
    text = render_report(rep, name=args.name or str(args.predicted))
    sys.stdout.write(text)
    if args.report_out:
        Path(args.report_out).write_text(text, encoding="utf-8")
    if args.metrics_out:
        Path(args.metrics_out).write_text(report_key_values(rep), encoding="utf-8")
    return EXIT_OK


def cmd_analyze(args) -> int:
    corpus_split = load_split(args.corpus)
    predicted = load_labels(args.predicted)
    gold = labels_from_split(corpus_split)
    if predicted.ids != gold.ids:
        raise AlignmentError(f"{args.predicted}: id sequence does not match {args.corpus}")
    listing = error_listing(predicted, gold, corpus_split, args.kind)
    if args.limit is not None:
        listing = listing[: args.limit]
    print(f"{args.kind} errors: {len(listing)}")
    for ex in listing:
        print(f"{ex.id}\t{ex.text}")
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = load_run_config(
        args.config,
        output_override=args.output,
        mode_override=args.mode,
        threshold_override=args.threshold,
        rebalance_seed_override=args.rebalance_seed,
    )
    out = cfg.output_dir
    for sub in ("predictions", "labels", "reports"):
        (out / sub).mkdir(parents=True, exist_ok=True)

    lexicons = None
    if cfg.apply_normalizer:
        lexicons = _stage("load-lexicons", lambda: _load_lexicons(cfg.lexicon_overrides))

    eval_split = _stage("load-eval", lambda: load_split(cfg.eval_path))
    eval_ready = (
        _normalized_copy(eval_split, lexicons) if cfg.apply_normalizer else eval_split
    )

    train_ready = None
    if any(m.config is not None for m in cfg.models):
        train_split = _stage("load-train", lambda: load_split(cfg.train_path))
        if cfg.apply_normalizer:
            train_split = _stage(
                "normalize-train", lambda: _normalized_copy(train_split, lexicons)
            )
        train_ready = _stage(
            "rebalance", lambda: rebalance(train_split, cfg.rebalance_seed)
        )

    eval_ids = tuple(ex.id for ex in eval_split.examples)
    vectors: list[PredictionVector] = []
    for spec in cfg.models:
        if spec.config is not None:
            model = _stage(f"train:{spec.model_id}", lambda s=spec: train(train_ready, s.config))
            vector = _stage(
                f"predict:{spec.model_id}",
                lambda s=spec, m=model: predict(m, eval_ready, model_id=s.model_id),
            )
        else:
            vector = _stage(
                f"ingest:{spec.model_id}",
                lambda s=spec: load_predictions(s.predictions_path, model_id=s.model_id),
            )
            if vector.ids != eval_ids:
                raise AlignmentError(
                    f"stage 'ingest:{spec.model_id}' failed: id sequence does not "
                    f"match {cfg.eval_path}"
                )
        write_predictions(vector, out / "predictions" / f"{spec.model_id}.tsv")
        vectors.append(vector)

    modes = ("hard", "soft") if cfg.mode == "both" else (cfg.mode,)
    sequences: dict[str, LabelSequence] = {}
    for mode in modes:
        vote = hard_vote if mode == "hard" else soft_vote
        sequence = _stage(f"ensemble:{mode}", lambda v=vote: v(vectors, cfg.threshold))
        write_labels(sequence, out / "labels" / f"{mode}.tsv")
        sequences[mode] = sequence

    if eval_split.labels_known() and len(eval_split) > 0:
        gold = labels_from_split(eval_split)
        named = [
            (spec.model_id, soft_vote([vector], cfg.threshold))
            for spec, vector in zip(cfg.models, vectors)
        ] + [(f"ensemble-{mode}", sequences[mode]) for mode in modes]
        print("name\tprecision\trecall\tf1\taccuracy")
        for name, sequence in named:
            rep = _stage(f"evaluate:{name}", lambda s=sequence, g=gold: evaluate(s, g))
            (out / "reports" / f"{name}.txt").write_text(
                render_report(rep, name=name), encoding="utf-8"
            )
            (out / "reports" / f"{name}.metrics").write_text(
                report_key_values(rep), encoding="utf-8"
            )
            print(
                f"{name}\t{rep.precision:.4f}\t{rep.recall:.4f}"
                f"\t{rep.f1:.4f}\t{rep.accuracy:.4f}"
            )
    else:
        print("no gold labels in eval split; reports skipped")
    print(f"artifacts in {out}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="infotweet",
        description="Informative-tweet classification toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("normalize", help="normalize the text column of a corpus TSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    _add_lexicon_flags(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("stats", help="per-class counts of a labeled corpus")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("rebalance", help="down-sample the majority class to 50:50")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_REBALANCE_SEED)
    p.set_defaults(func=cmd_rebalance)

    p = sub.add_parser("train", help="train the reference classifier")
    p.add_argument("--input", required=True, help="labeled training TSV (already prepared)")
    p.add_argument("--output", required=True, help="model JSON path")
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--learning-rate", type=float, default=2e-05)
    p.add_argument("--epochs", type=int, default=1)
    p.add_argument("--seed", type=int, default=96)
    p.add_argument("--max-tokens", type=int, default=96)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="write per-example probabilities for a split")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--model-id", default=None)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("ingest", help="validate and canonicalize an external prediction file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--ids-from", default=None, help="corpus TSV whose id order must match")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("ensemble", help="combine prediction files by voting")
    p.add_argument("--predictions", nargs="+", required=True)
    p.add_argument("--mode", choices=("hard", "soft"), required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("evaluate", help="score a label file against gold labels")
    p.add_argument("--predicted", required=True, help="label TSV (Id/Label)")
    p.add_argument("--gold", required=True, help="corpus TSV or label TSV")
    p.add_argument("--name", default=None)
    p.add_argument("--report-out", default=None)
    p.add_argument("--metrics-out", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("analyze", help="list misclassified examples of one kind")
    p.add_argument("--predicted", required=True)
    p.add_argument("--corpus", required=True, help="gold corpus TSV with texts")
    p.add_argument("--kind", choices=("false_positive", "false_negative"), required=True)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("run", help="run the full experiment from a YAML config")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None, help="override paths.output")
    p.add_argument("--mode", choices=("hard", "soft", "both"), default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--rebalance-seed", type=int, default=None)
    p.set_defaults(func=cmd_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except TrainingDivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
