"""Single entry point: dataset generation, tensor inspection, equivalence
checking, training, evaluation, and the gradient self-test.

Exit codes: 0 success, 1 usage error, 2 invariant violation (equivalence
disagreement, gradient check failure, training divergence), 3 I/O error.
Every training or evaluation run writes one JSON manifest beside its outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from .combinatorics import combinatorics_map
from .datasets import (
    DatasetFormatError,
    gen_palindrome_dataset,
    gen_password_dataset,
    permute_dataset,
    read_dataset,
    task_alphabet,
    write_dataset,
)
from .encoding import NORM_LOG, NORM_NONE, EncodingConfig, dense_text_lines, encode_dense
from .equivalence import check_theorem
from .gradcheck import DEFAULT_TOLERANCE, run_gradcheck
from .network import build_char_cnn, build_combinatorial_cnn
from .training import (
    TrainConfig,
    TrainingDiverged,
    encoder_for,
    evaluate,
    records_to_csv_lines,
    train,
)
from .words import word_over_own_letters

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse hook
        raise UsageError(f"{message}\n{self.format_usage()}".rstrip())


def _fail(kind: str, message: str) -> None:
    print(f"error: {kind}: {message}", file=sys.stderr)


def _write_manifest(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _norm_flag(value: str) -> str:
    return {"none": NORM_NONE, "log": NORM_LOG}[value]


def _encoding_config(n: int, nu_cap: int | None, norm: str) -> EncodingConfig:
    if nu_cap is None:
        return EncodingConfig.for_length(n, normalization=_norm_flag(norm))
    return EncodingConfig.for_length(n, nu_cap_len=nu_cap, normalization=_norm_flag(norm))


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    counts = (args.train, args.val, args.test)
    if args.task == "palindromes":
        splits = gen_palindrome_dataset(args.len, counts, args.seed)
        task = "palindrome"
    else:
        splits = gen_password_dataset(counts, args.seed, n=args.len)
        task = "password"
    for ds in splits:
        write_dataset(ds, out / f"{ds.split}.tsv")
    _write_manifest(
        out / "manifest.json",
        {
            "subcommand": "gen",
            "task": task,
            "word_length": args.len,
            "per_class_counts": {"train": args.train, "val": args.val, "test": args.test},
            "seed": args.seed,
            "alphabet_size": len(task_alphabet(task)),
            "weak_pool_sizes": [2, 11] if task == "password" else None,
            "artifact_version": __version__,
        },
    )
    print(f"wrote {out}/train.tsv val.tsv test.tsv (seed={args.seed})")
    return EXIT_OK


def cmd_tensor(args) -> int:
    word = word_over_own_letters(args.word)
    if args.format == "sparse":
        for line in combinatorics_map(word).sparse_lines():
            print(line)
        return EXIT_OK
    cfg = _encoding_config(len(word), args.nu_cap, args.norm)
    for line in dense_text_lines(encode_dense(word, cfg)):
        print(line)
    return EXIT_OK


def cmd_equiv(args) -> int:
    report = check_theorem(args.a, args.b, use_oracle=args.oracle)
    if report.bijection is None:
        bij = "none"
    else:
        bij = ",".join(f"{s}->{t}" for s, t in report.bijection.pairs)
    print(f"equal={str(report.tensor_equal).lower()} bijection={bij} agree={str(report.agree).lower()}")
    if not report.agree:
        _fail("invariant", "equivalence routes disagree")
        return EXIT_INVARIANT
    return EXIT_OK


def _load_split(path: Path, task: str, split: str):
    ds = read_dataset(path, task=task, split=split)
    return ds


def cmd_train(args) -> int:
    started = time.time()
    data = Path(args.data)
    train_ds = _load_split(data / "train.tsv", args.task, "train")
    val_ds = _load_split(data / "val.tsv", args.task, "val")
    n = train_ds.word_length
    if args.model == "char":
        model = build_char_cnn(n, len(task_alphabet(args.task)), seed=args.seed)
    else:
        enc_cfg = _encoding_config(n, args.nu_cap, args.norm)
        model = build_combinatorial_cnn(enc_cfg, seed=args.seed)
    model.meta["task"] = args.task
    cfg = TrainConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        steps_per_epoch=args.steps_per_epoch,
        learning_rate=args.lr,
        optimizer=args.optimizer,
        seed=args.seed,
        stop_at_val_acc=args.stop_at_val_acc,
    )
    encoder = encoder_for(model, args.task)
    model, records = train(model, train_ds, val_ds, cfg, encoder)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "metrics.csv").write_text("\n".join(records_to_csv_lines(records)) + "\n", encoding="utf-8")
    save_checkpoint(model, out / "model.ckpt")
    _write_manifest(
        out / "manifest.json",
        {
            "subcommand": "train",
            "task": args.task,
            "model": args.model,
            "data": str(data),
            "epochs_requested": args.epochs,
            "epochs_run": len(records),
            "batch_size": cfg.batch_size,
            "steps_per_epoch": cfg.steps_per_epoch,
            "learning_rate": cfg.learning_rate,
            "optimizer": cfg.optimizer,
            "seed": args.seed,
            "stop_at_val_acc": args.stop_at_val_acc,
            "outputs": ["metrics.csv", "model.ckpt"],
            "artifact_version": __version__,
            "wall_clock_seconds": round(time.time() - started, 3),
        },
    )
    if records:
        last = records[-1]
        print(
            f"epoch {last.epoch}: train_loss={last.train_loss:.4f} "
            f"train_acc={last.train_acc:.4f} val_acc={last.val_acc:.4f}"
        )
    print(f"wrote {out}/model.ckpt metrics.csv manifest.json")
    return EXIT_OK


def cmd_eval(args) -> int:
    started = time.time()
    model = load_checkpoint(args.checkpoint)
    task = model.meta.get("task", "palindrome")
    ds = read_dataset(args.data, task=task, split="eval")
    if args.permute_seed is not None:
        ds = permute_dataset(ds, args.permute_seed)
    acc = evaluate(model, ds, encoder_for(model, task))
    print(f"accuracy={acc:.6f}")
    out = Path(args.out) if args.out else Path(args.checkpoint).parent
    out.mkdir(parents=True, exist_ok=True)
    _write_manifest(
        out / "manifest-eval.json",
        {
            "subcommand": "eval",
            "checkpoint": str(args.checkpoint),
            "data": str(args.data),
            "permute_seed": args.permute_seed,
            "accuracy": acc,
            "artifact_version": __version__,
            "wall_clock_seconds": round(time.time() - started, 3),
        },
    )
    return EXIT_OK


def cmd_gradcheck(args) -> int:
    errors = run_gradcheck(args.seed)
    ok = True
    for kind, err in errors.items():
        passed = err < DEFAULT_TOLERANCE
        ok = ok and passed
        print(f"{kind}: max_rel_err={err:.3e} {'PASS' if passed else 'FAIL'}")
    if not ok:
        _fail("invariant", f"gradient check exceeded tolerance {DEFAULT_TOLERANCE}")
        return EXIT_INVARIANT
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="combword", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate labeled dataset splits")
    p.add_argument("task", choices=["palindromes", "passwords"])
    p.add_argument("--len", type=int, required=True, help="word length")
    p.add_argument("--train", type=int, required=True, help="train items per class")
    p.add_argument("--val", type=int, required=True, help="val items per class")
    p.add_argument("--test", type=int, required=True, help="test items per class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tensor", help="print a word's count map or dense tensor")
    p.add_argument("--word", required=True)
    p.add_argument("--format", choices=["sparse", "dense"], default="sparse")
    p.add_argument("--nu-cap", type=int, default=None, help="channel cap (dense format)")
    p.add_argument("--norm", choices=["none", "log"], default="log")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("equiv", help="compare two words by bijection and by count map")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check with the exhaustive search")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("train", help="train a classifier on generated splits")
    p.add_argument("--task", choices=["palindrome", "password"], required=True)
    p.add_argument("--data", required=True, help="directory with train.tsv and val.tsv")
    p.add_argument("--epochs", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--model", choices=["combinatorial", "char"], default="combinatorial")
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--steps-per-epoch", type=int, default=30)
    p.add_argument("--nu-cap", type=int, default=None)
    p.add_argument("--norm", choices=["none", "log"], default="log")
    p.add_argument("--optimizer", choices=["adam", "sgd-momentum"], default="adam")
    p.add_argument("--stop-at-val-acc", type=float, default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a checkpoint on a dataset file")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--permute-seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gradcheck", help="finite-difference self-test of every layer kind")
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_gradcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _fail("usage", str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DatasetFormatError, CheckpointError, OSError) as exc:
        _fail("io", str(exc))
        return EXIT_IO
    except TrainingDiverged as exc:
        _fail("invariant", str(exc))
        return EXIT_INVARIANT
    except UsageError as exc:
        _fail("usage", str(exc))
        return EXIT_USAGE
    except ValueError as exc:
        _fail("usage", str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
