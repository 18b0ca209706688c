#!/usr/bin/env python3
"""Alphabet-permutation robustness comparison on the palindrome task.

Trains the subword-tensor model and the raw-character baseline on the same
splits, then reports each model's accuracy on the clean validation set and on
the same set after one random alphabet permutation. The tensor model's delta
is exactly zero by construction; the baseline's delta shows how much a
raw-character model leans on letter identity.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from combword.checkpoint import load_checkpoint
from combword.cli import main as cli
from combword.datasets import permute_dataset, read_dataset
from combword.training import encoder_for, evaluate


def accuracy_pair(ckpt_path: Path, val_path: Path, permute_seed: int) -> tuple[float, float]:
    model = load_checkpoint(ckpt_path)
    task = model.meta["task"]
    val = read_dataset(val_path, task=task, split="val")
    encoder = encoder_for(model, task)
    return evaluate(model, val, encoder), evaluate(model, permute_dataset(val, permute_seed), encoder)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs/robustness")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--len", type=int, default=10)
    ap.add_argument("--epochs", type=int, default=12)
    ap.add_argument("--permute-seed", type=int, default=5)
    args = ap.parse_args()

    out = Path(args.out)
    data = out / "data"
    rc = cli(["gen", "palindromes", "--len", str(args.len), "--train", "1000", "--val", "500",
              "--test", "500", "--seed", str(args.seed), "--out", str(data)])
    if rc:
        return rc
    for model in ("combinatorial", "char"):
        rc = cli(["train", "--task", "palindrome", "--data", str(data), "--model", model,
                  "--epochs", str(args.epochs), "--seed", str(args.seed), "--out", str(out / model)])
        if rc:
            return rc
    for model in ("combinatorial", "char"):
        clean, permuted = accuracy_pair(out / model / "model.ckpt", data / "val.tsv", args.permute_seed)
        print(f"{model}: clean={clean:.4f} permuted={permuted:.4f} delta={clean - permuted:+.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
