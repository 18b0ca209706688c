#!/usr/bin/env python3
"""Desk-scale palindrome experiment: length-10 words, 1000+1000 train.

Generates the splits, trains the subword-tensor classifier, then evaluates
the checkpoint on the clean and on an alphabet-permuted validation set.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from combword.cli import main as cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs/palindrome_desk")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--epochs", type=int, default=50)
    ap.add_argument("--stop-at-val-acc", type=float, default=None)
    args = ap.parse_args()

    out = Path(args.out)
    data = out / "data"
    rc = cli(["gen", "palindromes", "--len", "10", "--train", "1000", "--val", "500",
              "--test", "500", "--seed", str(args.seed), "--out", str(data)])
    if rc:
        return rc
    train_args = ["train", "--task", "palindrome", "--data", str(data),
                  "--epochs", str(args.epochs), "--seed", str(args.seed), "--out", str(out / "run")]
    if args.stop_at_val_acc is not None:
        train_args += ["--stop-at-val-acc", str(args.stop_at_val_acc)]
    rc = cli(train_args)
    if rc:
        return rc
    ckpt = str(out / "run" / "model.ckpt")
    print("clean validation:")
    cli(["eval", "--checkpoint", ckpt, "--data", str(data / "val.tsv")])
    print("alphabet-permuted validation:")
    return cli(["eval", "--checkpoint", ckpt, "--data", str(data / "val.tsv"), "--permute-seed", "5"])


if __name__ == "__main__":
    sys.exit(main())
