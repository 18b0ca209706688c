#!/usr/bin/env python3
"""Full-size palindrome experiment: length-20 words, 48 epochs, capped channels.

Heavy on CPU (tensors are 211x211x58 per word); expect a multi-hour run
without early stopping.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from combword.cli import main as cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs/palindrome_full")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--epochs", type=int, default=48)
    ap.add_argument("--stop-at-val-acc", type=float, default=None)
    args = ap.parse_args()

    out = Path(args.out)
    data = out / "data"
    rc = cli(["gen", "palindromes", "--len", "20", "--train", "1000", "--val", "500",
              "--test", "500", "--seed", str(args.seed), "--out", str(data)])
    if rc:
        return rc
    train_args = ["train", "--task", "palindrome", "--data", str(data), "--nu-cap", "3",
                  "--epochs", str(args.epochs), "--seed", str(args.seed), "--out", str(out / "run")]
    if args.stop_at_val_acc is not None:
        train_args += ["--stop-at-val-acc", str(args.stop_at_val_acc)]
    rc = cli(train_args)
    if rc:
        return rc
    return cli(["eval", "--checkpoint", str(out / "run" / "model.ckpt"),
                "--data", str(data / "test.tsv")])


if __name__ == "__main__":
    sys.exit(main())
