"""Model persistence: a text header followed by a raw float32 parameter blob.

Layout, all little-endian:

    combword-checkpoint v1\n
    <one JSON line: layer specs, input shape, build seed, metadata, shapes>\n
    <raw '<f4' parameter values, C order, in declaration order>

Parameters are stored as 32-bit reals; loading a checkpoint restores them
bit for bit.
"""

from __future__ import annotations

import json

import numpy as np

from .network import LayerSpec, Network

MAGIC = b"combword-checkpoint v1"
VERSION = 1


class CheckpointError(ValueError):
    """The file is not a readable checkpoint of a supported version."""


def save_checkpoint(model: Network, path) -> None:
    header = {
        "version": VERSION,
        "specs": [s.to_dict() for s in model.specs],
        "input_shape": list(model.input_shape),
        "seed": model.seed,
        "meta": model.meta,
        "shapes": [list(p.shape) for p in model.params()],
    }
    blob = b"".join(np.ascontiguousarray(p, dtype="<f4").tobytes() for p in model.params())
    with open(path, "wb") as fh:
        fh.write(MAGIC + b"\n")
        fh.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
        fh.write(blob)


def load_checkpoint(path) -> Network:
    with open(path, "rb") as fh:
        magic = fh.readline().rstrip(b"\n")
        if magic != MAGIC:
            raise CheckpointError(f"{path}: not a checkpoint (bad magic line {magic[:40]!r})")
        try:
            header = json.loads(fh.readline().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise CheckpointError(f"{path}: corrupted header: {exc}") from exc
        if header.get("version") != VERSION:
            raise CheckpointError(f"{path}: unsupported version {header.get('version')!r} (expected {VERSION})")
        blob = fh.read()
    specs = [LayerSpec.from_dict(d) for d in header["specs"]]
    model = Network(specs, tuple(header["input_shape"]), int(header["seed"]), np.float32, header.get("meta"))
    shapes = [tuple(s) for s in header["shapes"]]
    params = model.params()
    if [p.shape for p in params] != shapes:
        raise CheckpointError(f"{path}: header shapes do not match the declared architecture")
    expected = sum(int(np.prod(s)) for s in shapes) * 4
    if len(blob) != expected:
        raise CheckpointError(f"{path}: parameter blob is {len(blob)} bytes, expected {expected}")
    offset = 0
    for p in params:
        nbytes = p.size * 4
        values = np.frombuffer(blob, dtype="<f4", count=p.size, offset=offset).reshape(p.shape)
        np.copyto(p, values)
        offset += nbytes
    return model
