"""From-scratch NHWC layers with explicit forward/backward passes.

Convolutions are valid (no padding), stride 1, and run as one GEMM per
kernel offset rather than a full im2col, which keeps peak memory at one
input-sized copy instead of kernel-area copies. Pooling floors odd extents.
All layers preserve the dtype of their parameters/input, so the same code
runs in float32 for training and float64 for finite-difference checks.
"""

from __future__ import annotations

import numpy as np

SIGMOID_CLAMP = 1e-7


class Conv2d:
    """Valid 2-D convolution, kernel (kh, kw), weights (kh, kw, cin, cout).

    Both passes run as one fat GEMM between the raw input plane and the
    kernel viewed as (cin, kh*kw*cout), followed by shifted slice adds that
    route each pixel-offset product to its output cell. That avoids im2col
    copies and keeps the GEMM wide enough to hit BLAS peak; batches are
    chunked so the offset-product temporary stays within a fixed budget.
    """

    _TEMP_BUDGET = 192 * 1024 * 1024  # bytes for the per-chunk product tensor

    def __init__(self, kh: int, kw: int, cin: int, cout: int, rng: np.random.Generator, dtype=np.float32):
        scale = np.sqrt(2.0 / (kh * kw * cin))
        self.w = (rng.standard_normal((kh, kw, cin, cout)) * scale).astype(dtype)
        self.b = np.zeros(cout, dtype=dtype)
        self.dw = np.zeros_like(self.w)
        self.db = np.zeros_like(self.b)
        self._x = None

    def params(self):
        return [self.w, self.b]

    def grads(self):
        return [self.dw, self.db]

    def _chunk(self, h: int, wd: int) -> int:
        kh, kw, _, cout = self.w.shape
        per_sample = h * wd * kh * kw * cout * self.w.itemsize
        return max(1, self._TEMP_BUDGET // per_sample)

    def forward(self, x: np.ndarray) -> np.ndarray:
        kh, kw, cin, cout = self.w.shape
        n, h, wd, c = x.shape
        if c != cin:
            raise ValueError(f"conv2d: expected {cin} input channels, got {c}")
        if h < kh or wd < kw:
            raise ValueError(f"conv2d: input {h}x{wd} smaller than kernel {kh}x{kw}")
        oh, ow = h - kh + 1, wd - kw + 1
        wall = self.w.transpose(2, 0, 1, 3).reshape(cin, kh * kw * cout)
        out = np.empty((n, oh, ow, cout), dtype=x.dtype)
        out[...] = self.b
        for c0 in range(0, n, self._chunk(h, wd)):
            c1 = min(n, c0 + self._chunk(h, wd))
            prod = (x[c0:c1].reshape(-1, cin) @ wall).reshape(c1 - c0, h, wd, kh * kw, cout)
            for ki in range(kh):
                for kj in range(kw):
                    out[c0:c1] += prod[:, ki : ki + oh, kj : kj + ow, ki * kw + kj, :]
        self._x = x
        return out

    def backward(self, dout: np.ndarray) -> np.ndarray:
        x = self._x
        kh, kw, cin, cout = self.w.shape
        n, h, wd, _ = x.shape
        oh, ow = h - kh + 1, wd - kw + 1
        self.db[...] = dout.sum(axis=(0, 1, 2))
        wall = self.w.transpose(2, 0, 1, 3).reshape(cin, kh * kw * cout)
        dwall = np.zeros_like(wall)
        dx = np.empty_like(x)
        for c0 in range(0, n, self._chunk(h, wd)):
            c1 = min(n, c0 + self._chunk(h, wd))
            grad = np.zeros((c1 - c0, h, wd, kh * kw, cout), dtype=dout.dtype)
            for ki in range(kh):
                for kj in range(kw):
                    grad[:, ki : ki + oh, kj : kj + ow, ki * kw + kj, :] = dout[c0:c1]
            g2 = grad.reshape(-1, kh * kw * cout)
            dwall += x[c0:c1].reshape(-1, cin).T @ g2
            dx[c0:c1] = (g2 @ wall.T).reshape(c1 - c0, h, wd, cin)
        self.dw[...] = dwall.reshape(cin, kh, kw, cout).transpose(1, 2, 0, 3)
        return dx


class MaxPool2d:
    """Max pooling with window (ph, pw), stride equal to the window."""

    def __init__(self, ph: int, pw: int):
        self.ph, self.pw = ph, pw
        self._arg = None
        self._in_shape = None

    def params(self):
        return []

    def grads(self):
        return []

    def forward(self, x: np.ndarray) -> np.ndarray:
        ph, pw = self.ph, self.pw
        n, h, w, c = x.shape
        oh, ow = h // ph, w // pw
        if oh < 1 or ow < 1:
            raise ValueError(f"maxpool2d: input {h}x{w} smaller than window {ph}x{pw}")
        xr = (
            x[:, : oh * ph, : ow * pw, :]
            .reshape(n, oh, ph, ow, pw, c)
            .transpose(0, 1, 3, 5, 2, 4)
            .reshape(n, oh, ow, c, ph * pw)
        )
        self._arg = xr.argmax(axis=-1)
        self._in_shape = x.shape
        return np.take_along_axis(xr, self._arg[..., None], axis=-1)[..., 0]

    def backward(self, dout: np.ndarray) -> np.ndarray:
        ph, pw = self.ph, self.pw
        n, h, w, c = self._in_shape
        oh, ow = h // ph, w // pw
        scat = np.zeros((n, oh, ow, c, ph * pw), dtype=dout.dtype)
        np.put_along_axis(scat, self._arg[..., None], dout[..., None], axis=-1)
        dx = np.zeros(self._in_shape, dtype=dout.dtype)
        dx[:, : oh * ph, : ow * pw, :] = (
            scat.reshape(n, oh, ow, c, ph, pw).transpose(0, 1, 4, 2, 5, 3).reshape(n, oh * ph, ow * pw, c)
        )
        return dx


class ReLU:
    def __init__(self):
        self._mask = None

    def params(self):
        return []

    def grads(self):
        return []

    def forward(self, x):
        self._mask = x > 0
        return np.where(self._mask, x, 0)

    def backward(self, dout):
        return np.where(self._mask, dout, 0)


class Flatten:
    def __init__(self):
        self._in_shape = None

    def params(self):
        return []

    def grads(self):
        return []

    def forward(self, x):
        self._in_shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, dout):
        return dout.reshape(self._in_shape)


class Dense:
    def __init__(self, nin: int, nout: int, rng: np.random.Generator, dtype=np.float32):
        scale = np.sqrt(2.0 / nin)
        self.w = (rng.standard_normal((nin, nout)) * scale).astype(dtype)
        self.b = np.zeros(nout, dtype=dtype)
        self.dw = np.zeros_like(self.w)
        self.db = np.zeros_like(self.b)
        self._x = None

    def params(self):
        return [self.w, self.b]

    def grads(self):
        return [self.dw, self.db]

    def forward(self, x):
        if x.shape[1] != self.w.shape[0]:
            raise ValueError(f"dense: expected {self.w.shape[0]} inputs, got {x.shape[1]}")
        self._x = x
        return x @ self.w + self.b

    def backward(self, dout):
        self.dw[...] = self._x.T @ dout
        self.db[...] = dout.sum(axis=0)
        return dout @ self.w.T


class Sigmoid:
    def __init__(self):
        self._out = None

    def params(self):
        return []

    def grads(self):
        return []

    def forward(self, x):
        e = np.exp(-np.abs(x))
        out = np.where(x >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
        self._out = out
        return out

    def backward(self, dout):
        # Clamp mirrors the loss clamp so the product (p - y) stays exact
        # and bounded even when the activation saturates in float32.
        q = np.clip(self._out, SIGMOID_CLAMP, 1.0 - SIGMOID_CLAMP)
        return dout * q * (1.0 - q)
