"""Exact Walsh spectra of functions F_{3^n} -> F_3.

S_f(b) = sum_x w^(f(x) - Tr(b x)) is an Eisenstein integer x + y w.  A
spectrum is held as two int64 arrays (x, y) indexed by the field index of b.

The fast path writes Tr(b x) as a bilinear form on coordinates: with x in the
polynomial basis and G the trace Gram matrix, Tr(b x) = <G b, x>.  The
spectrum is then a plain (Z_3)^n Fourier transform of w^f, evaluated with n
radix-3 butterfly passes, and re-indexed through b -> G b.
"""

from __future__ import annotations

import csv
import io
import threading
from dataclasses import dataclass

import numpy as np

from .cycint import CycInt, format_eisenstein
from .field import FieldCtx

# w^e as (x, y) for e = 0, 1, 2
_W_X = np.array([1, 0, -1], dtype=np.int64)
_W_Y = np.array([0, 1, -1], dtype=np.int64)


class WalshError(ValueError):
    pass


_parseval_lock = threading.Lock()
_parseval_count = 0


def _certify(spec: "WalshSpectrum") -> "WalshSpectrum":
    """Every spectrum leaving this module has passed the exact Parseval check."""
    global _parseval_count
    if not spec.parseval_ok():
        raise WalshError("Parseval identity fails: sum |S(b)|^2 != 3^(2n)")
    with _parseval_lock:
        _parseval_count += 1
    return spec


def parseval_checks() -> int:
    """Number of spectra certified so far in this process."""
    return _parseval_count


def check_table(f, ctx: FieldCtx) -> np.ndarray:
    if ctx.p != 3:
        raise WalshError("Walsh spectra are implemented for p = 3 only")
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (ctx.q,):
        raise WalshError(f"table has shape {f.shape}, expected ({ctx.q},)")
    if f.min(initial=0) < 0 or f.max(initial=0) > 2:
        raise WalshError("table entries must lie in {0, 1, 2}")
    return f


@dataclass(frozen=True)
class WalshSpectrum:
    n: int
    x: np.ndarray
    y: np.ndarray

    def __len__(self):
        return len(self.x)

    def __getitem__(self, b: int) -> CycInt:
        return CycInt.eisenstein(int(self.x[b]), int(self.y[b]))

    def __eq__(self, other):
        return (isinstance(other, WalshSpectrum) and self.n == other.n
                and np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y))

    def norms(self) -> np.ndarray:
        x, y = self.x, self.y
        return x * x - x * y + y * y

    def parseval_ok(self) -> bool:
        return int(self.norms().sum()) == 3 ** (2 * self.n)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["b_index", "x", "y"])
        for b, (xv, yv) in enumerate(zip(self.x.tolist(), self.y.tolist())):
            w.writerow([b, xv, yv])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, n: int) -> "WalshSpectrum":
        rows = list(csv.reader(io.StringIO(text)))
        if rows[0] != ["b_index", "x", "y"]:
            raise WalshError("bad CSV header")
        body = np.array([[int(v) for v in r] for r in rows[1:]], dtype=np.int64)
        if not np.array_equal(body[:, 0], np.arange(len(body))):
            raise WalshError("b_index must be ascending from 0")
        return cls(n, body[:, 1].copy(), body[:, 2].copy())

    def render(self, b: int) -> str:
        return format_eisenstein(int(self.x[b]), int(self.y[b]))


def walsh_point(f, b: int, ctx: FieldCtx) -> CycInt:
    """Direct evaluation of S_f(b) by summing over all x."""
    f = check_table(f, ctx)
    xs = ctx.all_elements()
    expo = (f - ctx.trace_abs(ctx.mul(b, xs))) % 3
    return CycInt.from_exponent_counts(3, np.bincount(expo, minlength=3))


def _butterflies(gx: np.ndarray, gy: np.ndarray, n: int):
    for level in range(n):
        left, right = 3**level, 3 ** (n - 1 - level)
        ax = gx.reshape(left, 3, right)
        ay = gy.reshape(left, 3, right)
        x0, x1, x2 = ax[:, 0], ax[:, 1], ax[:, 2]
        y0, y1, y2 = ay[:, 0], ay[:, 1], ay[:, 2]
        # w * (x + y w) = -y + (x - y) w ; w^2 * (x + y w) = (y - x) - x w
        w1x, w1y = -y1, x1 - y1
        w2x, w2y = -y2, x2 - y2
        v1x, v1y = y1 - x1, -x1
        v2x, v2y = y2 - x2, -x2
        ox = np.empty_like(ax)
        oy = np.empty_like(ay)
        ox[:, 0] = x0 + x1 + x2
        oy[:, 0] = y0 + y1 + y2
        ox[:, 1] = x0 + v1x + w2x
        oy[:, 1] = y0 + v1y + w2y
        ox[:, 2] = x0 + w1x + v2x
        oy[:, 2] = y0 + w1y + v2y
        gx, gy = ox.reshape(-1), oy.reshape(-1)
    return gx, gy


def _dual_permutation(ctx: FieldCtx) -> np.ndarray:
    cached = getattr(ctx, "_walsh_perm", None)
    if cached is None:
        gram = ctx.gram_matrix()
        digits = ctx.digits(ctx.all_elements())
        cached = ((digits @ gram) % 3) @ (3 ** np.arange(ctx.n, dtype=np.int64))
        ctx._walsh_perm = cached
    return cached


def walsh_spectrum(f, ctx: FieldCtx) -> WalshSpectrum:
    """Full spectrum via n radix-3 butterfly passes, exact in Z[w]."""
    f = check_table(f, ctx)
    gx = np.empty(ctx.q, dtype=np.int64)
    gy = np.empty(ctx.q, dtype=np.int64)
    gx[ctx.codes] = _W_X[f]
    gy[ctx.codes] = _W_Y[f]
    hx, hy = _butterflies(gx, gy, ctx.n)
    perm = _dual_permutation(ctx)
    return _certify(WalshSpectrum(ctx.n, hx[perm], hy[perm]))


def walsh_spectrum_naive(f, ctx: FieldCtx) -> WalshSpectrum:
    """Reference spectrum: walsh_point at every b."""
    xs, ys = [], []
    for b in range(ctx.q):
        z = walsh_point(f, b, ctx)
        xs.append(z.x)
        ys.append(z.y)
    return _certify(WalshSpectrum(ctx.n, np.array(xs, dtype=np.int64), np.array(ys, dtype=np.int64)))
