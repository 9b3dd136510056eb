"""Bent / weakly regular / regular classification of ternary functions.

Two independent routes operate on an exact spectrum:

* classify_direct: checks |S(b)|^2 = 3^n, divides every coefficient by
  (1 + 2w)^n and reads off sign * w^j from the six units of Z[w].
* classify_hou: applies the lambda-adic valuation criteria
  (nu_3(S(b)) = n/2 for bentness, nu_3(S(b) - S(0)) > n/2 for weak
  regularity) without looking at absolute values.

Everything is exact; there is no floating point here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .carry import weight
from .field import FieldCtx
from .walsh import WalshSpectrum, walsh_spectrum

# unit lookup keyed by (x + 1) * 3 + (y + 1) for x, y in {-1, 0, 1}
_SIGN = np.zeros(9, dtype=np.int64)
_EXPO = np.full(9, -1, dtype=np.int64)
for (ux, uy), (sg, j) in {(1, 0): (1, 0), (0, 1): (1, 1), (-1, -1): (1, 2),
                          (-1, 0): (-1, 0), (0, -1): (-1, 1), (1, 1): (-1, 2)}.items():
    _SIGN[(ux + 1) * 3 + uy + 1] = sg
    _EXPO[(ux + 1) * 3 + uy + 1] = j

VAL_INF = np.iinfo(np.int64).max


class ClassifyError(ValueError):
    pass


@dataclass
class Classification:
    is_bent: bool
    is_regular: bool
    is_weakly_regular: bool
    sign: Optional[int] = None
    parity_branch: str = ""
    dual: Optional[np.ndarray] = field(default=None, repr=False)

    def verdicts(self) -> dict:
        return {"is_bent": self.is_bent, "is_weakly_regular": self.is_weakly_regular,
                "is_regular": self.is_regular, "sign": self.sign}


@dataclass
class ValuationReport:
    """Lambda-valuations of S(b) and of S(b) - S(0); nu_3 is half of these."""
    lam: np.ndarray
    lam_diff: np.ndarray

    @property
    def nu3(self) -> list:
        return [float("inf") if v == VAL_INF else v / 2 for v in self.lam.tolist()]

    @property
    def nu3_at_zero(self) -> float:
        return self.nu3[0]

    @property
    def nu3_diff(self) -> list:
        return [float("inf") if v == VAL_INF else v / 2 for v in self.lam_diff[1:].tolist()]


@dataclass
class HouVerdict:
    is_bent: bool
    is_weakly_regular: bool
    # criterion (ii) satisfied while (i) fails: reported, never resolved
    anomaly: bool
    report: ValuationReport


def _div_sqrt_m3(x, y):
    a, b = x - 2 * y, 2 * x - y
    ok = (a % 3 == 0) & (b % 3 == 0)
    return -(a // 3), -(b // 3), ok


def lambda_valuations(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise lambda-adic valuation; VAL_INF marks zero entries."""
    x = np.array(x, dtype=np.int64)
    y = np.array(y, dtype=np.int64)
    zero = (x == 0) & (y == 0)
    val = np.zeros(x.shape, dtype=np.int64)
    active = ~zero
    while active.any():
        a, b = 2 * x - y, x + y
        div = active & (a % 3 == 0) & (b % 3 == 0)
        if not div.any():
            break
        x = np.where(div, a // 3, x)
        y = np.where(div, b // 3, y)
        val += div
        active = div
    val[zero] = VAL_INF
    return val


def _parity_branch(n: int) -> str:
    return f"3^{n // 2}" if n % 2 == 0 else f"(1+2w)^{n}"


def classify_direct(spec: WalshSpectrum) -> Classification:
    n = spec.n
    if len(spec) != 3**n:
        raise ClassifyError(f"spectrum length {len(spec)} does not match n={n}")
    branch = _parity_branch(n)
    if not np.all(spec.norms() == 3**n):
        return Classification(False, False, False, parity_branch=branch)
    x, y = spec.x, spec.y
    for _ in range(n):
        x, y, ok = _div_sqrt_m3(x, y)
        if not ok.all():
            raise ClassifyError("bent coefficient not divisible by (1+2w)^n")
    in_range = (np.abs(x) <= 1) & (np.abs(y) <= 1)
    key = np.where(in_range, (x + 1) * 3 + (y + 1), 4)
    expo = _EXPO[key]
    if (expo < 0).any():
        # the six units exhaust the norm-1 elements, so this cannot happen for bent input
        raise ClassifyError("normalized coefficient is not a root of unity")
    signs = _SIGN[key]
    if not np.all(signs == signs[0]):
        return Classification(True, False, False, parity_branch=branch)
    sign = int(signs[0])
    regular = n % 2 == 0 and sign * (-1) ** (n // 2) == 1
    return Classification(True, regular, True, sign=sign, parity_branch=branch, dual=expo)


def classify_hou(spec: WalshSpectrum) -> HouVerdict:
    n = spec.n
    lam = lambda_valuations(spec.x, spec.y)
    lam_diff = lambda_valuations(spec.x - spec.x[0], spec.y - spec.y[0])
    bent = bool(np.all(lam == n))
    weakly = bool(lam[0] == n and np.all(lam_diff[1:] > n))
    return HouVerdict(bent, weakly, weakly and not bent, ValuationReport(lam, lam_diff))


def routes_agree(spec: WalshSpectrum) -> bool:
    d = classify_direct(spec)
    h = classify_hou(spec)
    return d.is_bent == h.is_bent and d.is_weakly_regular == h.is_weakly_regular


def extract_dual(spec: WalshSpectrum, classification: Classification, ctx: FieldCtx) -> np.ndarray:
    """Dual f* with S(b) = sign (1+2w)^n w^f*(b); the dual is checked to be weakly regular."""
    if not classification.is_weakly_regular:
        raise ClassifyError("function is not weakly regular bent; no dual")
    dual = classification.dual
    if not classify_direct(walsh_spectrum(dual, ctx)).is_weakly_regular:
        raise ClassifyError("dual is not weakly regular bent")
    return dual


def is_planar(table, ctx: FieldCtx) -> bool:
    """F planar iff x -> F(x+a) - F(x) - F(a) is a bijection for all a != 0."""
    table = np.asarray(table, dtype=np.int64)
    xs = ctx.all_elements()
    for a in range(1, ctx.q):
        diff = ctx.sub(ctx.sub(table[ctx.add(xs, a)], table), int(table[a]))
        hit = np.zeros(ctx.q, dtype=bool)
        hit[diff] = True
        if not hit.all():
            return False
    return True


def component(table, a: int, ctx: FieldCtx) -> np.ndarray:
    """x -> Tr(a F(x))."""
    return ctx.trace_abs(ctx.mul(a, np.asarray(table, dtype=np.int64))).astype(np.int64)


def components_bent(table, ctx: FieldCtx) -> bool:
    return all(classify_direct(walsh_spectrum(component(table, a, ctx), ctx)).is_bent
               for a in range(1, ctx.q))


def planar_bent_crosscheck(table, ctx: FieldCtx) -> bool:
    """Planarity and 'every nonzero component is bent' must coincide."""
    return is_planar(table, ctx) == components_bent(table, ctx)


def monomial_degree(d: int, n: int) -> int:
    """Algebraic degree of Tr(a x^d): the ternary weight of d mod 3^n - 1."""
    return weight(d, 3, n)
