"""Monomial families Tr(a x^d) over F_{3^n} and their closed-form Walsh values.

Families:
    coulter_matthews   d = (3^k+1)/2, gcd(k, n) = 1, a != 0
    kasami             d = 3^k + 1, n = 2k
    helleseth_kholosha d = (3^n-1)/4 + 3^k + 1, n = 2k, k odd, a = xi^((3^k+1)/4)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classify import classify_direct, classify_hou
from .cycint import CycInt
from .cyclotomy import CyclotomyCtx, tj_sum
from .field import FIELD_CAP, FieldCtx, build_field
from .walsh import WalshSpectrum, walsh_point, walsh_spectrum

FAMILIES = ("general_monomial", "coulter_matthews", "kasami", "helleseth_kholosha")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: Optional[int]
    a: int  # field index
    d: int

    def table(self, ctx: FieldCtx) -> np.ndarray:
        return monomial_table(self.a, self.d, ctx)


def monomial_table(a: int, d: int, ctx: FieldCtx) -> np.ndarray:
    """x -> Tr(a x^d), with 0^d = 0."""
    xs = ctx.all_elements()
    return ctx.trace_abs(ctx.mul(a, ctx.pow(xs, d))).astype(np.int64)


def cm_params(n: int, k: int, a: int) -> FamilySpec:
    if math.gcd(k, n) != 1:
        raise FamilyError(f"gcd(k={k}, n={n}) != 1")
    if a == 0:
        raise FamilyError("a must be nonzero")
    return FamilySpec("coulter_matthews", n, k, a, (3**k + 1) // 2)


def kasami_params(k: int, a: int) -> FamilySpec:
    return FamilySpec("kasami", 2 * k, k, a, 3**k + 1)


def hk_params(k: int, ctx: FieldCtx | None = None) -> FamilySpec:
    """n = 2k, d = (3^n-1)/4 + 3^k + 1, a = xi^((3^k+1)/4)."""
    if k < 1 or k % 2 == 0:
        raise FamilyError(f"k={k} must be odd and positive")
    n = 2 * k
    if 3**n > FIELD_CAP:
        raise FamilyError(f"n={n} exceeds the field cap")
    if ctx is not None and (ctx.p, ctx.n) != (3, n):
        raise FamilyError("context does not match n = 2k")
    d = (3**n - 1) // 4 + 3**k + 1
    t = (3**k + 1) // 4
    return FamilySpec("helleseth_kholosha", n, k, t + 1, d)


def verdicts(f, ctx: FieldCtx) -> dict:
    """Both classification routes on one table, with the Parseval check."""
    spec = walsh_spectrum(f, ctx)
    d = classify_direct(spec)
    h = classify_hou(spec)
    return {
        "parseval": spec.parseval_ok(),
        "direct_bent": d.is_bent,
        "direct_weakly_regular": d.is_weakly_regular,
        "hou_bent": h.is_bent,
        "hou_weakly_regular": h.is_weakly_regular,
        "hou_anomaly": h.anomaly,
        "sign": d.sign,
        "S0": spec.render(0),
        "spectrum": spec,
        "classification": d,
    }


# ---------------------------------------------------------------------------
# Kasami

def _kasami_denominator(a: int, k: int, ctx: FieldCtx) -> int:
    if ctx.n != 2 * k:
        raise FamilyError(f"need n = 2k (n={ctx.n}, k={k})")
    return ctx.add(a, ctx.pow(a, ctx.p**k))


def kasami_expected_walsh(a: int, k: int, b: int, ctx: FieldCtx) -> CycInt:
    """-p^k zeta^(-Tr_k(b^(p^k+1) / (a + a^(p^k))))."""
    den = _kasami_denominator(a, k, ctx)
    if den == 0:
        raise FamilyError("a + a^(p^k) = 0: the function is not bent")
    tr = ctx.subfield_trace(ctx.div(ctx.pow(b, ctx.p**k + 1), den), k)
    return CycInt.zeta_pow(ctx.p, -tr, sign=-(ctx.p**k))


def kasami_expected_spectrum(a: int, k: int, ctx: FieldCtx) -> WalshSpectrum:
    den = _kasami_denominator(a, k, ctx)
    if den == 0:
        raise FamilyError("a + a^(p^k) = 0: the function is not bent")
    bs = ctx.all_elements()
    tr = ctx.subfield_trace(ctx.div(ctx.pow(bs, ctx.p**k + 1), den), k)
    e = (-tr) % 3
    scale = -(3**k)
    return WalshSpectrum(ctx.n, scale * np.array([1, 0, -1])[e], scale * np.array([0, 1, -1])[e])


def verify_kasami(k: int, ctx: FieldCtx, a_values=None) -> dict:
    """Closed form at every b when a + a^(3^k) != 0, non-bentness otherwise."""
    a_values = ctx.all_elements() if a_values is None else a_values
    matched, nonbent_ok, mismatches = 0, 0, []
    for a in map(int, a_values):
        spec = walsh_spectrum(monomial_table(a, 3**k + 1, ctx), ctx)
        if not spec.parseval_ok():
            mismatches.append(a)
            continue
        if _kasami_denominator(a, k, ctx) == 0:
            if not classify_direct(spec).is_bent:
                nonbent_ok += 1
            else:
                mismatches.append(a)
        elif spec == kasami_expected_spectrum(a, k, ctx):
            matched += 1
        else:
            mismatches.append(a)
    return {"k": k, "matched": matched, "nonbent_ok": nonbent_ok, "mismatches": mismatches,
            "ok": not mismatches}


# ---------------------------------------------------------------------------
# Helleseth-Kholosha

def _hk_setup(k: int, ctx: FieldCtx):
    spec = hk_params(k, ctx)
    n = 2 * k
    i_unit = ctx.element((3**n - 1) // 4)
    a1 = ctx.mul(spec.a, ctx.add(i_unit, 1))
    if a1 == 0 or not ctx.in_subfield(a1, k):
        raise FamilyError("a(I+1) vanishes or is not in F_{3^k}")
    return spec, i_unit, a1


def conjectured_hk_dual(k: int, b: int, ctx: FieldCtx) -> frozenset:
    """{-3^k w^(+t), -3^k w^(-t)} with t = Tr_k(b^(3^k+1) / (a(I+1)))."""
    _, _, a1 = _hk_setup(k, ctx)
    t = ctx.subfield_trace(ctx.div(ctx.pow(b, 3**k + 1), a1), k)
    return frozenset({CycInt.zeta_pow(3, t, sign=-(3**k)), CycInt.zeta_pow(3, -t, sign=-(3**k))})


def verify_conjecture_dual(k: int, ctx: FieldCtx, spectrum: WalshSpectrum | None = None) -> dict:
    """Check every S_f(b) of the HK function against the conjectured pair.

    per_b_sign[b] is '+', '-', 'both' (t = 0) or 'none'.
    """
    spec, _, a1 = _hk_setup(k, ctx)
    if spectrum is None:
        spectrum = walsh_spectrum(spec.table(ctx), ctx)
    bs = ctx.all_elements()
    t = np.asarray(ctx.subfield_trace(ctx.div(ctx.pow(bs, 3**k + 1), a1), k), dtype=np.int64)
    scale = -(3**k)
    wx, wy = np.array([1, 0, -1]), np.array([0, 1, -1])
    plus = (spectrum.x == scale * wx[t % 3]) & (spectrum.y == scale * wy[t % 3])
    minus = (spectrum.x == scale * wx[-t % 3]) & (spectrum.y == scale * wy[-t % 3])
    signs = np.where(plus & minus, "both", np.where(plus, "+", np.where(minus, "-", "none")))
    uniform_plus = bool(np.all(plus))
    uniform_minus = bool(np.all(minus))
    return {
        "k": k,
        "per_b_sign": signs.tolist(),
        "all_match": bool(np.all(plus | minus)),
        "globally_uniform_sign": uniform_plus or uniform_minus,
        "uniform_sign": "+" if uniform_plus else ("-" if uniform_minus else None),
        "count_plus_only": int(np.count_nonzero(plus & ~minus)),
        "count_minus_only": int(np.count_nonzero(minus & ~plus)),
        "count_both": int(np.count_nonzero(plus & minus)),
    }


def hk_decomposition(k: int, b: int, ctx: FieldCtx, cyc: CyclotomyCtx | None = None) -> dict:
    """Evaluate S_a(b) directly and through the order-4 class decomposition.

    b = a1 beta^(3^k) with a1 = a(I+1); beta = (b/a1)^(3^k);
    c = a1 beta^(3^k+1); j = ind(beta^-1) mod 4.
    """
    if b == 0:
        raise FamilyError("the decomposition needs b != 0")
    spec, _, a1 = _hk_setup(k, ctx)
    cyc = cyc or CyclotomyCtx(ctx, 4)
    beta = ctx.pow(ctx.div(b, a1), 3**k)
    if ctx.mul(a1, ctx.pow(beta, 3**k)) != b:
        raise FamilyError("beta recovery failed")
    c = ctx.mul(a1, ctx.pow(beta, 3**k + 1))
    j = ctx.discrete_log(ctx.inv(beta)) % 4
    T = [tj_sum(c, i, k, cyc) for i in range(4)]
    direct = walsh_point(spec.table(ctx), b, ctx)
    via_classes = 1 + T[j % 4] + T[(j + 1) % 4] + T[(j + 2) % 4].conj() + T[(j + 3) % 4].conj()
    wc = CycInt.zeta_pow(3, ctx.subfield_trace(c, k))
    closed = (1 - wc) * (T[j % 4] + T[(j + 1) % 4] + (3**k + 1) // 2) - 3**k
    return {"direct": direct, "via_classes": via_classes, "closed": closed, "j": j, "c": c}


def hk_decomposition_check(k: int, b: int, ctx: FieldCtx, cyc: CyclotomyCtx | None = None) -> bool:
    r = hk_decomposition(k, b, ctx, cyc)
    return r["direct"] == r["via_classes"] == r["closed"]


def canonical_hk_field(k: int) -> FieldCtx:
    return build_field(3, 2 * k)
