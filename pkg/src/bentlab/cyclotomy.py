"""Cyclotomic classes, cyclotomic numbers and periods, the order-4 exponential
sum identities used for the Helleseth-Kholosha family, and numeric Gauss sums.

Exponential sums over F_{p^n} are returned exactly as CycInt values in
Z[zeta_p]; only Gauss sums (which live in a larger ring) are floating point.
"""

from __future__ import annotations

import numpy as np

from .cycint import CycInt
from .field import FieldCtx, basis_traces, canonical_modulus, iter_exp_digits


class CyclotomyError(ValueError):
    pass


def _counts_to_cyc(p: int, expo) -> CycInt:
    return CycInt.from_exponent_counts(p, np.bincount(np.asarray(expo, dtype=np.int64) % p, minlength=p))


def subfield_elements(ctx: FieldCtx, k: int, nonzero: bool = True) -> np.ndarray:
    """Indices of F_{p^k} inside F_{p^n}."""
    if ctx.n % k:
        raise CyclotomyError(f"k={k} does not divide n={ctx.n}")
    step = (ctx.q - 1) // (ctx.p**k - 1)
    out = np.arange(0, ctx.q - 1, step, dtype=np.int64) + 1
    return out if nonzero else np.concatenate([[0], out])


class CyclotomyCtx:
    """Cyclotomic classes C_i = xi^i <xi^e> of order e."""

    def __init__(self, ctx: FieldCtx, e: int = 4):
        if e < 1 or (ctx.q - 1) % e:
            raise CyclotomyError(f"e={e} does not divide q-1={ctx.q - 1}")
        self.ctx = ctx
        self.e = e
        self.f = (ctx.q - 1) // e
        self.classes = [ctx.element(np.arange(i, ctx.q - 1, e, dtype=np.int64)) for i in range(e)]

    def class_of(self, x):
        return self.ctx.discrete_log(x) % self.e

    def cyclotomic_number(self, i: int, j: int) -> int:
        """(i, j) = #{x in C_i : x + 1 in C_j}."""
        ctx = self.ctx
        shifted = ctx.add(self.classes[i % self.e], 1)
        shifted = shifted[shifted != 0]
        return int(np.count_nonzero(self.class_of(shifted) == j % self.e))

    def cyclotomic_matrix(self) -> np.ndarray:
        return np.array([[self.cyclotomic_number(i, j) for j in range(self.e)] for i in range(self.e)],
                        dtype=np.int64)

    def periods_direct(self) -> list[CycInt]:
        """eta_i = sum_{x in C_i} zeta_p^Tr(x)."""
        return [_counts_to_cyc(self.ctx.p, self.ctx.trace_abs(cls)) for cls in self.classes]


def periods_streaming(p: int, n: int, e: int = 4, modulus=None) -> list[CycInt]:
    """Cyclotomic periods without building field tables.

    Tr(xi^t) is the basis-trace vector dotted with the coordinates of xi^t, which are
    generated block by block, so memory stays flat even past the field cap.
    """
    if (p**n - 1) % e:
        raise CyclotomyError(f"e={e} does not divide {p}^{n}-1")
    mod = canonical_modulus(p, n) if modulus is None else tuple(modulus)
    tau = basis_traces(mod, p, n)
    counts = np.zeros((e, p), dtype=np.int64)
    pos = 0
    for rows in iter_exp_digits(mod, p, n, block=1 << 15):
        tr = (rows @ tau) % p
        cls = (np.arange(pos, pos + len(rows)) % e)
        counts += np.bincount(cls * p + tr, minlength=e * p).reshape(e, p)
        pos += len(rows)
    return [CycInt.from_exponent_counts(p, row) for row in counts]


def uniform_periods_predict(e: int, p: int, n: int) -> list[int]:
    """Closed-form periods under uniform cyclotomy (p^j = -1 mod e, n = 2 j gamma)."""
    j = next((j for j in range(1, e + 1) if (p**j + 1) % e == 0), None)
    if j is None:
        raise CyclotomyError(f"no j with {p}^j = -1 mod {e}")
    if n % (2 * j):
        raise CyclotomyError(f"n={n} is not a multiple of 2j={2 * j}")
    gamma = n // (2 * j)
    pj = p ** (j * gamma)
    if gamma % 2 and p % 2 and ((p**j + 1) // e) % 2:
        eta = [(-1 - pj) // e] * e
        eta[e // 2] = ((e - 1) * pj - 1) // e
    else:
        sgn = (-1) ** gamma
        eta = [(sgn * pj - 1) // e] * e
        eta[0] = (-1 - sgn * (e - 1) * pj) // e
    return eta


def _need_order4_setting(ctx: FieldCtx, k: int):
    if ctx.p % 8 != 3 or ctx.n != 2 * k or k % 2 == 0:
        raise CyclotomyError(f"need p = 3 mod 8, n = 2k, k odd (p={ctx.p}, n={ctx.n}, k={k})")


def le1_sum(c: int, z: int, j: int, k: int, cyc: CyclotomyCtx) -> CycInt:
    """sum_{y in C_j} zeta^Tr_n(c z^(p^k) y)."""
    ctx = cyc.ctx
    _need_order4_setting(ctx, k)
    if c == 0 or not ctx.in_subfield(c, k) or z == 0:
        raise CyclotomyError("need c in F_{p^k}^* and z != 0")
    coef = ctx.mul(c, ctx.pow(z, ctx.p**k))
    return _counts_to_cyc(ctx.p, ctx.trace_abs(ctx.mul(coef, cyc.classes[j % 4])))


def le1_expected(z: int, j: int, k: int, cyc: CyclotomyCtx) -> int:
    pk = cyc.ctx.p**k
    return (3 * pk - 1) // 4 if cyc.class_of(z) == (j + 2) % 4 else -(pk + 1) // 4


def le1_sums_all_classes(c: int, z: int, k: int, cyc: CyclotomyCtx) -> list[CycInt]:
    """le1_sum for j = 0..3 in one pass over F^*."""
    ctx = cyc.ctx
    _need_order4_setting(ctx, k)
    coef = ctx.mul(c, ctx.pow(z, ctx.p**k))
    ys = ctx.nonzero()
    tr = ctx.trace_abs(ctx.mul(coef, ys))
    cls = (ys - 1) % 4
    p = ctx.p
    counts = np.bincount(cls * p + tr, minlength=4 * p).reshape(4, p)
    return [CycInt.from_exponent_counts(p, row) for row in counts]


def tj_sum(c: int, j: int, k: int, cyc: CyclotomyCtx) -> CycInt:
    """T_j = sum_{x in C_j} zeta^Tr_k(c (x+1)^(p^k+1) - c)."""
    ctx = cyc.ctx
    _need_order4_setting(ctx, k)
    if not ctx.in_subfield(c, k):
        raise CyclotomyError("c must lie in F_{p^k}")
    xs = cyc.classes[j % 4]
    inner = ctx.sub(ctx.mul(c, ctx.pow(ctx.add(xs, 1), ctx.p**k + 1)), c)
    return _counts_to_cyc(ctx.p, ctx.subfield_trace(inner, k))


def class_sum_check(c: int, k: int, cyc: CyclotomyCtx) -> bool:
    """1 + T_0 + T_1 + T_2 + T_3 = -p^k zeta^(-Tr_k(c)) for c != 0."""
    ctx = cyc.ctx
    total = CycInt.integer(ctx.p, 1)
    for j in range(4):
        total = total + tj_sum(c, j, k, cyc)
    tr = ctx.subfield_trace(c, k)
    return total == CycInt.zeta_pow(ctx.p, -tr, sign=-(ctx.p**k))


def conjugate_identity_check(c: int, j: int, k: int, cyc: CyclotomyCtx) -> bool:
    """-conj(T_j) = zeta^Tr_k(c) T_{j+2} + (p^k+1)/4 (zeta^Tr_k(c) + 1)."""
    ctx = cyc.ctx
    p = ctx.p
    zc = CycInt.zeta_pow(p, ctx.subfield_trace(c, k))
    lhs = -tj_sum(c, j, k, cyc).conj()
    rhs = zc * tj_sum(c, j + 2, k, cyc) + (p**k + 1) // 4 * (zc + 1)
    return lhs == rhs


def simplecase_check(k: int, cyc: CyclotomyCtx) -> dict:
    """x -> x^(p^k+1) on each C_i: fiber sizes and whether the image is the
    set of squares (i even) or non-squares (i odd) of F_{p^k}^*."""
    ctx = cyc.ctx
    if ctx.p % 4 != 3 or ctx.n != 2 * k or k % 2 == 0:
        raise CyclotomyError("need p = 3 mod 4, n = 2k, k odd")
    d = ctx.p**k + 1
    sub = subfield_elements(ctx, k)
    # eta = xi^(p^k+1) generates F_{p^k}^*; squares are its even powers
    sub_exp = ctx.discrete_log(sub) // d
    squares = set(sub[sub_exp % 2 == 0].tolist())
    nonsquares = set(sub[sub_exp % 2 == 1].tolist())
    out = {}
    for i in range(4):
        profile = ctx.fiber_profile(d, cyc.classes[i])
        image = set(np.unique(ctx.pow(cyc.classes[i], d)).tolist())
        target = squares if i % 2 == 0 else nonsquares
        out[i] = {"fibers": profile, "onto_expected": image == target,
                  "ok": image == target and list(profile) == [d // 2]}
    return out


# ---------------------------------------------------------------------------
# Gauss sums (floating point)

def _additive_values(ctx: FieldCtx) -> np.ndarray:
    """psi(xi^t) = exp(2 pi i Tr(xi^t) / p) for t = 0..q-2."""
    tr = ctx.trace_abs(ctx.nonzero())
    return np.exp(2j * np.pi * tr / ctx.p)


def gauss_sum_numeric(chi_exponent: int, ctx: FieldCtx) -> complex:
    """g(chi) for chi(xi^t) = exp(2 pi i chi_exponent t / (q-1))."""
    t = np.arange(ctx.q - 1)
    chi = np.exp(2j * np.pi * ((chi_exponent * t) % (ctx.q - 1)) / (ctx.q - 1))
    return complex(np.sum(chi * _additive_values(ctx)))


def gauss_sums_all(ctx: FieldCtx) -> np.ndarray:
    """g(chi^e) for every e in [0, q-2]."""
    m = ctx.q - 1
    t = np.arange(m)
    psi = _additive_values(ctx)
    return np.array([np.sum(np.exp(2j * np.pi * ((e * t) % m) / m) * psi) for e in range(m)])


def fourier_inversion(c: int, ctx: FieldCtx, sums=None) -> complex:
    """Rebuild psi(c) = 1/(q-1) sum_chi g(chi) chi^-1(c) from Gauss sums."""
    if c == 0:
        raise CyclotomyError("inversion is over F_q^*")
    m = ctx.q - 1
    sums = gauss_sums_all(ctx) if sums is None else sums
    t = ctx.discrete_log(c)
    e = np.arange(m)
    return complex(np.sum(sums * np.exp(-2j * np.pi * ((e * t) % m) / m)) / m)
