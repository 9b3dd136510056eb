"""p-ary weights modulo p^n - 1, the modular add-with-carry algorithm and
the ternary weight-inequality scanners.

Residue convention: every integer is reduced into [0, p^n - 2]; multiples of
p^n - 1 get the all-zero digit vector and weight 0, never the all-(p-1)
vector.  Negative inputs use the mathematical modulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

WTINEQ_CAP_K = 7
GENWI_EXHAUSTIVE_CAP_K = 3


class CarryError(ArithmeticError):
    """Internal inconsistency in a carry computation (a bug, not bad input)."""


class CapError(ValueError):
    pass


def digits(a: int, p: int, n: int) -> list[int]:
    """Canonical p-ary digits d_0..d_{n-1} of a mod p^n - 1."""
    r = a % (p**n - 1)
    out = []
    for _ in range(n):
        r, d = divmod(r, p)
        out.append(d)
    return out


def from_digits(ds, p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def weight(a: int, p: int, n: int) -> int:
    """w(a): digit sum of a mod p^n - 1 (0 for multiples of p^n - 1)."""
    return sum(digits(a, p, n))


def weight_table(p: int, n: int) -> np.ndarray:
    """w(a) for every residue a in [0, p^n - 2]."""
    m = p**n - 1
    rest = np.arange(m, dtype=np.int64)
    total = np.zeros(m, dtype=np.int64)
    for _ in range(n):
        total += rest % p
        rest //= p
    return total


# ---------------------------------------------------------------------------
# constants z, u, v

@dataclass(frozen=True)
class UVZ:
    k: int
    n: int
    z: int
    u: int
    v: int
    z_digits: tuple
    u_digits: tuple
    v_digits: tuple


def uvz_constants(k: int) -> UVZ:
    """z = (3^2k - 1)/8, u = 2z, v = 3u with their digit patterns checked."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k
    m = 3**n - 1
    if m % 8:
        raise CarryError("3^2k - 1 not divisible by 8")
    z = m // 8
    u, v = 2 * z, 6 * z
    zd, ud, vd = digits(z, 3, n), digits(u, 3, n), digits(v, 3, n)
    # the canonical residues coincide with the plain expansions since 0 < z < u < v < m
    if not (0 < z < u < v < m):
        raise CarryError("constants out of range")
    for i in range(n):
        if zd[i] != (1 if i % 2 == 0 else 0):
            raise CarryError(f"z digit {i} is {zd[i]}")
        if ud[i] != 2 * zd[i]:
            raise CarryError(f"u digit {i} is {ud[i]}")
        if vd[i] != ud[(i - 1) % n]:
            raise CarryError(f"v digit {i} is {vd[i]}")
    if (3 * u - v) % m or (-u - v) % m:
        raise CarryError("3u = -u = v fails")
    if sum(ud) != 2 * k or sum(vd) != 2 * k or 2 * sum(zd) != 2 * k:
        raise CarryError("w(u) = w(v) = 2w(z) = 2k fails")
    if k % 2 == 1 and ((3**k * u - v) % m or (3**k * v - u) % m):
        raise CarryError("3^k u = v fails for odd k")
    return UVZ(k, n, z, u, v, tuple(zd), tuple(ud), tuple(vd))


# ---------------------------------------------------------------------------
# modular add-with-carry

@dataclass(frozen=True)
class AwcInstance:
    p: int
    n: int
    t: tuple
    addends: tuple  # digit tuples, one per coefficient

    def __post_init__(self):
        if not self.t or len(self.t) != len(self.addends):
            raise ValueError("need one nonzero coefficient per addend, m >= 1")
        if any(tj == 0 for tj in self.t):
            raise ValueError("coefficients must be nonzero")
        for a in self.addends:
            if len(a) != self.n or any(not 0 <= d < self.p for d in a):
                raise ValueError(f"bad digit vector {a}")

    @classmethod
    def from_ints(cls, p: int, n: int, t, values) -> "AwcInstance":
        return cls(p, n, tuple(t), tuple(tuple(digits(a, p, n)) for a in values))

    @property
    def t_plus(self) -> int:
        return sum(tj for tj in self.t if tj > 0)

    @property
    def t_minus(self) -> int:
        return sum(tj for tj in self.t if tj < 0)

    def total(self) -> int:
        return sum(tj * from_digits(a, self.p) for tj, a in zip(self.t, self.addends))

    def has_nonzero_addend(self) -> bool:
        m = self.p**self.n - 1
        return any(from_digits(a, self.p) % m for a in self.addends)

    def column(self, i: int) -> int:
        return sum(tj * a[i] for tj, a in zip(self.t, self.addends))


@dataclass(frozen=True)
class CarryResult:
    s: tuple
    c: tuple  # c_0 .. c_{n-1}; c_{-1} = c_{n-1}
    r: tuple = field(default=())

    def carry(self, i: int) -> int:
        return self.c[i % len(self.c)]


def _residuals(inst: AwcInstance, s) -> list[int]:
    return [inst.column(i) - s[i] for i in range(inst.n)]


def check_carries(inst: AwcInstance, s, c) -> None:
    """Raise CarryError unless (s, c) satisfies recurrence, bounds and weight identity."""
    p, n = inst.p, inst.n
    for i in range(n):
        if p * c[i] + s[i] != c[(i - 1) % n] + inst.column(i):
            raise CarryError(f"recurrence fails at position {i}")
    lo, hi = inst.t_minus - 1, inst.t_plus
    if inst.has_nonzero_addend():
        lo, hi = inst.t_minus, inst.t_plus - 1
    if any(not lo <= ci <= hi for ci in c):
        raise CarryError(f"carry {c} outside [{lo}, {hi}]")
    wa = sum(tj * sum(a) for tj, a in zip(inst.t, inst.addends))
    if (p - 1) * sum(c) != wa - sum(s):
        raise CarryError("weight identity (p-1) w(c) = sum t_j w(a_j) - w(s) fails")


def awc_solve(inst: AwcInstance) -> CarryResult:
    """Digits of s = sum t_j a_j mod p^n - 1 and the unique periodic carries.

    Carries come from the closed form c_{j-1} = r(j) / (p^n - 1) with
    r(j) = sum_i r_{i+j} p^i; the recurrence is then checked, not iterated.
    """
    p, n = inst.p, inst.n
    m = p**n - 1
    s = digits(inst.total(), p, n)
    r = _residuals(inst, s)
    c = [0] * n
    for j in range(n):
        rj = sum(r[(i + j) % n] * p**i for i in range(n))
        if rj % m:
            raise CarryError(f"r({j}) = {rj} not divisible by {m}")
        c[(j - 1) % n] = rj // m
    check_carries(inst, s, c)
    return CarryResult(tuple(s), tuple(c), tuple(r))


def awc_poly_solve(inst: AwcInstance) -> tuple:
    """Carries from c(x) = r(x) gamma(x) mod x^n - 1,
    gamma(x) = (p^(n-1) + p^(n-2) x + ... + x^(n-1)) / (p^n - 1)."""
    p, n = inst.p, inst.n
    m = p**n - 1
    s = digits(inst.total(), p, n)
    r = _residuals(inst, s)
    gamma_num = [p ** (n - 1 - i) for i in range(n)]
    conv = [0] * n
    for i, ri in enumerate(r):
        if ri:
            for j, g in enumerate(gamma_num):
                conv[(i + j) % n] += ri * g
    if any(cv % m for cv in conv):
        raise CarryError("polynomial route produced a non-integral carry")
    return tuple(cv // m for cv in conv)


# ---------------------------------------------------------------------------
# weight inequalities

@dataclass
class ScanResult:
    k: int
    min_lhs: int
    bound: int
    argmin: object
    exhaustive: bool
    samples: int = 0
    seed: object = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.min_lhs >= self.bound

    def to_json(self) -> dict:
        out = {"k": self.k, "min_lhs": self.min_lhs, "bound": self.bound,
               "argmin": self.argmin, "exhaustive": self.exhaustive}
        if not self.exhaustive:
            out["samples"] = self.samples
            out["seed"] = self.seed
        out.update(self.extra)
        return out


def wtinequ_values(k: int):
    """Both left-hand sides w(b) + w(-(3^k+1) b - u) and w(b) + w(-(3^k+1) b - 3u)
    for every b in [0, 3^2k - 2]."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > WTINEQ_CAP_K:
        raise CapError(f"k={k} exceeds scan cap {WTINEQ_CAP_K}")
    n = 2 * k
    m = 3**n - 1
    u = m // 4
    w = weight_table(3, n)
    b = np.arange(m, dtype=np.int64)
    lin = ((3**k + 1) * b) % m
    lhs1 = w + w[(-lin - u) % m]
    lhs2 = w + w[(-lin - 3 * u) % m]
    return lhs1, lhs2


def wtinequ_scan(k: int) -> ScanResult:
    lhs1, lhs2 = wtinequ_values(k)
    min1, min2 = int(lhs1.min()), int(lhs2.min())
    arg1, arg2 = int(np.argmin(lhs1)), int(np.argmin(lhs2))
    extra = {"min_lhs_2": min2, "argmin_2": arg2}
    if k % 2 == 1:
        same = bool(np.array_equal(np.sort(lhs1), np.sort(lhs2)))
        if min1 != min2 or not same:
            raise CarryError("the two weight inequalities disagree for odd k")
        extra["multisets_equal"] = same
    return ScanResult(k, min1, 2 * k, arg1, True, extra=extra)


def genwi_check(a: int, b: int, k: int) -> int:
    """w(a) + w(b) + w(s) + w(t) with s = -a-b+v, t = -a-b+u mod 3^2k - 1."""
    n = 2 * k
    m = 3**n - 1
    u = m // 4
    v = 3 * u
    return (weight(a, 3, n) + weight(b, 3, n)
            + weight(-a - b + v, 3, n) + weight(-a - b + u, 3, n))


def _pair_min(w: np.ndarray, u: int, v: int, rows=None, block: int = 256):
    """Exhaustive min over (a, b) of w(a)+w(b)+w(v-a-b)+w(u-a-b); lexicographic argmin."""
    m = len(w)
    bs = np.arange(m, dtype=np.int64)
    best, arg = None, None
    rows = range(0, m, block) if rows is None else rows
    for start in rows:
        a = np.arange(start, min(start + block, m), dtype=np.int64)[:, None]
        ssum = a + bs[None, :]
        lhs = w[a] + w[bs][None, :] + w[(v - ssum) % m] + w[(u - ssum) % m]
        i = int(np.argmin(lhs))
        val = int(lhs.flat[i])
        if best is None or val < best:
            best, arg = val, (int(a[i // m, 0]), int(i % m))
    return best, arg


def genwi_exhaustive(k: int) -> ScanResult:
    if k > GENWI_EXHAUSTIVE_CAP_K:
        raise CapError(f"k={k} exceeds exhaustive cap {GENWI_EXHAUSTIVE_CAP_K}")
    n = 2 * k
    m = 3**n - 1
    best, arg = _pair_min(weight_table(3, n), m // 4, 3 * (m // 4))
    return ScanResult(k, best, 4 * k, list(arg), True)


def genwi_sampled(k: int, samples: int, seed: int) -> ScanResult:
    n = 2 * k
    m = 3**n - 1
    u = m // 4
    v = 3 * u
    w = weight_table(3, n)
    rng = np.random.default_rng(seed)
    best, arg = None, None
    left = samples
    while left:
        chunk = min(left, 1 << 18)
        a = rng.integers(0, m, chunk)
        b = rng.integers(0, m, chunk)
        lhs = w[a] + w[b] + w[(v - a - b) % m] + w[(u - a - b) % m]
        i = int(np.argmin(lhs))
        if best is None or int(lhs[i]) < best:
            best, arg = int(lhs[i]), [int(a[i]), int(b[i])]
        left -= chunk
    return ScanResult(k, best, 4 * k, arg, False, samples=samples, seed=seed)


def _check_disjoint(u_digits, v_digits):
    if len(u_digits) != len(v_digits):
        raise ValueError("u and v need the same number of digits")
    if any(ui and vi for ui, vi in zip(u_digits, v_digits)):
        raise ValueError("u and v digit supports overlap")


def gengenwi_bound(u_digits, v_digits) -> int:
    n = len(u_digits)
    return weight(from_digits(u_digits, 3), 3, n) + weight(from_digits(v_digits, 3), 3, n)


def gengenwi_check(a: int, b: int, u_digits, v_digits, n: int) -> int:
    """w(a)+w(b)+w(s)+w(t), s = -a-b+v, t = -a-b+u mod 3^n - 1, for disjoint u, v."""
    _check_disjoint(u_digits, v_digits)
    if len(u_digits) != n:
        raise ValueError("digit vectors must have length n")
    u, v = from_digits(u_digits, 3), from_digits(v_digits, 3)
    return weight(a, 3, n) + weight(b, 3, n) + weight(-a - b + v, 3, n) + weight(-a - b + u, 3, n)


def gengenwi_exhaustive(u_digits, v_digits) -> ScanResult:
    _check_disjoint(u_digits, v_digits)
    n = len(u_digits)
    u, v = from_digits(u_digits, 3), from_digits(v_digits, 3)
    best, arg = _pair_min(weight_table(3, n), u, v)
    return ScanResult(n, best, gengenwi_bound(u_digits, v_digits), list(arg), True,
                      extra={"u_digits": list(u_digits), "v_digits": list(v_digits)})


def random_disjoint_pattern(n: int, rng) -> tuple:
    """Random (u, v) digit vectors with u_i = 0 or v_i = 0 at every position."""
    u, v = [], []
    for _ in range(n):
        side = rng.integers(0, 3)
        d = int(rng.integers(0, 3))
        u.append(d if side == 0 else 0)
        v.append(d if side == 1 else 0)
    return tuple(u), tuple(v)


def shift_weight_invariance(s: int, k: int) -> bool:
    n = 2 * k
    return weight(3**k * s, 3, n) == weight(s, 3, n)
