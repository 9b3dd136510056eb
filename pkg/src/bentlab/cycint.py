"""Exact integers of the cyclotomic field Q(zeta_p).

A CycInt stores coefficients c_0..c_{p-2} on the basis 1, zeta, ...,
zeta^(p-2); zeta^(p-1) is rewritten as -(1 + zeta + ... + zeta^(p-2)).
For p = 3 this is the Eisenstein ring Z[w] with z = x + y w, and the extra
methods below (norm, lambda-adic valuation, division by sqrt(-3), unit
decomposition) are available.

Fixed conventions: sqrt(-3) := 1 + 2w and lambda := 1 - w.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Optional

INF = math.inf


class CycIntError(ValueError):
    pass


def _reduce(p: int, full: list[int]) -> tuple[int, ...]:
    """Fold a length-p coefficient list (powers 0..p-1) onto the basis."""
    top = full[p - 1]
    return tuple(c - top for c in full[:p - 1])


@dataclass(frozen=True)
class CycInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise CycIntError(f"need {self.p - 1} coefficients, got {len(self.coeffs)}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def integer(cls, p: int, m: int) -> "CycInt":
        return cls(p, (m,) + (0,) * (p - 2))

    @classmethod
    def zeta_pow(cls, p: int, e: int, sign: int = 1) -> "CycInt":
        full = [0] * p
        full[e % p] = sign
        return cls(p, _reduce(p, full))

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Iterable[int]) -> "CycInt":
        """sum_e counts[e] * zeta^e."""
        full = [int(c) for c in counts]
        if len(full) != p:
            raise CycIntError("need one count per exponent 0..p-1")
        return cls(p, _reduce(p, full))

    @classmethod
    def eisenstein(cls, x: int, y: int) -> "CycInt":
        return cls(3, (int(x), int(y)))

    # -- ring structure ------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.p != self.p:
            raise CycIntError(f"mismatched p: {self.p} vs {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    full[(i + j) % p] += a * b
        return CycInt(p, _reduce(p, full))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise CycIntError("negative powers are not ring elements")
        out = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def conj(self) -> "CycInt":
        """Complex conjugate, i.e. the automorphism zeta -> zeta^-1."""
        p = self.p
        full = [0] * p
        for i, c in enumerate(self.coeffs):
            full[(-i) % p] += c
        return CycInt(p, _reduce(p, full))

    def galois(self, r: int) -> "CycInt":
        """Automorphism zeta -> zeta^r, gcd(r, p) = 1."""
        p = self.p
        if r % p == 0:
            raise CycIntError("r must be a unit mod p")
        full = [0] * p
        for i, c in enumerate(self.coeffs):
            full[(i * r) % p] += c
        return CycInt(p, _reduce(p, full))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.p)
        return sum(c * z**i for i, c in enumerate(self.coeffs))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    # -- Eisenstein-only -----------------------------------------------------

    def _need_eisenstein(self):
        if self.p != 3:
            raise CycIntError("operation defined only for p = 3")

    @property
    def x(self) -> int:
        self._need_eisenstein()
        return self.coeffs[0]

    @property
    def y(self) -> int:
        self._need_eisenstein()
        return self.coeffs[1]

    def norm(self) -> int:
        """|z|^2 = x^2 - x y + y^2."""
        x, y = self.x, self.y
        return x * x - x * y + y * y

    def lambda_valuation(self):
        """Largest m with (1 - w)^m dividing z; math.inf for z = 0."""
        self._need_eisenstein()
        if self.is_zero():
            return INF
        x, y = self.coeffs
        m = 0
        while True:
            # z / (1 - w) = z (2 + w) / 3
            a, b = 2 * x - y, x + y
            if a % 3 or b % 3:
                return m
            x, y = a // 3, b // 3
            m += 1

    def div_sqrt_m3(self) -> "CycInt":
        """Exact z / (1 + 2w); raises if not divisible."""
        self._need_eisenstein()
        x, y = self.coeffs
        # z / (1 + 2w) = -z (1 + 2w) / 3
        a, b = x - 2 * y, 2 * x - y
        if a % 3 or b % 3:
            raise CycIntError(f"{self} is not divisible by 1+2w")
        return CycInt(3, (-(a // 3), -(b // 3)))

    def __str__(self):
        if self.p == 3:
            return format_eisenstein(*self.coeffs)
        return f"CycInt(p={self.p}, {list(self.coeffs)})"


def format_eisenstein(x: int, y: int) -> str:
    """Render x + y w as "x+yω" (e.g. "-3+0ω", "1-2ω")."""
    return f"{x}{'+' if y >= 0 else '-'}{abs(y)}ω"


OMEGA = CycInt.eisenstein(0, 1)
ONE = CycInt.eisenstein(1, 0)
SQRT_M3 = CycInt.eisenstein(1, 2)
LAMBDA = CycInt.eisenstein(1, -1)


def cyc_mul(z1: CycInt, z2: CycInt) -> CycInt:
    return z1 * z2


def lambda_valuation(z: CycInt):
    return z.lambda_valuation()


def nu3(z: CycInt):
    """3-adic valuation as a half-integer (lambda-valuation / 2)."""
    v = z.lambda_valuation()
    return v if v == INF else v / 2


def divide_sqrt_m3_pow(z: CycInt, m: int) -> CycInt:
    """Exact quotient z / (1 + 2w)^m."""
    if m < 0:
        raise CycIntError("m must be non-negative")
    if z.lambda_valuation() < m:
        raise CycIntError(f"lambda-valuation of {z} is below {m}")
    for _ in range(m):
        z = z.div_sqrt_m3()
    return z


# sign, j  ->  sign * w^j
_UNITS = {
    (1, 0): (1, 0), (0, 1): (1, 1), (-1, -1): (1, 2),
    (-1, 0): (-1, 0), (0, -1): (-1, 1), (1, 1): (-1, 2),
}


def unit_decompose(z: CycInt) -> Optional[tuple[int, int]]:
    """(sign, j) with z = sign * w^j, or None when z is not a root of unity."""
    z._need_eisenstein()
    return _UNITS.get(z.coeffs)
