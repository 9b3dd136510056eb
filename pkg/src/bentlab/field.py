"""Finite fields F_{p^n} for odd p, in log representation.

An element is addressed by an integer *index* in [0, q-1]: index 0 is the
zero element and index i >= 1 is xi^(i-1), where xi is the class of x modulo
the canonical primitive polynomial.  Every element also has an additive
*code*: the integer sum(c_i p^i) of its coordinates c_i in the polynomial
basis 1, xi, ..., xi^(n-1).  Multiplication happens on indices, addition on
codes.

All element-level methods accept Python ints or numpy integer arrays and
return the same kind.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

FIELD_CAP = 3**14


class FieldError(ValueError):
    pass


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# polynomials over Z_p, coefficient lists low -> high

def _poly_mulmod(a, b, mod, p):
    n = len(mod) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(n + 1):
                prod[d - n + i] -= c * mod[i]
    return [c % p for c in prod[:n]]


def _poly_xpow(e, mod, p):
    n = len(mod) - 1
    result = [1] + [0] * (n - 1)
    base = [0] * n
    if n == 1:
        base[0] = (-mod[0]) % p
    else:
        base[1] = 1
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_primitive_poly(mod, p: int) -> bool:
    """True iff the monic `mod` (low -> high) is primitive over Z_p.

    x having order exactly p^n - 1 modulo `mod` forces the quotient ring to be
    a field, so no separate irreducibility test is needed.
    """
    n = len(mod) - 1
    if mod[-1] != 1 or mod[0] % p == 0:
        return False
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _poly_xpow(order, mod, p) != one:
        return False
    return all(_poly_xpow(order // r, mod, p) != one for r in prime_factors(order))


def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest primitive polynomial in lex order of (c_{n-1}, ..., c_0).

    Returned low -> high, monic.
    """
    for high_first in itertools.product(range(p), repeat=n):
        mod = list(reversed(high_first)) + [1]
        if is_primitive_poly(mod, p):
            return tuple(mod)
    raise FieldError(f"no primitive polynomial found for p={p}, n={n}")


def _mul_x(vec, mod, p):
    n = len(vec)
    top = vec[-1]
    out = [0] + vec[:-1]
    if top:
        for i in range(n):
            out[i] = (out[i] - top * mod[i]) % p
    return out


def iter_exp_digits(mod, p, n, block=4096):
    """Yield consecutive row blocks of the coordinates of xi^t, t = 0 .. p^n - 2."""
    q1 = p**n - 1
    block = min(q1, block)
    vec = [1] + [0] * (n - 1)
    serial = []
    for _ in range(block + n):
        serial.append(vec)
        vec = _mul_x(vec, mod, p)
    cur = np.array(serial[:block], dtype=np.int64)
    # multiplication by xi^block is linear; row i holds xi^(block + i)
    step = np.array(serial[block:block + n], dtype=np.int64)
    pos = 0
    while pos < q1:
        take = min(block, q1 - pos)
        yield cur[:take]
        pos += take
        cur = (cur @ step) % p


def _exp_digits(mod, p, n):
    """Coordinates of xi^t for t in [0, q-2], as a (q-1, n) array."""
    return np.concatenate(list(iter_exp_digits(mod, p, n)))


def basis_traces(mod, p, n) -> np.ndarray:
    """Tr(xi^i) for i < n via Newton's identities on the monic modulus."""
    c = list(mod)  # low -> high, c[n] = 1
    power = [n % p]
    for m in range(1, n):
        acc = -m * c[n - m]
        for i in range(1, m):
            acc -= c[n - i] * power[m - i]
        power.append(acc % p)
    return np.array(power, dtype=np.int64)


def _digits(codes, p, n):
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (n,), dtype=np.int64)
    rest = codes.copy()
    for i in range(n):
        out[..., i] = rest % p
        rest //= p
    return out


class FieldCtx:
    """Tables for F_{p^n} built from a primitive modulus.

    The context is read-only after construction.
    """

    def __init__(self, p: int, n: int, modulus=None):
        if not is_prime(p) or p == 2:
            raise FieldError(f"p={p} is not an odd prime")
        if n < 1:
            raise FieldError("extension degree must be >= 1")
        if p**n > FIELD_CAP:
            raise FieldError(f"{p}^{n} exceeds the field cap {FIELD_CAP}")
        if modulus is None:
            modulus = canonical_modulus(p, n)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or not is_primitive_poly(list(modulus), p):
                raise FieldError(f"modulus {modulus} is not primitive of degree {n}")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self._pow = p ** np.arange(n, dtype=np.int64)

        digits = _exp_digits(list(modulus), p, n)
        self.exp = digits @ self._pow
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.q - 1, dtype=np.int64)
        if (self.log[1:] < 0).any():
            raise FieldError("exp table is not a bijection; modulus not primitive")
        self.codes = np.concatenate([[0], self.exp]).astype(np.int64)
        self.index_of_code = self.log + 1

        basis_trace = []
        for i in range(n):
            conj = [(i * p**j) % (self.q - 1) + 1 for j in range(n)]
            total = 0
            for c in conj:
                total = self.add(total, c)
            code = int(self.codes[total])
            if code >= p:
                raise FieldError("trace left the prime field")
            basis_trace.append(code)
        self._basis_trace = np.array(basis_trace, dtype=np.int64)
        self.trace_by_code = ((_digits(np.arange(self.q), p, n) @ self._basis_trace) % p).astype(np.int8)
        self.trace = self.trace_by_code[self.codes]
        self._dual = None

    # -- construction helpers ------------------------------------------------

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={self.modulus})"

    def to_text(self) -> str:
        """One line "p n c_n ... c_0"."""
        coeffs = " ".join(str(c) for c in reversed(self.modulus))
        return f"{self.p} {self.n} {coeffs}"

    @property
    def xi(self) -> int:
        return 2

    def element(self, t):
        """Index of xi^t."""
        return np.asarray(t) % (self.q - 1) + 1 if isinstance(t, np.ndarray) else t % (self.q - 1) + 1

    def from_int(self, c: int) -> int:
        """Index of the prime-field element c mod p."""
        return int(self.index_of_code[c % self.p])

    def digits(self, x):
        return _digits(self.codes[x], self.p, self.n)

    def from_digits(self, digs):
        return self.index_of_code[(np.asarray(digs, dtype=np.int64) % self.p) @ self._pow]

    def all_elements(self):
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self):
        return np.arange(1, self.q, dtype=np.int64)

    # -- arithmetic ----------------------------------------------------------

    def _scalarize(self, out, *args):
        if all(np.ndim(a) == 0 for a in args):
            return int(out)
        return out

    def _code_op(self, a, b, sign):
        ca = self.codes[a]
        cb = self.codes[b]
        res = np.zeros(np.broadcast(ca, cb).shape, dtype=np.int64)
        p = self.p
        for pw in self._pow:
            res += ((ca // pw % p + sign * (cb // pw % p)) % p) * pw
        return self.index_of_code[res]

    def add(self, a, b):
        return self._scalarize(self._code_op(a, b, 1), a, b)

    def sub(self, a, b):
        return self._scalarize(self._code_op(a, b, -1), a, b)

    def neg(self, a):
        return self.sub(0 if np.ndim(a) == 0 else np.zeros_like(a), a)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.where((a == 0) | (b == 0), 0, (a + b - 2) % (self.q - 1) + 1)
        return self._scalarize(out, a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("zero has no inverse")
        return self._scalarize((-(a - 1)) % (self.q - 1) + 1, a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        """a^e with the convention 0^e = 0 for every e (also e = 0)."""
        a = np.asarray(a, dtype=np.int64)
        out = np.where(a == 0, 0, ((a - 1) * (e % (self.q - 1))) % (self.q - 1) + 1)
        return self._scalarize(out, a)

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p ** (times % self.n))

    def discrete_log(self, x):
        """t in [0, q-2] with xi^t = x."""
        x = np.asarray(x, dtype=np.int64)
        if (x == 0).any():
            raise FieldError("discrete log of zero")
        return self._scalarize(x - 1, x)

    # -- traces --------------------------------------------------------------

    def trace_abs(self, x):
        """Absolute trace Tr_n(x) as an integer in [0, p-1]."""
        out = self.trace[x].astype(np.int64)
        return self._scalarize(out, x)

    def trace_rel(self, x, k: int):
        """Relative trace onto F_{p^k}: sum_{i < n/k} x^(p^(k i))."""
        if k < 1 or self.n % k:
            raise FieldError(f"k={k} does not divide n={self.n}")
        total = 0 if np.ndim(x) == 0 else np.zeros_like(np.asarray(x, dtype=np.int64))
        for i in range(self.n // k):
            total = self.add(total, self.pow(x, self.p ** (k * i)))
        return total

    def in_subfield(self, x, k: int):
        if self.n % k:
            raise FieldError(f"k={k} does not divide n={self.n}")
        return np.asarray(self.pow(x, self.p**k)) == np.asarray(x)

    def subfield_trace(self, y, k: int):
        """Tr_k(y) = sum_{i<k} y^(p^i) for y in the subfield F_{p^k}."""
        if not np.all(self.in_subfield(y, k)):
            raise FieldError(f"argument not in the subfield of degree {k}")
        total = 0 if np.ndim(y) == 0 else np.zeros_like(np.asarray(y, dtype=np.int64))
        for i in range(k):
            total = self.add(total, self.pow(y, self.p**i))
        codes = self.codes[total]
        if np.any(codes >= self.p):
            raise FieldError("subfield trace left the prime field")
        return self._scalarize(codes, y)

    # -- bases ---------------------------------------------------------------

    def gram_matrix(self) -> np.ndarray:
        """G[i, j] = Tr(xi^i xi^j)."""
        n = self.n
        return np.array([[self.trace_abs(self.element(i + j)) for j in range(n)] for i in range(n)],
                        dtype=np.int64)

    def dual_basis(self) -> np.ndarray:
        """Indices of the trace-dual basis of 1, xi, ..., xi^(n-1)."""
        if self._dual is None:
            ginv = matrix_inverse_mod(self.gram_matrix(), self.p)
            # row i of ginv holds the coordinates of the i-th dual element
            self._dual = self.from_digits(ginv)
        return self._dual

    # -- power maps ----------------------------------------------------------

    def fiber_profile(self, d: int, domain=None) -> dict[int, int]:
        """Multiset of fiber sizes of x -> x^d over `domain` (default F_q^*).

        Returned as {fiber size: number of image points with that size}.
        """
        if domain is None:
            domain = self.nonzero()
        images = self.pow(np.asarray(domain, dtype=np.int64), d)
        _, counts = np.unique(images, return_counts=True)
        return dict(sorted(Counter(counts.tolist()).items()))


def matrix_inverse_mod(m: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square integer matrix over Z_p (Gauss-Jordan)."""
    n = m.shape[0]
    a = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r, col] % p), None)
        if pivot is None:
            raise FieldError("matrix is singular mod p")
        a[[col, pivot]] = a[[pivot, col]]
        a[col] = (a[col] * pow(int(a[col, col]), -1, p)) % p
        for r in range(n):
            if r != col and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[col]) % p
    return a[:, n:]


_CACHE: dict = {}


def build_field(p: int, n: int, modulus=None) -> FieldCtx:
    """Build (and memoize) the field context for F_{p^n}."""
    key = (p, n, None if modulus is None else tuple(modulus))
    ctx = _CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, n, modulus)
        _CACHE[key] = ctx
    return ctx
