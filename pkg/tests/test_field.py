import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bentlab.field import (
    FIELD_CAP,
    FieldCtx,
    FieldError,
    basis_traces,
    build_field,
    canonical_modulus,
    is_primitive_poly,
)


def _order_of_x(mod, p):
    """Naive oracle: multiplicative order of x modulo a monic polynomial (low -> high)."""
    n = len(mod) - 1
    one = [1] + [0] * (n - 1)
    cur = list(one)
    for e in range(1, p**n):
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c - top * m) % p for c, m in zip(cur, mod)]
        if cur == one:
            return e
    return None


def _lex_first_primitive(p, n):
    for high_first in itertools.product(range(p), repeat=n):
        mod = list(reversed(high_first)) + [1]
        if mod[0] and _order_of_x(mod, p) == p**n - 1:
            return tuple(mod)


def test_quadratic_modulus_is_x2_x_2():
    assert canonical_modulus(3, 2) == (2, 1, 1)
    assert build_field(3, 2).to_text() == "3 2 1 1 2"


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2)])
def test_canonical_modulus_matches_scan(p, n):
    assert canonical_modulus(p, n) == _lex_first_primitive(p, n)


def test_prime_field_is_identity():
    ctx = build_field(3, 1)
    assert ctx.q == 3
    assert ctx.trace_abs(ctx.from_int(2)) == 2
    assert ctx.from_int(1) == ctx.element(0)


def test_trace_examples(f9):
    assert f9.trace_abs(0) == 0
    assert f9.trace_abs(f9.from_int(1)) == 2
    assert f9.trace_abs(f9.element(1)) == 2


def test_relative_trace_examples(f9):
    one = f9.from_int(1)
    assert f9.trace_rel(one, 1) == f9.from_int(2)
    assert f9.trace_rel(f9.element(1), 1) == f9.from_int(2)


@pytest.mark.parametrize("k", [1, 3])
def test_relative_trace_of_hk_coefficient(k):
    ctx = build_field(3, 2 * k)
    a = ctx.element((3**k + 1) // 4)
    i_unit = ctx.element((3 ** (2 * k) - 1) // 4)
    assert ctx.trace_rel(a, k) == ctx.mul(a, ctx.add(i_unit, 1))


def test_relative_trace_on_subfield_doubles(f81):
    sub = [x for x in range(f81.q) if f81.in_subfield(x, 2)]
    assert len(sub) == 9
    for x in sub:
        assert f81.trace_rel(x, 2) == f81.add(x, x)


def test_discrete_log_examples(f9):
    assert f9.discrete_log(f9.from_int(1)) == 0
    assert f9.discrete_log(f9.element(1)) == 1
    assert f9.discrete_log(f9.from_int(2)) == 4
    with pytest.raises(FieldError):
        f9.discrete_log(0)


def test_fiber_profiles(f9):
    assert f9.fiber_profile(1) == {1: 8}
    prof = f9.fiber_profile(4)
    assert prof == {4: 2}
    images = set(np.unique(f9.pow(f9.nonzero(), 4)).tolist())
    assert images == {f9.from_int(1), f9.from_int(2)}


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (3, 5), (5, 2), (7, 3)])
def test_tables_are_consistent(p, n):
    ctx = build_field(p, n)
    idx = ctx.nonzero()
    assert np.array_equal(ctx.element(ctx.discrete_log(idx)), idx)
    order = ctx.q - 1
    assert ctx.pow(ctx.xi, order) == ctx.from_int(1)
    assert is_primitive_poly(list(ctx.modulus), p)
    assert np.array_equal(ctx.frobenius(idx, n), idx)
    assert list(basis_traces(ctx.modulus, p, n)) == [ctx.trace_abs(ctx.element(i)) for i in range(n)]


@given(st.data())
def test_field_axioms(data):
    p, n = data.draw(st.sampled_from([(3, 2), (3, 3), (3, 4), (5, 2), (7, 2)]))
    ctx = build_field(p, n)
    x, y, z = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    assert ctx.add(x, ctx.neg(x)) == 0
    if x:
        assert ctx.mul(x, ctx.inv(x)) == ctx.from_int(1)
        assert ctx.div(ctx.mul(x, y), x) == y
    assert ctx.frobenius(ctx.add(x, y)) == ctx.add(ctx.frobenius(x), ctx.frobenius(y))


@given(st.data())
def test_trace_properties(data):
    n, k = data.draw(st.sampled_from([(2, 1), (4, 2), (4, 1), (6, 3), (6, 2)]))
    ctx = build_field(3, n)
    x, y = data.draw(st.integers(0, ctx.q - 1)), data.draw(st.integers(0, ctx.q - 1))
    assert ctx.trace_abs(ctx.add(x, y)) == (ctx.trace_abs(x) + ctx.trace_abs(y)) % 3
    assert ctx.trace_abs(ctx.pow(x, 3)) == ctx.trace_abs(x)
    rel = ctx.trace_rel(x, k)
    assert ctx.in_subfield(rel, k)
    assert ctx.subfield_trace(rel, k) == ctx.trace_abs(x)


def test_dual_basis_is_trace_dual(f81):
    dual = f81.dual_basis()
    for i in range(f81.n):
        for j in range(f81.n):
            tr = f81.trace_abs(f81.mul(f81.element(i), int(dual[j])))
            assert tr == (1 if i == j else 0)


def test_modulus_override_and_rejection():
    ctx = FieldCtx(3, 2, modulus=(2, 2, 1))  # x^2 + 2x + 2
    assert ctx.to_text() == "3 2 1 2 2"
    with pytest.raises(FieldError):
        FieldCtx(3, 2, modulus=(1, 0, 1))  # x^2 + 1 is irreducible but not primitive
    with pytest.raises(FieldError):
        FieldCtx(3, 2, modulus=(0, 1, 1))  # reducible


def test_bad_parameters():
    with pytest.raises(FieldError):
        FieldCtx(4, 2)
    with pytest.raises(FieldError):
        FieldCtx(2, 3)
    with pytest.raises(FieldError):
        FieldCtx(3, 15)
    assert 3**14 == FIELD_CAP


def test_build_field_memoized():
    assert build_field(3, 3) is build_field(3, 3)
