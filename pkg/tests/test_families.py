import math

import numpy as np
import pytest

from bentlab.classify import classify_direct, classify_hou
from bentlab.cycint import CycInt
from bentlab.families import (
    FamilyError,
    cm_params,
    conjectured_hk_dual,
    hk_decomposition,
    hk_decomposition_check,
    hk_params,
    kasami_expected_walsh,
    monomial_table,
    verdicts,
    verify_conjecture_dual,
    verify_kasami,
)
from bentlab.field import FieldCtx, build_field, canonical_modulus, is_primitive_poly
from bentlab.walsh import walsh_spectrum


def _other_primitive_modulus(p, n):
    """A primitive modulus different from the canonical one (low -> high)."""
    import itertools

    canon = canonical_modulus(p, n)
    for high_first in itertools.product(range(p), repeat=n):
        mod = tuple(reversed(high_first)) + (1,)
        if mod != canon and is_primitive_poly(list(mod), p):
            return mod


def test_zero_coefficient_gives_zero_table(f9):
    assert not monomial_table(0, 4, f9).any()


def test_hk_parameters():
    f = hk_params(1)
    assert (f.n, f.d, f.a) == (2, 6, build_field(3, 2).element(1))
    f = hk_params(3)
    assert (f.n, f.d, f.a) == (6, 210, build_field(3, 6).element(7))
    with pytest.raises(FamilyError):
        hk_params(2)


def test_cm_parameters():
    assert cm_params(3, 1, 1).d == 2
    assert cm_params(4, 3, 1).d == 14
    with pytest.raises(FamilyError):
        cm_params(4, 2, 1)
    with pytest.raises(FamilyError):
        cm_params(3, 1, 0)


def test_kasami_closed_form_examples(f9):
    one = f9.from_int(1)
    assert kasami_expected_walsh(one, 1, 0, f9) == -3
    assert kasami_expected_walsh(one, 1, one, f9) == CycInt.eisenstein(0, -3)
    xi = f9.element(1)
    # a + a^3 = 0 happens for a = xi^2 (since xi^6 = -xi^2)
    bad = next(a for a in range(1, 9) if f9.add(a, f9.pow(a, 3)) == 0)
    with pytest.raises(FamilyError):
        kasami_expected_walsh(bad, 1, xi, f9)


@pytest.mark.parametrize("k", [1, 2])
def test_kasami_every_coefficient(k):
    res = verify_kasami(k, build_field(3, 2 * k))
    assert res["ok"], res["mismatches"]
    assert res["matched"] + res["nonbent_ok"] == 3 ** (2 * k)


def test_conjectured_dual_at_zero(f9):
    assert conjectured_hk_dual(1, 0, f9) == frozenset({CycInt.integer(3, -3)})


@pytest.mark.parametrize("k", [1, 3])
def test_conjecture_membership(k):
    res = verify_conjecture_dual(k, build_field(3, 2 * k))
    assert res["all_match"]
    assert res["per_b_sign"][0] == "both"
    total = res["count_plus_only"] + res["count_minus_only"] + res["count_both"]
    assert total == 3 ** (2 * k)


def test_decomposition_quadratic(f9):
    for b in range(1, f9.q):
        assert hk_decomposition_check(1, b, f9)
    with pytest.raises(FamilyError):
        hk_decomposition(1, 0, f9)


def test_decomposition_sextic(rng):
    ctx = build_field(3, 6)
    for b in rng.integers(1, ctx.q, 25):
        r = hk_decomposition(3, int(b), ctx)
        assert r["direct"] == r["via_classes"] == r["closed"]


@pytest.mark.parametrize("n,k", [(3, 1), (4, 1), (4, 3), (5, 1), (5, 3)])
def test_cm_odd_k_weakly_regular(n, k):
    ctx = build_field(3, n)
    d = (3**k + 1) // 2
    for a in range(1, ctx.q):
        v = verdicts(monomial_table(a, d, ctx), ctx)
        assert v["direct_weakly_regular"] and v["hou_weakly_regular"]


@pytest.mark.parametrize("n,k", [(3, 2), (5, 2), (5, 4)])
def test_cm_even_k_odd_n_is_not_bent(n, k):
    ctx = build_field(3, n)
    assert math.gcd(n, k) == 1
    d = (3**k + 1) // 2
    v = verdicts(monomial_table(1, d, ctx), ctx)
    assert not v["direct_bent"] and not v["hou_bent"]


@pytest.mark.parametrize("k", [1, 3])
def test_hk_under_other_primitive_modulus(k):
    n = 2 * k
    ctx = FieldCtx(3, n, modulus=_other_primitive_modulus(3, n))
    fs = hk_params(k, ctx)
    spec = walsh_spectrum(fs.table(ctx), ctx)
    assert classify_direct(spec).is_weakly_regular and classify_hou(spec).is_weakly_regular
    assert spec[0] == -(3**k)
    assert verify_conjecture_dual(k, ctx, spec)["all_match"]


def test_cm_under_other_primitive_modulus():
    ctx = FieldCtx(3, 4, modulus=_other_primitive_modulus(3, 4))
    for a in np.random.default_rng(3).integers(1, ctx.q, 10):
        v = verdicts(monomial_table(int(a), 14, ctx), ctx)
        assert v["direct_weakly_regular"]


@pytest.mark.slow
def test_hk_at_field_cap():
    ctx = build_field(3, 14)
    fs = hk_params(7, ctx)
    spec = walsh_spectrum(fs.table(ctx), ctx)
    assert classify_direct(spec).is_weakly_regular and classify_hou(spec).is_weakly_regular
    assert spec[0] == -(3**7)
    assert verify_conjecture_dual(7, ctx, spec)["all_match"]
