from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from pathprod.graded import (BasisSymbol, BilinearTable, FieldMismatchError, GradedElement,
                             GradedSpace, NotHomogeneousError, RuleTable, TruncationError,
                             apply_bilinear, koszul_sign, koszul_swap, poincare_product, tensor,
                             tensor_space)
from pathprod.scalars import GF, QQ


def space_from_dims(dims, prefix="e", truncation=None, field=QQ):
    syms = [BasisSymbol(f"{prefix}{d}_{i}", d) for d, n in enumerate(dims) for i in range(n)]
    return GradedSpace(syms, truncation=truncation, field=field, name=prefix)


V = space_from_dims([1, 1, 2, 1], "v")
dims_st = st.lists(st.integers(0, 2), min_size=1, max_size=5)
coeffs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 7))


def elements(space):
    return st.dictionaries(st.sampled_from(space.basis), coeffs, max_size=4).map(
        lambda d: space.element(d))


def homogeneous(space, degree):
    basis = space.in_degree(degree)
    return st.dictionaries(st.sampled_from(basis), coeffs, min_size=1, max_size=3).map(
        lambda d: space.element(d)).filter(bool)


def test_canonical_form_drops_zeros():
    x = V.element({"v1_0": 1, "v2_0": 0})
    assert list(x.terms) == [V.symbol("v1_0")]
    assert (x - x).is_zero() and not (x - x)


def test_degree_of_non_homogeneous_element_raises():
    x = V.element({"v1_0": 1, "v2_0": 1})
    assert not x.is_homogeneous()
    with pytest.raises(NotHomogeneousError):
        x.degree()
    assert set(x.homogeneous_parts()) == {1, 2}


def test_duplicate_names_and_truncation_rejected():
    with pytest.raises(ValueError):
        GradedSpace([BasisSymbol("a", 1), BasisSymbol("a", 2)])
    with pytest.raises(ValueError):
        GradedSpace([BasisSymbol("a", 5)], truncation=4)
    with pytest.raises(ValueError):
        BasisSymbol("a", -1)


def test_dims_zero_above_truncation():
    S = space_from_dims([1, 0, 2], truncation=4)
    assert S.dims(6) == [1, 0, 2, 0, 0, 0, 0]


def test_koszul_swap_examples():
    S = space_from_dims([1, 0, 1, 1], "s")
    u3, u2 = S.element("s3_0"), S.element("s2_0")
    assert koszul_swap(u3, u3)[0] == -1
    assert koszul_swap(u2, u3)[0] == 1 and koszul_swap(u3, u2)[0] == 1


@given(st.integers(0, 9), st.integers(0, 9))
def test_koszul_swap_is_an_involution(du, dv):
    S = GradedSpace([BasisSymbol("u", du), BasisSymbol("v", dv)])
    u, v = S.element("u"), S.element("v")
    s1, a, b = koszul_swap(u, v)
    s2, c, d = koszul_swap(a, b)
    assert (c, d) == (u, v) and s1 * s2 == 1


@given(st.lists(st.integers(0, 5), min_size=1, max_size=5), st.data())
def test_koszul_sign_matches_transposition_count(degrees, data):
    order = data.draw(st.permutations(range(len(degrees))))
    # oracle: bubble sort the factors into place, one adjacent swap at a time
    current = list(range(len(degrees)))
    sign = 1
    target = list(order)
    for i in range(len(target)):
        j = current.index(target[i])
        while j > i:
            a, b = current[j - 1], current[j]
            if degrees[a] * degrees[b] % 2:
                sign = -sign
            current[j - 1], current[j] = b, a
            j -= 1
    assert koszul_sign(degrees, order) == sign


@given(dims_st, dims_st)
def test_tensor_dims_follow_the_convolution_oracle(da, db):
    A, B = space_from_dims(da, "a"), space_from_dims(db, "b")
    T = tensor_space(A, B)
    upto = len(da) + len(db)
    expected = [sum(da[i] * db[d - i] for i in range(len(da)) if 0 <= d - i < len(db))
                for d in range(upto + 1)]
    assert T.dims(upto) == expected == poincare_product(da, db, upto=upto)


def test_tensor_examples():
    A = space_from_dims([1, 0, 0, 1], "a")
    B = space_from_dims([1, 0, 0, 1], "b")
    assert tensor_space(A, B).dims() == [1, 0, 0, 2, 0, 0, 1]
    one = space_from_dims([1], "k")
    assert tensor_space(A, one).dims() == A.dims()


def test_tensor_truncation_and_elements():
    A = space_from_dims([1, 1, 1], "a", truncation=2)
    T = tensor_space(A, A)
    assert T.truncation == 2 and T.top_degree == 2
    x = tensor(T, A.element("a1_0"), A.element("a1_0"))
    assert x.degree() == 2
    with pytest.raises(TruncationError):
        tensor(T, A.element("a2_0"), A.element("a1_0"))
    with pytest.raises(FieldMismatchError):
        tensor_space(A, space_from_dims([1], field=GF(3)))


@given(elements(V))
def test_serialization_roundtrip(x):
    data = x.to_dict()
    assert all(isinstance(v, str) for v in data.values())
    assert GradedElement.from_dict(V, data) == x


def product_table(max_degree=None):
    def rule(u, v):
        return V.element({s: Fraction(u.degree + 1, v.degree + 2)
                          for s in V.in_degree(u.degree + v.degree)})
    return BilinearTable.from_rule(V, V, V, rule, 0, max_reliable_degree=max_degree, name="t")


T = product_table()


@given(elements(V), elements(V), elements(V), coeffs, coeffs)
def test_apply_bilinear_is_bilinear(x, y, z, a, b):
    assert T(x * a + y * b, z) == T(x, z) * a + T(y, z) * b
    assert T(z, x * a + y * b) == T(z, x) * a + T(z, y) * b


@given(elements(V), elements(V))
def test_apply_bilinear_matches_term_expansion(x, y):
    expected = V.zero()
    for s, c in x.items():
        for t, d in y.items():
            expected = expected + T.on_basis(s, t) * (c * d)
    assert apply_bilinear(T, x, y) == expected


def test_trivial_tables():
    Z = BilinearTable(V, V, V, {})
    x = V.element({"v1_0": 2, "v2_1": 1})
    assert Z(x, x) == V.zero()
    assert T(V.zero(), x) == V.zero() and T(x, V.zero()) == V.zero()
    u, v = V.symbol("v1_0"), V.symbol("v1_0")
    assert T(V.element(u, 3), V.element(v, 5)) == T.on_basis(u, v) * 15


def test_table_degree_check_and_truncation_guard():
    u = V.symbol("v1_0")
    with pytest.raises(ValueError):
        BilinearTable(V, V, V, {(u, u): V.element("v3_0")})
    guarded = product_table(max_degree=2)
    assert guarded(V.element(u), V.element(u))
    with pytest.raises(TruncationError):
        guarded(V.element(u), V.element("v2_0"))


def test_rule_table_caches_and_validates():
    calls = []

    def rule(u, v):
        calls.append((u, v))
        return V.element(V.in_degree(u.degree + v.degree)[0])

    R = RuleTable(V, V, V, rule, 0, max_reliable_degree=3, name="r")
    u = V.symbol("v1_0")
    assert R.on_basis(u, u) == R.on_basis(u, u) and len(calls) == 1
    with pytest.raises(TruncationError):
        R.on_basis(u, V.symbol("v3_0"))
    bad = RuleTable(V, V, V, lambda u, v: V.element("v3_0"), 0, 3, "bad")
    with pytest.raises(ValueError):
        bad.on_basis(u, u)
    assert R.materialize().entries[(u, u)] == R.on_basis(u, u)


def test_rows_are_sorted_by_degree_then_name():
    keys = [(a.sort_key, b.sort_key) for (a, b), _ in T.rows()]
    assert keys == sorted(keys)


def test_pairing_tables_are_scalar_valued():
    u, w = V.symbol("v0_0"), V.symbol("v1_0")
    P = BilinearTable(V, V, None, {(u, u): 1})
    assert P(V.element(u, 2), V.element(u, 3)) == 6
    with pytest.raises(ValueError):
        BilinearTable(V, V, None, {(u, w): 1})
