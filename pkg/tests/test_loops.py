from __future__ import annotations

import pytest

from pathprod.graded import TruncationError
from pathprod.loops import (LOOP_UNIT, LoopModelError, build_loop_space, cs_product_lie_group,
                            even_sphere_free_loop, free_loop_declared, free_loop_lie_group,
                            gysin_loop, pontryagin_product, ring_center, span_by_degree,
                            standard_loop_presentation)
from pathprod.models import sphere, sphere_loops, su2, sun, sun_loops
from pathprod.presentations import RingPresentation, expand_presentation

# Central powers of a in Q[a], |a| odd, window 24: frozen from the enumeration
# "a^i is central iff i*j is even for every j with (i + j)|a| <= 24".
CENTER_POWERS = {1: list(range(0, 25, 2)), 3: [0, 2, 4, 6, 8], 5: [0, 2, 4]}


def central_powers_by_enumeration(deg, window):
    top = window // deg
    return [i for i in range(top + 1)
            if all(i * j % 2 == 0 for j in range(top + 1) if i + j <= top)]


def power_name(i):
    return LOOP_UNIT if i == 0 else ("a" if i == 1 else f"a^{i}")


@pytest.mark.parametrize("deg", [1, 3, 5])
def test_frozen_center_oracle(deg):
    assert central_powers_by_enumeration(deg, 24) == CENTER_POWERS[deg]


@pytest.mark.parametrize("deg", [1, 3, 5])
def test_center_of_odd_polynomial_ring(deg):
    L = sphere_loops(deg + 1)
    center = ring_center(L.ring)
    assert sorted(str(z) for z in center) == sorted(power_name(i) for i in CENTER_POWERS[deg])


def test_center_is_closed_under_products():
    L = sphere_loops(4)
    center = ring_center(L.ring)
    for x in center:
        for y in center:
            try:
                xy = L.ring.mul(x, y)
            except TruncationError:
                continue
            assert span_by_degree(center + [xy], L.space, 24) == span_by_degree(center, L.space, 24)


def test_center_of_commutative_rings_is_everything():
    L = sun_loops(3, 12)
    assert len(ring_center(L.ring)) == len(L.space.basis)
    E = expand_presentation(RingPresentation("exterior", (("x", 3),)))
    assert len(ring_center(E)) == 2


def test_pontryagin_products():
    L = sphere_loops(4)
    a = L.element("a")
    assert pontryagin_product(L, L.element("a^2"), L.element("a^3")) == L.element("a^5")
    assert pontryagin_product(L, L.unit, a) == a == pontryagin_product(L, a, L.unit)
    with pytest.raises(TruncationError):
        pontryagin_product(L, L.element("a^8"), a)
    L3 = sun_loops(3)
    a2, a4 = L3.element("a2"), L3.element("a4")
    assert pontryagin_product(L3, a2, a4) == pontryagin_product(L3, a4, a2) == L3.element("a2*a4")


def test_loop_space_shapes():
    assert sun_loops(4, 8).space.dims(8) == [1, 0, 1, 0, 2, 0, 3, 0, 4]
    assert sun_loops(5).odd_degrees_vanish()
    assert not sphere_loops(4).odd_degrees_vanish()
    pres = RingPresentation("polynomial", (("a", 3),), graded_commutative=False)
    with pytest.raises(LoopModelError):
        build_loop_space("bad", pres, assert_even=True)
    with pytest.raises(LoopModelError):
        standard_loop_presentation("sphere", 1)
    with pytest.raises(LoopModelError):
        standard_loop_presentation("torus", 2)


@pytest.fixture(scope="module")
def lsu2():
    return free_loop_lie_group(su2(), sphere_loops(3, 12))


@pytest.fixture(scope="module")
def lsu3():
    return free_loop_lie_group(sun(3), sun_loops(3, 12))


def test_free_loop_window_covers_fundamental_class(lsu3):
    assert lsu3.window == 12 + 8
    (fund,) = lsu3.manifold.fundamental_class.terms
    for u in lsu3.loops.space.basis:
        assert lsu3.space.from_parts((fund, u)) is not None


def test_cs_unit_and_fundamental_products(lsu2, lsu3):
    for F in (lsu2, lsu3):
        for X in F.space.basis:
            x = F.element(X)
            if X.degree <= F.loops.window:
                assert cs_product_lie_group(F, F.unit, x) == x
                assert cs_product_lie_group(F, x, F.unit) == x
        (G,) = F.manifold.fundamental_class.terms
        L = F.loops
        for u in L.space.basis:
            for v in L.space.basis:
                if u.degree + v.degree + F.dim > L.window:
                    continue
                got = cs_product_lie_group(F, F.element(F.space.from_parts((G, u))),
                                           F.element(F.space.from_parts((G, v))))
                uv = L.ring.mul(L.element(u), L.element(v))
                expected = F.space.zero()
                for w, c in uv.items():
                    expected = expected + F.element(F.space.from_parts((G, w)), c)
                assert got in (expected, -expected)


def test_cs_vanishes_when_the_intersection_does(lsu3):
    F = lsu3
    e = F.element("[e]⊗a2")
    assert cs_product_lie_group(F, e, e) == F.space.zero()
    assert cs_product_lie_group(F, F.element("x3⊗[ω0]"), F.element("x3⊗a2")) == F.space.zero()


def test_cs_associativity(lsu2):
    F = lsu2
    els = [F.element(s) for s in F.space.basis]
    for x in els:
        for y in els:
            for z in els:
                try:
                    left = cs_product_lie_group(F, cs_product_lie_group(F, x, y), z)
                    right = cs_product_lie_group(F, x, cs_product_lie_group(F, y, z))
                except TruncationError:
                    continue
                assert left == right


def test_gysin_is_a_ring_map_onto_the_pontryagin_ring(lsu2, lsu3):
    for F in (lsu2, lsu3):
        L, j = F.loops, F.gysin
        n = F.dim
        images = []
        for A in F.space.basis:
            eA = F.element(A)
            img = gysin_loop(j, eA)
            images.append(img)
            a, x = A.parts
            if a.degree < n:
                assert not img
            else:
                assert img == L.element(x)
            for B in F.space.basis:
                try:
                    AB = cs_product_lie_group(F, eA, F.element(B))
                except TruncationError:
                    continue
                assert gysin_loop(j, AB) == L.ring.mul(img, gysin_loop(j, F.element(B)))
        assert span_by_degree(images, L.space, L.window) == L.space.dims(L.window)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_even_sphere_gysin_image_is_the_center(n):
    M = sphere(2 * n)
    L = sphere_loops(2 * n)
    F = even_sphere_free_loop(M, L)
    images = [gysin_loop(F.gysin, F.element(s)) for s in F.space.basis]
    assert span_by_degree(images, L.space, 24) == span_by_degree(ring_center(L.ring), L.space, 24)
    assert gysin_loop(F.gysin, F.unit) == L.unit
    with pytest.raises(LoopModelError):
        F.cs_table


def test_declared_free_loop_validation():
    M, L = sphere(2), sphere_loops(2)
    with pytest.raises(LoopModelError, match="wrong degree"):
        free_loop_declared(M, L, [("[S2]", "[ω0]"), ("[S2]", "a")],
                           {("[S2]", "[ω0]"): {"[ω0]": "1"}, ("[S2]", "a"): {"a^2": "1"}})
    with pytest.raises(LoopModelError, match="constant loop"):
        free_loop_declared(M, L, [("[S2]", "[ω0]")], {})
    with pytest.raises(LoopModelError):
        even_sphere_free_loop(sphere(3), sphere_loops(3))
