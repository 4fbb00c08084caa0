from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pathprod.graded import TruncationError, tensor
from pathprod.loops import (LoopSpaceModel, free_loop_declared, free_loop_lie_group)
from pathprod.manifold import beta_form, diagonal_class
from pathprod.models import point, sphere, sphere_loops, su2, sun
from pathprod.stringtop import (PathModelError, PathSpaceModel, augmentation_projection,
                                check_algebra_over_cs, check_module, check_mu_beta,
                                check_path_ring, check_ring, module_generators_check, mu_beta,
                                mu_beta_table, mu_n_omega, nu_n_omega, sign_parity_check,
                                standard_generators)


def pair(N, a, b):
    P = N.pair_space
    return P.element(P.from_parts((N.homology.symbol(a), N.homology.symbol(b))))


def test_mu_beta_example_on_su2():
    K = su2()
    x = pair(K, "[S3]", "[e]")
    assert mu_beta(K, x, x) == x


@pytest.mark.parametrize("factory", [su2, lambda: sun(3), lambda: sphere(2), point])
def test_mu_beta_degree_constraint_and_formula(factory):
    N = factory()
    P = N.pair_space
    for u, v in itertools.product(P.basis, repeat=2):
        a, b = u.parts
        c, d = v.parts
        got = mu_beta(N, P.element(u), P.element(v))
        if b.degree + c.degree != N.dim:
            assert not got
        assert got == P.element(P.from_parts((a, d)),
                                beta_form(N, N.element(b), N.element(c)))


@pytest.mark.parametrize("factory", [su2, lambda: sun(3), lambda: sun(4), lambda: sphere(2), point])
def test_diagonal_class_is_a_two_sided_unit(factory):
    N = factory()
    D = diagonal_class(N)
    for s in N.pair_space.basis:
        x = N.pair_space.element(s)
        assert mu_beta(N, D, x) == x == mu_beta(N, x, D)


def test_mu_beta_commutativity_witnesses():
    r = check_mu_beta(point())
    assert r.passed and not r.result("non-commutativity witness").witnesses
    N = sphere(3)
    x, y = pair(N, "[S3]", "[pt]"), pair(N, "[S3]", "[S3]")
    assert mu_beta(N, x, y) == y and mu_beta(N, y, x) == N.pair_space.zero()
    r = check_mu_beta(N)
    assert r.passed and r.result("non-commutativity witness").witnesses


def test_mu_n_omega_reduces_to_mu_beta_on_unit_loops(s4_s3):
    P = s4_s3
    w = P.loops.unit
    for u, v in itertools.product(P.N.pair_space.basis, repeat=2):
        eu, ev = P.N.pair_space.element(u), P.N.pair_space.element(v)
        got = mu_n_omega(P, tensor(P.space, eu, w), tensor(P.space, ev, w))
        assert got == tensor(P.space, mu_beta(P.N, eu, ev), w)


def test_mu_n_omega_examples(s4_s3):
    P = s4_s3
    x = P.basis_tensor("[S3]", "[pt]", "a")
    assert mu_n_omega(P, x, x) == P.basis_tensor("[S3]", "[pt]", "a^2")
    for u, v in itertools.product(["[ω0]", "a", "a^2"], repeat=2):
        assert not mu_n_omega(P, P.basis_tensor("[S3]", "[S3]", u),
                              P.basis_tensor("[S3]", "[S3]", v))
    with pytest.raises(TruncationError):
        mu_n_omega(P, P.basis_tensor("[pt]", "[S3]", "a^7"), P.basis_tensor("[pt]", "[S3]", "a"))


def test_sign_exponent_on_odd_loops(s4_s3):
    """Sign exponent |x|(|c| + |d| + k) = 3·6 is even."""
    P = s4_s3
    x = P.basis_tensor("[pt]", "[pt]", "a")
    y = P.basis_tensor("[S3]", "[pt]", "a")
    assert mu_n_omega(P, x, y) == P.basis_tensor("[pt]", "[pt]", "a^2")


@pytest.mark.parametrize("model", ["s4_s3", "s3_s1"])
def test_path_ring_suite(request, model):
    P = request.getfixturevalue(model)
    r = check_path_ring(P)
    assert r.passed, r.to_text()
    assert r.result("associativity").checked > 1000
    assert r.result("non-commutativity witness").witnesses
    assert r.result("unit").detail.endswith(str(P.unit))
    assert P.unit == tensor(P.space, diagonal_class(P.N), P.loops.unit)


def test_sign_parity_holds_for_products_of_odd_spheres():
    for N in (sphere(1), sphere(3), su2(), sun(3), sun(4), sphere(2)):
        assert sign_parity_check(N).passed


def test_mutated_mu_table_is_caught(s4_s3):
    P = s4_s3
    T = P.mu_table
    u = P.space.symbol("[S3]⊗[pt]⊗a")
    v = P.space.symbol("[S3]⊗[pt]⊗a")
    bad = T.with_entry(u, v, P.basis_tensor("[S3]", "[pt]", "a^2") * 2)
    r = check_ring(P.space, bad, P.unit, -P.k)
    assoc = r.result("associativity")
    assert assoc.passed is False
    assert any("[S3]⊗[pt]⊗a" in v[0] for v in assoc.violations)


def test_augmentation_projection(s3_s1):
    P = s3_s1
    x = P.basis_tensor("[S1]", "[pt]", "[ω0]") * 3 + P.basis_tensor("[S1]", "[pt]", "a")
    assert augmentation_projection(P, x) == pair(P.N, "[S1]", "[pt]") * 3


def test_nu_examples(s3_s1):
    P = s3_s1
    F = P.free_loop
    for v in P.space.basis:
        ev = P.space.element(v)
        if v.degree <= P.window:
            assert nu_n_omega(P, F.unit, ev) == ev
        assert not nu_n_omega(P, F.element("[e]⊗a"), ev)
    for a, b in itertools.product(["[S1]", "[pt]"], repeat=2):
        for u in ["[ω0]", "a", "a^2"]:
            got = nu_n_omega(P, F.element(f"[S3]⊗{u}"), P.basis_tensor(a, b, "[ω0]"))
            want = P.basis_tensor(a, b, u)
            assert got in (want, -want)


def test_nu_needs_a_free_loop_model():
    P = PathSpaceModel(sphere(1), su2(), sphere_loops(3))
    with pytest.raises(PathModelError):
        P.nu_table
    assert check_module(P).result("module unit").passed is None


def test_module_suite(s3_s1, s4_s3):
    r = check_module(s3_s1)
    assert r.passed and r.result("module associativity").checked > 1000
    r = check_module(s4_s3)
    assert r.result("module unit").passed
    assert r.result("module associativity").passed is None


def test_mutated_pontryagin_table_breaks_module_associativity():
    G, N = su2(), sphere(1)
    L = sphere_loops(3, 12)
    a = L.space.symbol("a")
    ring = L.ring.with_table(L.ring.table.with_entry(a, a, L.element("a^2", 2)))
    bad = LoopSpaceModel("mutated", ring)
    P = PathSpaceModel(N, G, bad, free_loop_lie_group(G, bad))
    r = check_module(P)
    assoc = r.result("module associativity")
    assert assoc.passed is False and assoc.violations
    assert len(assoc.violations[0]) == 5


@pytest.mark.parametrize("model", ["s4_s3", "s3_s1"])
def test_algebra_over_cs(request, model):
    P = request.getfixturevalue(model)
    r = check_algebra_over_cs(P)
    assert r.passed, r.to_text()
    assert r.result("j_! image central").passed
    assert r.result("algebra identity").checked > 1000


def test_non_central_gysin_image_is_reported_not_asserted():
    M, L = sphere(2), sphere_loops(2, 8)
    F = free_loop_declared(M, L, [("[S2]", "[ω0]"), ("[S2]", "a"), ("[pt]", "[ω0]")],
                           {("[S2]", "[ω0]"): {"[ω0]": "1"}, ("[S2]", "a"): {"a": "1"}})
    P = PathSpaceModel(sphere(1), M, L, F)
    r = check_algebra_over_cs(P)
    assert r.result("j_! image central").passed is None
    assert r.result("j_! image central").violations
    assert r.result("algebra identity").passed is None
    assert r.passed


def test_degenerate_action_gives_zero(s3_s1):
    P = s3_s1
    A = P.free_loop.element("[e]⊗a")
    for X, Y in itertools.product(P.space.basis[:6], repeat=2):
        XY = mu_n_omega(P, P.space.element(X), P.space.element(Y))
        assert not nu_n_omega(P, A, XY)
        assert not nu_n_omega(P, A, P.space.element(X))


def test_generators(s3_s1, s4_s3):
    assert module_generators_check(s3_s1, standard_generators(s3_s1)).passed
    assert not module_generators_check(s4_s3, standard_generators(s4_s3)).passed
    r = module_generators_check(s4_s3, standard_generators(s4_s3, ["[ω0]", "a"]))
    assert r.passed
    assert len(standard_generators(s4_s3, ["[ω0]", "a"])) == 8


def test_degree_zero_is_generated_by_the_point_classes(s4_s3):
    gens = [s4_s3.basis_tensor("[pt]", "[pt]", "[ω0]")]
    r = module_generators_check(s4_s3, gens)
    assert not any(v[0] == "degree 0" for v in r.violations)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_mu_n_omega_bilinear_on_random_combinations(s3_s1, data):
    P = s3_s1
    basis = [s for s in P.space.basis if s.degree <= 6]
    pick = st.dictionaries(st.sampled_from(basis), st.integers(-3, 3), max_size=3)
    x, y, z = (P.space.element(data.draw(pick)) for _ in range(3))
    c = data.draw(st.integers(-4, 4))
    assert mu_n_omega(P, x * c + y, z) == mu_n_omega(P, x, z) * c + mu_n_omega(P, y, z)
