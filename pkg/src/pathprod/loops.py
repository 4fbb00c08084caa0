"""Based and free loop space models: Pontryagin rings, Gysin maps and centers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .graded import (BasisSymbol, GradedElement, GradedSpace, RuleTable, TruncationError,
                     tensor_symbol)
from .manifold import ManifoldModel, intersection_product
from .presentations import (DEFAULT_TRUNCATION, Ring, RingPresentation, expand_presentation,
                            rename_basis)
from .scalars import QQ, Field

LOOP_UNIT = "[ω0]"


class LoopModelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LoopSpaceModel:
    """``H(ΩM)`` with its Pontryagin product, expanded through ``ring.guard``."""

    name: str
    ring: Ring
    manifold: ManifoldModel | None = None

    def __repr__(self):
        return f"LoopSpaceModel({self.name}, window={self.window})"

    @property
    def space(self) -> GradedSpace:
        return self.ring.space

    @property
    def unit(self) -> GradedElement:
        return self.ring.unit

    @property
    def window(self) -> int | None:
        return self.ring.guard

    @property
    def field(self) -> Field:
        return self.ring.field

    def element(self, spec=None, coeff=1) -> GradedElement:
        return self.ring.element(spec, coeff)

    def odd_degrees_vanish(self) -> bool:
        return all(s.degree % 2 == 0 for s in self.space.basis)


def build_loop_space(name: str, presentation: RingPresentation, field: Field = QQ,
                     manifold: ManifoldModel | None = None,
                     assert_even: bool = False) -> LoopSpaceModel:
    """Expand ``presentation`` and rename its empty monomial to the constant-loop class."""
    ring = rename_basis(expand_presentation(presentation, field), {"1": LOOP_UNIT})
    model = LoopSpaceModel(name, ring, manifold)
    if assert_even and not model.odd_degrees_vanish():
        raise LoopModelError(f"{name}: declared to have no odd-degree homology")
    return model


def pontryagin_product(L: LoopSpaceModel, x: GradedElement, y: GradedElement) -> GradedElement:
    return L.ring.mul(x, y)


@dataclass(frozen=True, eq=False)
class GysinLoopMap:
    """``j_!`` from free loop homology to based loop homology, of degree ``-n``."""

    rule: str  # lie_group_projection | declared_image
    source: GradedSpace
    target: LoopSpaceModel
    images: dict  # source symbol -> target element
    shift: int

    def __call__(self, A: GradedElement) -> GradedElement:
        return gysin_loop(self, A)


@dataclass(frozen=True, eq=False)
class FreeLoopModel:
    """``H(ΛM)`` either split as ``H(G) ⊗ H(ΩG)`` (Lie groups) or declared."""

    kind: str  # lie_group | declared
    manifold: ManifoldModel
    loops: LoopSpaceModel
    space: GradedSpace
    gysin: GysinLoopMap
    window: int | None  # loop window plus dim M, so [M]⊗u is present for every u
    name: str = ""

    def __repr__(self):
        return f"FreeLoopModel({self.name or self.manifold.name}, {self.kind})"

    @property
    def dim(self) -> int:
        return self.manifold.dim

    @property
    def unit(self) -> GradedElement:
        """``s_*[M]``: the fundamental class times the constant loop."""
        (fund,) = self.manifold.fundamental_class.terms
        (w0,) = self.loops.unit.terms
        return self.space.element(self.space.from_parts((fund, w0)))

    def element(self, spec=None, coeff=1) -> GradedElement:
        return self.space.element(spec, coeff)

    @cached_property
    def cs_table(self) -> RuleTable:
        if self.kind != "lie_group":
            raise LoopModelError(f"{self.name}: the loop product is only modelled for Lie groups")
        n = self.dim
        F = self.space
        M, L = self.manifold, self.loops

        def rule(A, B):
            a, u = A.parts
            b, v = B.parts
            ab = intersection_product(M, M.element(a), M.element(b))
            if not ab:
                return F.zero()
            uv = L.ring.mul(L.element(u), L.element(v))
            sign = -1 if (u.degree * (n + b.degree)) % 2 else 1
            out = {}
            for sa, ca in ab.items():
                for su, cu in uv.items():
                    out[F.from_parts((sa, su))] = sign * ca * cu
            return GradedElement(F, out)

        return RuleTable(F, F, F, rule, shift=-n, max_reliable_degree=self.loops.window,
                         name=f"cs({self.manifold.name})")


def _free_window(M: ManifoldModel, loops: LoopSpaceModel) -> int | None:
    return None if loops.window is None else loops.window + M.dim


def free_loop_lie_group(G: ManifoldModel, loops: LoopSpaceModel, name: str = "") -> FreeLoopModel:
    """``H(ΛG) = H(G) ⊗ H(ΩG)``; ``j_!`` keeps the loop factor of ``[G] ⊗ u``."""
    window = _free_window(G, loops)
    syms = [tensor_symbol(a, u) for a in G.homology.basis for u in loops.space.basis
            if window is None or a.degree + u.degree <= window]
    F = GradedSpace(syms, truncation=window, field=G.field, name=name or f"H(Λ{G.name})")
    (fund,) = G.fundamental_class.terms
    images = {}
    for s in F.basis:
        a, u = s.parts
        if a == fund:
            images[s] = loops.element(u)
    j = GysinLoopMap("lie_group_projection", F, loops, images, -G.dim)
    return FreeLoopModel("lie_group", G, loops, F, j, window, name or f"Λ{G.name}")


def free_loop_declared(M: ManifoldModel, loops: LoopSpaceModel, basis, images: dict,
                       name: str = "") -> FreeLoopModel:
    """A free loop model given by a basis of ``(homology, loop)`` pairs and ``j_!`` images.

    ``basis`` lists pairs of names; ``images`` maps a pair to ``{loop_name: coeff}``.
    """
    window = _free_window(M, loops)
    syms = []
    for a, u in basis:
        sa, su = M.homology.symbol(a), loops.space.symbol(u)
        if window is not None and sa.degree + su.degree > window:
            continue
        syms.append(BasisSymbol(f"{sa.name}⊗{su.name}", sa.degree + su.degree, (sa, su)))
    F = GradedSpace(syms, truncation=window, field=M.field, name=name or f"H(Λ{M.name})")
    imgs = {}
    for (a, u), spec in images.items():
        s = F.from_parts((M.homology.symbol(a), loops.space.symbol(u)))
        if s is None:
            continue
        val = loops.element({k: (loops.field.parse(c) if isinstance(c, str) else c)
                             for k, c in spec.items()})
        if val and val.degree() != s.degree - M.dim:
            raise LoopModelError(f"{name}: j_! image of {s.name} has the wrong degree")
        imgs[s] = val
    j = GysinLoopMap("declared_image", F, loops, imgs, -M.dim)
    model = FreeLoopModel("declared", M, loops, F, j, window, name or f"Λ{M.name}")
    if model.unit not in F.basis_elements() or gysin_loop(j, model.unit) != loops.unit:
        raise LoopModelError(f"{name}: j_! must send s_*[M] to the constant loop")
    return model


def even_sphere_free_loop(M: ManifoldModel, loops: LoopSpaceModel, name: str = "") -> FreeLoopModel:
    """Rational free loop homology of ``S^n``, ``n`` even, with ``j_!`` onto even powers.

    Basis: ``[S^n]⊗a^{2l}`` (``j_!`` = ``a^{2l}``), ``[pt]⊗a^{2l-1}`` and ``[pt]⊗[ω0]``
    (``j_!`` = 0); ``a`` is the degree ``n-1`` generator of ``H(ΩS^n)``.
    """
    if M.dim % 2 or M.dim == 0:
        raise LoopModelError("even_sphere_free_loop needs an even-dimensional sphere")
    (fund,) = M.fundamental_class.terms
    (pt,) = M.point_class.terms
    gens = loops.ring.generators
    if len(gens) != 1 or gens[0].degree != M.dim - 1:
        raise LoopModelError(f"{loops.name}: expected one generator of degree {M.dim - 1}")
    basis, images = [], {}
    for s in loops.space.basis:
        power = s.degree // gens[0].degree
        if power % 2 == 0:
            basis.append((fund.name, s.name))
            images[(fund.name, s.name)] = {s.name: 1}
        if power % 2 == 1 or power == 0:
            basis.append((pt.name, s.name))
    return free_loop_declared(M, loops, basis, images, name)


def gysin_loop(j: GysinLoopMap, A: GradedElement) -> GradedElement:
    out = j.target.space.zero()
    for s, c in A.items():
        img = j.images.get(s)
        if img is not None:
            out = out + img * c
    return out


def cs_product_lie_group(F: FreeLoopModel, A: GradedElement, B: GradedElement) -> GradedElement:
    """``(a⊗u) ∧ (b⊗v) = (-1)^{|u|(n+|b|)} (a ∩̄ b) ⊗ (u ⋆ v)``."""
    if F.kind != "lie_group":
        raise LoopModelError(f"{F.name}: the loop product is only modelled for Lie groups")
    return F.cs_table(A, B)


def ring_center(ring: Ring, upto: int | None = None) -> list[GradedElement]:
    """Basis of the graded center degree by degree, tested against every ``y`` in the window."""
    space = ring.space
    guard = ring.guard if ring.guard is not None else space.top_degree
    if upto is not None:
        guard = min(guard, upto)
    field = ring.field
    out = []
    for d in range(guard + 1):
        xs = space.in_degree(d)
        if not xs:
            continue
        columns = []
        for x in xs:
            col = []
            for y in space.basis:
                if d + y.degree > guard:
                    continue
                ex, ey = space.element(x), space.element(y)
                diff = ring.mul(ex, ey) - ring.mul(ey, ex) * (-1 if (d * y.degree) % 2 else 1)
                col.extend(diff.coefficient(t) for t in space.in_degree(d + y.degree))
            columns.append(col)
        rows = [list(r) for r in zip(*columns)] if columns and columns[0] else []
        for vec in linalg.nullspace(rows, len(xs), field):
            out.append(GradedElement(space, dict(zip(xs, vec))))
    return out


def span_by_degree(elements, space: GradedSpace, upto: int) -> list[int]:
    """Dimension of the span of ``elements`` in each degree ``0..upto``."""
    dims = []
    for d in range(upto + 1):
        basis = space.in_degree(d)
        vecs = [[e.coefficient(b) for b in basis] for e in elements
                if e and e.is_homogeneous() and e.degree() == d]
        dims.append(linalg.rank(vecs, space.field) if vecs and basis else 0)
    return dims


def standard_loop_presentation(kind: str, degree_or_n: int, window: int = DEFAULT_TRUNCATION,
                               name: str = "") -> RingPresentation:
    """Presentations of rational ``H(ΩS^n)`` and ``H(ΩSU(n))``.

    ``kind`` is ``"sphere"`` (one generator ``a`` of degree ``n-1``) or ``"sun"``
    (generators ``a2, a4, ..., a{2n-2}``).
    """
    if kind == "sphere":
        n = degree_or_n
        if n < 2:
            raise LoopModelError("sphere loop spaces need n >= 2")
        return RingPresentation("polynomial", (("a", n - 1),), truncation=window,
                                graded_commutative=(n - 1) % 2 == 0, name=name or f"H(ΩS{n})")
    if kind == "sun":
        n = degree_or_n
        gens = tuple((f"a{d}", d) for d in range(2, 2 * n - 1, 2))
        return RingPresentation("polynomial", gens, truncation=window, name=name or f"H(ΩSU{n})")
    raise LoopModelError(f"unknown loop presentation kind {kind!r}")


__all__ = [
    "LOOP_UNIT", "LoopModelError", "LoopSpaceModel", "FreeLoopModel", "GysinLoopMap",
    "build_loop_space", "pontryagin_product", "free_loop_lie_group", "free_loop_declared",
    "even_sphere_free_loop", "gysin_loop", "cs_product_lie_group", "ring_center",
    "span_by_degree", "standard_loop_presentation", "TruncationError",
]
