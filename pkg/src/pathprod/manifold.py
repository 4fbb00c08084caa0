"""Homology of closed oriented manifolds through Poincaré duality.

Homology is modelled as the Poincaré dual of the cohomology ring: every
cohomology monomial ``m`` of degree ``d`` gives a homology basis class
``PD(m)`` of degree ``n - d``. The orientation convention is fixed by
declaring ``PD(top) = [pt]`` where ``top`` is the product of all exterior
generators in declaration order (or the declared top class of an explicit
ring), and ``PD(1) = [M]``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from functools import cached_property

from . import linalg
from .graded import BasisSymbol, BilinearTable, GradedElement, GradedSpace, tensor_space
from .presentations import (Ring, RingPresentation, associativity_violations,
                            expand_presentation)
from .scalars import QQ, Field


class ManifoldError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ManifoldModel:
    name: str
    dim: int
    cohomology: Ring
    homology: GradedSpace
    fundamental_class: GradedElement
    point_class: GradedElement
    pd_map: dict  # cohomology symbol -> homology symbol
    orientation_convention: str = "PD(top)=[pt]"

    def __repr__(self):
        return f"ManifoldModel({self.name}, dim={self.dim})"

    @property
    def field(self) -> Field:
        return self.homology.field

    @cached_property
    def pd_inverse_map(self) -> dict:
        return {h: c for c, h in self.pd_map.items()}

    @cached_property
    def intersection_table(self) -> BilinearTable:
        H = self.homology

        def rule(a, b):
            return poincare_dual(self, self.cohomology.mul(
                poincare_dual_inverse(self, H.element(a)),
                poincare_dual_inverse(self, H.element(b))))

        return BilinearTable.from_rule(H, H, H, rule, shift=-self.dim,
                                       max_reliable_degree=self.dim,
                                       name=f"intersection({self.name})")

    @cached_property
    def beta_table(self) -> BilinearTable:
        H = self.homology
        (pt,) = self.point_class.terms

        def rule(a, b):
            if a.degree + b.degree != self.dim:
                return 0
            return self.intersection_table.on_basis(a, b).coefficient(pt)

        return BilinearTable.from_rule(H, H, None, rule, shift=-self.dim, name=f"beta({self.name})")

    @cached_property
    def pair_space(self) -> GradedSpace:
        return tensor_space(self.homology, self.homology, name=f"H({self.name})^2")

    def element(self, spec=None, coeff=1) -> GradedElement:
        return self.homology.element(spec, coeff)


def _complement_name(gens, exps) -> str:
    names = [g for (g, _), e in zip(gens, exps) if not e]
    return "*".join(names)


def build_manifold(name: str, dim: int, presentation: RingPresentation, field: Field = QQ,
                   fundamental: str | None = None, point: str = "[pt]",
                   homology_names: dict | None = None, top: str | None = None) -> ManifoldModel:
    """Build a manifold model from its cohomology presentation.

    Homology classes are named after the complementary exterior monomial
    (so for SU(3) the degree-5 class is ``x5``), except for the fundamental
    and point classes. ``homology_names`` maps cohomology monomial names to
    explicit homology names and overrides the defaults.
    """
    if dim < 0:
        raise ManifoldError("dimension must be >= 0")
    if presentation.kind == "exterior":
        presentation = replace(presentation, truncation=None)
    ring = expand_presentation(presentation, field)
    coh = ring.space
    if coh.truncation is not None and coh.truncation < dim:
        raise ManifoldError(f"{name}: cohomology truncated below the dimension")
    if any(s.degree > dim for s in coh.basis):
        raise ManifoldError(f"{name}: cohomology is nonzero above the dimension {dim}")
    tops = coh.in_degree(dim)
    if len(tops) != 1:
        raise ManifoldError(f"{name}: top cohomology must be one-dimensional, found {len(tops)}")
    top_sym = coh.symbol(top) if top is not None else tops[0]
    cdims = coh.dims(dim)
    if cdims != cdims[::-1]:
        raise ManifoldError(f"{name}: Betti numbers {cdims} violate Poincaré duality")
    (unit_sym,) = ring.unit.terms
    fundamental = fundamental or f"[{name}]"
    homology_names = dict(homology_names or {})

    gens = [(str(g), int(d)) for g, d in presentation.generators]
    exps_by_name = {}
    if presentation.kind == "exterior":
        for e in product((0, 1), repeat=len(gens)):
            nm = "*".join(g for (g, _), x in zip(gens, e) if x) or "1"
            exps_by_name[nm] = e

    pd_map = {}
    hsyms = []
    for s in coh.basis:
        if s == unit_sym:
            hname = fundamental
        elif s == top_sym:
            hname = point
        elif s.name in exps_by_name:
            hname = _complement_name(gens, exps_by_name[s.name])
        else:
            hname = f"PD({s.name})"
        hname = homology_names.get(s.name, hname)
        h = BasisSymbol(hname, dim - s.degree)
        pd_map[s] = h
        hsyms.append(h)
    homology = GradedSpace(sorted(hsyms, key=lambda h: (-h.degree, hsyms.index(h))),
                           field=field, name=f"H({name})")
    model = ManifoldModel(name, dim, ring, homology, homology.element(pd_map[unit_sym]),
                          homology.element(pd_map[top_sym]), pd_map)
    _validate_manifold(model)
    return model


def _validate_manifold(m: ManifoldModel) -> None:
    bad = associativity_violations(m.cohomology, limit=1)
    if bad:
        raise ManifoldError(f"{m.name}: cup product not associative on {[s.name for s in bad[0]]}")
    hd = m.homology.dims(m.dim)
    cd = m.cohomology.space.dims(m.dim)
    if any(hd[d] != cd[m.dim - d] for d in range(m.dim + 1)):
        raise ManifoldError(f"{m.name}: homology/cohomology dimensions are not Poincaré dual")
    # perfect pairing in complementary degrees
    for d in range(m.dim + 1):
        rows_b = m.homology.in_degree(d)
        cols_b = m.homology.in_degree(m.dim - d)
        mat = [[m.beta_table.on_basis(a, b) for b in cols_b] for a in rows_b]
        if rows_b and linalg.rank(mat, m.field) != len(rows_b):
            raise ManifoldError(f"{m.name}: intersection pairing degenerate in degree {d}")


def poincare_dual(m: ManifoldModel, u: GradedElement) -> GradedElement:
    """Cohomology class to homology class of complementary degree."""
    if u.space is not m.cohomology.space:
        raise ManifoldError(f"element is not a cohomology class of {m.name}")
    return GradedElement(m.homology, {m.pd_map[s]: c for s, c in u.items()})


def poincare_dual_inverse(m: ManifoldModel, a: GradedElement) -> GradedElement:
    if a.space is not m.homology:
        raise ManifoldError(f"element is not a homology class of {m.name}")
    inv = m.pd_inverse_map
    return GradedElement(m.cohomology.space, {inv[s]: c for s, c in a.items()})


def intersection_product(m: ManifoldModel, a: GradedElement, b: GradedElement) -> GradedElement:
    """``PD(PD^-1 a ∪ PD^-1 b)``, of degree ``|a| + |b| - dim``."""
    return m.intersection_table(a, b)


def beta_form(m: ManifoldModel, x: GradedElement, y: GradedElement):
    """The intersection product form: point-class coefficient of ``x ∩̄ y``."""
    return m.beta_table(x, y)


def diagonal_class(m: ManifoldModel) -> GradedElement:
    """``Σ a_i ⊗ b_i`` for β-dual bases; the two-sided unit of ``mu_beta``.

    With ``B[p][q] = β(e_p, e_q)`` the coefficient matrix is ``B^-1``.
    """
    basis = list(m.homology.basis)
    B = [[m.beta_table.on_basis(a, b) for b in basis] for a in basis]
    try:
        D = linalg.inverse(B, m.field)
    except ValueError:
        raise ManifoldError(f"{m.name}: the intersection form is degenerate") from None
    P = m.pair_space
    terms = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if D[i][j] != 0:
                terms[P.from_parts((a, b))] = D[i][j]
    return GradedElement(P, terms)


@dataclass(frozen=True, eq=False)
class ManifoldMap:
    """A smooth map ``source → target`` recorded by its cohomology pullback."""

    source: ManifoldModel
    target: ManifoldModel
    pullback: dict  # target cohomology symbol -> source cohomology element
    name: str = ""

    @classmethod
    def from_generators(cls, source: ManifoldModel, target: ManifoldModel, images: dict,
                        name: str = "") -> ManifoldMap:
        """Extend generator images multiplicatively to every target monomial."""
        tring, sring = target.cohomology, source.cohomology
        gen_img = {}
        for g in tring.generators:
            spec = images.get(g.name, {})
            if isinstance(spec, GradedElement):
                gen_img[g] = spec
            else:
                gen_img[g] = sring.space.element({k: (sring.field.parse(v) if isinstance(v, str) else v)
                                                  for k, v in spec.items()})
        pull = {}
        for s in tring.space.basis:
            img = sring.unit
            for factor in s.name.split("*") if s.name != "1" else []:
                gname, _, power = factor.partition("^")
                g = tring.space.symbol(gname)
                for _ in range(int(power or 1)):
                    img = sring.mul(img, gen_img[g])
            pull[s] = img
        f = cls(source, target, pull, name)
        f.validate()
        return f

    @classmethod
    def constant(cls, source: ManifoldModel, target: ManifoldModel, name: str = "") -> ManifoldMap:
        """A null-homotopic map: pullback vanishes in positive degrees."""
        return cls.from_generators(source, target, {}, name)

    def validate(self) -> None:
        tr, sr = self.target.cohomology, self.source.cohomology
        for s, img in self.pullback.items():
            if img and img.degree() != s.degree:
                raise ManifoldError(f"{self.name}: pullback of {s.name} changes degree")
        if self.apply(tr.unit) != sr.unit:
            raise ManifoldError(f"{self.name}: pullback is not unital")
        for u in tr.space.basis:
            for v in tr.space.basis:
                lhs = self.apply(tr.mul(tr.element(u), tr.element(v)))
                rhs = sr.mul(self.pullback[u], self.pullback[v])
                if lhs != rhs:
                    raise ManifoldError(f"{self.name}: pullback not multiplicative on "
                                        f"({u.name}, {v.name})")

    def apply(self, u: GradedElement) -> GradedElement:
        out = self.source.cohomology.space.zero()
        for s, c in u.items():
            out = out + self.pullback[s] * c
        return out

    @property
    def codimension(self) -> int:
        return self.target.dim - self.source.dim

    def is_trivial_in_positive_degrees(self) -> bool:
        return all(not img for s, img in self.pullback.items() if s.degree > 0)


def gysin_between_manifolds(f: ManifoldMap, a: GradedElement) -> GradedElement:
    """``f_! = PD_source ∘ f^* ∘ PD_target^-1``, lowering degree by the codimension."""
    return poincare_dual(f.source, f.apply(poincare_dual_inverse(f.target, a)))
