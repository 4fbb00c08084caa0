"""Paths in a Lie group G with endpoints in a closed subgroup K.

Coordinates: a class of ``H(P_K G)`` is written ``b ⊗ y`` with ``b ∈ H(K)`` the
start point and ``y ∈ H(P_eK G)`` (paths from ``e`` into ``K``). Left factors
of the path product are given as ``a ⊗ X'`` with ``X' ∈ H(P_Ke G)`` (paths
from ``K`` to ``e``). Only the structure constants that are determined by
the geometry are stored; anything else raises :class:`ScenarioDataError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

from .graded import BasisSymbol, GradedElement, GradedSpace, poincare_product, tensor_space
from .loops import FreeLoopModel, LoopSpaceModel, free_loop_lie_group
from .manifold import ManifoldMap, ManifoldModel, gysin_between_manifolds
from .models import su2, sun, sun_loops
from .presentations import DEFAULT_TRUNCATION
from .report import CheckResult, Report
from .scalars import QQ, Field
from .stringtop import PathSpaceModel, nu_n_omega

KINDS = ("subgroup", "null_homotopic")
S_CLASS = "𝒮"
C_CLASS = "e3"


class ScenarioError(ValueError):
    pass


class ScenarioDataError(LookupError):
    """The scenario does not carry the structure constant that was requested."""

    def __init__(self, what: str):
        super().__init__(f"insufficient scenario data: {what}")


def _sign(exp: int) -> int:
    return -1 if exp % 2 else 1


def path_space_basis(loops: LoopSpaceModel, odd_name: str) -> GradedSpace:
    """Basis of ``H(P_Ke G)`` / ``H(P_eK G)`` for ``K = S^3`` from the degree formula.

    Even degrees copy ``H(ΩG)``; degree ``2m+1`` is spanned by ``odd_name·u`` with
    ``|u| = 2m-2``.
    """
    window = loops.window
    syms = []
    (w0,) = loops.unit.terms
    for u in loops.space.basis:
        syms.append(BasisSymbol(u.name, u.degree))
    for u in loops.space.basis:
        if window is None or u.degree + 3 <= window:
            name = odd_name if u == w0 else f"{odd_name}·{u.name}"
            syms.append(BasisSymbol(name, u.degree + 3))
    syms.sort(key=lambda s: s.degree)
    return GradedSpace(syms, truncation=window, field=loops.field)


def mayer_vietoris_dims(loop_dims: list[int], upto: int) -> list[int]:
    """``dim H_{2m} = dim H_{2m}(ΩG)``, ``dim H_{2m+1} = dim H_{2m-2}(ΩG)``."""
    out = []
    for d in range(upto + 1):
        if d % 2 == 0:
            out.append(loop_dims[d] if d < len(loop_dims) else 0)
        else:
            src = d - 3
            out.append(loop_dims[src] if 0 <= src < len(loop_dims) else 0)
    return out


@dataclass(frozen=True, eq=False)
class SubgroupScenario:
    n: int
    kind: str
    G: ManifoldModel
    K: ManifoldModel
    loops: LoopSpaceModel
    free_loop: FreeLoopModel
    inclusion: ManifoldMap
    c: object = 0
    k_overrides: dict = field(default_factory=dict)  # (name, name) -> {name: coeff}

    def __repr__(self):
        return f"SubgroupScenario(SU{self.n} ⊃ SU2, {self.kind}, c={self.c})"

    @property
    def field(self) -> Field:
        return self.G.field

    @property
    def window(self) -> int | None:
        return self.loops.window

    @property
    def codim(self) -> int:
        return self.G.dim - self.K.dim

    @cached_property
    def PKe(self) -> GradedSpace:
        return path_space_basis(self.loops, S_CLASS)

    @cached_property
    def PeK(self) -> GradedSpace:
        return path_space_basis(self.loops, C_CLASS)

    @cached_property
    def path_model(self) -> PathSpaceModel:
        return PathSpaceModel(self.K, self.G, self.loops, self.free_loop,
                              name=f"SU2 in SU{self.n} (null-homotopic)")

    @cached_property
    def total(self) -> GradedSpace:
        if self.kind == "null_homotopic":
            return self.path_model.space
        return tensor_space(self.K.homology, self.PeK, truncation=self.window,
                            name=f"H(P[SU2,SU{self.n}])")

    @cached_property
    def ke_form(self) -> GradedSpace:
        """``H(K) ⊗ H(P_Ke G)``: left inputs of the path product."""
        return tensor_space(self.K.homology, self.PKe, truncation=self.window)

    def total_element(self, b: str, y: str, coeff=1) -> GradedElement:
        if self.kind == "null_homotopic":
            raise ScenarioError("the null-homotopic model has no (K, P_eK) coordinates")
        sym = self.total.from_parts((self.K.homology.symbol(b), self.PeK.symbol(y)))
        return self.total.element(sym, coeff)

    # distinguished classes
    @cached_property
    def sigma_prime(self) -> GradedElement:
        syms = self.G.homology.in_degree(self.G.dim - 3)
        if len(syms) != 1:
            raise ScenarioError(f"expected one homology class in degree {self.G.dim - 3}")
        return self.G.element(syms[0])

    @cached_property
    def Sigma(self) -> GradedElement:
        (sp,) = self.sigma_prime.terms
        (w0,) = self.loops.unit.terms
        F = self.free_loop.space
        return F.element(F.from_parts((sp, w0)))

    @cached_property
    def iota_S(self) -> GradedElement:
        """``[S3]⊗[ω0] + c·[e]⊗e3``."""
        (fund,) = self.K.fundamental_class.terms
        (pt,) = self.K.point_class.terms
        (w0,) = self.loops.unit.terms
        return (self.total_element(fund.name, w0.name)
                + self.total_element(pt.name, C_CLASS, self.c))

    @cached_property
    def X(self) -> GradedElement:
        """``[S3] ⊗ 𝒮`` in the ``(K, P_Ke)`` form."""
        (fund,) = self.K.fundamental_class.terms
        E = self.ke_form
        return E.element(E.from_parts((fund, self.PKe.symbol(S_CLASS))))

    @cached_property
    def Y(self) -> GradedElement:
        """The degree-0 generator ``[e]⊗[ω0]``."""
        (pt,) = self.K.point_class.terms
        (w0,) = self.loops.unit.terms
        return self.total_element(pt.name, w0.name)

    # structure constants
    @cached_property
    def k_intersection(self) -> dict:
        """``∩̄`` on ``H(K)`` as a dict; overrides may break the grading on purpose."""
        H = self.K.homology
        table = {}
        for a in H.basis:
            for b in H.basis:
                val = self.K.intersection_table.on_basis(a, b)
                if val:
                    table[(a, b)] = val
        for (a, b), spec in self.k_overrides.items():
            table[(H.symbol(a), H.symbol(b))] = GradedElement(
                H, {H.symbol(k): self.field(v) for k, v in spec.items()})
        return table

    @cached_property
    def concat_table(self) -> dict:
        """``concat_*: H(P_Ke) ⊗ H(P_eK) → H(P_K)``: unit rows plus ``concat(𝒮, [ω0]) = ι_*𝒮``."""
        (pt,) = self.K.point_class.terms
        (w0,) = self.loops.unit.terms
        ke_unit = self.PKe.symbol(w0.name)
        ek_unit = self.PeK.symbol(w0.name)
        table = {}
        for y in self.PeK.basis:
            table[(ke_unit, y)] = self.total_element(pt.name, y.name)
        table[(self.PKe.symbol(S_CLASS), ek_unit)] = self.iota_S
        return table

    def with_k_intersection(self, overrides: dict) -> SubgroupScenario:
        """A copy with some intersection products on ``K`` replaced (mutation tests)."""
        merged = dict(self.k_overrides)
        merged.update(overrides)
        return replace(self, k_overrides=merged)

    def intersect_k(self, a: BasisSymbol, b: BasisSymbol) -> GradedElement:
        return self.k_intersection.get((a, b), self.K.homology.zero())

    def concat(self, x: BasisSymbol, y: BasisSymbol) -> GradedElement:
        try:
            return self.concat_table[(x, y)]
        except KeyError:
            raise ScenarioDataError(f"concat_*({x.name} × {y.name})") from None

    def loop_concat(self, u: BasisSymbol, y: BasisSymbol) -> GradedElement:
        """``concat_*: H(ΩG) ⊗ H(P_eK) → H(P_eK)``, known for the constant loop only."""
        (w0,) = self.loops.unit.terms
        if u != w0:
            raise ScenarioDataError(f"concat_*({u.name} × {y.name})")
        return self.PeK.element(y)

    def phi(self, a: BasisSymbol, Z: GradedElement) -> GradedElement:
        """The ``K``-action on ``H(P_K G)``, known for the point class only."""
        (pt,) = self.K.point_class.terms
        if a != pt:
            raise ScenarioDataError(f"φ_*({a.name} × ·)")
        return Z


def build_sun_scenario(n: int, kind: str = "subgroup", c=0, window: int = DEFAULT_TRUNCATION,
                       field: Field = QQ) -> SubgroupScenario:
    if n < 3:
        raise ScenarioError("the SU(n) ⊃ SU(2) scenario needs n >= 3")
    if kind not in KINDS:
        raise ScenarioError(f"unknown embedding kind {kind!r}")
    G, K = sun(n, field), su2(field)
    loops = sun_loops(n, window, field)
    F = free_loop_lie_group(G, loops)
    if kind == "subgroup":
        inc = ManifoldMap.from_generators(K, G, {"x3": {"y3": "1"}}, name="i_sg")
    else:
        inc = ManifoldMap.constant(K, G, name="i_nh")
    return SubgroupScenario(n, kind, G, K, loops, F, inc, field(c))


def path_product_subgroup(s: SubgroupScenario, left: GradedElement,
                          right: GradedElement) -> GradedElement:
    """``(a⊗X') ∧ (b⊗Y') = (-1)^{(|b|+k)|X'|} φ_*((a∩̄b) ⊗ concat_*(X'⊗Y'))``."""
    if s.kind != "subgroup":
        raise ScenarioError("path_product_subgroup needs the subgroup embedding")
    k = s.K.dim
    out = s.total.zero()
    for L, cl in left.items():
        a, xp = L.parts[0], _second(s.PKe, L)
        for R, cr in right.items():
            b, yp = R.parts[0], _second(s.PeK, R)
            ab = s.intersect_k(a, b)
            if not ab:
                continue
            cz = s.concat(xp, yp)
            if not cz:
                continue
            sign = _sign((b.degree + k) * xp.degree)
            for t, ct in ab.items():
                out = out + s.phi(t, cz) * (sign * cl * cr * ct)
    return out


def _second(space: GradedSpace, sym: BasisSymbol) -> BasisSymbol:
    rest = sym.parts[1:]
    if len(rest) != 1:
        raise ScenarioError(f"{sym.name} is not of the form a ⊗ y")
    return rest[0]


def module_action_subgroup(s: SubgroupScenario, A: GradedElement, Z: GradedElement) -> GradedElement:
    """Free loop class ``A`` acting on a path class ``Z``.

    Subgroup kind: ``j_!(g⊗u) = i_!(g)⊗u`` with sign ``(-1)^{r - r|A| + kr}``, then
    ``(a⊗u) ▷ (b⊗x) = (-1)^{|u|(k+|b|)} (a∩̄b) ⊗ concat_*(u⊗x)``.
    Null-homotopic kind: the action on ``H(K)⊗H(K)⊗H(ΩG)``.
    """
    if s.kind == "null_homotopic":
        return nu_n_omega(s.path_model, A, Z)
    k, r, nG = s.K.dim, s.codim, s.G.dim
    out = s.total.zero()
    for Asym, cA in A.items():
        g, u = Asym.parts
        jg = gysin_between_manifolds(s.inclusion, s.G.element(g))
        if not jg:
            continue
        sign1 = _sign(r - r * Asym.degree + k * r)
        for Zsym, cZ in Z.items():
            if Asym.degree + Zsym.degree - nG < 0:
                continue
            b, x = Zsym.parts[0], _second(s.PeK, Zsym)
            sign2 = _sign(u.degree * (k + b.degree))
            for a, ca in jg.items():
                ab = s.intersect_k(a, b)
                if not ab:
                    continue
                ux = s.loop_concat(u, x)
                for t, ct in ab.items():
                    for y, cy in ux.items():
                        sym = s.total.from_parts((t, y))
                        out = out + s.total.element(sym, sign1 * sign2 * cA * cZ * ca * ct * cy)
    return out


def _relations(s: SubgroupScenario) -> dict:
    XY = path_product_subgroup(s, s.X, s.Y)
    SiS = module_action_subgroup(s, s.Sigma, s.iota_S)
    SY = module_action_subgroup(s, s.Sigma, s.Y)
    lhs = module_action_subgroup(s, s.Sigma, XY)
    rhs = path_product_subgroup(s, s.X, SY)
    if XY == s.iota_S:
        eps = 1
    elif XY == -s.iota_S:
        eps = -1
    else:
        eps = 0
    return {"XY": XY, "eps": eps, "SiS": SiS, "SY": SY, "lhs": lhs, "rhs": rhs,
            "i": eps != 0, "ii": bool(SiS) and (SiS == s.Y or SiS == -s.Y),
            "iii": SY == 0, "iv": bool(lhs) and rhs == 0}


def verify_counterexample(n: int, window: int = DEFAULT_TRUNCATION, field: Field = QQ,
                          k_overrides: dict | None = None, samples=(0, 1)) -> Report:
    """Check the four relations at two values of the unknown coefficient ``c``."""
    report = Report(f"counterexample: SU2 ⊂ SU{n} as a subgroup", window)
    evals = []
    for c in samples:
        s = build_sun_scenario(n, "subgroup", c, window, field)
        if k_overrides:
            s = s.with_k_intersection(k_overrides)
        evals.append((c, s, _relations(s)))
    s0 = evals[0][1]
    report.lines.append(f"|Σ| = {s0.Sigma.degree()}, |X| = {s0.X.degree()}, |Y| = 0, "
                        f"dim SU{n} = {s0.G.dim}, Σ' = {s0.sigma_prime}")
    names = {"i": "(i) X∧Y = ±ι_*𝒮", "ii": "(ii) Σ·(ι_*𝒮) = ±Y ≠ 0", "iii": "(iii) Σ·Y = 0",
             "iv": "(iv) Σ·(X∧Y) ≠ 0 and X∧(Σ·Y) = 0"}
    shown = {"i": "XY", "ii": "SiS", "iii": "SY", "iv": "lhs"}
    for key, label in names.items():
        bad = [(f"c = {c}", f"value = {r[shown[key]]}") for c, _, r in evals if not r[key]]
        detail = "; ".join(f"c={c}: {r[shown[key]]}" for c, _, r in evals)
        report.add(CheckResult(label, not bad, len(evals), bad, detail=detail))
    base = evals[0][2]
    dep = []
    for c, _, r in evals[1:]:
        for key in ("eps", "SiS", "SY", "lhs", "rhs", "i", "ii", "iii", "iv"):
            if r[key] != base[key]:
                dep.append((key, f"c = {evals[0][0]}: {base[key]}", f"c = {c}: {r[key]}"))
    report.add(CheckResult("independent of c", not dep, len(evals), dep))
    r = base
    report.lines.append("Σ·(X∧Y) ≠ 0" if r["lhs"] else "Σ·(X∧Y) = 0   (expected ≠ 0)")
    report.lines.append(f"    Σ·(X∧Y) = {r['lhs']}")
    report.lines.append("X∧(Σ·Y) = 0" if r["rhs"] == 0 else "X∧(Σ·Y) ≠ 0   (expected = 0)")
    if report.passed:
        report.lines.append(f"conclusion: the path product on H(P[SU2,SU{n}]) is not an algebra "
                            "over the loop product ring")
    return report


def distinguish_module_structures(n: int, window: int = DEFAULT_TRUNCATION,
                                  field: Field = QQ) -> Report:
    """Compare the subgroup and null-homotopic models as modules."""
    report = Report(f"module structures: SU2 ⊂ SU{n}, subgroup vs null-homotopic", window)
    sg = build_sun_scenario(n, "subgroup", 0, window, field)
    nh = build_sun_scenario(n, "null_homotopic", 0, window, field)
    d_sg, d_nh = sg.total.dims(window), nh.total.dims(window)
    loop_dims = sg.loops.space.dims(window)
    d_formula = poincare_product(sg.K.homology.dims(), mayer_vietoris_dims(loop_dims, window),
                                 upto=window)
    d_tensor = poincare_product(sg.K.homology.dims(), sg.K.homology.dims(), loop_dims, upto=window)
    bad = [(f"degree {d}", f"subgroup {a}", f"null-homotopic {b}")
           for d, (a, b) in enumerate(zip(d_sg, d_nh)) if a != b]
    if d_formula != d_sg or d_tensor != d_nh:
        bad.append(("dimension oracle disagrees", str(d_formula), str(d_tensor)))
    report.add(CheckResult("graded dimensions agree", not bad, window + 1, bad,
                           detail=f"dims = {d_sg}"))
    ann_bad = []
    for v in nh.total.basis:
        val = module_action_subgroup(nh, nh.Sigma, nh.total.element(v))
        if val:
            ann_bad.append((v.name, str(val)))
    jS = gysin_between_manifolds(nh.inclusion, nh.sigma_prime)
    report.add(CheckResult("Σ annihilates the null-homotopic model", not ann_bad,
                           len(nh.total.basis), ann_bad, detail=f"i_!Σ' = {jS}"))
    vals = []
    for c in (0, 1):
        s = build_sun_scenario(n, "subgroup", c, window, field)
        vals.append((c, module_action_subgroup(s, s.Sigma, s.iota_S)))
    report.add(CheckResult("Σ·(ι_*𝒮) ≠ 0 in the subgroup model", all(v for _, v in vals), 2,
                           [(f"c = {c}", "Σ·(ι_*𝒮) = 0") for c, v in vals if not v],
                           detail=f"Σ·(ι_*𝒮) = {vals[0][1]}"))
    if report.passed:
        report.lines.append("conclusion: the module structures are not isomorphic, since a module "
                            "isomorphism preserves the annihilator of Σ")
    return report
