"""JSON catalog of manifolds, loop spaces, free loop models, maps, path models and scenarios.

Schema (all sections optional; scalars are strings such as ``"1"`` or ``"-2/3"``)::

    {
      "manifolds":   {key: {"name", "dim", "cohomology": presentation,
                            "fundamental"?, "point"?, "homology_names"?}},
      "loop_spaces": {key: {"manifold"?, "presentation": presentation,
                            "odd_degrees_vanish"?: bool}},
      "free_loops":  {key: {"kind": "lie_group" | "declared", "manifold", "loops",
                            "family"?: "even_sphere",
                            "basis"?: [[hom, loop], ...],
                            "gysin"?: [[hom, loop, {loop: coeff}], ...]}},
      "maps":        {key: {"source", "target", "pullback": {gen: {gen: coeff}}}},
      "models":      {key: {"N", "M", "loops", "free_loop"?,
                            "generator_sets"?: {label: {"loops": [...], "expect": bool}}}},
      "scenarios":   {key: {"n", "kind"}}
    }

    presentation = {"kind": "exterior" | "polynomial" | "explicit",
                    "generators"?: [[name, degree], ...], "graded_commutative"?: bool,
                    "basis"?: [[name, degree], ...], "unit"?: name,
                    "table"?: [[left, right, {name: coeff}], ...]}

Polynomial presentations are truncated at the run's ``--max-degree``.
"""

from __future__ import annotations

import json
import os
import dataclasses
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .graded import GradedSpace
from .liegroup import KINDS as SCENARIO_KINDS, SubgroupScenario, build_sun_scenario
from .loops import (FreeLoopModel, LoopModelError, LoopSpaceModel, build_loop_space,
                    even_sphere_free_loop, free_loop_declared, free_loop_lie_group)
from .manifold import ManifoldError, ManifoldMap, ManifoldModel, build_manifold
from .presentations import DEFAULT_TRUNCATION, PresentationError, RingPresentation
from .scalars import QQ, Field
from .stringtop import PathSpaceModel

ENV_VAR = "PATHPROD_CATALOG"
SECTIONS = ("manifolds", "loop_spaces", "free_loops", "maps", "models", "scenarios")


class CatalogError(ValueError):
    pass


@dataclass
class Catalog:
    window: int = DEFAULT_TRUNCATION
    field: Field = QQ
    manifolds: dict = dataclasses.field(default_factory=dict)
    loop_spaces: dict = dataclasses.field(default_factory=dict)
    free_loops: dict = dataclasses.field(default_factory=dict)
    maps: dict = dataclasses.field(default_factory=dict)
    models: dict = dataclasses.field(default_factory=dict)
    generator_sets: dict = dataclasses.field(default_factory=dict)
    scenarios: dict = dataclasses.field(default_factory=dict)

    def __len__(self):
        return sum(len(getattr(self, s)) for s in SECTIONS)

    def lookup(self, section: str, key: str):
        table = getattr(self, section)
        if key not in table:
            raise CatalogError(f"no {section[:-1].replace('_', ' ')} named {key!r}; "
                               f"known: {', '.join(sorted(table)) or 'none'}")
        return table[key]

    def space(self, key: str) -> GradedSpace:
        """Resolve ``key`` in any section to the graded space it models."""
        hits = [s for s in SECTIONS if key in getattr(self, s)]
        if not hits:
            raise CatalogError(f"unknown catalog entry {key!r}")
        obj = getattr(self, hits[0])[key]
        if isinstance(obj, ManifoldModel):
            return obj.homology
        if isinstance(obj, SubgroupScenario):
            return obj.total
        if isinstance(obj, (LoopSpaceModel, FreeLoopModel, PathSpaceModel)):
            return obj.space
        raise CatalogError(f"entry {key!r} has no graded space")


def default_catalog_path() -> Path | None:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return None


def _builtin_text() -> str:
    return resources.files("pathprod").joinpath("data/catalog.json").read_text(encoding="utf-8")


def _presentation(spec: dict, window: int, name: str) -> RingPresentation:
    kind = spec.get("kind")
    table = {}
    for row in spec.get("table", []):
        left, right, val = row
        table[(left, right)] = val
    return RingPresentation(
        kind=kind,
        generators=tuple((g, int(d)) for g, d in spec.get("generators", [])),
        truncation=window,
        graded_commutative=spec.get("graded_commutative"),
        basis=tuple((b, int(d)) for b, d in spec.get("basis", [])),
        table=table,
        unit=spec.get("unit", "1"),
        name=name,
    )


def _ref(data: dict, section: str, key, owner: str):
    if key not in data:
        raise CatalogError(f"{owner}: unresolved reference {key!r} in {section}")
    return data[key]


def load_catalog(path: str | os.PathLike | None = None, window: int = DEFAULT_TRUNCATION,
                 field: Field = QQ, text: str | None = None) -> Catalog:
    """Parse and validate a catalog. ``path=None`` loads the built-in one."""
    if text is None:
        if path is None:
            text = _builtin_text()
        else:
            try:
                text = Path(path).read_text(encoding="utf-8")
            except OSError as exc:
                raise CatalogError(f"cannot read catalog {path}: {exc}") from None
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise CatalogError("catalog must be a JSON object")
    unknown = set(raw) - set(SECTIONS) - {"description"}
    if unknown:
        raise CatalogError(f"unknown catalog sections: {sorted(unknown)}")
    cat = Catalog(window=window, field=field)
    try:
        _load_sections(cat, raw)
    except CatalogError:
        raise
    except (ManifoldError, LoopModelError, PresentationError, KeyError, TypeError,
            ValueError) as exc:
        raise CatalogError(str(exc).strip('"')) from None
    return cat


def _load_sections(cat: Catalog, raw: dict) -> None:
    W, F = cat.window, cat.field
    for key, spec in raw.get("manifolds", {}).items():
        name = spec.get("name", key)
        pres = _presentation(spec["cohomology"], W, f"H*({name})")
        cat.manifolds[key] = build_manifold(name, int(spec["dim"]), pres, F,
                                            fundamental=spec.get("fundamental"),
                                            point=spec.get("point", "[pt]"),
                                            homology_names=spec.get("homology_names"))
    for key, spec in raw.get("loop_spaces", {}).items():
        M = _ref(cat.manifolds, "manifolds", spec["manifold"], key) if "manifold" in spec else None
        pres = _presentation(spec["presentation"], W, spec.get("name", key))
        cat.loop_spaces[key] = build_loop_space(spec.get("name", key), pres, F, M,
                                                assert_even=bool(spec.get("odd_degrees_vanish")))
    for key, spec in raw.get("free_loops", {}).items():
        M = _ref(cat.manifolds, "manifolds", spec["manifold"], key)
        L = _ref(cat.loop_spaces, "loop_spaces", spec["loops"], key)
        kind = spec.get("kind")
        if kind == "lie_group":
            cat.free_loops[key] = free_loop_lie_group(M, L, key)
        elif kind == "declared" and spec.get("family") == "even_sphere":
            cat.free_loops[key] = even_sphere_free_loop(M, L, key)
        elif kind == "declared":
            images = {(a, u): img for a, u, img in spec.get("gysin", [])}
            cat.free_loops[key] = free_loop_declared(M, L, [tuple(p) for p in spec["basis"]],
                                                     images, key)
        else:
            raise CatalogError(f"{key}: unknown free loop kind {kind!r}")
    for key, spec in raw.get("maps", {}).items():
        src = _ref(cat.manifolds, "manifolds", spec["source"], key)
        tgt = _ref(cat.manifolds, "manifolds", spec["target"], key)
        try:
            cat.maps[key] = ManifoldMap.from_generators(src, tgt, spec.get("pullback", {}), key)
        except ManifoldError as exc:
            raise CatalogError(f"map {key}: {exc}") from None
    for key, spec in raw.get("models", {}).items():
        N = _ref(cat.manifolds, "manifolds", spec["N"], key)
        M = _ref(cat.manifolds, "manifolds", spec["M"], key)
        L = _ref(cat.loop_spaces, "loop_spaces", spec["loops"], key)
        Fl = _ref(cat.free_loops, "free_loops", spec["free_loop"], key) if "free_loop" in spec else None
        if Fl is not None and (Fl.manifold is not M or Fl.loops is not L):
            raise CatalogError(f"model {key}: free loop model does not match M and loops")
        cat.models[key] = PathSpaceModel(N, M, L, Fl, name=key)
        sets = {}
        for label, gs in spec.get("generator_sets", {}).items():
            for u in gs["loops"]:
                L.space.symbol(u)
            sets[label] = (list(gs["loops"]), bool(gs.get("expect", True)))
        cat.generator_sets[key] = sets
    for key, spec in raw.get("scenarios", {}).items():
        kind = spec.get("kind", "subgroup")
        if kind not in SCENARIO_KINDS:
            raise CatalogError(f"scenario {key}: unknown kind {kind!r}")
        cat.scenarios[key] = build_sun_scenario(int(spec["n"]), kind, 0, W, F)
