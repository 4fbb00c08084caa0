"""Standard manifold and loop space models: spheres, SU(n) and their loop spaces."""

from __future__ import annotations

from .loops import LoopSpaceModel, build_loop_space, standard_loop_presentation
from .manifold import ManifoldModel, build_manifold
from .presentations import DEFAULT_TRUNCATION, RingPresentation
from .scalars import QQ, Field


def point(field: Field = QQ) -> ManifoldModel:
    return build_manifold("pt", 0, RingPresentation("exterior", (), name="H*(pt)"), field)


def sphere(n: int, field: Field = QQ, point_name: str = "[pt]") -> ManifoldModel:
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    pres = RingPresentation("exterior", ((f"u{n}", n),), name=f"H*(S{n})")
    return build_manifold(f"S{n}", n, pres, field, point=point_name)


def su2(field: Field = QQ) -> ManifoldModel:
    """SU(2) as the 3-sphere, with fundamental class ``[S3]`` and point class ``[e]``."""
    pres = RingPresentation("exterior", (("y3", 3),), name="H*(SU2)")
    return build_manifold("SU2", 3, pres, field, fundamental="[S3]", point="[e]")


def sun(n: int, field: Field = QQ) -> ManifoldModel:
    """SU(n): exterior cohomology on ``x3, x5, ..., x{2n-1}``."""
    if n < 2:
        raise ValueError("SU(n) needs n >= 2")
    if n == 2:
        return su2(field)
    gens = tuple((f"x{d}", d) for d in range(3, 2 * n, 2))
    pres = RingPresentation("exterior", gens, name=f"H*(SU{n})")
    return build_manifold(f"SU{n}", n * n - 1, pres, field, point="[e]")


def sphere_loops(n: int, window: int = DEFAULT_TRUNCATION, field: Field = QQ) -> LoopSpaceModel:
    return build_loop_space(f"ΩS{n}", standard_loop_presentation("sphere", n, window), field)


def sun_loops(n: int, window: int = DEFAULT_TRUNCATION, field: Field = QQ) -> LoopSpaceModel:
    pres = standard_loop_presentation("sun", n, window)
    return build_loop_space(f"ΩSU{n}", pres, field, assert_even=True)
