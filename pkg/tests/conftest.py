from __future__ import annotations

import json
from pathlib import Path

import pytest

from pathprod.catalog import load_catalog
from pathprod.loops import even_sphere_free_loop, free_loop_lie_group
from pathprod.models import sphere, sphere_loops, su2
from pathprod.stringtop import PathSpaceModel

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def golden():
    return json.loads((FIXTURES / "intersection_golden.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def s4_s3():
    """``S3 ⊂ S4`` with the even-sphere free loop model."""
    M, N = sphere(4), sphere(3)
    L = sphere_loops(4)
    return PathSpaceModel(N, M, L, even_sphere_free_loop(M, L))


@pytest.fixture(scope="session")
def s3_s1():
    """``S1 ⊂ S3 = SU2`` with the Lie group free loop model."""
    G, N = su2(), sphere(1)
    L = sphere_loops(3)
    return PathSpaceModel(N, G, L, free_loop_lie_group(G, L))
