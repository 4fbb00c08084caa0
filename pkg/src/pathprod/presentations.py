"""Expand finite ring presentations into a monomial basis and structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .graded import BasisSymbol, BilinearTable, GradedElement, GradedSpace
from .scalars import QQ, Field

DEFAULT_TRUNCATION = 24
KINDS = ("exterior", "polynomial", "explicit")


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class RingPresentation:
    """A graded ring given by generators (exterior or polynomial) or a full table.

    For ``kind == "explicit"`` the ring is ``basis`` with products ``table``:
    ``{(left_name, right_name): {name: coeff}}`` and unit ``unit``.
    ``graded_commutative`` defaults to what the kind implies; for a polynomial
    ring with an odd generator over a field of characteristic other than 2 it
    must be False (a*a = -a*a would force a^2 = 0).
    """

    kind: str
    generators: tuple = ()
    truncation: int | None = DEFAULT_TRUNCATION
    graded_commutative: bool | None = None
    basis: tuple = ()
    table: dict = dc_field(default_factory=dict)
    unit: str = "1"
    name: str = ""


@dataclass(frozen=True)
class Ring:
    """An expanded ring: graded basis, product table and unit."""

    space: GradedSpace
    table: BilinearTable
    unit: GradedElement
    graded_commutative: bool
    generators: tuple = ()
    name: str = ""

    def __iter__(self):
        return iter((self.space, self.table, self.unit))

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def guard(self) -> int | None:
        return self.table.max_reliable_degree

    def mul(self, x: GradedElement, y: GradedElement) -> GradedElement:
        return self.table(x, y)

    def element(self, spec=None, coeff=1) -> GradedElement:
        return self.space.element(spec, coeff)

    def augmentation(self, x: GradedElement):
        return augmentation(x, self)

    def with_table(self, table: BilinearTable) -> Ring:
        return Ring(self.space, table, self.unit, self.graded_commutative, self.generators, self.name)


def _monomial_name(gens, exps) -> str:
    parts = []
    for (g, _), e in zip(gens, exps):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


def _exponent_vectors(degrees, max_exp, limit):
    """All exponent vectors with total degree <= limit (limit None = no bound)."""
    if max_exp is None and limit is None:
        raise PresentationError("polynomial presentation needs a truncation degree")

    def rec(i, remaining):
        if i == len(degrees):
            yield ()
            return
        e = 0
        while True:
            if max_exp is not None and e > max_exp:
                break
            if remaining is not None and e * degrees[i] > remaining:
                break
            rest = None if remaining is None else remaining - e * degrees[i]
            for tail in rec(i + 1, rest):
                yield (e,) + tail
            e += 1
    return list(rec(0, limit))


def _monomial_sign(degs, e1, e2) -> int:
    # move each generator of the right monomial left past the higher-index generators of the left one
    parity = 0
    for i in range(len(degs)):
        if not e1[i] or degs[i] % 2 == 0:
            continue
        for j in range(i):
            if e2[j] and degs[j] % 2:
                parity += e1[i] * e2[j]
    return -1 if parity % 2 else 1


def expand_presentation(p: RingPresentation, field: Field = QQ) -> Ring:
    """Monomial basis, product table and unit of ``p``.

    Explicit tables are checked for associativity and unitality; a failing
    triple is named in the :class:`PresentationError`.
    """
    if p.kind not in KINDS:
        raise PresentationError(f"unknown presentation kind {p.kind!r}")
    if p.truncation is not None and p.truncation < 0:
        raise PresentationError("truncation degree must be >= 0")
    if p.kind == "explicit":
        return _expand_explicit(p, field)

    gens = [(str(g), int(d)) for g, d in p.generators]
    degs = [d for _, d in gens]
    if any(d <= 0 for d in degs):
        raise PresentationError("generators must have positive degree")
    if len({g for g, _ in gens}) != len(gens):
        raise PresentationError("duplicate generator names")
    odd = any(d % 2 for d in degs)
    if p.kind == "exterior":
        commutative = True if p.graded_commutative is None else p.graded_commutative
        vectors = _exponent_vectors(degs, 1, p.truncation)
    else:
        default = not odd or field.characteristic == 2
        commutative = default if p.graded_commutative is None else p.graded_commutative
        if commutative and odd and field.characteristic != 2:
            raise PresentationError(
                f"{p.name or 'polynomial ring'}: an odd-degree polynomial generator cannot be "
                "graded commutative outside characteristic 2")
        vectors = _exponent_vectors(degs, None, p.truncation)

    symbols = {}
    for e in vectors:
        symbols[e] = BasisSymbol(_monomial_name(gens, e), sum(a * d for a, d in zip(e, degs)))
    order = sorted(vectors, key=lambda e: (symbols[e].degree, tuple(-x for x in e)))
    space = GradedSpace([symbols[e] for e in order], truncation=p.truncation, field=field,
                        name=p.name)

    entries = {}
    for e1 in vectors:
        for e2 in vectors:
            e = tuple(a + b for a, b in zip(e1, e2))
            if p.kind == "exterior" and any(x > 1 for x in e):
                continue
            if e not in symbols:
                continue  # above the truncation; apply_bilinear raises there
            sign = _monomial_sign(degs, e1, e2)
            entries[(symbols[e1], symbols[e2])] = space.element(symbols[e], sign)
    table = BilinearTable(space, space, space, entries, 0, p.truncation, name=p.name or "product")
    zero = tuple(0 for _ in gens)
    gen_syms = tuple(symbols[tuple(1 if i == j else 0 for i in range(len(gens)))]
                     for j in range(len(gens))
                     if tuple(1 if i == j else 0 for i in range(len(gens))) in symbols)
    return Ring(space, table, space.element(symbols[zero]), commutative, gen_syms, p.name)


def _expand_explicit(p: RingPresentation, field: Field) -> Ring:
    space = GradedSpace([BasisSymbol(str(n), int(d)) for n, d in p.basis],
                        truncation=p.truncation, field=field, name=p.name)
    entries = {}
    for (a, b), val in p.table.items():
        u, v = space.symbol(a), space.symbol(b)
        entries[(u, v)] = space.element({k: (field.parse(c) if isinstance(c, str) else c)
                                         for k, c in val.items()})
    table = BilinearTable(space, space, space, entries, 0, p.truncation, name=p.name or "product")
    ring = Ring(space, table, space.element(p.unit), bool(p.graded_commutative), (), p.name)
    bad = associativity_violations(ring, limit=1)
    if bad:
        x, y, z = bad[0]
        raise PresentationError(f"{p.name or 'explicit table'} is not associative on "
                                f"({x.name}, {y.name}, {z.name})")
    bad = unit_violations(ring)
    if bad:
        raise PresentationError(f"{p.name or 'explicit table'}: {p.unit!r} is not a unit on {bad[0].name}")
    return ring


def associativity_violations(ring: Ring, limit: int | None = None):
    """Basis triples ``(x, y, z)`` inside the window with ``(xy)z != x(yz)``."""
    from .graded import TruncationError

    out = []
    elems = {s: ring.space.element(s) for s in ring.space.basis}
    for x, y, z in itertools.product(ring.space.basis, repeat=3):
        try:
            left = ring.mul(ring.mul(elems[x], elems[y]), elems[z])
            right = ring.mul(elems[x], ring.mul(elems[y], elems[z]))
        except TruncationError:
            continue
        if left != right:
            out.append((x, y, z))
            if limit is not None and len(out) >= limit:
                break
    return out


def unit_violations(ring: Ring):
    out = []
    for s in ring.space.basis:
        x = ring.space.element(s)
        if ring.mul(ring.unit, x) != x or ring.mul(x, ring.unit) != x:
            out.append(s)
    return out


def commutativity_violations(ring: Ring):
    """Basis pairs with ``xy != (-1)^{|x||y|} yx`` inside the window."""
    from .graded import TruncationError

    out = []
    for x, y in itertools.product(ring.space.basis, repeat=2):
        ex, ey = ring.space.element(x), ring.space.element(y)
        try:
            lhs = ring.mul(ex, ey)
            rhs = ring.mul(ey, ex) * (-1 if (x.degree * y.degree) % 2 else 1)
        except TruncationError:
            continue
        if lhs != rhs:
            out.append((x, y))
    return out


def augmentation(x: GradedElement, ring: Ring | None = None):
    """Coefficient of the unit monomial.

    Without ``ring`` the unit is taken to be the unique degree-0 basis element.
    """
    if ring is not None:
        (unit_sym,) = ring.unit.terms
    else:
        deg0 = x.space.in_degree(0)
        if len(deg0) != 1:
            raise ValueError("augmentation needs a ring whose degree-0 part is one-dimensional")
        unit_sym = deg0[0]
    return x.coefficient(unit_sym)


def rename_basis(ring: Ring, mapping: dict) -> Ring:
    """The same ring with basis elements renamed by ``{old_name: new_name}``."""
    old = ring.space
    new_sym = {s: BasisSymbol(mapping.get(s.name, s.name), s.degree) for s in old.basis}
    space = GradedSpace([new_sym[s] for s in old.basis], truncation=old.truncation,
                        field=old.field, name=old.name)

    def move(x):
        return GradedElement(space, {new_sym[s]: c for s, c in x.items()})

    t = ring.table
    entries = {(new_sym[u], new_sym[v]): move(val) for (u, v), val in t.entries.items()}
    table = BilinearTable(space, space, space, entries, t.shift, t.max_reliable_degree, t.name)
    return Ring(space, table, move(ring.unit), ring.graded_commutative,
                tuple(new_sym[g] for g in ring.generators), ring.name)
