"""Graded vector spaces with exact coefficients and the Koszul sign rule.

Everything here is immutable once built. A :class:`GradedSpace` owns an ordered
basis of :class:`BasisSymbol`; a :class:`GradedElement` is a sparse map from
those symbols to nonzero scalars. Tensor spaces use symbols with ``parts``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .scalars import QQ, Field


class GradedError(Exception):
    """Base class for errors raised by the graded-algebra layer."""


class NotHomogeneousError(GradedError):
    pass


class TruncationError(GradedError):
    """A result would land above the degree window that was computed reliably."""

    def __init__(self, degree: int, guard: int, what: str = "product"):
        super().__init__(f"{what} lands in degree {degree}, above the reliable window {guard}")
        self.degree = degree
        self.guard = guard


class FieldMismatchError(GradedError):
    pass


@dataclass(frozen=True)
class BasisSymbol:
    name: str
    degree: int
    parts: tuple = dc_field(default=(), compare=True)

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ValueError(f"basis symbol {self.name!r} needs a non-negative integer degree")

    @property
    def sort_key(self):
        return (self.degree, self.name)

    def __str__(self):
        return self.name


TENSOR_SEP = "⊗"


def tensor_symbol(*parts: BasisSymbol) -> BasisSymbol:
    flat = []
    for p in parts:
        flat.extend(p.parts if p.parts else (p,))
    return BasisSymbol(TENSOR_SEP.join(p.name for p in flat), sum(p.degree for p in flat), tuple(flat))


def koszul_sign(degrees: Iterable[int], order: Iterable[int]) -> int:
    """Sign of permuting homogeneous factors of the given degrees into ``order``.

    ``order[i]`` is the index of the factor that ends up in slot ``i``.
    """
    degrees = list(degrees)
    order = list(order)
    parity = 0
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                parity += degrees[order[i]] * degrees[order[j]]
    return -1 if parity % 2 else 1


class GradedSpace:
    """A finite-type graded vector space given by an ordered basis."""

    def __init__(self, basis: Iterable[BasisSymbol], truncation: int | None = None,
                 field: Field = QQ, name: str = ""):
        self.basis = tuple(basis)
        self.truncation = truncation
        self.field = field
        self.name = name
        self._by_name = {}
        for sym in self.basis:
            if sym.name in self._by_name:
                raise ValueError(f"duplicate basis name {sym.name!r} in space {name!r}")
            if truncation is not None and sym.degree > truncation:
                raise ValueError(f"{sym.name!r} has degree {sym.degree} above truncation {truncation}")
            self._by_name[sym.name] = sym
        self._members = frozenset(self.basis)
        self._by_parts = {sym.parts: sym for sym in self.basis if sym.parts}

    def __repr__(self):
        return f"GradedSpace({self.name or 'anon'}, dim={len(self.basis)}, trunc={self.truncation})"

    def __contains__(self, sym):
        return sym in self._members

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def symbol(self, name: str) -> BasisSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"no basis element {name!r} in {self.name or 'space'}") from None

    def from_parts(self, parts) -> BasisSymbol | None:
        return self._by_parts.get(tuple(parts))

    def in_degree(self, d: int) -> list[BasisSymbol]:
        return [s for s in self.basis if s.degree == d]

    def sorted_basis(self) -> list[BasisSymbol]:
        return sorted(self.basis, key=lambda s: s.sort_key)

    @property
    def top_degree(self) -> int:
        return max((s.degree for s in self.basis), default=-1)

    def dims(self, upto: int | None = None) -> list[int]:
        """``dims()[d]`` is the dimension in degree ``d``."""
        if upto is None:
            upto = self.top_degree
        out = [0] * (upto + 1)
        for s in self.basis:
            if s.degree <= upto:
                out[s.degree] += 1
        return out

    def zero(self) -> GradedElement:
        return GradedElement(self, {})

    def element(self, spec=None, coeff=1) -> GradedElement:
        """Build an element from a symbol, a name, or a ``{name_or_symbol: coeff}`` map."""
        if spec is None:
            return self.zero()
        if isinstance(spec, (str, BasisSymbol)):
            spec = {spec: coeff}
        terms = {}
        for key, c in spec.items():
            sym = self.symbol(key) if isinstance(key, str) else key
            terms[sym] = terms.get(sym, 0) + self.field(c)
        return GradedElement(self, terms)

    def basis_elements(self) -> list[GradedElement]:
        return [GradedElement(self, {s: self.field.one}) for s in self.basis]


class GradedElement:
    """A finite formal sum of basis symbols with nonzero exact coefficients."""

    __slots__ = ("space", "_terms", "_hash")

    def __init__(self, space: GradedSpace, terms: Mapping[BasisSymbol, object]):
        field = space.field
        clean = {}
        for sym, c in terms.items():
            if sym not in space:
                raise KeyError(f"{sym.name!r} is not a basis element of {space.name or 'space'}")
            c = field(c)
            if c != 0:
                clean[sym] = c
        self.space = space
        self._terms = MappingProxyType(clean)
        self._hash = None

    @property
    def terms(self) -> Mapping[BasisSymbol, object]:
        return self._terms

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_homogeneous(self) -> bool:
        return len({s.degree for s in self._terms}) <= 1

    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        degs = {s.degree for s in self._terms}
        if len(degs) != 1:
            if not degs:
                raise NotHomogeneousError("the zero element has no degree")
            raise NotHomogeneousError(f"element spans degrees {sorted(degs)}")
        return degs.pop()

    def homogeneous_parts(self) -> dict[int, GradedElement]:
        parts: dict[int, dict] = {}
        for s, c in self._terms.items():
            parts.setdefault(s.degree, {})[s] = c
        return {d: GradedElement(self.space, t) for d, t in sorted(parts.items())}

    def coefficient(self, key):
        sym = self.space.symbol(key) if isinstance(key, str) else key
        return self._terms.get(sym, self.space.field.zero)

    def _check_space(self, other):
        if other.space.field != self.space.field:
            raise FieldMismatchError(f"{self.space.field!r} vs {other.space.field!r}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check_space(other)
        terms = dict(self._terms)
        for s, c in other._terms.items():
            terms[s] = terms.get(s, 0) + c
        return GradedElement(self.space, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.space, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, GradedElement):
            return NotImplemented
        scalar = self.space.field(scalar)
        return GradedElement(self.space, {s: c * scalar for s, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, GradedElement):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key)

    def __str__(self):
        if not self._terms:
            return "0"
        fmt = self.space.field.format
        out = []
        for s, c in self.sorted_terms():
            if c == 1:
                out.append(s.name)
            elif c == -1:
                out.append(f"-{s.name}")
            else:
                out.append(f"{fmt(c)}*{s.name}")
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self):
        return f"GradedElement({self})"

    def to_dict(self) -> dict[str, str]:
        fmt = self.space.field.format
        return {s.name: fmt(c) for s, c in self.sorted_terms()}

    @classmethod
    def from_dict(cls, space: GradedSpace, data: Mapping[str, str]) -> GradedElement:
        return cls(space, {space.symbol(k): space.field.parse(v) for k, v in data.items()})


def koszul_swap(u: GradedElement, v: GradedElement):
    """Swap the factors of ``u ⊗ v``: returns ``(sign, v, u)`` with sign ``(-1)^{|u||v|}``."""
    du, dv = u.degree(), v.degree()
    return (-1 if (du * dv) % 2 else 1), v, u


def _min_trunc(truncs):
    known = [t for t in truncs if t is not None]
    return min(known) if known else None


def tensor_space(*spaces: GradedSpace, truncation: int | None = None, name: str = "") -> GradedSpace:
    """Tensor product with product basis in declaration order.

    The truncation is the smallest of the factors' truncations (and the optional
    explicit one), applied to total degree.
    """
    fields = {s.field for s in spaces}
    if len(fields) != 1:
        raise FieldMismatchError(f"cannot tensor spaces over {sorted(map(repr, fields))}")
    trunc = _min_trunc([s.truncation for s in spaces] + [truncation])
    basis = []
    for combo in itertools.product(*(s.basis for s in spaces)):
        if trunc is not None and sum(p.degree for p in combo) > trunc:
            continue
        basis.append(tensor_symbol(*combo))
    return GradedSpace(basis, truncation=trunc, field=spaces[0].field,
                       name=name or TENSOR_SEP.join(s.name or "?" for s in spaces))


def tensor(space: GradedSpace, *elements: GradedElement) -> GradedElement:
    """The element ``e1 ⊗ e2 ⊗ ...`` of a tensor space built by :func:`tensor_space`."""
    terms: dict = {}
    for combo in itertools.product(*(e.items() for e in elements)):
        parts = []
        coeff = space.field.one
        for sym, c in combo:
            parts.extend(sym.parts if sym.parts else (sym,))
            coeff = coeff * c
        sym = space.from_parts(parts)
        if sym is None:
            deg = sum(p.degree for p in parts)
            if space.truncation is not None and deg > space.truncation:
                raise TruncationError(deg, space.truncation, "tensor")
            raise KeyError(f"{TENSOR_SEP.join(p.name for p in parts)} not in {space.name}")
        terms[sym] = terms.get(sym, 0) + coeff
    return GradedElement(space, terms)


def poincare_product(*dims_lists: list[int], upto: int) -> list[int]:
    """Coefficients of the product of Poincaré polynomials, truncated at ``upto``."""
    out = [1] + [0] * upto
    for dims in dims_lists:
        new = [0] * (upto + 1)
        for i, a in enumerate(out):
            if not a:
                continue
            for j, b in enumerate(dims):
                if i + j > upto:
                    break
                new[i + j] += a * b
        out = new
    return out


class BilinearTable:
    """Sparse structure constants of a bilinear map ``left × right → target``.

    ``entries`` maps pairs of basis symbols to elements of ``target`` (or to
    scalars when ``target`` is None, for pairings). Missing pairs are zero.
    Every entry must sit in degree ``|u| + |v| + shift``. Inputs whose output
    degree exceeds ``max_reliable_degree`` raise :class:`TruncationError`.
    """

    def __init__(self, left: GradedSpace, right: GradedSpace, target: GradedSpace | None,
                 entries: Mapping, shift: int = 0, max_reliable_degree: int | None = None,
                 name: str = ""):
        self.left = left
        self.right = right
        self.target = target
        self.shift = shift
        self.name = name
        if max_reliable_degree is None and target is not None:
            max_reliable_degree = target.truncation
        self.max_reliable_degree = max_reliable_degree
        field = left.field
        clean = {}
        for (u, v), val in entries.items():
            if u not in left or v not in right:
                raise KeyError(f"table {name!r}: ({u.name}, {v.name}) outside the declared domain")
            want = u.degree + v.degree + shift
            if target is None:
                val = field(val)
                if val != 0 and want != 0:
                    raise ValueError(f"pairing {name!r}: nonzero value on ({u.name}, {v.name}) "
                                     f"in degree {want}")
                if val != 0:
                    clean[(u, v)] = val
            else:
                if not val:
                    continue
                if val.degree() != want:
                    raise ValueError(f"table {name!r}: ({u.name}, {v.name}) has degree "
                                     f"{val.degree()}, expected {want}")
                clean[(u, v)] = val
        self.entries = MappingProxyType(clean)

    @classmethod
    def from_rule(cls, left, right, target, rule: Callable, shift: int = 0,
                  max_reliable_degree: int | None = None, name: str = "") -> BilinearTable:
        """Materialize ``rule(u_sym, v_sym)`` over all basis pairs inside the window."""
        if max_reliable_degree is None and target is not None:
            max_reliable_degree = target.truncation
        entries = {}
        for u in left.basis:
            for v in right.basis:
                deg = u.degree + v.degree + shift
                if deg < 0 or (max_reliable_degree is not None and deg > max_reliable_degree):
                    continue
                val = rule(u, v)
                if (target is None and val != 0) or (target is not None and val):
                    entries[(u, v)] = val
        return cls(left, right, target, entries, shift, max_reliable_degree, name)

    def on_basis(self, u: BasisSymbol, v: BasisSymbol):
        deg = u.degree + v.degree + self.shift
        if self.max_reliable_degree is not None and deg > self.max_reliable_degree:
            raise TruncationError(deg, self.max_reliable_degree, self.name or "product")
        val = self.entries.get((u, v))
        if val is None:
            return self.left.field.zero if self.target is None else self.target.zero()
        return val

    def __call__(self, u: GradedElement, v: GradedElement):
        return apply_bilinear(self, u, v)

    def with_entry(self, u: BasisSymbol, v: BasisSymbol, value) -> BilinearTable:
        """A copy with one structure constant replaced (used for mutation tests)."""
        entries = dict(self.entries)
        entries[(u, v)] = value
        return BilinearTable(self.left, self.right, self.target, entries, self.shift,
                             self.max_reliable_degree, self.name)

    def rows(self):
        """Nonzero entries sorted by (degree, name) of both arguments."""
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0].sort_key, kv[0][1].sort_key))


def apply_bilinear(table: BilinearTable, u: GradedElement, v: GradedElement):
    """Bilinear extension of ``table`` to arbitrary elements."""
    field = table.left.field
    if table.target is None:
        total = field.zero
        for su, cu in u.items():
            for sv, cv in v.items():
                total = total + cu * cv * table.on_basis(su, sv)
        return total
    acc: dict = {}
    for su, cu in u.items():
        for sv, cv in v.items():
            val = table.on_basis(su, sv)
            if not val:
                continue
            c = cu * cv
            for s, cs in val.items():
                acc[s] = acc.get(s, 0) + c * cs
    return GradedElement(table.target, acc)


class RuleTable(BilinearTable):
    """A :class:`BilinearTable` whose entries are computed on demand by ``rule``.

    Used when the domain is too large to materialize; entries are cached and
    degree-checked the first time they are requested.
    """

    def __init__(self, left: GradedSpace, right: GradedSpace, target: GradedSpace | None,
                 rule: Callable, shift: int = 0, max_reliable_degree: int | None = None,
                 name: str = ""):
        super().__init__(left, right, target, {}, shift, max_reliable_degree, name)
        self.rule = rule
        self._cache: dict = {}

    def on_basis(self, u: BasisSymbol, v: BasisSymbol):
        deg = u.degree + v.degree + self.shift
        if self.max_reliable_degree is not None and deg > self.max_reliable_degree:
            raise TruncationError(deg, self.max_reliable_degree, self.name or "product")
        key = (u, v)
        if key not in self._cache:
            if deg < 0:
                val = self.left.field.zero if self.target is None else self.target.zero()
            else:
                val = self.rule(u, v)
                if self.target is not None and val and val.degree() != deg:
                    raise ValueError(f"table {self.name!r}: ({u.name}, {v.name}) has degree "
                                     f"{val.degree()}, expected {deg}")
            self._cache[key] = val
        return self._cache[key]

    def materialize(self) -> BilinearTable:
        return BilinearTable.from_rule(self.left, self.right, self.target, self.on_basis,
                                       self.shift, self.max_reliable_degree, self.name)

    def rows(self):
        return self.materialize().rows()

    def with_entry(self, u, v, value):
        return self.materialize().with_entry(u, v, value)
