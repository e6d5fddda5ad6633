"""Finite setoids, extensional functions and proof-irrelevant setoid families.

A setoid is a carrier together with an explicit equivalence relation.  Here the
carrier is a finite tuple of hashable identifiers (or ``None`` for the single
built-in infinite setoid of integers) and the relation is a decidable
predicate.  Proof terms are never stored: relatedness is a boolean and the
transport maps of a family are keyed on the ordered pair of base elements, which
is all the information a posetal groupoid carries.

Every law is checked exhaustively by a ``validate_*`` function returning a list
of :class:`Violation` records; an empty list means valid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from .errors import ConstructionError, EnumerationLimitError, SetoidError

CARRIER_LIMIT = 64
MAP_LIMIT = 10**6
SAMPLE_WINDOW = range(-8, 9)


@dataclass(frozen=True)
class Violation:
    law: str
    items: tuple = ()
    detail: str = ""

    def to_json(self) -> dict:
        out = {"law": self.law, "items": [_jsonable(x) for x in self.items]}
        if self.detail:
            out["detail"] = self.detail
        return out

    def __str__(self) -> str:
        return f"{self.law}{self.items}" + (f": {self.detail}" if self.detail else "")


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if hasattr(x, "to_json"):
        return x.to_json()
    return repr(x)


def _check_distinct(ids) -> tuple:
    ids = tuple(ids)
    if len(set(ids)) != len(ids):
        seen, dups = set(), []
        for x in ids:
            if x in seen:
                dups.append(x)
            seen.add(x)
        raise ConstructionError(f"duplicate identifiers: {dups}")
    return ids


class Setoid:
    """A carrier with a decidable equivalence relation.

    ``kind`` is ``"table"`` when the relation is an explicit set of pairs,
    ``"computed"`` when it is a predicate over a finite carrier and
    ``"builtin"`` for the infinite integer setoid.
    """

    __slots__ = ("carrier", "_eq", "pairs", "kind", "label", "_members", "_pos", "_member")

    def __init__(self, carrier, eq: Callable[[Any, Any], bool], *, kind="computed",
                 pairs=None, label=None, member: Callable[[Any], bool] | None = None):
        self.carrier = None if carrier is None else _check_distinct(carrier)
        self._eq = eq
        self.pairs = pairs
        self.kind = kind
        self.label = label
        self._members = None if carrier is None else frozenset(self.carrier)
        self._pos = None
        self._member = member

    @classmethod
    def from_pairs(cls, carrier, pairs: Iterable[tuple], label=None) -> "Setoid":
        """Table-backed setoid.  The pairs are taken literally (not closed)."""
        carrier = _check_distinct(carrier)
        rel = frozenset((x, y) for x, y in pairs)
        members = set(carrier)
        stray = sorted({repr(p) for p in rel if p[0] not in members or p[1] not in members})
        if stray:
            raise ConstructionError(f"relation mentions elements outside the carrier: {stray}")
        return cls(carrier, lambda x, y: (x, y) in rel, kind="table", pairs=rel, label=label)

    def eq(self, x, y) -> bool:
        return bool(self._eq(x, y))

    __call__ = eq

    @property
    def finite(self) -> bool:
        return self.carrier is not None

    def __len__(self) -> int:
        if self.carrier is None:
            raise TypeError("infinite setoid has no length")
        return len(self.carrier)

    def __iter__(self):
        if self.carrier is None:
            raise TypeError("cannot iterate an infinite setoid")
        return iter(self.carrier)

    def __contains__(self, x) -> bool:
        if self._members is None:
            return self._member is None or self._member(x)
        try:
            return x in self._members
        except TypeError:
            return False

    def position(self, x) -> int:
        """Index of ``x`` in the stable carrier order."""
        if self._pos is None:
            self._pos = {x: i for i, x in enumerate(self.carrier)}
        return self._pos[x]

    def window(self):
        """Elements to check laws on: the whole carrier, or a sample for built-ins."""
        return SAMPLE_WINDOW if self.carrier is None else self.carrier

    def relation(self) -> frozenset:
        """The relation as an explicit set of pairs (finite carriers only)."""
        if self.pairs is not None:
            return self.pairs
        return frozenset((x, y) for x in self.carrier for y in self.carrier if self.eq(x, y))

    def same_as(self, other: "Setoid") -> bool:
        if self is other:
            return True
        if not isinstance(other, Setoid) or self.kind != other.kind:
            return False
        if self.kind == "builtin":
            return self.label == other.label
        if self.carrier is None or other.carrier is None or self.carrier != other.carrier:
            return False
        return self.relation() == other.relation()

    def __repr__(self) -> str:
        if self.carrier is None:
            return f"Setoid<{self.label or 'builtin'}>"
        tag = f" {self.label}" if self.label else ""
        return f"Setoid<{self.kind}{tag} {list(self.carrier)!r}>"


def discrete(ids, label=None) -> Setoid:
    ids = _check_distinct(ids)
    return Setoid.from_pairs(ids, ((x, x) for x in ids), label=label)


def codiscrete(ids, label=None) -> Setoid:
    ids = _check_distinct(ids)
    return Setoid.from_pairs(ids, itertools.product(ids, ids), label=label)


INTEGERS = Setoid(None, lambda x, y: x == y, kind="builtin", label="int",
                  member=lambda x: isinstance(x, int) and not isinstance(x, bool))


def check_carrier_limit(what: str, size: int, limit: int | None = None) -> None:
    limit = CARRIER_LIMIT if limit is None else limit
    if size > limit:
        raise EnumerationLimitError(what, size, limit)


def validate_setoid(S: Setoid) -> list[Violation]:
    """Report every instance where reflexivity, symmetry or transitivity fails."""
    xs = list(S.window())
    out = []
    for x in xs:
        if not S.eq(x, x):
            out.append(Violation("reflexivity", (x,)))
    for x, y in itertools.product(xs, xs):
        if S.eq(x, y) and not S.eq(y, x):
            out.append(Violation("symmetry", (x, y)))
    for x, y in itertools.product(xs, xs):
        if not S.eq(x, y):
            continue
        for z in xs:
            if S.eq(y, z) and not S.eq(x, z):
                out.append(Violation("transitivity", (x, y, z)))
    return out


class ExtFun:
    """A total map between setoids, tabulated on the (finite) domain carrier."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: Setoid, cod: Setoid, table: Mapping):
        if not dom.finite:
            raise ConstructionError("extensional functions need a finite domain")
        table = dict(table)
        missing = [x for x in dom.carrier if x not in table]
        if missing:
            raise ConstructionError(f"map not total on domain carrier: missing {missing}")
        outside = [x for x in dom.carrier if table[x] not in cod]
        if outside:
            raise ConstructionError(f"map leaves the codomain at {outside}")
        self.dom = dom
        self.cod = cod
        self.table = {x: table[x] for x in dom.carrier}

    @classmethod
    def from_values(cls, dom: Setoid, cod: Setoid, values) -> "ExtFun":
        """Build from values listed in the domain's carrier order."""
        values = tuple(values)
        if len(values) != len(dom):
            raise ConstructionError(f"expected {len(dom)} values, got {len(values)}")
        return cls(dom, cod, dict(zip(dom.carrier, values)))

    def __call__(self, x):
        return self.table[x]

    def values(self) -> tuple:
        return tuple(self.table[x] for x in self.dom.carrier)

    def __repr__(self) -> str:
        return f"ExtFun({self.table!r})"


def validate_extfun(f: ExtFun) -> list[Violation]:
    out = []
    xs = f.dom.carrier
    for i, j in itertools.combinations(range(len(xs)), 2):
        x, y = xs[i], xs[j]
        if (f.dom.eq(x, y) or f.dom.eq(y, x)) and not f.cod.eq(f(x), f(y)):
            out.append(Violation("extensionality", (x, y)))
    return out


def pointwise_eq(f: ExtFun, g: ExtFun) -> bool:
    """``f`` and ``g`` agree up to the codomain equality on every domain element."""
    return all(f.cod.eq(f(x), g(x)) for x in f.dom.carrier)


def identity(X: Setoid) -> ExtFun:
    return ExtFun(X, X, {x: x for x in X.carrier})


def compose(g: ExtFun, f: ExtFun) -> ExtFun:
    """``g ∘ f``."""
    if not f.cod.same_as(g.dom):
        raise SetoidError("cannot compose: codomain of f is not the domain of g")
    return ExtFun(f.dom, g.cod, {x: g(f(x)) for x in f.dom.carrier})


class FunctionSetoid(Setoid):
    """The setoid of extensional maps ``X ⇒ Y``; elements are value tuples in X's order."""

    __slots__ = ("dom", "cod")

    def __init__(self, X: Setoid, Y: Setoid, maps):
        self.dom = X
        self.cod = Y

        def eq(k, k2):
            return all(Y.eq(a, b) for a, b in zip(k, k2))

        super().__init__(maps, eq, kind="computed", label=f"{X.label}=>{Y.label}")

    def to_extfun(self, k) -> ExtFun:
        return ExtFun.from_values(self.dom, self.cod, k)


def is_extensional_tuple(X: Setoid, Y: Setoid, k) -> bool:
    """Is the tabulated map ``k`` (values in X's carrier order) extensional?"""
    xs = X.carrier
    return all(Y.eq(k[i], k[j]) for i, j in itertools.product(range(len(xs)), repeat=2)
               if i != j and X.eq(xs[i], xs[j]))


def extensional_maps(X: Setoid, Y: Setoid, limit: int | None = None):
    """All extensional total maps X → Y as value tuples, by filtering the full product."""
    limit = MAP_LIMIT if limit is None else limit
    if not Y.finite:
        raise SetoidError("cannot enumerate maps into an infinite setoid")
    size = len(Y) ** len(X)
    if size > limit:
        raise EnumerationLimitError(f"maps {X.label}=>{Y.label}", size, limit)
    return [k for k in itertools.product(Y.carrier, repeat=len(X))
            if is_extensional_tuple(X, Y, k)]


def function_setoid(X: Setoid, Y: Setoid, limit: int | None = None) -> FunctionSetoid:
    return FunctionSetoid(X, Y, extensional_maps(X, Y, limit))


def fiber_setoid(f: ExtFun, a) -> Setoid:
    """Elements of the domain that ``f`` sends to something related to ``a``."""
    if a not in f.cod:
        raise SetoidError(f"{a!r} is not in the codomain carrier")
    members = tuple(b for b in f.dom.carrier if f.cod.eq(f(b), a))
    return Setoid(members, f.dom.eq, kind="computed", label=f"fib({a})")


class SetoidFamily:
    """A fiber setoid per base element with one transport per related ordered pair.

    ``transports`` maps ``(a, a2)`` to a dict from ``fiber(a)`` to ``fiber(a2)``.
    Missing reflexive transports default to the identity.
    """

    def __init__(self, base: Setoid, fibers: Mapping, transports: Mapping | None = None,
                 label=None):
        self.base = base
        self.fibers = {a: fibers[a] for a in base.carrier} if base.finite else dict(fibers)
        missing = [a for a in base.carrier if a not in fibers] if base.finite else []
        if missing:
            raise ConstructionError(f"no fiber for base elements {missing}")
        raw = {tuple(k): dict(v) for k, v in (transports or {}).items()}
        for a in base.carrier:
            if (a, a) not in raw and base.eq(a, a):
                raw[(a, a)] = {x: x for x in self.fibers[a].carrier}
        self.raw_transports = raw
        self.label = label
        self._cache = {}
        # memo tables for tree-level relations; filled idempotently, never observable
        self.memo = {}

    def fiber(self, a) -> Setoid:
        return self.fibers[a]

    def has_transport(self, a, a2) -> bool:
        return (a, a2) in self.raw_transports

    def transport(self, a, a2) -> ExtFun:
        key = (a, a2)
        f = self._cache.get(key)
        if f is None:
            if key not in self.raw_transports:
                raise SetoidError(f"no transport for {a!r} -> {a2!r}")
            f = ExtFun(self.fibers[a], self.fibers[a2], self.raw_transports[key])
            self._cache[key] = f
        return f

    def transport_positions(self, a, a2) -> tuple:
        """Transport from a to a2 as a tuple of target positions, one per source position."""
        key = ("pos", a, a2)
        t = self._cache.get(key)
        if t is None:
            T = self.transport(a, a2)
            F2 = self.fibers[a2]
            t = tuple(F2.position(T(x)) for x in self.fibers[a].carrier)
            self._cache[key] = t
        return t

    def related_branches(self, a, a2) -> tuple:
        """Position pairs (i, j) with transport(a,a2)(b_i) related to b_j in fiber(a2)."""
        key = ("rel", a, a2)
        r = self._cache.get(key)
        if r is None:
            T = self.transport(a, a2)
            F, F2 = self.fibers[a], self.fibers[a2]
            r = tuple((i, j) for i, b in enumerate(F.carrier)
                      for j, b2 in enumerate(F2.carrier) if F2.eq(T(b), b2))
            self._cache[key] = r
        return r

    def __repr__(self) -> str:
        return f"SetoidFamily<{self.label or ''} over {self.base!r}>"


def validate_family(F: SetoidFamily) -> list[Violation]:
    """Exhaustively check base, fibers, transports and the groupoid laws."""
    out = [Violation("base." + v.law, v.items) for v in validate_setoid(F.base)]
    base = F.base.carrier
    broken = set()
    for a in base:
        bad = validate_setoid(F.fiber(a))
        if bad:
            broken.add(a)
        out += [Violation("fiber." + v.law, (a,) + v.items) for v in bad]
    ok = {}
    for a, a2 in itertools.product(base, base):
        if not F.base.eq(a, a2):
            continue
        # transport laws are stated up to fiber equality; skip fibers that are not setoids
        if a in broken or a2 in broken:
            continue
        if not F.has_transport(a, a2):
            out.append(Violation("transport.missing", (a, a2)))
            continue
        try:
            T = F.transport(a, a2)
        except ConstructionError as exc:
            out.append(Violation("transport.total", (a, a2), str(exc)))
            continue
        ext = validate_extfun(T)
        out += [Violation("transport.extensional", (a, a2) + v.items) for v in ext]
        ok[(a, a2)] = T
    for a in base:
        T = ok.get((a, a))
        if T is None:
            continue
        for x in F.fiber(a).carrier:
            if not F.fiber(a).eq(T(x), x):
                out.append(Violation("transport.identity", (a, x)))
    for (a, a2), T in ok.items():
        back = ok.get((a2, a))
        if back is None:
            continue
        for x in F.fiber(a).carrier:
            if not F.fiber(a).eq(back(T(x)), x):
                out.append(Violation("transport.inverse", (a, a2, x)))
    for (a, a2), T in ok.items():
        for a3 in base:
            T2, T3 = ok.get((a2, a3)), ok.get((a, a3))
            if T2 is None or T3 is None:
                continue
            for x in F.fiber(a).carrier:
                if not F.fiber(a3).eq(T2(T(x)), T3(x)):
                    out.append(Violation("transport.composition", (a, a2, a3, x)))
    return out


def function_to_family(f: ExtFun) -> SetoidFamily:
    """Fibers of ``f`` over its codomain; transports are the identity on domain elements."""
    cod = f.cod
    if not cod.finite:
        raise SetoidError("function_to_family needs a finite codomain")
    fibers = {a: fiber_setoid(f, a) for a in cod.carrier}
    transports = {}
    for a, a2 in itertools.product(cod.carrier, cod.carrier):
        if cod.eq(a, a2):
            transports[(a, a2)] = {b: b for b in fibers[a].carrier}
    return SetoidFamily(cod, fibers, transports)


def total_setoid(F: SetoidFamily, limit: int | None = None) -> Setoid:
    """Σ-setoid of a family: pairs (a, b), related when transport(a,a')(b) ≈ b'."""
    carrier = tuple((a, b) for a in F.base.carrier for b in F.fiber(a).carrier)
    check_carrier_limit("total setoid", len(carrier), limit)

    def eq(p, q):
        (a, b), (a2, b2) = p, q
        if not F.base.eq(a, a2) or not F.has_transport(a, a2):
            return False
        return F.fiber(a2).eq(F.transport(a, a2)(b), b2)

    return Setoid(carrier, eq, kind="computed", label="total")


def family_to_function(F: SetoidFamily, limit: int | None = None) -> ExtFun:
    """First projection from the total setoid onto the base."""
    total = total_setoid(F, limit)
    return ExtFun(total, F.base, {p: p[0] for p in total.carrier})


def eq_bijection(X: Setoid, Y: Setoid, m: Mapping) -> bool:
    """Is ``m`` a bijection up to equality: extensional, reflects eq and hits every class?"""
    xs = X.carrier
    for x, x2 in itertools.product(xs, xs):
        if X.eq(x, x2) != Y.eq(m[x], m[x2]):
            return False
    return all(any(Y.eq(m[x], y) for x in xs) for y in Y.carrier)

