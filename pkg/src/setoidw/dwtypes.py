"""Indexed well-founded trees and the two witness signatures built from them.

A :class:`DWSignature` is given by code rather than tables: the index space
may be infinite (pairs of trees), but at any given index the names and the
arity of each name are finite.  Witnesses for tree equality and for
recursively defined maps are ordinary :class:`DTree` values that can be
validated, folded and serialised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra import (Algebra, compose_ims, fold, from_family, is_coherent,
                      is_ims_map, recursive_step, restrict, transport_cohfamily)
from .errors import (ConstructionError, EnumerationLimitError,
                     InvalidWitnessError, NonExtensionalError, NotRelatedError)
from .setoid import MAP_LIMIT, SetoidFamily, Violation, extensional_maps
from .wtypes import Tree, ims_setoid, is_extensional, per, subtree

RELATED = "related"


@dataclass(frozen=True)
class DWSignature:
    index_eq: Callable[[Any, Any], bool]
    names: Callable[[Any], tuple]
    arity: Callable[[Any, Any], tuple]
    next_index: Callable[[Any, Any, Any], Any]
    is_name: Callable[[Any, Any], bool] | None = None
    label: str = ""

    def has_name(self, i, a) -> bool:
        if self.is_name is not None:
            return self.is_name(i, a)
        return a in self.names(i)


@dataclass(frozen=True)
class DTree:
    index: Any
    name: Any
    children: tuple = field(default=())

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def validate_dtree(sig: DWSignature, i, t: DTree, path=()) -> list[Violation]:
    """Check the index discipline at every node; violations carry the child path."""
    if not isinstance(t, DTree):
        return [Violation("shape", (path,), f"expected a DTree, got {type(t).__name__}")]
    out = []
    if not sig.index_eq(t.index, i):
        out.append(Violation("index", (path,), "node index differs from the expected index"))
    if not sig.has_name(i, t.name):
        out.append(Violation("name", (path,), "name is not available at this index"))
        return out
    ar = sig.arity(i, t.name)
    if len(t.children) != len(ar):
        out.append(Violation("arity", (path,), f"expected {len(ar)} children, got {len(t.children)}"))
    for k, (b, c) in enumerate(zip(ar, t.children)):
        out += validate_dtree(sig, sig.next_index(i, t.name, b), c, path + (k,))
    return out


def _require_valid(sig, i, t, what="witness"):
    bad = validate_dtree(sig, i, t)
    if bad:
        raise InvalidWitnessError(f"invalid {what}: {bad[0]}", bad)


def dfold(sig: DWSignature, step, i, t: DTree):
    """Structural recursion: step(index, name, [results for children])."""
    _require_valid(sig, i, t, "tree")
    return _dfold(step, t)


def _dfold(step, t):
    return step(t.index, t.name, [_dfold(step, c) for c in t.children])


# witnesses of tree equality ---------------------------------------------------

def wper_signature(B: SetoidFamily) -> DWSignature:
    """Indices are raw tree pairs; the single name exists when the root names are related.

    The branches of that name are the fiber pairs (b, b') related through the
    transport, and each leads to the pair of corresponding subtrees.
    """

    def names(i):
        w, w2 = i
        if B.base.eq(w.name, w2.name) and B.has_transport(w.name, w2.name):
            return (RELATED,)
        return ()

    def arity(i, a):
        w, w2 = i
        F, F2 = B.fiber(w.name), B.fiber(w2.name)
        return tuple((F.carrier[p], F2.carrier[q])
                     for p, q in B.related_branches(w.name, w2.name))

    def next_index(i, a, bb):
        w, w2 = i
        return subtree(B, w, bb[0]), subtree(B, w2, bb[1])

    return DWSignature(index_eq=lambda i, j: i == j, names=names, arity=arity,
                       next_index=next_index, label="wper")


def per_witness(B: SetoidFamily, w: Tree, w2: Tree) -> DTree | None:
    """A witness of w ≈ w2, or ``None`` when the trees are not related."""
    memo = {}

    def build(u, v):
        key = (u, v)
        if key in memo:
            return memo[key]
        res = None
        if B.base.eq(u.name, v.name) and B.has_transport(u.name, v.name):
            kids = []
            for p, q in B.related_branches(u.name, v.name):
                c = build(u.children[p], v.children[q])
                if c is None:
                    break
                kids.append(c)
            else:
                res = DTree((u, v), RELATED, tuple(kids))
        memo[key] = res
        return res

    return build(w, w2)


def _branch_lookup(sig, t):
    return dict(zip(sig.arity(t.index, t.name), t.children))


def witness_sym(B: SetoidFamily, t: DTree) -> DTree:
    """Turn a witness of w ≈ w' into one of w' ≈ w."""
    sig = wper_signature(B)
    _require_valid(sig, t.index, t)

    def go(t):
        w, w2 = t.index
        look = _branch_lookup(sig, t)
        i = (w2, w)
        kids = []
        for b2, b in sig.arity(i, RELATED):
            c = look.get((b, b2))
            if c is None:
                raise InvalidWitnessError(
                    f"no branch for {(b, b2)!r}: family transports are not inverse")
            kids.append(go(c))
        return DTree(i, RELATED, tuple(kids))

    return go(t)


def witness_trans(B: SetoidFamily, t1: DTree, t2: DTree) -> DTree:
    """Compose witnesses of w ≈ w' and w' ≈ w'' into one of w ≈ w''."""
    sig = wper_signature(B)
    if t1.index[1] != t2.index[0]:
        raise ConstructionError("middle trees of the two witnesses differ")
    _require_valid(sig, t1.index, t1)
    _require_valid(sig, t2.index, t2)

    def go(t1, t2):
        (w, w1), (_, w2) = t1.index, t2.index
        i = (w, w2)
        if not sig.names(i):
            raise InvalidWitnessError("base equality is not transitive")
        look1, look2 = _branch_lookup(sig, t1), _branch_lookup(sig, t2)
        T = B.transport(w.name, w1.name)
        kids = []
        for b, b2 in sig.arity(i, RELATED):
            b1 = T(b)
            c1, c2 = look1.get((b, b1)), look2.get((b1, b2))
            if c1 is None or c2 is None:
                raise InvalidWitnessError(
                    f"no middle branch for {(b, b2)!r}: family transports do not compose")
            kids.append(go(c1, c2))
        return DTree(i, RELATED, tuple(kids))

    return go(t1, t2)


def refl_witness(B: SetoidFamily, w: Tree) -> DTree:
    t = per_witness(B, w, w)
    if t is None:
        raise NonExtensionalError(f"{w!r} is not extensional")
    return t


# witnesses of recursively defined maps ---------------------------------------

def _canonical_family(alg, w):
    return tuple(tuple(fold(alg.family, alg, c2) for c2 in c.children) for c in w.children)


def recdef_signature(B: SetoidFamily, alg: Algebra, limit: int | None = None) -> DWSignature:
    """Indices are (tree, map on its immediate subtrees); names are coherent families
    whose recursive step reproduces the map; branch s leads to (subtree s, F[s]).

    Names are enumerated for finite targets.  For an infinite target only the
    family of fold restrictions is offered as a candidate; ``is_name`` still
    accepts any coherent family that reproduces the map.
    """
    C = alg.target
    limit = MAP_LIMIT if limit is None else limit

    def well_typed(i):
        w, k = i
        return isinstance(w, Tree) and is_extensional(B, w) and is_ims_map(B, C, w, k)

    def is_name(i, F):
        if not well_typed(i):
            return False
        w, k = i
        if not isinstance(F, tuple) or not is_coherent(B, alg, w, F):
            return False
        step = recursive_step(B, alg, w, F)
        return all(C.eq(x, y) for x, y in zip(k, step))

    def names(i):
        if not well_typed(i):
            return ()
        w, _ = i
        if not C.finite:
            F = _canonical_family(alg, w)
            return (F,) if is_name(i, F) else ()
        per_child = []
        total = 1
        for c in w.children:
            maps = extensional_maps(ims_setoid(B, c), C, limit)
            per_child.append(maps)
            total *= len(maps)
            if total > limit:
                raise EnumerationLimitError("candidate coherent families", total, limit)
        return tuple(F for F in itertools.product(*per_child) if is_name(i, F))

    def arity(i, F):
        return B.fiber(i[0].name).carrier

    def next_index(i, F, s):
        w, _ = i
        p = B.fiber(w.name).position(s)
        return w.children[p], F[p]

    return DWSignature(index_eq=lambda i, j: i == j, names=names, arity=arity,
                       next_index=next_index, is_name=is_name, label="recdef")


def recdef_witness(B: SetoidFamily, alg: Algebra, w: Tree):
    """The map on ImS(w) built by recursion, with a witness that it is recursively defined."""
    if not is_extensional(B, w):
        raise NonExtensionalError(f"recdef_witness needs an extensional tree, got {w!r}")
    memo = {}

    def go(u):
        if u in memo:
            return memo[u]
        sub = [go(c) for c in u.children]
        F = tuple(k for k, _ in sub)
        k = recursive_step(B, alg, u, F)
        res = (k, DTree((u, k), F, tuple(d for _, d in sub)))
        memo[u] = res
        return res

    return go(w)


def recdef_search(B: SetoidFamily, alg: Algebra, w: Tree, k, limit: int | None = None):
    """Search all candidate families for a witness at (w, k); ``None`` if there is none."""
    sig = recdef_signature(B, alg, limit)
    memo = {}

    def go(i):
        if i in memo:
            return memo[i]
        res = None
        for F in sig.names(i):
            kids = []
            for s in sig.arity(i, F):
                d = go(sig.next_index(i, F, s))
                if d is None:
                    break
                kids.append(d)
            else:
                res = DTree(i, F, tuple(kids))
                break
        memo[i] = res
        return res

    return go((w, tuple(k)))


def recdef_transport(B: SetoidFamily, alg: Algebra, D: DTree, w2: Tree) -> DTree:
    """Carry a witness at (w, k) along w ≈ w2 to one at (w2, k ∘ ImS_γ⁻¹)."""
    w, _ = D.index
    if not per(B, w, w2):
        raise NotRelatedError(f"{w!r} and {w2!r} are not related")

    def go(D, v):
        u, k = D.index
        F = D.name
        back = B.transport_positions(v.name, u.name)
        kids = tuple(go(D.children[back[j]], c) for j, c in enumerate(v.children))
        return DTree((v, compose_ims(B, k, u, v)), transport_cohfamily(B, alg, u, v, F), kids)

    return go(D, w2)


def restriction_witness(B: SetoidFamily, alg: Algebra, h, w: Tree) -> DTree:
    """Witness that h|_w is recursively defined, built from the restrictions of h alone.

    Validates only when h is an algebra morphism.
    """
    def go(u):
        F = tuple(restrict(B, h, c) for c in u.children)
        return DTree((u, restrict(B, h, u)), F, tuple(go(c) for c in u.children))

    return go(w)


def comprehension_witness(B: SetoidFamily, alg: Algebra, F, witnesses, w: Tree) -> DTree:
    """Witness that (structure ∘ cmprh F)|_w is recursively defined.

    ``F`` maps each tree to a map on its immediate subtrees and ``witnesses``
    maps each tree u to a witness at (u, F(u)).  The node's family is
    s ↦ F(subtree s) and its branches are the given witnesses.
    """
    k = restrict(B, from_family(B, alg, F), w)
    G = tuple(tuple(F(c)) for c in w.children)
    return DTree((w, k), G, tuple(witnesses(c) for c in w.children))
