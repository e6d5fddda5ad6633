"""Well-founded trees over a setoid family and their partial equivalence.

A :class:`Tree` is a raw W-type term: a base name and one child per element of
the fiber over that name, stored positionally in the fiber's carrier order.
``per`` decides the relation that makes raw trees into the setoid W of
extensional trees; ``sup``/``unsup`` are the algebra map and its inverse.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import kernels
from .errors import (ConstructionError, DepthError, EnumerationLimitError,
                     NonExtensionalError, NotRelatedError)
from .setoid import (CARRIER_LIMIT, MAP_LIMIT, ExtFun, Setoid, SetoidFamily,
                     Violation)


class Tree:
    """Immutable labelled tree with a cached hash and depth (leaf depth is 0)."""

    __slots__ = ("name", "children", "depth", "_hash")

    def __init__(self, name, children=()):
        children = tuple(children)
        for c in children:
            if not isinstance(c, Tree):
                raise ConstructionError(f"child {c!r} is not a Tree")
        self.name = name
        self.children = children
        self.depth = 1 + max(c.depth for c in children) if children else 0
        self._hash = hash((name, children))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree) or self._hash != other._hash:
            return False
        return self.name == other.name and self.children == other.children

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_json(self) -> dict:
        return {"name": self.name, "children": [c.to_json() for c in self.children]}

    def __repr__(self):
        if not self.children:
            return f"{self.name}"
        return f"{self.name}({', '.join(map(repr, self.children))})"


def node(name, *children) -> Tree:
    """Unchecked constructor; see :func:`sup` for the checked algebra map."""
    return Tree(name, children)


def subtree(B: SetoidFamily, w: Tree, b) -> Tree:
    return w.children[B.fiber(w.name).position(b)]


def well_formed(B: SetoidFamily, w: Tree, path=()) -> list[Violation]:
    """Arity discipline: every name is in the base and has one child per fiber element."""
    if w.name not in B.base:
        return [Violation("name", (path, w.name), "name not in base carrier")]
    out = []
    n = len(B.fiber(w.name))
    if len(w.children) != n:
        out.append(Violation("arity", (path, w.name),
                             f"expected {n} children, got {len(w.children)}"))
    for k, c in enumerate(w.children):
        out += well_formed(B, c, path + (k,))
    return out


def _memo(B, key, compute):
    r = B.memo.get(key)
    if r is None:
        r = compute()
        B.memo[key] = r
    return r


def per(B: SetoidFamily, w: Tree, w2: Tree) -> bool:
    """Decide w ≈_W w2 on raw (possibly non-extensional) trees.

    Names must be related in the base, and for every pair of fiber elements
    related through the transport the corresponding subtrees must be related.
    """
    return _memo(B, ("per", w, w2), lambda: _per(B, w, w2))


def _per(B, w, w2):
    a, a2 = w.name, w2.name
    if not B.base.eq(a, a2) or not B.has_transport(a, a2):
        return False
    c, c2 = w.children, w2.children
    return all(per(B, c[i], c2[j]) for i, j in B.related_branches(a, a2))


def is_extensional(B: SetoidFamily, w: Tree) -> bool:
    return per(B, w, w)


def per_via_transport(B: SetoidFamily, w: Tree, w2: Tree) -> bool:
    """One-sided characterisation on extensional trees: subtree b vs subtree transport(b)."""
    for t in (w, w2):
        if not is_extensional(B, t):
            raise NonExtensionalError(f"per_via_transport needs extensional trees, got {t!r}")
    return _one_sided(B, w, w2)


def _one_sided(B, w, w2):
    def compute():
        a, a2 = w.name, w2.name
        if not B.base.eq(a, a2) or not B.has_transport(a, a2):
            return False
        T = B.transport_positions(a, a2)
        return all(_one_sided(B, c, w2.children[T[i]]) for i, c in enumerate(w.children))

    return _memo(B, ("one-sided", w, w2), compute)


def _first_bad_branch(B, a, children):
    F = B.fiber(a)
    for i, j in B.related_branches(a, a):
        if i != j and not per(B, children[i], children[j]):
            return F.carrier[i], F.carrier[j]
    return None


def sup(B: SetoidFamily, a, children) -> Tree:
    """Checked algebra map: build an extensional tree from a name and extensional branches."""
    if a not in B.base:
        raise ConstructionError(f"{a!r} is not a base element")
    children = tuple(children)
    n = len(B.fiber(a))
    if len(children) != n:
        raise ConstructionError(f"{a!r} takes {n} children, got {len(children)}")
    for k, c in enumerate(children):
        if well_formed(B, c) or not is_extensional(B, c):
            raise NonExtensionalError(f"child {k} is not an extensional tree", pair=None)
    if not B.base.eq(a, a):
        raise NonExtensionalError(f"name {a!r} is not self-related")
    bad = _first_bad_branch(B, a, children)
    if bad is not None:
        raise NonExtensionalError(
            f"branching is not extensional: {bad[0]!r} and {bad[1]!r} are related "
            f"but their subtrees are not", pair=bad)
    return Tree(a, children)


def tree_setoid(B: SetoidFamily) -> Setoid:
    """W itself, as an unenumerated setoid: membership is extensionality, equality is per."""
    return Setoid(None, lambda x, y: per(B, x, y), kind="builtin", label="W",
                  member=lambda t: isinstance(t, Tree) and is_extensional(B, t))


def unsup(B: SetoidFamily, w: Tree):
    """Split an extensional tree into its name and branching map fiber(name) ⇒ W."""
    if not is_extensional(B, w):
        raise NonExtensionalError(f"unsup needs an extensional tree, got {w!r}")
    F = B.fiber(w.name)
    return w.name, ExtFun(F, tree_setoid(B), dict(zip(F.carrier, w.children)))


def sup_pair(B: SetoidFamily, pair) -> Tree:
    """The algebra map on an element (a, k) of P_B W."""
    a, k = pair
    return sup(B, a, k.values() if isinstance(k, ExtFun) else k)


class TruncatedWSetoid(Setoid):
    """Extensional trees of depth ≤ ``depth`` with per as equality."""

    __slots__ = ("family", "depth")

    def __init__(self, B: SetoidFamily, depth: int, trees):
        self.family = B
        self.depth = depth
        super().__init__(trees, lambda x, y: per(B, x, y), kind="computed",
                         label=f"W≤{depth}")


def _level_count(prev, prevprev, arities):
    return sum(len(prev) ** k - len(prevprev) ** k for k in arities)


def _grow(B, depth, limit, keep):
    limit = CARRIER_LIMIT if limit is None else limit
    names = [(a, len(B.fiber(a))) for a in B.base.carrier]
    level = [Tree(a) for a, k in names if k == 0 and keep(a, ())]
    upto = list(level)
    if len(upto) > limit:
        raise EnumerationLimitError("trees of depth 0", len(upto), limit)
    for d in range(1, depth + 1):
        if not level:
            break
        older = [t for t in upto if t.depth < d - 1]
        candidates = _level_count(upto, older, [k for _, k in names if k])
        if candidates > MAP_LIMIT:
            raise EnumerationLimitError(f"candidate trees of depth {d}", candidates, MAP_LIMIT)
        new = []
        for a, k in names:
            if k == 0:
                continue
            for combo in itertools.product(upto, repeat=k):
                if max(c.depth for c in combo) == d - 1 and keep(a, combo):
                    new.append(Tree(a, combo))
                    if len(upto) + len(new) > limit:
                        raise EnumerationLimitError(f"trees of depth <= {d}",
                                                    len(upto) + len(new), limit, partial=True)
        level = new
        upto += new
    return upto


def enumerate_trees(B: SetoidFamily, depth: int, limit: int | None = None) -> list[Tree]:
    """All well-formed trees of depth ≤ ``depth``, by depth then name then children order."""
    return _grow(B, depth, limit, lambda a, combo: True)


def enumerate_extensional(B: SetoidFamily, depth: int, limit: int | None = None) -> TruncatedWSetoid:
    """Extensional trees of depth ≤ ``depth``.

    Only extensional children are ever combined, which is complete because the
    immediate subtrees of an extensional tree are extensional.
    """
    def keep(a, combo):
        return B.base.eq(a, a) and _first_bad_branch(B, a, combo) is None

    return TruncatedWSetoid(B, depth, _grow(B, depth, limit, keep))


def ims_setoid(B: SetoidFamily, w: Tree) -> Setoid:
    """Fiber over the root name, with b ≈ b' iff the subtrees at b and b' are per-related."""
    if not is_extensional(B, w):
        raise NonExtensionalError(f"immediate subtrees need an extensional tree, got {w!r}")
    F = B.fiber(w.name)

    def eq(b, b2):
        return per(B, w.children[F.position(b)], w.children[F.position(b2)])

    return Setoid(F.carrier, eq, kind="computed", label=f"ImS({w!r})")


def ims_transport(B: SetoidFamily, w: Tree, w2: Tree) -> ExtFun:
    """Transport ImS(w) → ImS(w2) along w ≈ w2; it is the family transport on root names."""
    if not per(B, w, w2):
        raise NotRelatedError(f"{w!r} and {w2!r} are not related")
    return ExtFun(ims_setoid(B, w), ims_setoid(B, w2), B.transport(w.name, w2.name).table)


def image_factorization(B: SetoidFamily, w: Tree, truncation: TruncatedWSetoid | None = None):
    """Epi-mono factorisation of the branching map: fiber ⇒ ImS(w) ⇒ W."""
    ims = ims_setoid(B, w)
    if truncation is None:
        W = tree_setoid(B)
    else:
        if truncation.depth < w.depth:
            raise DepthError(f"truncation depth {truncation.depth} < tree depth {w.depth}")
        W = truncation
    F = B.fiber(w.name)
    e = ExtFun(F, ims, {b: b for b in F.carrier})
    m = ExtFun(ims, W, dict(zip(F.carrier, w.children)))
    return e, m


def _encode(B: SetoidFamily, trees):
    """Flatten a subtree-closed, depth-ordered tree list into integer arrays."""
    names = list(B.base.carrier)
    name_ix = {a: i for i, a in enumerate(names)}
    ids = {t: i for i, t in enumerate(trees)}
    n, na = len(trees), len(names)
    name_of = np.empty(n, dtype=np.int64)
    child_start = np.zeros(n + 1, dtype=np.int64)
    flat = []
    for i, t in enumerate(trees):
        name_of[i] = name_ix[t.name]
        for c in t.children:
            j = ids.get(c)
            if j is None or j >= i:
                raise ValueError("tree list must be subtree-closed and ordered by depth")
            flat.append(j)
        child_start[i + 1] = len(flat)
    base_eq = np.zeros((na, na), dtype=np.uint8)
    pair_start = np.zeros(na * na + 1, dtype=np.int64)
    pi, pj = [], []
    for p, a in enumerate(names):
        for q, a2 in enumerate(names):
            if B.base.eq(a, a2) and B.has_transport(a, a2):
                base_eq[p, q] = 1
                for i, j in B.related_branches(a, a2):
                    pi.append(i)
                    pj.append(j)
            pair_start[p * na + q + 1] = len(pi)
    return (name_of, child_start, np.asarray(flat, dtype=np.int64), base_eq, pair_start,
            np.asarray(pi, dtype=np.int64), np.asarray(pj, dtype=np.int64))


def per_matrix(B: SetoidFamily, trees, backend=None) -> np.ndarray:
    """Boolean matrix of per over a subtree-closed list of trees ordered by depth."""
    impl = kernels.get(backend)
    return impl.per_matrix(*_encode(B, list(trees))).astype(bool)


def per_law_violations(matrix, backend=None):
    """(symmetry, transitivity) counterexamples of a relation matrix, as index tuples."""
    impl = kernels.get(backend)
    return impl.per_law_violations(np.ascontiguousarray(matrix, dtype=np.uint8))
