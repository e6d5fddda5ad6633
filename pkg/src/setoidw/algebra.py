"""Polynomial functors, algebras, fold and the characterisation of algebra morphisms.

Assignments ``fiber(a) → X`` are tuples of values in the fiber's carrier order,
matching how :class:`~setoidw.wtypes.Tree` stores children.  A family of maps
on immediate subtrees at ``w`` is a tuple with one entry per fiber position of
the root; each entry is itself an assignment on the child's fiber.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .errors import (ConstructionError, DepthError, EnumerationLimitError,
                     IncoherentFamilyError, NonExtensionalError,
                     NotAMorphismError, NotRelatedError, SetoidError)
from .setoid import (INTEGERS, MAP_LIMIT, ExtFun, Setoid, SetoidFamily, Violation,
                     check_carrier_limit, extensional_maps)
from .wtypes import (Tree, TruncatedWSetoid, enumerate_extensional,
                     is_extensional, per, per_matrix)


def poly_eq(B: SetoidFamily, X: Setoid, p, q) -> bool:
    """(a, k) ≈ (a', k') iff a ≈ a' and k ≈ k' ∘ transport(a, a') pointwise."""
    (a, k), (a2, k2) = p, q
    if not B.base.eq(a, a2) or not B.has_transport(a, a2):
        return False
    T = B.transport_positions(a, a2)
    return all(X.eq(k[i], k2[T[i]]) for i in range(len(k)))


class PolyAppliedSetoid(Setoid):
    """P_B X: pairs of a name and an extensional assignment on its fiber."""

    __slots__ = ("family", "target")

    def __init__(self, B: SetoidFamily, X: Setoid, pairs):
        self.family = B
        self.target = X
        super().__init__(pairs, lambda p, q: poly_eq(B, X, p, q), kind="computed",
                         label=f"P({X.label})")


def poly_apply(B: SetoidFamily, X: Setoid, limit: int | None = None) -> PolyAppliedSetoid:
    limit = MAP_LIMIT if limit is None else limit
    pairs = []
    for a in B.base.carrier:
        for k in extensional_maps(B.fiber(a), X, limit):
            pairs.append((a, k))
            if len(pairs) > limit:
                raise EnumerationLimitError("P_B X", len(pairs), limit)
    return PolyAppliedSetoid(B, X, pairs)


def poly_map(B: SetoidFamily, h: ExtFun, limit: int | None = None) -> ExtFun:
    """P_B h : (a, k) ↦ (a, h ∘ k)."""
    src = poly_apply(B, h.dom, limit)
    dst = poly_apply(B, h.cod, limit)
    return ExtFun(src, dst, {(a, k): (a, tuple(h(x) for x in k)) for a, k in src.carrier})


class Algebra:
    """A target setoid with a structure map P_B C → C.

    ``structure(a, args)`` receives a name and its assignment as a tuple.
    """

    def __init__(self, family: SetoidFamily, target: Setoid,
                 structure: Callable[[Any, tuple], Any], label=None, source=None):
        self.family = family
        self.target = target
        self.structure = structure
        self.label = label
        # serialisable description (table entries or expression AST), if any
        self.source = source
        self._fold = {}

    def __call__(self, a, args):
        return self.structure(a, tuple(args))

    def __repr__(self):
        return f"Algebra<{self.label or '?'} -> {self.target!r}>"


def table_algebra(B: SetoidFamily, target: Setoid, fn, label=None, limit=None) -> Algebra:
    """Tabulate ``fn`` on every element of P_B target (finite targets only)."""
    table = {(a, k): fn(a, k) for a, k in poly_apply(B, target, limit).carrier}

    def structure(a, args):
        try:
            return table[(a, args)]
        except KeyError:
            raise SetoidError(f"algebra table has no entry for {a!r} {args!r}") from None

    entries = [{"name": a, "args": list(k), "value": v} for (a, k), v in table.items()]
    return Algebra(B, target, structure, label=label, source={"kind": "table", "table": entries})


def validate_algebra(alg: Algebra, limit: int | None = None) -> list[Violation]:
    """Outputs lie in the target and related inputs give related outputs.

    Exhaustive for finite targets; for the integer target, assignments are
    drawn from a small sample window and compared with their transports.
    """
    B, C = alg.family, alg.target
    out = []
    if C.finite:
        P = poly_apply(B, C, limit)
        vals = {}
        for p in P.carrier:
            v = alg(*p)
            if v not in C:
                out.append(Violation("algebra.codomain", (p[0], p[1])))
            vals[p] = v
        for p, q in itertools.product(P.carrier, P.carrier):
            if p != q and P.eq(p, q) and not C.eq(vals[p], vals[q]):
                out.append(Violation("algebra.extensional", (p, q)))
        return out
    sample = range(0, 3)
    for a in B.base.carrier:
        n = len(B.fiber(a))
        for k in itertools.product(sample, repeat=n):
            v = alg(a, k)
            if v not in C:
                out.append(Violation("algebra.codomain", (a, k)))
                continue
            for a2 in B.base.carrier:
                if a2 == a or not B.base.eq(a, a2) or not B.has_transport(a, a2):
                    continue
                k2 = [None] * len(B.fiber(a2))
                for i, j in B.related_branches(a, a2):
                    k2[j] = k[i]
                if None in k2:
                    continue
                if not C.eq(v, alg(a2, tuple(k2))):
                    out.append(Violation("algebra.extensional", ((a, k), (a2, tuple(k2)))))
    return out


def fold(B: SetoidFamily, alg: Algebra, w: Tree):
    """The unique algebra morphism W → C, by structural recursion on w."""
    if not is_extensional(B, w):
        raise NonExtensionalError(f"fold needs an extensional tree, got {w!r}")
    return _fold(alg, w)


def _fold(alg, w):
    r = alg._fold.get(w, _MISSING)
    if r is _MISSING:
        r = alg(w.name, tuple(_fold(alg, c) for c in w.children))
        alg._fold[w] = r
    return r


_MISSING = object()


def ims_map_eq(C: Setoid, k, k2) -> bool:
    return len(k) == len(k2) and all(C.eq(x, y) for x, y in zip(k, k2))


def is_ims_map(B: SetoidFamily, C: Setoid, w: Tree, k) -> bool:
    """Is ``k`` an extensional map ImS(w) ⇒ C?"""
    if len(k) != len(w.children) or any(x not in C for x in k):
        return False
    ch = w.children
    n = len(ch)
    return all(C.eq(k[i], k[j]) for i in range(n) for j in range(n)
               if i != j and per(B, ch[i], ch[j]))


def coherence_violation(B: SetoidFamily, alg: Algebra, w: Tree, F):
    """First failure of coherence for a family F at w, or ``None``.

    Coherent means each F[s] is an extensional map on ImS(subtree s), and for
    related positions s ≈ s' in ImS(w), F[s] agrees with F[s'] through the
    immediate-subtree transport.
    """
    C = alg.target
    ch = w.children
    if len(F) != len(ch):
        return ("length", len(F), len(ch))
    for s, c in enumerate(ch):
        if not is_ims_map(B, C, c, F[s]):
            return ("not-extensional", s)
    for s, s2 in itertools.product(range(len(ch)), repeat=2):
        if s == s2 or not per(B, ch[s], ch[s2]):
            continue
        T = B.transport_positions(ch[s].name, ch[s2].name)
        if not all(C.eq(F[s][t], F[s2][T[t]]) for t in range(len(F[s]))):
            return ("coherence", s, s2)
    return None


def is_coherent(B: SetoidFamily, alg: Algebra, w: Tree, F) -> bool:
    return coherence_violation(B, alg, w, F) is None


def recursive_step(B: SetoidFamily, alg: Algebra, w: Tree, F) -> tuple:
    """ImS(w) → C, sending s to the structure map applied at the subtree's name and F[s]."""
    if not is_extensional(B, w):
        raise NonExtensionalError(f"recursive step needs an extensional tree, got {w!r}")
    bad = coherence_violation(B, alg, w, F)
    if bad is not None:
        raise IncoherentFamilyError(f"family is not coherent at {w!r}: {bad}", pair=bad)
    return tuple(alg(c.name, F[s]) for s, c in enumerate(w.children))


def transport_cohfamily(B: SetoidFamily, alg: Algebra, w: Tree, w2: Tree, F) -> tuple:
    """Move a coherent family at w to w2 along w ≈ w2."""
    if not per(B, w, w2):
        raise NotRelatedError(f"{w!r} and {w2!r} are not related")
    back = B.transport_positions(w2.name, w.name)
    out = []
    for j, c2 in enumerate(w2.children):
        i = back[j]
        T = B.transport_positions(c2.name, w.children[i].name)
        out.append(tuple(F[i][T[t]] for t in range(len(c2.children))))
    return tuple(out)


def compose_ims(B: SetoidFamily, k, w: Tree, w2: Tree) -> tuple:
    """k ∘ ImS_γ⁻¹ : ImS(w2) → C for k on ImS(w) and γ : w ≈ w2."""
    back = B.transport_positions(w2.name, w.name)
    return tuple(k[back[j]] for j in range(len(w2.children)))


def _as_function(h):
    if isinstance(h, ExtFun):
        return h.__call__
    if isinstance(h, dict):
        return h.__getitem__
    return h


def restrict(B: SetoidFamily, h, w: Tree) -> tuple:
    """h restricted to the immediate subtrees of w: s ↦ h(subtree s)."""
    if isinstance(h, ExtFun) and isinstance(h.dom, TruncatedWSetoid) and w.depth > h.dom.depth:
        raise DepthError(f"tree depth {w.depth} exceeds truncation depth {h.dom.depth}")
    f = _as_function(h)
    return tuple(f(c) for c in w.children)


def restriction_family(B: SetoidFamily, h):
    """w ↦ h|_w."""
    return lambda w: restrict(B, h, w)


def comprehend(B: SetoidFamily, alg: Algebra, F, w: Tree):
    """(name of w, F(w) ∘ e_w) as an element of P_B C; e_w is the identity on carriers."""
    k = tuple(F(w))
    if not is_ims_map(B, alg.target, w, k):
        raise IncoherentFamilyError(f"F({w!r}) is not an extensional map on ImS", pair=(w, w))
    return w.name, k


def from_family(B: SetoidFamily, alg: Algebra, F):
    """The map w ↦ structure(comprehend(F, w))."""
    return lambda w: alg(*comprehend(B, alg, F, w))


def family_coherence_violations(B: SetoidFamily, alg: Algebra, F, trees):
    """Pairs of related trees where F(w) differs from F(w') ∘ ImS_γ."""
    C = alg.target
    vals = {w: tuple(F(w)) for w in trees}
    out = []
    for w, w2 in itertools.product(trees, trees):
        if not per(B, w, w2):
            continue
        T = B.transport_positions(w.name, w2.name)
        if not all(C.eq(vals[w][i], vals[w2][T[i]]) for i in range(len(w.children))):
            out.append((w, w2))
    return out


@dataclass(frozen=True)
class MorphismCheck:
    ok: bool
    counterexample: Tree | None = None

    def __bool__(self):
        return self.ok


def _truncation(B, depth, limit):
    return depth if isinstance(depth, TruncatedWSetoid) else enumerate_extensional(B, depth, limit)


def _check_map_on(W: TruncatedWSetoid, C: Setoid, f):
    for w in W.carrier:
        try:
            v = f(w)
        except KeyError:
            raise ConstructionError(f"map is not total: no value at {w!r}") from None
        if v not in C:
            raise ConstructionError(f"value {v!r} at {w!r} is not in the target")
    trees = W.carrier
    vals = {w: f(w) for w in trees}
    related = per_matrix(W.family, trees)
    for i, j in zip(*np.nonzero(related)):
        if i != j and not C.eq(vals[trees[i]], vals[trees[j]]):
            raise NonExtensionalError(f"map is not extensional at {trees[i]!r}, {trees[j]!r}",
                                      pair=(trees[i], trees[j]))
    return vals


def is_algebra_morphism(B: SetoidFamily, alg: Algebra, h, depth, limit=None) -> MorphismCheck:
    """h(w) ≈ structure(name w, h ∘ branches w) for every extensional w of depth ≤ depth.

    ``depth`` may also be a prebuilt truncation.
    """
    W = _truncation(B, depth, limit)
    C = alg.target
    vals = _check_map_on(W, C, _as_function(h))
    for w in W.carrier:
        if not C.eq(vals[w], alg(w.name, tuple(vals[c] for c in w.children))):
            return MorphismCheck(False, w)
    return MorphismCheck(True)


def uniqueness_check(B: SetoidFamily, alg: Algebra, h, depth, limit=None) -> bool:
    """Is the algebra morphism h pointwise equal to fold on the truncation?"""
    W = _truncation(B, depth, limit)
    res = is_algebra_morphism(B, alg, h, W)
    if not res:
        raise NotAMorphismError("map is not an algebra morphism", res.counterexample)
    f = _as_function(h)
    return all(alg.target.eq(f(w), fold(B, alg, w)) for w in W.carrier)


def tabulated_maps(W: TruncatedWSetoid, C: Setoid, limit: int | None = None):
    """Every extensional map W≤d → C, as dicts keyed by tree."""
    check_carrier_limit("truncation", len(W), limit)
    return [dict(zip(W.carrier, k)) for k in extensional_maps(W, C)]


# integer expression algebras ------------------------------------------------

_OPS = {
    "+": lambda xs: sum(xs),
    "*": lambda xs: _product(xs),
    "max": max,
    "min": min,
}


def _product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def eval_expr(expr, args: tuple) -> int:
    """Evaluate the tiny integer AST: literals, {"child": i}, {"op": o, "args": [...]}."""
    if isinstance(expr, bool):
        raise ConstructionError("booleans are not integer expressions")
    if isinstance(expr, int):
        return expr
    if isinstance(expr, dict):
        if "child" in expr:
            i = expr["child"]
            if not isinstance(i, int) or not 0 <= i < len(args):
                raise ConstructionError(f"child reference {i!r} out of range for arity {len(args)}")
            return args[i]
        op = expr.get("op")
        if op in _OPS:
            xs = [eval_expr(e, args) for e in expr.get("args", [])]
            if not xs and op in ("max", "min"):
                raise ConstructionError(f"{op} needs at least one argument")
            return _OPS[op](xs)
        if op == "children":
            fn = expr.get("fold", "+")
            if fn not in _OPS:
                raise ConstructionError(f"unknown operator {fn!r}")
            return _OPS[fn](list(args)) if args else expr.get("empty", 0)
    raise ConstructionError(f"malformed integer expression: {expr!r}")


def expr_algebra(B: SetoidFamily, cases: dict, default=None, label=None) -> Algebra:
    """Integer-valued algebra given by one expression per name (plus a default)."""
    def structure(a, args):
        expr = cases.get(a, default)
        if expr is None:
            raise ConstructionError(f"no expression for name {a!r}")
        return eval_expr(expr, args)

    source = {"kind": "builtin", "name": "int", "cases": dict(cases)}
    if default is not None:
        source["default"] = default
    return Algebra(B, INTEGERS, structure, label=label, source=source)
