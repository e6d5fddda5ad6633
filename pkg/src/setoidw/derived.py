"""Standard signatures (naturals, lists, binary trees, a non-extensional one) and algebras on them."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, expr_algebra, table_algebra
from .setoid import (Setoid, SetoidFamily, codiscrete, discrete,
                     validate_setoid)
from .errors import ConstructionError
from .wtypes import Tree


@dataclass(frozen=True)
class NamedSignature:
    label: str
    family: SetoidFamily
    description: str = ""


EMPTY = ()
CYCLIC3 = discrete([0, 1, 2], label="Z3")


def nat_signature() -> NamedSignature:
    base = discrete(["zero", "succ"], label="nat-names")
    fibers = {"zero": discrete(EMPTY), "succ": discrete(["pred"])}
    return NamedSignature("nat", SetoidFamily(base, fibers, label="nat"),
                          "natural numbers: zero is a leaf, succ has one child")


def numeral(k: int) -> Tree:
    t = Tree("zero")
    for _ in range(k):
        t = Tree("succ", (t,))
    return t


def cons_name(x) -> str:
    return f"cons:{x}"


def list_signature(X: Setoid) -> NamedSignature:
    """Lists over X: names nil and cons:x, cons-names related as their elements are."""
    if not X.finite or validate_setoid(X):
        raise ConstructionError("list_signature needs a finite, valid element setoid")
    names = ["nil"] + [cons_name(x) for x in X.carrier]
    pairs = [("nil", "nil")] + [(cons_name(x), cons_name(y)) for x in X.carrier
                                for y in X.carrier if X.eq(x, y)]
    base = Setoid.from_pairs(names, pairs, label="list-names")
    fibers = {"nil": discrete(EMPTY)}
    fibers.update({cons_name(x): discrete(["tail"]) for x in X.carrier})
    transports = {(a, b): {"tail": "tail"} for a, b in pairs if a != "nil"}
    return NamedSignature("list", SetoidFamily(base, fibers, transports, label="list"),
                          "finite lists; cons carries its element in the name")


def list_tree(xs) -> Tree:
    t = Tree("nil")
    for x in reversed(list(xs)):
        t = Tree(cons_name(x), (t,))
    return t


def bintree_signature() -> NamedSignature:
    base = discrete(["leaf", "node"], label="bintree-names")
    fibers = {"leaf": discrete(EMPTY), "node": discrete(["left", "right"])}
    return NamedSignature("bintree", SetoidFamily(base, fibers, label="bintree"),
                          "binary trees with unlabelled leaves and nodes")


LEAF = Tree("leaf")


def bnode(left: Tree, right: Tree) -> Tree:
    return Tree("node", (left, right))


def complete_bintree(levels: int) -> Tree:
    """Complete binary tree with ``levels`` levels of nodes (1 = a single leaf)."""
    if levels < 1:
        raise ValueError("levels must be positive")
    t = LEAF
    for _ in range(levels - 1):
        t = bnode(t, t)
    return t


def nonext_signature() -> NamedSignature:
    """A node whose two branches are related, so differing subtrees break reflexivity."""
    base = discrete(["l", "n"], label="nonext-names")
    fibers = {"l": discrete(EMPTY), "n": codiscrete(["b0", "b1"])}
    return NamedSignature("nonext", SetoidFamily(base, fibers, label="nonext"),
                          "per is not reflexive on this signature")


def signatures() -> dict:
    """The shipped fixture signatures by label."""
    return {
        "nat": nat_signature(),
        "list": list_signature(codiscrete(["a", "b"])),
        "bintree": bintree_signature(),
        "nonext": nonext_signature(),
    }


# algebras --------------------------------------------------------------------

def _inc(e):
    return {"op": "+", "args": [1, e]}


def counting_algebra(B: SetoidFamily) -> Algebra:
    return expr_algebra(B, {"zero": 0, "succ": _inc({"child": 0})}, label="counting")


def size_algebra(B: SetoidFamily) -> Algebra:
    return expr_algebra(B, {"leaf": 1, "node": _inc({"op": "+", "args": [{"child": 0}, {"child": 1}]})},
                        label="size")


def depth_algebra(B: SetoidFamily) -> Algebra:
    """Number of levels: a leaf has depth 1."""
    return expr_algebra(B, {"leaf": 1, "node": _inc({"op": "max", "args": [{"child": 0}, {"child": 1}]})},
                        label="depth")


def length_algebra(B: SetoidFamily) -> Algebra:
    return expr_algebra(B, {"nil": 0}, default=_inc({"child": 0}), label="length")


def mod3_algebra(alg: Algebra) -> Algebra:
    """The same structure map reduced mod 3, tabulated on the 3-element cyclic target."""
    return table_algebra(alg.family, CYCLIC3, lambda a, k: alg(a, k) % 3,
                         label=f"{alg.label}-mod3")


def fixture_algebras() -> list:
    """(signature, integer algebra) pairs used by the global property suites."""
    sigs = signatures()
    return [
        (sigs["nat"], counting_algebra(sigs["nat"].family)),
        (sigs["bintree"], size_algebra(sigs["bintree"].family)),
        (sigs["bintree"], depth_algebra(sigs["bintree"].family)),
        (sigs["list"], length_algebra(sigs["list"].family)),
    ]
