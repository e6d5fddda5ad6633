import itertools

import pytest

from oracles import size_by_hand
from setoidw.algebra import (Algebra, compose_ims, comprehend, eval_expr, fold,
                             from_family, is_algebra_morphism, poly_apply,
                             poly_map, recursive_step, restrict,
                             restriction_family, transport_cohfamily,
                             uniqueness_check, validate_algebra)
from setoidw.derived import (CYCLIC3, LEAF, bnode, counting_algebra,
                             depth_algebra, length_algebra, list_tree,
                             mod3_algebra, numeral, size_algebra)
from setoidw.errors import (ConstructionError, DepthError, IncoherentFamilyError,
                            NonExtensionalError, NotAMorphismError, NotRelatedError)
from setoidw.setoid import ExtFun, codiscrete, compose, discrete, identity
from setoidw.wtypes import Tree, enumerate_extensional, node, per


def as_tuples(t):
    return tuple(as_tuples(c) for c in t.children)


def test_poly_apply(nat):
    P = poly_apply(nat, discrete(["c"]))
    assert list(P.carrier) == [("zero", ()), ("succ", ("c",))]
    assert P.eq(("succ", ("c",)), ("succ", ("c",)))
    assert list(poly_apply(nat, discrete([])).carrier) == [("zero", ())]


def test_poly_eq_uses_transport(lists):
    X = discrete([0, 1])
    P = poly_apply(lists, X)
    assert P.eq(("cons:a", (1,)), ("cons:b", (1,)))
    assert not P.eq(("cons:a", (1,)), ("cons:b", (0,)))
    assert not P.eq(("nil", ()), ("cons:a", (0,)))


def test_poly_map_identity_and_constant(bintree):
    X = discrete([0, 1])
    Pid = poly_map(bintree, identity(X))
    assert all(Pid(p) == p for p in Pid.dom.carrier)
    const = poly_map(bintree, ExtFun(X, X, {0: 1, 1: 1}))
    assert all(set(const(p)[1]) <= {1} for p in const.dom.carrier)


def test_poly_map_functorial(bintree, lists):
    X, Y, Z = discrete([0, 1]), discrete("pq"), codiscrete("uv")
    for B in (bintree, lists):
        for fv in itertools.product(Y.carrier, repeat=2):
            f = ExtFun(X, Y, dict(zip(X.carrier, fv)))
            for gv in itertools.product(Z.carrier, repeat=2):
                g = ExtFun(Y, Z, dict(zip(Y.carrier, gv)))
                lhs = poly_map(B, compose(g, f))
                rhs = compose(poly_map(B, g), poly_map(B, f))
                P = lhs.cod
                assert all(P.eq(lhs(p), rhs(p)) for p in lhs.dom.carrier)


def test_fold_numerals(nat):
    alg = counting_algebra(nat)
    for k in range(4):
        assert fold(nat, alg, numeral(k)) == k


def test_fold_size_and_depth(bintree):
    t = bnode(LEAF, bnode(LEAF, LEAF))
    assert fold(bintree, size_algebra(bintree), t) == size_by_hand(as_tuples(t)) == 5
    assert fold(bintree, depth_algebra(bintree), t) == 3


def test_fold_constant_algebra(bintree):
    from setoidw.setoid import INTEGERS
    alg = Algebra(bintree, INTEGERS, lambda a, args: 7)
    for t in enumerate_extensional(bintree, 3, limit=100).carrier:
        assert fold(bintree, alg, t) == 7


def test_fold_rejects_non_extensional(nonext):
    alg = Algebra(nonext, discrete([0]), lambda a, args: 0)
    with pytest.raises(NonExtensionalError):
        fold(nonext, alg, node("n", Tree("l"), node("n", Tree("l"), Tree("l"))))


def test_fold_is_extensional(lists):
    alg = length_algebra(lists)
    W = enumerate_extensional(lists, 4)
    for w, w2 in itertools.product(W.carrier, W.carrier):
        if per(lists, w, w2):
            assert fold(lists, alg, w) == fold(lists, alg, w2)
    assert fold(lists, alg, list_tree("aba")) == 3


def test_validate_algebras(nat, bintree, lists):
    for alg in (counting_algebra(nat), size_algebra(bintree), length_algebra(lists)):
        assert validate_algebra(alg) == []
        assert validate_algebra(mod3_algebra(alg)) == []
    # an algebra that reads the list element is not extensional over codiscrete elements
    bad = Algebra(lists, CYCLIC3, lambda a, args: 1 if a == "cons:a" else 0)
    assert any(v.law == "algebra.extensional" for v in validate_algebra(bad))


def test_recursive_step(nat, bintree):
    alg = counting_algebra(nat)
    assert recursive_step(nat, alg, numeral(0), ()) == ()
    F = ((fold(nat, alg, numeral(0)),),)
    assert recursive_step(nat, alg, numeral(2), F) == (1,)
    size = size_algebra(bintree)
    assert recursive_step(bintree, size, bnode(LEAF, LEAF), ((), ())) == (1, 1)


def test_recursive_step_rejects_incoherent(bintree):
    size = mod3_algebra(size_algebra(bintree))
    w = bnode(bnode(LEAF, LEAF), bnode(LEAF, LEAF))
    # both immediate subtrees are equal, so their maps must agree
    with pytest.raises(IncoherentFamilyError):
        recursive_step(bintree, size, w, ((1, 1), (1, 2)))


def test_transport_cohfamily_and_extrecst(lists):
    alg = length_algebra(lists)
    W = enumerate_extensional(lists, 3)
    rest = restriction_family(lists, lambda t: fold(lists, alg, t))
    for w, w2 in itertools.product(W.carrier, W.carrier):
        if not per(lists, w, w2):
            continue
        F = tuple(rest(c) for c in w.children)
        F2 = transport_cohfamily(lists, alg, w, w2, F)
        assert F2 == tuple(rest(c) for c in w2.children)
        lhs = recursive_step(lists, alg, w2, F2)
        rhs = compose_ims(lists, recursive_step(lists, alg, w, F), w, w2)
        assert lhs == rhs
    assert transport_cohfamily(lists, alg, Tree("nil"), Tree("nil"), ()) == ()
    with pytest.raises(NotRelatedError):
        transport_cohfamily(lists, alg, Tree("nil"), list_tree("a"), ())


def test_restrict(nat):
    alg = counting_algebra(nat)
    h = lambda t: fold(nat, alg, t)  # noqa: E731
    assert restrict(nat, h, numeral(0)) == ()
    assert restrict(nat, h, numeral(3)) == (2,)
    assert restrict(nat, lambda t: 5, numeral(3)) == (5,)
    W = enumerate_extensional(nat, 2)
    table = ExtFun(W, discrete([0, 1, 2]), {t: fold(nat, alg, t) for t in W.carrier})
    assert restrict(nat, table, numeral(2)) == (1,)
    with pytest.raises(DepthError):
        restrict(nat, table, numeral(3))


def test_comprehend(nat, bintree):
    alg = counting_algebra(nat)
    rest = restriction_family(nat, lambda t: fold(nat, alg, t))
    assert comprehend(nat, alg, rest, numeral(0)) == ("zero", ())
    pair = comprehend(nat, alg, rest, numeral(2))
    assert pair == ("succ", (1,))
    assert alg(*pair) == 2 == fold(nat, alg, numeral(2))
    const = lambda t: tuple(4 for _ in t.children)  # noqa: E731
    assert comprehend(bintree, size_algebra(bintree), const, bnode(LEAF, LEAF)) == ("node", (4, 4))
    with pytest.raises(IncoherentFamilyError):
        comprehend(bintree, size_algebra(bintree), lambda t: (1, 2), bnode(LEAF, LEAF))


def test_is_algebra_morphism(nat):
    alg = counting_algebra(nat)
    fold_h = lambda t: fold(nat, alg, t)  # noqa: E731
    for d in range(5):
        assert is_algebra_morphism(nat, alg, fold_h, d)
    W = enumerate_extensional(nat, 4)
    perturbed = {t: fold(nat, alg, t) for t in W.carrier}
    perturbed[numeral(2)] = 99
    res = is_algebra_morphism(nat, alg, perturbed, 4)
    assert not res and res.counterexample == numeral(2)
    const = Algebra(nat, CYCLIC3, lambda a, args: 0)
    assert is_algebra_morphism(nat, const, lambda t: 0, 3)


def test_uniqueness_check(nat):
    alg = counting_algebra(nat)
    assert uniqueness_check(nat, alg, lambda t: fold(nat, alg, t), 4)

    def evaluate(t):
        n = 0
        while t.name == "succ":
            t = t.children[0]
            n += 1
        return n

    assert uniqueness_check(nat, alg, evaluate, 4)
    with pytest.raises(NotAMorphismError):
        uniqueness_check(nat, alg, lambda t: 0, 3)


def test_is_algebra_morphism_requires_extensional_map(lists):
    alg = length_algebra(lists)
    with pytest.raises(NonExtensionalError):
        is_algebra_morphism(lists, alg, lambda t: hash(t) % 2, 2)


def test_from_family_rebuilds_fold(bintree):
    alg = size_algebra(bintree)
    h = lambda t: fold(bintree, alg, t)  # noqa: E731
    g = from_family(bintree, alg, restriction_family(bintree, h))
    for t in enumerate_extensional(bintree, 3, limit=100).carrier:
        assert g(t) == h(t)


def test_eval_expr():
    assert eval_expr(3, ()) == 3
    assert eval_expr({"op": "max", "args": [{"child": 0}, {"child": 1}]}, (2, 5)) == 5
    assert eval_expr({"op": "*", "args": [2, {"child": 0}]}, (4,)) == 8
    assert eval_expr({"op": "children", "fold": "+"}, (1, 2, 3)) == 6
    with pytest.raises(ConstructionError):
        eval_expr({"child": 2}, (1,))
    with pytest.raises(ConstructionError):
        eval_expr({"op": "pow", "args": []}, ())
