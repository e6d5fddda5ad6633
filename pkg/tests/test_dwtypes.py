import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setoidw.algebra import fold, restrict
from setoidw.derived import (LEAF, bnode, counting_algebra, length_algebra,
                             list_tree, mod3_algebra, numeral, size_algebra)
from setoidw.dwtypes import (RELATED, DTree, DWSignature, dfold, per_witness,
                             recdef_search, recdef_signature, recdef_transport,
                             recdef_witness, refl_witness, validate_dtree,
                             witness_sym, witness_trans, wper_signature)
from setoidw.errors import (ConstructionError, InvalidWitnessError,
                            NonExtensionalError, NotRelatedError)
from setoidw.wtypes import (Tree, enumerate_extensional, enumerate_trees,
                            ims_setoid, node, per)

L = Tree("l")
N_LL = node("n", L, L)
BAD = node("n", L, N_LL)

# a toy signature: index is a countdown, names "stop" at 0 and "go" otherwise
COUNTDOWN = DWSignature(
    index_eq=lambda i, j: i == j,
    names=lambda i: ("stop",) if i == 0 else ("go",),
    arity=lambda i, a: () if a == "stop" else ("x", "y"),
    next_index=lambda i, a, b: i - 1,
)


def countdown(i):
    if i == 0:
        return DTree(0, "stop")
    c = countdown(i - 1)
    return DTree(i, "go", (c, c))


def count_nodes(i, a, kids):
    return 1 + sum(kids)


def levels(i, a, kids):
    return 1 + max(kids, default=0)


def test_validate_dtree_examples(nonext):
    assert validate_dtree(COUNTDOWN, 0, DTree(0, "stop")) == []
    assert validate_dtree(COUNTDOWN, 2, countdown(2)) == []
    bad = DTree(1, "go", (DTree(0, "stop"), DTree(99, "stop")))
    v = validate_dtree(COUNTDOWN, 1, bad)
    assert len(v) == 1 and v[0].law == "index" and v[0].items == ((1,),)
    assert validate_dtree(wper_signature(nonext), (L, L), per_witness(nonext, L, L)) == []


def test_validate_dtree_name_and_arity():
    assert [v.law for v in validate_dtree(COUNTDOWN, 1, DTree(1, "stop"))] == ["name"]
    assert [v.law for v in validate_dtree(COUNTDOWN, 1, DTree(1, "go", (DTree(0, "stop"),)))] == ["arity"]


def test_dfold_counts():
    assert dfold(COUNTDOWN, count_nodes, 3, countdown(3)) == 15
    assert dfold(COUNTDOWN, levels, 3, countdown(3)) == 4
    assert dfold(COUNTDOWN, levels, 0, countdown(0)) == 1
    with pytest.raises(InvalidWitnessError):
        dfold(COUNTDOWN, count_nodes, 2, countdown(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6))
def test_dfold_unfolds_one_step(i, salt):
    step = lambda idx, a, kids: (idx * 7 + salt + sum(kids)) % 101  # noqa: E731
    t = countdown(i)
    expected = step(t.index, t.name, [dfold(COUNTDOWN, step, c.index, c) for c in t.children])
    assert dfold(COUNTDOWN, step, i, t) == expected


def test_dfold_rebuilds_pair(nonext):
    t = per_witness(nonext, N_LL, node("n", L, L))
    pair = dfold(wper_signature(nonext), lambda i, a, kids: i, t.index, t)
    assert per(nonext, *pair) and pair == (N_LL, N_LL)


def test_wper_signature(nat, nonext):
    sig = wper_signature(nonext)
    assert sig.names((L, L)) == (RELATED,)
    assert sig.arity((L, L), RELATED) == ()
    assert wper_signature(nat).names((numeral(0), numeral(1))) == ()
    ar = sig.arity((N_LL, N_LL), RELATED)
    assert len(ar) == 4 and set(ar) == set(itertools.product(["b0", "b1"], repeat=2))


def test_per_witness_examples(nonext):
    t = per_witness(nonext, L, L)
    assert t == DTree((L, L), RELATED, ())
    assert per_witness(nonext, BAD, BAD) is None
    t = per_witness(nonext, N_LL, N_LL)
    assert len(t.children) == 4
    assert validate_dtree(wper_signature(nonext), (N_LL, N_LL), t) == []


@pytest.mark.parametrize("label,depth", [("nat", 3), ("bintree", 2), ("nonext", 2), ("lists", 2)])
def test_per_witness_iff_per(request, label, depth):
    B = request.getfixturevalue(label)
    sig = wper_signature(B)
    trees = enumerate_trees(B, depth, limit=200)
    for w, w2 in itertools.product(trees, trees):
        t = per_witness(B, w, w2)
        assert (t is not None) == per(B, w, w2)
        if t is not None:
            assert validate_dtree(sig, (w, w2), t) == []


def test_witness_sym(nonext, lists):
    leaf = per_witness(nonext, L, L)
    assert witness_sym(nonext, leaf) == leaf
    t = per_witness(nonext, N_LL, N_LL)
    s = witness_sym(nonext, t)
    assert validate_dtree(wper_signature(nonext), (N_LL, N_LL), s) == []
    ab, ba = list_tree("ab"), list_tree("ba")
    t = per_witness(lists, ab, ba)
    s = witness_sym(lists, t)
    sig = wper_signature(lists)
    assert s.index == (ba, ab) and validate_dtree(sig, (ba, ab), s) == []
    ss = witness_sym(lists, s)
    assert validate_dtree(sig, (ab, ba), ss) == []
    assert dfold(sig, count_nodes, ss.index, ss) == dfold(sig, count_nodes, t.index, t)


def test_witness_trans(lists, nonext):
    sig = wper_signature(lists)
    a, b, c = list_tree("ab"), list_tree("bb"), list_tree("ba")
    t1, t2 = per_witness(lists, a, b), per_witness(lists, b, c)
    t = witness_trans(lists, t1, t2)
    assert t.index == (a, c) and validate_dtree(sig, (a, c), t) == []
    assert per(lists, a, c)
    r = witness_trans(lists, refl_witness(lists, a), t1)
    assert validate_dtree(sig, t1.index, r) == []
    leaf = per_witness(nonext, L, L)
    assert witness_trans(nonext, leaf, leaf) == leaf
    with pytest.raises(ConstructionError):
        witness_trans(lists, t1, t1)


def test_refl_witness_rejects_non_extensional(nonext):
    with pytest.raises(NonExtensionalError):
        refl_witness(nonext, BAD)


def test_recdef_signature_names(nat):
    alg = counting_algebra(nat)
    sig = recdef_signature(nat, alg)
    assert sig.names((numeral(0), ())) == ((),)
    assert sig.names((numeral(1), (0,))) == (((),),)
    assert sig.names((numeral(1), (1,))) == ()
    assert sig.names((numeral(2), (1,))) == (((0,),),)
    assert sig.names((numeral(2), (0,))) == ()


def test_recdef_signature_finite_target(bintree):
    alg = mod3_algebra(size_algebra(bintree))
    sig = recdef_signature(bintree, alg)
    w = bnode(LEAF, bnode(LEAF, LEAF))
    names = sig.names((w, (1, 0)))
    assert names == (((), (1, 1)),)
    # the leaf slot is forced to 1; the other slot can be hit by some family
    assert sig.names((w, (0, 0))) == ()
    assert sig.names((w, (1, 1))) == (((), (0, 0)),)
    assert recdef_search(bintree, alg, w, (1, 1)) is None


def test_recdef_witness(nat, bintree):
    alg = counting_algebra(nat)
    k, D = recdef_witness(nat, alg, numeral(0))
    assert k == () and D.children == ()
    k, D = recdef_witness(nat, alg, numeral(2))
    assert k == (1,)
    assert validate_dtree(recdef_signature(nat, alg), (numeral(2), k), D) == []
    size = size_algebra(bintree)
    w = bnode(bnode(LEAF, LEAF), LEAF)
    k, D = recdef_witness(bintree, size, w)
    assert k == (3, 1)
    assert validate_dtree(recdef_signature(bintree, size), (w, k), D) == []


def test_recdef_uniqueness_finite(bintree):
    alg = mod3_algebra(size_algebra(bintree))
    for w in enumerate_extensional(bintree, 2).carrier:
        fold_k = restrict(bintree, lambda t: fold(bintree, alg, t), w)
        n = len(ims_setoid(bintree, w).carrier)
        for k in itertools.product(range(3), repeat=n):
            found = recdef_search(bintree, alg, w, k) is not None
            assert found == (k == fold_k)


def test_recdef_transport(lists):
    alg = length_algebra(lists)
    sig = recdef_signature(lists, alg)
    W = enumerate_extensional(lists, 3)
    for w, w2 in itertools.product(W.carrier, W.carrier):
        if not per(lists, w, w2):
            continue
        k, D = recdef_witness(lists, alg, w)
        D2 = recdef_transport(lists, alg, D, w2)
        assert validate_dtree(sig, D2.index, D2) == []
        assert D2.index[0] == w2
    with pytest.raises(NotRelatedError):
        recdef_transport(lists, alg, recdef_witness(lists, alg, list_tree("a"))[1], list_tree(""))
