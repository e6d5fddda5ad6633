import contextlib
import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from cli_cases import CASES, render
from setoidw import derived
from setoidw.algebra import fold
from setoidw.cli import fixture_path, main
from setoidw.dwtypes import per_witness, recdef_witness
from setoidw.errors import ParseError
from setoidw.serial import (algebra_from_json, algebra_to_json, dtree_from_json,
                            dtree_to_json, dumps, families_equal, family_from_json,
                            family_to_json, load_json, setoid_from_json,
                            setoid_to_json, tree_from_json, tree_to_json)
from setoidw.setoid import INTEGERS, Setoid, codiscrete, discrete
from setoidw.wtypes import enumerate_extensional, enumerate_trees

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def at_root(monkeypatch):
    monkeypatch.chdir(ROOT)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(at_root, name):
    expected = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    assert render(*run(CASES[name])) == expected


def test_exit_codes(at_root):
    assert run(CASES["validate-nat"])[0] == 0
    assert run(CASES["validate-missing-transport"])[0] == 1
    assert run(CASES["validate-malformed"])[0] == 2
    assert run(CASES["enumerate-limit"])[0] == 3


@pytest.mark.parametrize("name", ["enumerate-nat-3", "witness-list-ab-ba", "validate-missing-transport"])
def test_byte_deterministic_across_processes(name):
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        p = subprocess.run([sys.executable, "-m", "setoidw.cli", *CASES[name]], cwd=ROOT,
                           env=env, capture_output=True)
        outs.append((p.returncode, p.stdout, p.stderr))
    assert outs[0] == outs[1]


def test_enumerate_counts(at_root):
    code, out, _ = run(["enumerate", "nat", "--depth", "3"])
    assert code == 0 and '"count": 4' in out


def test_fixture_files_ship():
    for label in derived.signatures():
        assert fixture_path(label).exists()


def test_fixture_files_match_constructors():
    for label, sig in derived.signatures().items():
        assert families_equal(family_from_json(load_json(fixture_path(label))), sig.family)


# round trips -------------------------------------------------------------------

def test_setoid_round_trip():
    for S in (discrete([1, 2]), codiscrete("xy"), Setoid.from_pairs([0, 1, 2], [(0, 1), (1, 0)]),
              INTEGERS, discrete([])):
        T = setoid_from_json(setoid_to_json(S))
        if S.finite:
            assert list(T.carrier) == list(S.carrier) and T.relation() == S.relation()
        else:
            assert not T.finite


def test_family_round_trip():
    for sig in derived.signatures().values():
        doc = family_to_json(sig.family)
        back = family_from_json(doc)
        assert families_equal(back, sig.family)
        assert dumps(family_to_json(back)) == dumps(doc)


def test_tree_round_trip(bintree, lists, nonext):
    for B, d in ((bintree, 2), (lists, 3), (nonext, 2)):
        for t in enumerate_trees(B, d, limit=100):
            assert tree_from_json(tree_to_json(t), B) == t


def test_algebra_round_trip():
    for sig, alg in derived.fixture_algebras():
        B = sig.family
        for a in (alg, derived.mod3_algebra(alg)):
            doc = algebra_to_json(a)
            back = algebra_from_json(doc, B)
            assert dumps(algebra_to_json(back)) == dumps(doc)
            for t in enumerate_extensional(B, 3, limit=100).carrier:
                assert fold(B, back, t) == fold(B, a, t)


def test_witness_round_trip(lists):
    ab, ba = derived.list_tree("ab"), derived.list_tree("ba")
    t = per_witness(lists, ab, ba)
    assert dtree_from_json(dtree_to_json(t), lists) == t
    alg = derived.length_algebra(lists)
    _, D = recdef_witness(lists, alg, ab)
    assert dtree_from_json(dtree_to_json(D), lists) == D


def test_parse_errors_name_the_path(nat):
    with pytest.raises(ParseError, match=r"\$\.children\[0\]"):
        tree_from_json({"name": "succ", "children": [{"name": "two"}]}, nat)
    with pytest.raises(ParseError, match="fibers"):
        family_from_json({"base": {"elements": ["a"], "eq": "discrete"}})
    with pytest.raises(ParseError):
        algebra_from_json({"kind": "builtin", "name": "int",
                           "cases": {"zero": {"op": "pow", "args": []}}}, nat)
