"""JSON encodings of setoids, families, trees, algebras and witness trees.

Documents are validated structurally while they are parsed; every
:class:`~setoidw.errors.ParseError` names the JSON path of the offending value.
Encoders emit keys and elements in stable orders, so ``dumps`` output is
byte-deterministic.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Algebra, eval_expr, expr_algebra
from .dwtypes import DTree
from .errors import ConstructionError, ParseError
from .setoid import INTEGERS, Setoid, SetoidFamily
from .wtypes import Tree, well_formed


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def load_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                         str(path)) from None


def _ident(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"identifier must be a string or integer, got {x!r}", where)
    return x


def _expect(data, kind, where):
    if not isinstance(data, kind):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(f"expected {name}, got {type(data).__name__}", where)
    return data


# setoids ---------------------------------------------------------------------

def setoid_to_json(S: Setoid) -> dict:
    if not S.finite:
        return {"builtin": S.label}
    xs = list(S.carrier)
    rel = S.relation()
    if rel == {(x, x) for x in xs}:
        eq = "discrete"
    elif rel == {(x, y) for x in xs for y in xs}:
        eq = "codiscrete"
    else:
        eq = [[x, y] for x in xs for y in xs if (x, y) in rel]
    return {"elements": xs, "eq": eq}


def setoid_from_json(data, where="$") -> Setoid:
    _expect(data, dict, where)
    if "builtin" in data:
        if data["builtin"] != "int":
            raise ParseError(f"unknown built-in setoid {data['builtin']!r}", where + ".builtin")
        return INTEGERS
    if "elements" not in data:
        raise ParseError("missing key 'elements'", where)
    elems = _expect(data["elements"], list, where + ".elements")
    xs = [_ident(x, f"{where}.elements[{i}]") for i, x in enumerate(elems)]
    if len(set(xs)) != len(xs):
        raise ParseError("duplicate elements", where + ".elements")
    eq = data.get("eq", "discrete")
    if eq == "discrete":
        pairs = [(x, x) for x in xs]
    elif eq == "codiscrete":
        pairs = [(x, y) for x in xs for y in xs]
    elif isinstance(eq, list):
        pairs = []
        members = set(xs)
        for i, p in enumerate(eq):
            w = f"{where}.eq[{i}]"
            if not isinstance(p, list) or len(p) != 2:
                raise ParseError("relation entries must be [x, y] pairs", w)
            for j, x in enumerate(p):
                if x not in members:
                    raise ParseError(f"{x!r} is not an element", f"{w}[{j}]")
            pairs.append((p[0], p[1]))
    else:
        raise ParseError("eq must be 'discrete', 'codiscrete' or a list of pairs", where + ".eq")
    return Setoid.from_pairs(xs, pairs)


# families --------------------------------------------------------------------

def _resolver(ids, where):
    table = {}
    for x in ids:
        key = str(x)
        if key in table:
            raise ParseError(f"identifiers {table[key]!r} and {x!r} collide as object keys", where)
        table[key] = x
    return table


def family_to_json(F: SetoidFamily) -> dict:
    base = F.base.carrier
    out = {
        "base": setoid_to_json(F.base),
        "fibers": {str(a): setoid_to_json(F.fiber(a)) for a in base},
    }
    transports = {}
    for a in base:
        for a2 in base:
            t = F.raw_transports.get((a, a2))
            if t is None:
                continue
            fib = F.fiber(a).carrier
            if a == a2 and all(t.get(x) == x for x in fib):
                continue
            transports[f"{a}->{a2}"] = {str(x): t[x] for x in fib if x in t}
    out["transports"] = transports
    if F.label:
        out["label"] = F.label
    return out


def family_from_json(data, where="$") -> SetoidFamily:
    _expect(data, dict, where)
    for key in ("base", "fibers"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", where)
    base = setoid_from_json(data["base"], where + ".base")
    names = _resolver(base.carrier, where + ".base.elements")
    fibers_raw = _expect(data["fibers"], dict, where + ".fibers")
    fibers = {}
    for key, val in fibers_raw.items():
        if key not in names:
            raise ParseError(f"{key!r} is not a base element", f"{where}.fibers.{key}")
        fibers[names[key]] = setoid_from_json(val, f"{where}.fibers.{key}")
    missing = [a for a in base.carrier if a not in fibers]
    if missing:
        raise ParseError(f"no fiber for base elements {missing}", where + ".fibers")
    transports = {}
    for key, table in _expect(data.get("transports", {}), dict, where + ".transports").items():
        w = f"{where}.transports.{key}"
        parts = key.split("->")
        if len(parts) != 2 or parts[0] not in names or parts[1] not in names:
            raise ParseError("transport keys must be 'a->b' with base elements a, b", w)
        a, a2 = names[parts[0]], names[parts[1]]
        src = _resolver(fibers[a].carrier, w)
        tgt = set(fibers[a2].carrier)
        mapping = {}
        for x, y in _expect(table, dict, w).items():
            if x not in src:
                raise ParseError(f"{x!r} is not in the fiber over {a!r}", f"{w}.{x}")
            if y not in tgt:
                raise ParseError(f"{y!r} is not in the fiber over {a2!r}", f"{w}.{x}")
            mapping[src[x]] = y
        transports[(a, a2)] = mapping
    return SetoidFamily(base, fibers, transports, label=data.get("label"))


def families_equal(F: SetoidFamily, G: SetoidFamily) -> bool:
    if not F.base.same_as(G.base):
        return False
    if any(not F.fiber(a).same_as(G.fiber(a)) for a in F.base.carrier):
        return False
    return F.raw_transports == G.raw_transports


# trees -----------------------------------------------------------------------

def tree_to_json(w: Tree) -> dict:
    return w.to_json()


def tree_from_json(data, B: SetoidFamily | None = None, where="$") -> Tree:
    """Parse a tree; with a family, names must resolve and arities must match."""
    names = _resolver(B.base.carrier, where) if B is not None else None

    def go(d, w):
        _expect(d, dict, w)
        if "name" not in d:
            raise ParseError("missing key 'name'", w)
        name = _ident(d["name"], w + ".name")
        if names is not None:
            if str(name) not in names or names[str(name)] != name:
                raise ParseError(f"{name!r} is not a base element", w + ".name")
        kids = _expect(d.get("children", []), list, w + ".children")
        return Tree(name, [go(c, f"{w}.children[{i}]") for i, c in enumerate(kids)])

    t = go(data, where)
    if B is not None:
        bad = well_formed(B, t)
        if bad:
            v = bad[0]
            path = "".join(f".children[{k}]" for k in v.items[0])
            raise ParseError(v.detail or v.law, where + path)
    return t


# algebras --------------------------------------------------------------------

def algebra_to_json(alg: Algebra) -> dict:
    if alg.source is None:
        raise ConstructionError("algebra has no serialisable description")
    out = dict(alg.source)
    if out["kind"] == "table":
        out = {"kind": "table", "target": setoid_to_json(alg.target), "table": out["table"]}
    if alg.label:
        out["label"] = alg.label
    return out


def _check_expr(e, where):
    if isinstance(e, bool):
        raise ParseError("booleans are not integer expressions", where)
    if isinstance(e, int):
        return
    if not isinstance(e, dict):
        raise ParseError(f"malformed expression {e!r}", where)
    if "child" in e:
        if isinstance(e["child"], bool) or not isinstance(e["child"], int) or e["child"] < 0:
            raise ParseError("child reference must be a non-negative integer", where + ".child")
        return
    op = e.get("op")
    if op == "children":
        if e.get("fold", "+") not in ("+", "*", "max", "min"):
            raise ParseError(f"unknown operator {e.get('fold')!r}", where + ".fold")
        return
    if op not in ("+", "*", "max", "min"):
        raise ParseError(f"unknown operator {op!r}", where + ".op")
    args = _expect(e.get("args", []), list, where + ".args")
    for i, a in enumerate(args):
        _check_expr(a, f"{where}.args[{i}]")


def algebra_from_json(data, B: SetoidFamily, where="$") -> Algebra:
    _expect(data, dict, where)
    kind = data.get("kind")
    names = _resolver(B.base.carrier, where)
    label = data.get("label")
    if kind == "builtin":
        if data.get("name") != "int":
            raise ParseError("only the 'int' built-in target is supported", where + ".name")
        cases = {}
        for key, e in _expect(data.get("cases", {}), dict, where + ".cases").items():
            if key not in names:
                raise ParseError(f"{key!r} is not a base element", f"{where}.cases.{key}")
            _check_expr(e, f"{where}.cases.{key}")
            cases[names[key]] = e
        default = data.get("default")
        if default is not None:
            _check_expr(default, where + ".default")
        for a in B.base.carrier:
            e = cases.get(a, default)
            if e is None:
                raise ParseError(f"no expression for name {a!r}", where + ".cases")
            try:
                eval_expr(e, (0,) * len(B.fiber(a)))
            except ConstructionError as exc:
                raise ParseError(str(exc), f"{where}.cases.{a}") from None
        return expr_algebra(B, cases, default, label=label)
    if kind == "table":
        if "target" not in data:
            raise ParseError("missing key 'target'", where)
        target = setoid_from_json(data["target"], where + ".target")
        table = {}
        entries = _expect(data.get("table", []), list, where + ".table")
        for i, ent in enumerate(entries):
            w = f"{where}.table[{i}]"
            _expect(ent, dict, w)
            a = ent.get("name")
            if str(a) not in names or names[str(a)] != a:
                raise ParseError(f"{a!r} is not a base element", w + ".name")
            args = tuple(_expect(ent.get("args", []), list, w + ".args"))
            if len(args) != len(B.fiber(a)):
                raise ParseError(f"{a!r} takes {len(B.fiber(a))} arguments", w + ".args")
            for j, x in enumerate(args):
                if x not in target:
                    raise ParseError(f"{x!r} is not a target element", f"{w}.args[{j}]")
            if ent.get("value") not in target:
                raise ParseError(f"{ent.get('value')!r} is not a target element", w + ".value")
            table[(a, args)] = ent["value"]

        def structure(a, args):
            try:
                return table[(a, args)]
            except KeyError:
                raise ConstructionError(f"algebra table has no entry for {a!r} {list(args)!r}") from None

        source = {"kind": "table", "table": [{"name": a, "args": list(k), "value": v}
                                           for (a, k), v in table.items()]}
        return Algebra(B, target, structure, label=label, source=source)
    raise ParseError("kind must be 'table' or 'builtin'", where + ".kind")


# witness trees ---------------------------------------------------------------

def _enc(x):
    if isinstance(x, Tree):
        return x.to_json()
    if isinstance(x, tuple):
        return [_enc(y) for y in x]
    return x


def dtree_to_json(t: DTree) -> dict:
    """Witnesses of tree equality have index [tree, tree]; recursive-definition
    witnesses have index {"tree": ..., "map": [...]}."""
    index = t.index
    if isinstance(index[1], Tree):
        ij = [index[0].to_json(), index[1].to_json()]
    else:
        ij = {"tree": index[0].to_json(), "map": _enc(index[1])}
    return {"index": ij, "name": _enc(t.name),
            "children": [dtree_to_json(c) for c in t.children]}


def _dec(x):
    if isinstance(x, list):
        return tuple(_dec(y) for y in x)
    return x


def dtree_from_json(data, B: SetoidFamily | None = None, where="$") -> DTree:
    _expect(data, dict, where)
    for key in ("index", "name"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", where)
    idx = data["index"]
    if isinstance(idx, list):
        if len(idx) != 2:
            raise ParseError("tree-pair index must have two entries", where + ".index")
        index = (tree_from_json(idx[0], B, where + ".index[0]"),
                 tree_from_json(idx[1], B, where + ".index[1]"))
    elif isinstance(idx, dict) and "tree" in idx and "map" in idx:
        index = (tree_from_json(idx["tree"], B, where + ".index.tree"), _dec(idx["map"]))
    else:
        raise ParseError("index must be [tree, tree] or {tree, map}", where + ".index")
    kids = _expect(data.get("children", []), list, where + ".children")
    return DTree(index, _dec(data["name"]),
                 tuple(dtree_from_json(c, B, f"{where}.children[{i}]") for i, c in enumerate(kids)))
