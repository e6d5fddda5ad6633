"""Command line front end.

Exit codes: 0 ok, 1 semantic failure, 2 parse error, 3 enumeration limit.
Results go to stdout as JSON; errors go to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .algebra import fold
from .dwtypes import per_witness, validate_dtree, wper_signature
from .errors import EnumerationLimitError, ParseError, SetoidError
from .serial import (algebra_from_json, dtree_to_json, dumps,
                     family_from_json, load_json, tree_from_json)
from .setoid import CARRIER_LIMIT, validate_family
from .wtypes import enumerate_extensional, is_extensional, per

EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE, EXIT_LIMIT = 0, 1, 2, 3


def fixture_path(label: str) -> Path:
    """Shipped fixture by label, e.g. ``nat`` or ``nat-counting``."""
    return Path(str(resources.files("setoidw") / "fixtures" / f"{label}.json"))


def _load(path):
    p = Path(path)
    if not p.exists() and fixture_path(path).exists():
        p = fixture_path(path)
    return load_json(p)


def _family(path):
    try:
        return family_from_json(_load(path))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None


def _emit(obj):
    sys.stdout.write(dumps(obj) + "\n")


def cmd_validate(args) -> int:
    F = _family(args.signature)
    bad = validate_family(F)
    for v in bad:
        _emit(v.to_json())
    _emit({"valid": not bad, "violations": len(bad)})
    return EXIT_SEMANTIC if bad else EXIT_OK


def cmd_eq(args) -> int:
    F = _family(args.signature)
    w1 = tree_from_json(_load(args.tree1), F)
    w2 = tree_from_json(_load(args.tree2), F)
    _emit({"per": per(F, w1, w2)})
    return EXIT_OK


def cmd_check_ext(args) -> int:
    F = _family(args.signature)
    w = tree_from_json(_load(args.tree), F)
    _emit({"extensional": is_extensional(F, w)})
    return EXIT_OK


def cmd_fold(args) -> int:
    F = _family(args.signature)
    alg = algebra_from_json(_load(args.algebra), F)
    w = tree_from_json(_load(args.tree), F)
    _emit({"value": fold(F, alg, w)})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    F = _family(args.signature)
    W = enumerate_extensional(F, args.depth, args.limit)
    _emit({"depth": args.depth, "count": len(W), "trees": [t.to_json() for t in W.carrier]})
    return EXIT_OK


def cmd_witness(args) -> int:
    F = _family(args.signature)
    w1 = tree_from_json(_load(args.tree1), F)
    w2 = tree_from_json(_load(args.tree2), F)
    t = per_witness(F, w1, w2)
    if t is None:
        _emit({"witness": None})
        return EXIT_OK
    bad = validate_dtree(wper_signature(F), (w1, w2), t)
    if bad:
        raise SetoidError(f"constructed witness failed validation: {bad[0]}")
    _emit({"witness": dtree_to_json(t), "nodes": t.size()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress):
        p = argparse.ArgumentParser(add_help=False)
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--depth", type=int, default=dflt(4), help="truncation depth (default 4)")
        p.add_argument("--limit", type=int, default=dflt(CARRIER_LIMIT),
                       help=f"enumeration cap (default {CARRIER_LIMIT})")
        p.add_argument("--format", choices=["json"], default=dflt("json"))
        return p

    # global flags may come before or after the subcommand
    common = flags(suppress=True)
    parser = argparse.ArgumentParser(
        prog="setoidw", parents=[flags(suppress=False)],
        description="Extensional well-founded trees over setoid families.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a signature file's laws")
    p.add_argument("signature")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("eq", parents=[common], help="decide equality of two trees")
    p.add_argument("signature")
    p.add_argument("tree1")
    p.add_argument("tree2")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("check-ext", parents=[common], help="is a tree extensional?")
    p.add_argument("signature")
    p.add_argument("tree")
    p.set_defaults(func=cmd_check_ext)

    p = sub.add_parser("fold", parents=[common], help="evaluate the unique algebra morphism")
    p.add_argument("signature")
    p.add_argument("algebra")
    p.add_argument("tree")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("enumerate", parents=[common], help="list extensional trees up to --depth")
    p.add_argument("signature")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("witness", parents=[common], help="emit an equality witness tree")
    p.add_argument("signature")
    p.add_argument("tree1")
    p.add_argument("tree2")
    p.set_defaults(func=cmd_witness)
    return parser


def _fail(code, kind, exc) -> int:
    sys.stderr.write(dumps({"error": kind, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, "parse", exc)
    except EnumerationLimitError as exc:
        return _fail(EXIT_LIMIT, "limit", exc)
    except SetoidError as exc:
        return _fail(EXIT_SEMANTIC, "semantic", exc)


if __name__ == "__main__":
    sys.exit(main())
