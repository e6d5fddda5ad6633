"""Regenerate the JSON fixtures shipped in src/setoidw/fixtures/."""

import json
from pathlib import Path

from setoidw import derived
from setoidw.serial import algebra_to_json, family_to_json

OUT = Path(__file__).resolve().parents[1] / "src" / "setoidw" / "fixtures"


def write(name, obj):
    (OUT / f"{name}.json").write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    sigs = derived.signatures()
    for label, sig in sigs.items():
        doc = family_to_json(sig.family)
        doc["description"] = sig.description
        write(label, doc)
    for sig, alg in derived.fixture_algebras():
        write(f"{sig.label}-{alg.label}", algebra_to_json(alg))
        write(f"{sig.label}-{alg.label}-mod3", algebra_to_json(derived.mod3_algebra(alg)))


if __name__ == "__main__":
    main()
