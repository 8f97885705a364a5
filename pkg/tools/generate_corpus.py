"""Regenerate the shipped corpus documents from the built-in constructions.

Run from the repository root:  python3 tools/generate_corpus.py
Output is deterministic; the test suite asserts the shipped files match.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from trilie.catalog import catalog_names, load_catalog
from trilie.workspace import triangular_document


def render(name: str) -> str:
    doc = triangular_document(load_catalog(name), name)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def main() -> int:
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "trilie" / "corpus"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in catalog_names():
        path = out_dir / f"{name}.json"
        path.write_text(render(name), encoding="utf-8")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
