"""Loading and saving workspace documents: named algebras, bimodules,
triangular compositions, and map sequences in one JSON file.

Scalars travel as strings ("3", "-5/7") or plain integers — floating point is
rejected so every loaded value is exact.  Loading here is purely
structural (shapes, scalar syntax, name references); the mathematical
validators live with their objects and are run by the commands that need
them, so a malformed file and a well-formed file describing a non-algebra
fail differently (input error versus check failure).
"""

import json
from dataclasses import dataclass, field

from .algebra import Algebra, LinearMap
from .bimodule import Bimodule
from .derivations import KINDS, HigherMapSequence
from .linalg import Matrix, scalar
from .triangular import TriangularAlgebra, build_triangular


class WorkspaceError(ValueError):
    """Structural problem in a workspace document; `location` is a dotted path."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


def _parse_scalar(value, location: str):
    if isinstance(value, bool) or isinstance(value, float):
        raise WorkspaceError(location, f"scalars must be integers or 'p/q' strings, got {value!r}")
    if not isinstance(value, (int, str)):
        raise WorkspaceError(location, f"scalars must be integers or 'p/q' strings, got {type(value).__name__}")
    try:
        return scalar(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise WorkspaceError(location, str(exc)) from None


def _parse_vector(values, dim: int, location: str):
    if not isinstance(values, list) or len(values) != dim:
        raise WorkspaceError(location, f"expected a list of {dim} scalars")
    return tuple(_parse_scalar(v, f"{location}[{k}]") for k, v in enumerate(values))


def _require_keys(obj, allowed, required, location):
    if not isinstance(obj, dict):
        raise WorkspaceError(location, "expected an object")
    for key in obj:
        if key not in allowed:
            raise WorkspaceError(location, f"unknown key {key!r} (allowed: {sorted(allowed)})")
    for key in required:
        if key not in obj:
            raise WorkspaceError(location, f"missing required key {key!r}")


def _parse_algebra(name, spec) -> Algebra:
    loc = f"algebras.{name}"
    _require_keys(spec, {"dim", "table", "unit"}, {"dim", "table", "unit"}, loc)
    dim = spec["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise WorkspaceError(f"{loc}.dim", "dimension must be a positive integer")
    table = spec["table"]
    if not isinstance(table, list) or len(table) != dim:
        raise WorkspaceError(f"{loc}.table", f"expected {dim} rows of {dim} product vectors")
    rows = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != dim:
            raise WorkspaceError(f"{loc}.table[{i}]", f"expected {dim} product vectors")
        rows.append(tuple(_parse_vector(cell, dim, f"{loc}.table[{i}][{j}]")
                          for j, cell in enumerate(row)))
    unit = _parse_vector(spec["unit"], dim, f"{loc}.unit")
    return Algebra(dim, tuple(rows), unit, name=name)


def _parse_bimodule(name, spec, algebras) -> Bimodule:
    loc = f"bimodules.{name}"
    _require_keys(spec, {"left", "right", "dim", "left_action", "right_action"},
                  {"left", "right", "dim", "left_action", "right_action"}, loc)
    for side in ("left", "right"):
        if spec[side] not in algebras:
            raise WorkspaceError(f"{loc}.{side}", f"unknown algebra {spec[side]!r}")
    alg_a = algebras[spec["left"]]
    alg_b = algebras[spec["right"]]
    dim = spec["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise WorkspaceError(f"{loc}.dim", "dimension must be a positive integer")

    def parse_action(key, outer, inner):
        rows = spec[key]
        if not isinstance(rows, list) or len(rows) != outer:
            raise WorkspaceError(f"{loc}.{key}", f"expected {outer} rows")
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != inner:
                raise WorkspaceError(f"{loc}.{key}[{i}]", f"expected {inner} vectors")
            out.append(tuple(_parse_vector(cell, dim, f"{loc}.{key}[{i}][{j}]")
                             for j, cell in enumerate(row)))
        return tuple(out)

    left = parse_action("left_action", alg_a.dim, dim)
    right = parse_action("right_action", dim, alg_b.dim)
    return Bimodule(alg_a, alg_b, dim, left, right)


@dataclass
class Workspace:
    """Parsed document: named objects plus raw triangular/sequence specs.

    Triangular algebras are built on demand because building runs the
    mathematical validators, whose failures belong to the caller."""

    algebras: dict
    bimodules: dict
    triangular_specs: dict
    sequence_specs: dict
    _built: dict = field(default_factory=dict)

    def triangular_names(self):
        return sorted(self.triangular_specs)

    def triangular(self, name: str) -> TriangularAlgebra:
        """Build (and cache) a named triangular algebra.

        Raises KeyError for unknown names (caller turns this into an input
        error) and ValueError subtypes when mathematical validation fails
        (caller turns those into check failures)."""
        if name not in self.triangular_specs:
            raise KeyError(name)
        if name not in self._built:
            spec = self.triangular_specs[name]
            bm = self.bimodules[spec["m"]]
            self._built[name] = build_triangular(bm.algebra_a, bm, bm.algebra_b,
                                                 name=name)
        return self._built[name]

    def sequence(self, name: str):
        """Return (triangular name, HigherMapSequence) for a stored sequence."""
        if name not in self.sequence_specs:
            raise KeyError(name)
        spec = self.sequence_specs[name]
        return spec["on"], HigherMapSequence(spec["kind"], spec["levels"])


def load_document(doc) -> Workspace:
    if not isinstance(doc, dict):
        raise WorkspaceError("$", "the top level must be an object")
    _require_keys(doc, {"algebras", "bimodules", "triangulars", "sequences"},
                  set(), "$")
    algebras = {}
    for name, spec in sorted(doc.get("algebras", {}).items()):
        algebras[name] = _parse_algebra(name, spec)
    bimodules = {}
    for name, spec in sorted(doc.get("bimodules", {}).items()):
        bimodules[name] = _parse_bimodule(name, spec, algebras)

    triangular_specs = {}
    for name, spec in sorted(doc.get("triangulars", {}).items()):
        loc = f"triangulars.{name}"
        _require_keys(spec, {"a", "m", "b"}, {"a", "m", "b"}, loc)
        if spec["m"] not in bimodules:
            raise WorkspaceError(f"{loc}.m", f"unknown bimodule {spec['m']!r}")
        bm = bimodules[spec["m"]]
        for side, alg in (("a", bm.algebra_a), ("b", bm.algebra_b)):
            if spec[side] not in algebras:
                raise WorkspaceError(f"{loc}.{side}", f"unknown algebra {spec[side]!r}")
            if algebras[spec[side]] is not alg:
                raise WorkspaceError(
                    f"{loc}.{side}",
                    f"algebra {spec[side]!r} is not the {side!r}-side algebra of bimodule {spec['m']!r}")
        triangular_specs[name] = dict(spec)

    sequence_specs = {}
    for name, spec in sorted(doc.get("sequences", {}).items()):
        loc = f"sequences.{name}"
        _require_keys(spec, {"on", "kind", "levels"}, {"on", "kind", "levels"}, loc)
        if spec["on"] not in triangular_specs:
            raise WorkspaceError(f"{loc}.on", f"unknown triangular algebra {spec['on']!r}")
        if spec["kind"] not in KINDS:
            raise WorkspaceError(f"{loc}.kind", f"kind must be one of {sorted(KINDS)}")
        levels = spec["levels"]
        if not isinstance(levels, list) or not levels:
            raise WorkspaceError(f"{loc}.levels", "expected a non-empty list of matrices")
        tri_spec = triangular_specs[spec["on"]]
        dim = (bimodules[tri_spec["m"]].algebra_a.dim
               + bimodules[tri_spec["m"]].dim_m
               + bimodules[tri_spec["m"]].algebra_b.dim)
        maps = []
        for n, rows in enumerate(levels):
            if not isinstance(rows, list) or len(rows) != dim:
                raise WorkspaceError(f"{loc}.levels[{n}]", f"expected a {dim}x{dim} matrix")
            grid = tuple(_parse_vector(r, dim, f"{loc}.levels[{n}][{i}]")
                         for i, r in enumerate(rows))
            maps.append(LinearMap(dim, dim, Matrix(dim, dim, grid)))
        sequence_specs[name] = {"on": spec["on"], "kind": spec["kind"],
                                "levels": tuple(maps)}

    return Workspace(algebras, bimodules, triangular_specs, sequence_specs)


def load_file(path: str) -> Workspace:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise WorkspaceError(path, f"cannot read file: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return load_document(doc)


# ---------------------------------------------------------------------------
# serialization helpers (exact scalars as strings)

def scalar_str(x) -> str:
    return str(x)


def vector_json(v):
    return [scalar_str(x) for x in v]


def matrix_json(m: Matrix):
    return [vector_json(row) for row in m.entries]


def algebra_json(alg: Algebra):
    return {
        "dim": alg.dim,
        "table": [[vector_json(alg.struct_consts[i][j]) for j in range(alg.dim)]
                  for i in range(alg.dim)],
        "unit": vector_json(alg.unit),
    }


def bimodule_json(bm: Bimodule, left_name: str, right_name: str):
    return {
        "left": left_name,
        "right": right_name,
        "dim": bm.dim_m,
        "left_action": [[vector_json(bm.left_action[i][j]) for j in range(bm.dim_m)]
                        for i in range(bm.algebra_a.dim)],
        "right_action": [[vector_json(bm.right_action[j][i]) for i in range(bm.algebra_b.dim)]
                         for j in range(bm.dim_m)],
    }


def triangular_document(tri: TriangularAlgebra, name: str):
    """Self-contained workspace document describing one triangular algebra."""
    return {
        "algebras": {
            "a": algebra_json(tri.part_a),
            "b": algebra_json(tri.part_b),
        },
        "bimodules": {
            "m": bimodule_json(tri.bimodule, "a", "b"),
        },
        "triangulars": {
            name: {"a": "a", "m": "m", "b": "b"},
        },
        "sequences": {},
    }


def sequence_json(seq: HigherMapSequence, on: str):
    return {
        "on": on,
        "kind": seq.kind,
        "levels": [matrix_json(lm.matrix) for lm in seq.levels],
    }
