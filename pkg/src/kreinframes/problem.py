"""Problem documents: the JSON input format of the CLI.

A problem document declares one Krein space plus named weighted families,
vector frames and operators, with optional tolerance overrides and a seed.
Complex numbers are two-element [re, im] arrays; bare reals are accepted
and normalized.  Matrices are row-major arrays of rows; subspace bases are
given as lists of basis columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import KreinSpace, Operator, Subspace, Tolerances
from .duality import VectorFrame
from .errors import MemberClassificationError, SchemaError, ValidationError
from .fusion import WeightedFamily

__all__ = ["ProblemSpec", "parse_spec", "serialize_spec"]

_TOP_KEYS = {"space", "families", "vector_frames", "operators", "tolerances", "seed"}
_TOL_KEYS = {"tau_sym", "tau_rank", "tau_def", "tau_num"}


@dataclass
class ProblemSpec:
    space: KreinSpace
    families: dict[str, WeightedFamily] = field(default_factory=dict)
    vector_frames: dict[str, VectorFrame] = field(default_factory=dict)
    operators: dict[str, Operator] = field(default_factory=dict)
    tolerances: Tolerances = Tolerances()
    seed: int | None = None


def _scalar(value, where: str) -> complex:
    if isinstance(value, bool):
        raise SchemaError(f"{where}: booleans are not numbers")
    if isinstance(value, (int, float)):
        z = complex(value)
    elif (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)
    ):
        z = complex(value[0], value[1])
    else:
        raise SchemaError(
            f"{where}: expected a number or a [re, im] pair, got {value!r}"
        )
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValidationError(f"{where}: number is not finite")
    return z


def _matrix(rows, where: str, n_cols: int | None = None) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise SchemaError(f"{where}: expected a non-empty array of rows")
    parsed = []
    width = None
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise SchemaError(f"{where}[{i}]: expected a non-empty row")
        entries = [_scalar(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)]
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise SchemaError(f"{where}: rows have inconsistent lengths")
        parsed.append(entries)
    m = np.asarray(parsed, dtype=complex)
    if n_cols is not None and m.shape[1] != n_cols:
        raise SchemaError(f"{where}: expected rows of length {n_cols}")
    return m


def _vector(entries, where: str, n: int) -> np.ndarray:
    if not isinstance(entries, list) or not entries:
        raise SchemaError(f"{where}: expected a non-empty array")
    v = np.asarray([_scalar(x, f"{where}[{i}]") for i, x in enumerate(entries)])
    if v.shape != (n,):
        raise SchemaError(f"{where}: expected a vector of length {n}")
    return v


def parse_spec(source) -> ProblemSpec:
    """Parse and validate a problem document (path, JSON text, or dict)."""
    if isinstance(source, (str, Path)):
        try:
            is_file = Path(str(source)).exists()
        except OSError:
            is_file = False
        text = Path(source).read_text() if is_file else str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    elif isinstance(source, dict):
        doc = source
    else:
        raise SchemaError(f"unsupported problem source of type {type(source)!r}")
    if not isinstance(doc, dict):
        raise SchemaError("the top level of a problem document must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown top-level keys: {sorted(unknown)}")
    if "space" not in doc:
        raise SchemaError("missing required key 'space'")

    tolerances = Tolerances()
    if "tolerances" in doc:
        tdoc = doc["tolerances"]
        if not isinstance(tdoc, dict):
            raise SchemaError("'tolerances' must be an object")
        unknown = set(tdoc) - _TOL_KEYS
        if unknown:
            raise SchemaError(f"unknown tolerance keys: {sorted(unknown)}")
        for k, v in tdoc.items():
            if not isinstance(v, (int, float)) or isinstance(v, bool) or v <= 0:
                raise SchemaError(f"tolerances.{k}: expected a positive number")
        tolerances = Tolerances(**{k: float(v) for k, v in tdoc.items()})

    sdoc = doc["space"]
    if not isinstance(sdoc, dict) or "dim" not in sdoc or "J" not in sdoc:
        raise SchemaError("'space' must be an object with 'dim' and 'J'")
    dim = sdoc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError("space.dim must be a positive integer")
    j = _matrix(sdoc["J"], "space.J", n_cols=dim)
    if j.shape != (dim, dim):
        raise SchemaError(f"space.J must be {dim}x{dim}")
    space = KreinSpace(j, tol=tolerances)  # ValidationError on a bad symmetry

    families: dict[str, WeightedFamily] = {}
    for name, fdoc in _named_section(doc, "families").items():
        if not isinstance(fdoc, dict) or "subspaces" not in fdoc or "weights" not in fdoc:
            raise SchemaError(
                f"families.{name}: expected an object with 'subspaces' and 'weights'"
            )
        if not isinstance(fdoc["subspaces"], list) or not fdoc["subspaces"]:
            raise SchemaError(f"families.{name}.subspaces: expected a non-empty array")
        subspaces = []
        for i, cols in enumerate(fdoc["subspaces"]):
            where = f"families.{name}.subspaces[{i}]"
            if not isinstance(cols, list) or not cols:
                raise SchemaError(f"{where}: expected a non-empty list of columns")
            basis = np.column_stack(
                [_vector(c, f"{where}[{k}]", dim) for k, c in enumerate(cols)]
            )
            subspaces.append(Subspace(space, basis))
        weights = fdoc["weights"]
        if not isinstance(weights, list) or len(weights) != len(subspaces):
            raise SchemaError(
                f"families.{name}.weights: expected {len(subspaces)} numbers"
            )
        weights = [_scalar(w, f"families.{name}.weights[{i}]") for i, w in enumerate(weights)]
        if any(w.imag != 0 for w in weights):
            raise SchemaError(f"families.{name}.weights: weights must be real")
        try:
            families[name] = WeightedFamily(space, subspaces, [w.real for w in weights])
        except MemberClassificationError as exc:
            raise MemberClassificationError(
                exc.index, f"family '{name}': {exc}"
            ) from exc

    vector_frames: dict[str, VectorFrame] = {}
    for name, vdoc in _named_section(doc, "vector_frames").items():
        if not isinstance(vdoc, list) or not vdoc:
            raise SchemaError(f"vector_frames.{name}: expected a non-empty array")
        vectors = [
            _vector(v, f"vector_frames.{name}[{i}]", dim) for i, v in enumerate(vdoc)
        ]
        try:
            vector_frames[name] = VectorFrame(space, vectors)
        except MemberClassificationError as exc:
            raise MemberClassificationError(
                exc.index, f"vector frame '{name}': {exc}"
            ) from exc

    operators: dict[str, Operator] = {}
    for name, mdoc in _named_section(doc, "operators").items():
        m = _matrix(mdoc, f"operators.{name}", n_cols=dim)
        if m.shape != (dim, dim):
            raise SchemaError(f"operators.{name}: expected a {dim}x{dim} matrix")
        operators[name] = Operator(space, m)

    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise SchemaError("'seed' must be an integer")

    return ProblemSpec(space, families, vector_frames, operators, tolerances, seed)


def _named_section(doc, key) -> dict:
    section = doc.get(key, {})
    if not isinstance(section, dict):
        raise SchemaError(f"'{key}' must be an object of named entries")
    for name in section:
        if not isinstance(name, str) or not name:
            raise SchemaError(f"'{key}' entries must have non-empty string names")
    return section


def _num(z: complex):
    return z.real if z.imag == 0.0 else [z.real, z.imag]


def _matrix_doc(m: np.ndarray):
    return [[_num(complex(v)) for v in row] for row in np.asarray(m)]


def serialize_spec(spec: ProblemSpec) -> dict:
    """Normalized document for a parsed problem; parse(serialize(x)) == x."""
    doc = {
        "space": {"dim": spec.space.dim, "J": _matrix_doc(spec.space.J)},
    }
    if spec.families:
        doc["families"] = {
            name: {
                "subspaces": [
                    [[_num(complex(v)) for v in w.basis[:, k]] for k in range(w.dim)]
                    for w in fam.subspaces
                ],
                "weights": list(fam.weights),
            }
            for name, fam in spec.families.items()
        }
    if spec.vector_frames:
        doc["vector_frames"] = {
            name: [
                [_num(complex(v)) for v in vf.matrix[:, i]] for i in range(len(vf))
            ]
            for name, vf in spec.vector_frames.items()
        }
    if spec.operators:
        doc["operators"] = {
            name: _matrix_doc(op.matrix) for name, op in spec.operators.items()
        }
    doc["tolerances"] = {
        "tau_sym": spec.tolerances.tau_sym,
        "tau_rank": spec.tolerances.tau_rank,
        "tau_def": spec.tolerances.tau_def,
        "tau_num": spec.tolerances.tau_num,
    }
    if spec.seed is not None:
        doc["seed"] = spec.seed
    return doc
