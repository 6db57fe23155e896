"""Interchange files: modules, triples, and report emission.

JSON with complex matrix entries encoded as [re, im] pairs.  Floats are
written with 17 significant digits so every double round-trips exactly and
repeated runs emit byte-identical files.  NaN and Inf are rejected on both
paths.
"""

from __future__ import annotations

import numpy as np

from .errors import SchemaError
from .fredholm import AXIOM_TOL, FredholmModule, validate_axioms
from .groups import GroupSpec, group_from_spec
from .lift import SpectralTriple


def _fmt(x: float) -> str:
    if not np.isfinite(x):
        raise SchemaError("NaN/Inf cannot be serialized")
    return format(float(x), ".17g")


def _dump(obj, pieces: list[str]):
    # tiny deterministic JSON writer so float formatting is under our control
    if obj is None:
        pieces.append("null")
    elif obj is True:
        pieces.append("true")
    elif obj is False:
        pieces.append("false")
    elif isinstance(obj, str):
        import json

        pieces.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        pieces.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        pieces.append(_fmt(float(obj)))
    elif isinstance(obj, dict):
        pieces.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if not isinstance(k, str):
                raise SchemaError(f"non-string key {k!r}")
            if i:
                pieces.append(", ")
            _dump(k, pieces)
            pieces.append(": ")
            _dump(v, pieces)
        pieces.append("}")
    elif isinstance(obj, (list, tuple)):
        pieces.append("[")
        for i, v in enumerate(obj):
            if i:
                pieces.append(", ")
            _dump(v, pieces)
        pieces.append("]")
    else:
        raise SchemaError(f"cannot serialize {type(obj).__name__}")
    return pieces


def dumps(obj) -> str:
    return "".join(_dump(obj, []))


def write_json(obj, path):
    with open(path, "w") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def write_csv(rows: list[dict], path, columns: list[str]):
    """Fixed column order, header row, 17-digit floats."""
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            val = row[col]
            if isinstance(val, bool):
                cells.append("true" if val else "false")
            elif isinstance(val, (float, np.floating)):
                cells.append(_fmt(val))
            else:
                cells.append(str(val))
        lines.append(",".join(cells))
    with open(path, "w") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def encode_matrix(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise SchemaError("matrix contains NaN/Inf")
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def decode_matrix(obj, dim: int, name: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"field {name}: not a numeric matrix") from exc
    if arr.shape != (dim, dim, 2):
        raise SchemaError(f"field {name}: expected shape ({dim}, {dim}, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"field {name}: contains NaN/Inf")
    return arr[..., 0] + 1j * arr[..., 1]


def _group_to_json(spec: GroupSpec) -> dict:
    if spec.kind == "free-abelian":
        return {"kind": "free-abelian", "rank": spec.rank}
    return {"kind": "cyclic", "order": spec.order}


def _group_from_json(obj, labels: tuple[str, ...]) -> GroupSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("group field must carry a 'kind'")
    kind = obj["kind"]
    try:
        if kind == "free-abelian":
            return GroupSpec(kind=kind, rank=int(obj["rank"]), generator_labels=labels)
        if kind == "cyclic":
            return GroupSpec(kind=kind, order=int(obj["order"]), generator_labels=labels)
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"malformed group spec: {obj!r}") from exc
    raise SchemaError(f"unknown group kind {kind!r}")


def save_module(module: FredholmModule, path):
    doc = {
        "dim": module.dim,
        "F": encode_matrix(module.F),
        "unitaries": {lab: encode_matrix(u) for lab, u in module.unitaries.items()},
        "group": _group_to_json(module.group.spec),
        "interior_mask": [int(i) for i in module.interior_mask],
        "metadata": module.metadata,
    }
    write_json(doc, path)


def load_module(path, tol: float = AXIOM_TOL) -> FredholmModule:
    """Read and hard-validate a module file.

    Axiom residuals above tolerance are a failure naming the residual; the
    residuals of a passing module are recorded in its metadata.
    """
    import json

    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    for field_name in ("dim", "F", "unitaries", "group"):
        if field_name not in doc:
            raise SchemaError(f"missing field {field_name!r}")
    dim = int(doc["dim"])
    if dim < 1:
        raise SchemaError("dim must be positive")
    f_op = decode_matrix(doc["F"], dim, "F")
    if not isinstance(doc["unitaries"], dict) or not doc["unitaries"]:
        raise SchemaError("unitaries must be a non-empty mapping")
    unitaries = {
        lab: decode_matrix(mat, dim, f"unitaries[{lab}]")
        for lab, mat in doc["unitaries"].items()
    }
    labels = tuple(unitaries.keys())
    spec = _group_from_json(doc["group"], labels)
    group = group_from_spec(spec)
    mask = doc.get("interior_mask")
    interior = np.asarray(mask if mask is not None else range(dim), dtype=int)
    if interior.size and (interior.min() < 0 or interior.max() >= dim):
        raise SchemaError("interior_mask indices out of range")
    metadata = dict(doc.get("metadata") or {})
    module = FredholmModule(dim, f_op, unitaries, group, interior, metadata)
    from .fredholm import require_valid

    residuals = require_valid(module, tol)
    module.metadata["axiom_residuals"] = {
        k: float(v) for k, v in residuals.items() if k != "max"
    }
    return module


def save_triple(triple: SpectralTriple, path):
    doc = {
        "dim": triple.D.shape[0],
        "D": encode_matrix(triple.D),
        "absD": encode_matrix(triple.absD),
        "F": encode_matrix(triple.F),
        "P0": encode_matrix(triple.P0),
        "theta": encode_matrix(triple.theta),
        "provenance": triple.provenance,
    }
    write_json(doc, path)


def load_triple(path) -> SpectralTriple:
    import json

    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    for field_name in ("dim", "D", "absD", "F", "P0", "theta"):
        if field_name not in doc:
            raise SchemaError(f"missing field {field_name!r}")
    dim = int(doc["dim"])
    mats = {
        name: decode_matrix(doc[name], dim, name)
        for name in ("D", "absD", "F", "P0", "theta")
    }
    p1 = np.eye(dim, dtype=complex) - mats["P0"]
    return SpectralTriple(
        mats["D"], mats["absD"], mats["F"], mats["P0"], p1, mats["theta"],
        dict(doc.get("provenance") or {}),
    )
