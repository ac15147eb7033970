"""JSON interchange formats.

Delta-set file:
    { "dims": N, "simplices": { "0": [names...], ... },
      "faces": { name: [face_0, ..., face_n] } }
Based Delta-sets add "based": true and use the literal face entry "*" for
the basepoint.  Morphism file:
    { "source": path, "target": path, "map": { name: name-or-"*" } }
Chain-complex file:
    { "degrees": [lo, hi], "ranks": [...],
      "boundaries": { "k": row-major matrix of d_k : C_k -> C_{k-1} } }
Certificate file: ordered move list with simplex names and face indices.

Loaders validate and refuse invalid files (SchemaError).
"""

from __future__ import annotations

import json
import os

from .delta import DeltaSet, DeltaMorphism, validate
from .based import BasedDeltaSet, BasedMorphism, validate_based
from .homology import ChainComplex
from .moves import Move, ExpansionCertificate

BASEPOINT = "*"


class SchemaError(ValueError):
    """Malformed interchange file."""


def delta_to_dict(K):
    based = isinstance(K, BasedDeltaSet)
    faces = {}
    for d, s in K.all_cells():
        if d == 0:
            continue
        faces[s] = [BASEPOINT if f is None else f for f in K.faces[s]]
    out = {
        "dims": K.top_dim,
        "simplices": {str(d): list(K.simplices[d]) for d in sorted(K.simplices)},
        "faces": faces,
    }
    if based:
        out["based"] = True
    return out


def delta_from_dict(data):
    try:
        based = bool(data.get("based", False))
        simplices = {int(d): list(names)
                     for d, names in data.get("simplices", {}).items()}
        raw_faces = data.get("faces", {})
    except (TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"malformed Delta-set file: {exc}") from None
    for d, names in simplices.items():
        for s in names:
            if not isinstance(s, str) or s == BASEPOINT:
                raise SchemaError(f"bad simplex name {s!r}")
    faces = {}
    for s, fs in raw_faces.items():
        if based:
            faces[s] = tuple(None if f == BASEPOINT else f for f in fs)
        else:
            if any(f == BASEPOINT for f in fs):
                raise SchemaError("'*' face entry in an unbased file")
            faces[s] = tuple(fs)
    try:
        if based:
            K = BasedDeltaSet(simplices, faces)
            report = validate_based(K)
        else:
            K = DeltaSet(simplices, faces)
            report = validate(K)
    except ValueError as exc:
        raise SchemaError(f"invalid Delta-set: {exc}") from None
    if report:
        raise SchemaError(f"semisimplicial identity fails: {report[:3]}")
    return K


def write_delta(K, path):
    with open(path, "w") as fh:
        json.dump(delta_to_dict(K), fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_delta(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {path}: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError(f"not a Delta-set file: {path}")
    return delta_from_dict(data)


def morphism_to_dict(f, source_path, target_path):
    mapping = {s: (BASEPOINT if t is None else t)
               for s, t in f.mapping.items()}
    return {"source": source_path, "target": target_path, "map": mapping}


def read_morphism(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {path}: {exc}") from None
    if not isinstance(data, dict) or "map" not in data:
        raise SchemaError(f"not a morphism file: {path}")
    base = os.path.dirname(os.path.abspath(path))
    src = read_delta(os.path.join(base, data["source"]))
    tgt = read_delta(os.path.join(base, data["target"]))
    based = isinstance(src, BasedDeltaSet)
    if based != isinstance(tgt, BasedDeltaSet):
        raise SchemaError("morphism mixes based and unbased Delta-sets")
    mapping = {s: (None if t == BASEPOINT else t)
               for s, t in data["map"].items()}
    try:
        if based:
            return BasedMorphism(src, tgt, mapping)
        return DeltaMorphism(src, tgt, mapping)
    except ValueError as exc:
        raise SchemaError(f"invalid morphism: {exc}") from None


def complex_to_dict(C):
    ranks = [C.rank(k) for k in range(C.lo, C.hi + 1)]
    boundaries = {}
    for k in range(C.lo, C.hi + 1):
        if C.rank(k) and C.rank(k - 1):
            boundaries[str(k)] = C.boundary_dense(k)
    return {"degrees": [C.lo, C.hi], "ranks": ranks, "boundaries": boundaries}


def complex_from_dict(data):
    try:
        lo, hi = data["degrees"]
        ranks = {lo + i: int(r) for i, r in enumerate(data["ranks"])}
        d = {}
        for k, rows in data.get("boundaries", {}).items():
            k = int(k)
            coo = {}
            for r, row in enumerate(rows):
                for c, v in enumerate(row):
                    if v:
                        coo[(r, c)] = int(v)
            d[k] = coo
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed complex file: {exc}") from None
    try:
        return ChainComplex(lo, hi, ranks, d)
    except ValueError as exc:
        raise SchemaError(f"invalid complex: {exc}") from None


def read_complex(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {path}: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError(f"not a complex file: {path}")
    return complex_from_dict(data)


def write_complex(C, path):
    with open(path, "w") as fh:
        json.dump(complex_to_dict(C), fh, indent=1, sort_keys=True)
        fh.write("\n")


def certificate_to_dict(cert):
    return {
        "moves": [
            {"direction": m.direction, "e": m.e, "i": m.i,
             "e_faces": list(m.e_faces), "f_faces": list(m.f_faces)}
            for m in cert.moves],
        "base": delta_to_dict(cert.base),
        "result": delta_to_dict(cert.result),
    }


def certificate_from_dict(data):
    try:
        base = delta_from_dict(data["base"])
        result = delta_from_dict(data["result"])
        moves = [Move(m["direction"], m["e"], int(m["i"]),
                      tuple(m["e_faces"]), tuple(m["f_faces"]))
                 for m in data["moves"]]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed certificate: {exc}") from None
    return ExpansionCertificate(base, moves, result)


def write_certificate(cert, path):
    with open(path, "w") as fh:
        json.dump(certificate_to_dict(cert), fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_certificate(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {path}: {exc}") from None
    return certificate_from_dict(data)
