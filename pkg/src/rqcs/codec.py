"""JSON envelopes for keys, signatures and attack reports.

Every envelope carries the parameter header {instance, m, n, w, w_r, w_g,
modulus}; vectors are lists of n hex strings, each ceil(m/8) bytes with
bit i of the little-endian byte string holding the coefficient of z^i.
"""

from __future__ import annotations

import json
from pathlib import Path

from .field import validate_modulus
from .params import Params, setup
from .rank import RkVector
from .scheme import PublicKey, SecretKey, Signature


class FormatError(ValueError):
    pass


def vector_to_hex(v: RkVector) -> list[str]:
    nb = v.field.nbytes
    return [c.to_bytes(nb, "little").hex() for c in v.coords]


def vector_from_hex(items, params: Params) -> RkVector:
    F = params.field
    if not isinstance(items, list) or len(items) != params.n:
        raise FormatError(f"expected a list of {params.n} hex strings")
    coords = []
    for item in items:
        try:
            raw = bytes.fromhex(item)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad hex coordinate {item!r}") from exc
        if len(raw) != F.nbytes:
            raise FormatError(f"coordinate {item!r} is not {F.nbytes} bytes")
        c = int.from_bytes(raw, "little")
        if c >> F.m:
            raise FormatError(f"coordinate {item!r} has bits above z^{F.m - 1}")
        coords.append(c)
    return RkVector(F, tuple(coords))


def header(params: Params) -> dict:
    return {
        "instance": params.name,
        "m": params.m,
        "n": params.n,
        "w": params.w,
        "w_r": params.w_r,
        "w_g": params.w_g,
        "modulus": params.modulus.hex,
    }


def params_from_header(doc: dict) -> Params:
    """Rebuild Params; a named instance must match its published values."""
    try:
        m = int(doc["m"])
        dims = dict(m=m, n=int(doc["n"]), w=int(doc["w"]), w_r=int(doc["w_r"]),
                    w_g=int(doc["w_g"]), modulus=validate_modulus(int(doc["modulus"], 16), m))
        name = doc.get("instance", "custom")
        custom = setup("custom", **dims)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad parameter header: {exc}") from exc
    if name == "custom":
        return custom
    try:
        named = setup(name)
    except ValueError as exc:
        raise FormatError(f"bad parameter header: {exc}") from exc
    if (named.m, named.n, named.w, named.w_r, named.w_g, named.modulus) != tuple(dims.values()):
        raise FormatError(f"bad parameter header: values do not match instance {name}")
    return named


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _fields(kind: str, params: Params, **vectors: RkVector) -> dict:
    doc = {"kind": kind, **header(params)}
    for k, v in vectors.items():
        doc[k] = vector_to_hex(v)
    return doc


def keypair_doc(params: Params, pk: PublicKey, sk: SecretKey) -> dict:
    return _fields("keypair", params, h=pk.h, s=pk.s, x=sk.x, y=sk.y)


def public_key_doc(params: Params, pk: PublicKey) -> dict:
    return _fields("public_key", params, h=pk.h, s=pk.s)


def secret_key_doc(params: Params, sk: SecretKey) -> dict:
    return _fields("secret_key", params, x=sk.x, y=sk.y)


def signature_doc(params: Params, sig: Signature) -> dict:
    return _fields("signature", params, g=sig.g, u1=sig.u1, u2=sig.u2)


def _load(doc: dict, kinds: tuple[str, ...], names: tuple[str, ...]):
    if doc.get("kind") not in kinds:
        raise FormatError(f"expected a {' or '.join(kinds)} document, got {doc.get('kind')!r}")
    params = params_from_header(doc)
    try:
        vecs = [vector_from_hex(doc[k], params) for k in names]
    except KeyError as exc:
        raise FormatError(f"missing field {exc}") from exc
    return params, vecs


def public_key_from_doc(doc: dict) -> tuple[Params, PublicKey]:
    params, (h, s) = _load(doc, ("public_key", "keypair"), ("h", "s"))
    return params, PublicKey(h, s)


def secret_key_from_doc(doc: dict) -> tuple[Params, SecretKey]:
    params, (x, y) = _load(doc, ("secret_key", "keypair"), ("x", "y"))
    return params, SecretKey(x, y)


def signature_from_doc(doc: dict) -> tuple[Params, Signature]:
    params, (g, u1, u2) = _load(doc, ("signature",), ("g", "u1", "u2"))
    return params, Signature(g, u1, u2)


def read_json(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return doc


def write_json(path, doc: dict) -> None:
    Path(path).write_text(dumps(doc))
