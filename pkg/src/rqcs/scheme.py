"""The RQCS signature scheme: key generation, signing, verification."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .params import Params
from .qc import pair_product, rot_product
from .rank import RkVector, random_vector, rank_weight, sample_rank_vector
from .xof import Xof

HASH_TAG = b"RQCS-H/v1"


@dataclass(frozen=True)
class PublicKey:
    h: RkVector
    s: RkVector


@dataclass(frozen=True)
class SecretKey:
    x: RkVector
    y: RkVector


@dataclass(frozen=True)
class Signature:
    g: RkVector
    u1: RkVector
    u2: RkVector


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"

    def __bool__(self):
        return self.ok


def keygen(params: Params, rng) -> tuple[PublicKey, SecretKey]:
    F = params.field
    h = random_vector(rng, F, params.n)
    x = sample_rank_vector(rng, F, params.n, params.w)
    y = sample_rank_vector(rng, F, params.n, params.w)
    s = x + rot_product(h, y)
    return PublicKey(h, s), SecretKey(x, y)


def _encode_vector(v: RkVector) -> bytes:
    nb = v.field.nbytes
    return b"".join(c.to_bytes(nb, "little") for c in v.coords)


def hash_to_rank_vector(commitment: RkVector, msg: bytes, params: Params) -> RkVector:
    """Map (I, msg) to a vector of rank weight exactly w_g.

    SHAKE-256 over a domain tag, the parameter digest, I and msg seeds the
    same rejection sampler used for secret vectors.
    """
    h = hashlib.sha3_256()
    h.update(HASH_TAG)
    h.update(params.digest())
    h.update(_encode_vector(commitment))
    h.update(len(msg).to_bytes(8, "little"))
    h.update(msg)
    return sample_rank_vector(Xof(h.digest()), params.field, params.n, params.w_g)


def sign(sk: SecretKey, pk: PublicKey, msg: bytes, params: Params, rng) -> Signature:
    F, n = params.field, params.n
    r1 = sample_rank_vector(rng, F, n, params.w_r)
    r2 = sample_rank_vector(rng, F, n, params.w_r)
    commitment = r1 + rot_product(pk.h, r2)
    g = hash_to_rank_vector(commitment, msg, params)
    xg, yg = pair_product((sk.x, sk.y), g)
    return Signature(g, xg + r1, yg + r2)


def verify(pk: PublicKey, msg: bytes, sig: Signature, params: Params) -> Verdict:
    F, n = params.field, params.n
    for name, v in (("h", pk.h), ("s", pk.s), ("g", sig.g), ("u1", sig.u1), ("u2", sig.u2)):
        if v.field != F or v.n != n:
            return Verdict(False, f"malformed {name}: expected length {n} over GF(2^{F.m})")
    bound = params.u_bound
    if rank_weight(sig.u1) > bound:
        return Verdict(False, f"rank weight of u1 exceeds {bound}")
    if rank_weight(sig.u2) > bound:
        return Verdict(False, f"rank weight of u2 exceeds {bound}")
    commitment = sig.u1 + rot_product(pk.h, sig.u2) - rot_product(pk.s, sig.g)
    if hash_to_rank_vector(commitment, msg, params) != sig.g:
        return Verdict(False, "hash mismatch")
    return Verdict(True)
