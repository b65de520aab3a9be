"""Parameter sets and their validation."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .field import Field, FieldModulus, default_modulus


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    name: str
    m: int
    n: int
    w: int
    w_r: int
    w_g: int
    modulus: FieldModulus
    security: int | None = None
    q: int = 2

    def __post_init__(self):
        if self.q != 2:
            raise ParameterError("only q = 2 is supported")
        if self.modulus.m != self.m:
            raise ParameterError(f"modulus degree {self.modulus.m} != m = {self.m}")
        if min(self.n, self.w, self.w_g) < 1 or self.w_r < 0:
            raise ParameterError("need n, w, w_g >= 1 and w_r >= 0")
        bound = self.w * self.w_g + self.w_r
        if not bound < min(self.m, self.n):
            raise ParameterError(
                f"w*w_g + w_r < min(m, n) fails: {bound} >= min({self.m}, {self.n})"
            )
        if not self.m > 2 * self.w:
            raise ParameterError(f"m > 2w fails: m={self.m}, w={self.w}")

    @property
    def field(self) -> Field:
        return Field.for_modulus(self.modulus)

    @property
    def u_bound(self) -> int:
        """Largest rank weight verify accepts for u1 and u2."""
        return self.w * self.w_g + self.w_r

    @property
    def tuple4(self) -> tuple[int, int, int, int]:
        return (self.q, self.m, self.n, self.w)

    def digest(self) -> bytes:
        desc = f"{self.q},{self.m},{self.n},{self.w},{self.w_r},{self.w_g},{self.modulus.hex}"
        return hashlib.sha3_256(desc.encode()).digest()

    def describe(self) -> dict:
        return {
            "instance": self.name,
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "w": self.w,
            "w_r": self.w_r,
            "w_g": self.w_g,
            "modulus": self.modulus.hex,
            "claimed_security": self.security,
        }


# (m, n, w = w_r = w_g, claimed security bits)
INSTANCES = {
    "rqcs-1": (89, 67, 5, 128),
    "rqcs-2": (121, 97, 6, 192),
    "rqcs-3": (139, 101, 6, 256),
}


def setup(instance: str = "custom", *, m=None, n=None, w=None, w_r=None, w_g=None,
          modulus: FieldModulus | None = None) -> Params:
    key = instance.lower()
    if key in INSTANCES:
        m, n, w, sec = INSTANCES[key]
        return Params(key, m, n, w, w, w, default_modulus(m), sec)
    if key != "custom":
        raise ParameterError(f"unknown instance {instance!r}")
    if None in (m, n, w, w_r, w_g):
        raise ParameterError("custom parameters need m, n, w, w_r and w_g")
    return Params("custom", m, n, w, w_r, w_g, modulus or default_modulus(m))
