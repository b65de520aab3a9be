"""Arithmetic in GF(2^m) = GF(2)[z]/(f(z)).

Elements are plain Python ints: bit i holds the coefficient of z^i.  The
:class:`Field` object carries the modulus and does the arithmetic on those
ints; :class:`FieldElement` is a thin checked wrapper for callers that want
operator syntax and modulus-mismatch errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources


class FieldError(ValueError):
    pass


class ReducibleModulusError(FieldError):
    """Raised for a reducible modulus; ``factor_degree`` is the degree of its
    smallest irreducible factor."""

    def __init__(self, poly: int, factor_degree: int):
        self.poly = poly
        self.factor_degree = factor_degree
        super().__init__(
            f"polynomial 0x{poly:x} is reducible (has a factor of degree {factor_degree})"
        )


# --- polynomial arithmetic over GF(2), polynomials as ints -----------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[z] polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_divmod(a: int, f: int) -> tuple[int, int]:
    if f == 0:
        raise ZeroDivisionError("polynomial division by zero")
    df = f.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= df:
        shift = a.bit_length() - 1 - df
        q ^= 1 << shift
        a ^= f << shift
    return q, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _square_mod(a: int, f: int) -> int:
    return poly_mod(clmul(a, a), f)


def _frobenius_powers(f: int, count: int) -> list[int]:
    """[z^(2^1), z^(2^2), ..., z^(2^count)] reduced mod f."""
    out = []
    t = poly_mod(0b10, f)
    for _ in range(count):
        t = _square_mod(t, f)
        out.append(t)
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's irreducibility test over GF(2)."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    z = 0b10
    frob = _frobenius_powers(f, m)
    if frob[-1] != poly_mod(z, f):
        return False
    for p in _prime_factors(m):
        t = frob[m // p - 1] ^ poly_mod(z, f)
        if poly_gcd(f, t) != 1:
            return False
    return True


def smallest_factor_degree(f: int) -> int:
    """Degree of the smallest irreducible factor (distinct-degree scan)."""
    m = f.bit_length() - 1
    if m < 1:
        raise FieldError("constant polynomial has no factors")
    t = poly_mod(0b10, f)
    for d in range(1, m // 2 + 1):
        t = _square_mod(t, f)
        if poly_gcd(f, t ^ 0b10) != 1:
            return d
    return m


# --- moduli ----------------------------------------------------------------

@dataclass(frozen=True)
class FieldModulus:
    m: int
    poly: int

    @property
    def hex(self) -> str:
        return f"{self.poly:x}"


def validate_modulus(poly: int, m: int) -> FieldModulus:
    """Return the modulus if ``poly`` has degree ``m`` and is irreducible."""
    if poly.bit_length() - 1 != m:
        raise FieldError(f"polynomial 0x{poly:x} does not have degree {m}")
    if not poly & 1:
        # z divides it (or it is z itself, which we also refuse)
        raise ReducibleModulusError(poly, 1)
    if not is_irreducible(poly):
        raise ReducibleModulusError(poly, smallest_factor_degree(poly))
    return FieldModulus(m, poly)


def find_low_weight_irreducible(m: int) -> int:
    """Lowest-weight irreducible of degree m, smallest middle terms first."""
    base = (1 << m) | 1
    if m == 1:
        return 0b11
    for k in range(1, m):
        if is_irreducible(base | (1 << k)):
            return base | (1 << k)
    for a in range(3, m):
        for b in range(2, a):
            for c in range(1, b):
                f = base | (1 << a) | (1 << b) | (1 << c)
                if is_irreducible(f):
                    return f
    raise FieldError(f"no irreducible pentanomial of degree {m}")  # pragma: no cover


@lru_cache(maxsize=None)
def _modulus_table() -> dict[int, int]:
    text = resources.files("rqcs").joinpath("data/moduli.json").read_text()
    return {e["m"]: int(e["f"], 16) for e in json.loads(text)["moduli"]}


@lru_cache(maxsize=None)
def default_modulus(m: int) -> FieldModulus:
    """Pinned modulus for ``m`` (re-verified), or a searched one if unpinned."""
    poly = _modulus_table().get(m)
    if poly is None:
        poly = find_low_weight_irreducible(m)
    return validate_modulus(poly, m)


# --- the field -------------------------------------------------------------

class Field:
    """GF(2^m) with a fixed modulus; arithmetic on int-encoded elements."""

    def __init__(self, modulus: FieldModulus):
        self.modulus = modulus
        self.m = modulus.m
        self.poly = modulus.poly
        self.order = 1 << self.m
        self.nbytes = (self.m + 7) // 8

    @classmethod
    def of_degree(cls, m: int) -> "Field":
        return _field_for(default_modulus(m))

    @classmethod
    def for_modulus(cls, modulus: FieldModulus) -> "Field":
        return _field_for(modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"Field(m={self.m}, f=0x{self.poly:x})"

    @cached_property
    def reduction_table(self) -> tuple[int, ...]:
        """z^(m+e) mod f for e = 0 .. m-2."""
        t = poly_mod(1 << self.m, self.poly)
        out = []
        for _ in range(self.m - 1):
            out.append(t)
            t = t << 1
            if t >> self.m:
                t ^= self.poly
        return tuple(out)

    def reduce(self, a: int) -> int:
        return poly_mod(a, self.poly)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return poly_mod(clmul(a, b), self.poly)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        # extended Euclid on (f, a)
        r0, r1 = self.poly, a
        s0, s1 = 0, 1
        while r1 != 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ clmul(q, s1)
        return poly_mod(s1, self.poly)

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)


@lru_cache(maxsize=None)
def _field_for(modulus: FieldModulus) -> Field:
    return Field(modulus)


class FieldElement:
    """An element bound to its field; mixing fields raises ``FieldError``."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        if value < 0 or value >> field.m:
            value = field.reduce(value) if value >= 0 else None
            if value is None:
                raise FieldError("negative field element encoding")
        self.field = field
        self.value = value

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError("modulus mismatch")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement(0x{self.value:x}, m={self.field.m})"


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
