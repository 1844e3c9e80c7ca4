"""Finite field towers GF(p) < GF(q) < GF(q^3) with table arithmetic.

Elements of every field are encoded as integers.  For an extension of degree
``d`` over a base field of size ``r`` the element ``c_0 + c_1 t + ... +
c_{d-1} t^{d-1}`` is stored as ``c_0 + c_1 r + ... + c_{d-1} r^{d-1}``, so the
base-``r`` digits of the integer are the coordinates over the base field.  In
particular theta (coordinates of an element of GF(q^3) over GF(q) in the basis
1, tau, tau^2) is plain digit extraction.

All arithmetic goes through dense ``order x order`` lookup tables, which stay
small for the fields used here (at most 125 x 125 for q = 5).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

__all__ = [
    "FiniteField",
    "FieldElement",
    "FieldSpec",
    "Params",
    "field_tower",
    "params_for",
    "is_prime",
    "prime_power",
    "theta",
    "theta_inv",
    "frobenius",
    "frobenius_matrix",
    "multiplication_matrix",
    "cube_roots_of_unity",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p**k``; raise ``ValueError`` otherwise."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


class FiniteField:
    """A finite field with integer-encoded elements and lookup tables.

    ``base`` is the field this one was built over (``None`` for a prime
    field) and ``modulus`` the monic defining polynomial over ``base`` as a
    coefficient tuple, constant term first.
    """

    def __init__(self, order, char, add, mul, base=None, modulus=None, name=None):
        self.order = int(order)
        self.char = int(char)
        self.add = add
        self.mul = mul
        self.base = base
        self.modulus = modulus
        self.degree = 1 if modulus is None else len(modulus) - 1
        self.name = name or f"GF({order})"
        elems = np.arange(self.order)
        zero_col = add == 0
        self.neg = np.argmax(zero_col, axis=1).astype(np.int64)
        self.sub = add[elems[:, None], self.neg[None, :]]
        one_col = mul == 1
        inv = np.argmax(one_col, axis=1).astype(np.int64)
        inv[0] = 0
        self.inv = inv
        for t in (self.add, self.mul, self.sub):
            t.setflags(write=False)
        self.is_prime = modulus is None

    def __repr__(self) -> str:
        return f"FiniteField({self.name})"

    @classmethod
    def prime(cls, p: int) -> "FiniteField":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        e = np.arange(p)
        return cls(p, p, (e[:, None] + e[None, :]) % p, (e[:, None] * e[None, :]) % p)

    @classmethod
    def extension(cls, base: "FiniteField", modulus) -> "FiniteField":
        """Build ``base[t]/(modulus)``; ``modulus`` must be monic and primitive."""
        modulus = tuple(int(c) for c in modulus)
        d = len(modulus) - 1
        r = base.order
        order = r**d
        if d == 1:
            # A degree-one extension is the base field itself.
            return cls(r, base.char, base.add.copy(), base.mul.copy(), base, modulus)
        # Successive powers of t give exp/log tables (t is primitive).
        exp = np.zeros(order - 1, dtype=np.int64)
        coeffs = [1] + [0] * (d - 1)
        weights = r ** np.arange(d)
        for i in range(order - 1):
            exp[i] = int(np.dot(coeffs, weights))
            coeffs = _times_t(base, coeffs, modulus)
        if len(set(exp.tolist())) != order - 1:
            raise ValueError("modulus is not primitive")
        log = np.zeros(order, dtype=np.int64)
        log[exp] = np.arange(order - 1)
        elems = np.arange(order)
        digits = (elems[:, None] // weights[None, :]) % r
        summed = base.add[digits[:, None, :], digits[None, :, :]]
        add = summed @ weights
        mul = exp[(log[:, None] + log[None, :]) % (order - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        field = cls(order, base.char, add, mul, base, modulus)
        field.exp = exp
        field.log = log
        return field

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[x]`` are the coordinates of ``x`` over the base field."""
        r = self.base.order if self.base is not None else self.order
        w = r ** np.arange(self.degree)
        return (np.arange(self.order)[:, None] // w[None, :]) % r

    def power(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        result, base, e0 = 1, int(x), e % (self.order - 1)
        while e0:
            if e0 & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            e0 >>= 1
        return result

    @cached_property
    def frob(self) -> np.ndarray:
        """Table of ``x -> x**r`` where ``r`` is the size of the base field."""
        r = self.base.order if self.base is not None else self.order
        return np.array([self.power(x, r) for x in range(self.order)], dtype=np.int64)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, int(value))


def _times_t(base: FiniteField, coeffs: list[int], modulus: tuple[int, ...]) -> list[int]:
    d = len(modulus) - 1
    top = coeffs[-1]
    shifted = [0] + coeffs[:-1]
    # t^d = -(m_0 + ... + m_{d-1} t^{d-1})
    return [int(base.sub[shifted[i], base.mul[top, modulus[i]]]) for i in range(d)]


@dataclass(frozen=True)
class FieldElement:
    """A single element, for readable scalar code; bulk work uses raw ints."""

    field: FiniteField
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not an element of {self.field.name}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits[self.value])

    def _check(self, other: "FieldElement") -> None:
        if other.field is not self.field:
            raise TypeError("operands live in different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.add[self.value, other.value]))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.sub[self.value, other.value]))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field, int(self.field.mul[self.value, other.value]))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg[self.value]))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.value, e))

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(self.field, int(self.field.inv[self.value]))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.field.name}:{self.value}"


def _monic_polys(field: FiniteField, degree: int):
    # Low-degree coefficient most significant, as in the tuple order.
    for low in itertools.product(range(field.order), repeat=degree):
        yield low + (1,)


def _is_primitive(field: FiniteField, poly: tuple[int, ...]) -> bool:
    d = len(poly) - 1
    order = field.order**d - 1
    if d == 1:
        root = int(field.neg[poly[0]])
        if root == 0:
            return False
        x, k = root, 1
        while x != 1:
            x = int(field.mul[x, root])
            k += 1
        return k == order
    coeffs = [1] + [0] * (d - 1)
    one = coeffs[:]
    for m in range(1, order + 1):
        coeffs = _times_t(field, coeffs, poly)
        if coeffs == one:
            return m == order
    return False


def smallest_primitive(field: FiniteField, degree: int) -> tuple[int, ...]:
    for poly in _monic_polys(field, degree):
        if _is_primitive(field, poly):
            return poly
    raise ValueError("no primitive polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The tower GF(p) < GF(q) < GF(q^3).

    ``tau`` is the class of the indeterminate in GF(q^3); with the integer
    encoding it is the element ``q``.
    """

    p: int
    k: int
    base_poly: tuple[int, ...]
    cubic_poly: tuple[int, ...]
    prime: FiniteField
    mid: FiniteField
    top: FiniteField

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def tau(self) -> int:
        return self.q

    @property
    def params(self) -> "Params":
        return params_for(self.q)


@lru_cache(maxsize=None)
def field_tower(p: int, k: int) -> FieldSpec:
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k < 1 or p**k <= 2:
        raise ValueError("q = p^k must exceed 2")
    prime = FiniteField.prime(p)
    base_poly = smallest_primitive(prime, k)
    if k == 1:
        mid = prime
    else:
        mid = FiniteField.extension(prime, base_poly)
    cubic = smallest_primitive(mid, 3)
    top = FiniteField.extension(mid, cubic)
    mid.name = f"GF({mid.order})"
    top.name = f"GF({top.order})"
    return FieldSpec(p, k, base_poly, cubic, prime, mid, top)


@dataclass(frozen=True)
class Params:
    """``n`` is q mod 3 taken in {-1, 0, 1}; ``g = gcd(3, q - 1)``."""

    q: int
    n: int
    g: int

    @property
    def v(self) -> int:
        return self.q * self.q + self.q + 1


def params_for(q: int) -> Params:
    if q <= 2:
        raise ValueError("q must exceed 2")
    prime_power(q)
    n = {0: 0, 1: 1, 2: -1}[q % 3]
    return Params(q, n, gcd(3, q - 1))


def theta(spec: FieldSpec, x: int) -> tuple[int, int, int]:
    """Coordinates of ``x`` in GF(q)^3 with respect to 1, tau, tau^2."""
    return tuple(int(c) for c in spec.top.digits[x])


def theta_inv(spec: FieldSpec, v) -> int:
    q = spec.q
    return int(v[0]) + int(v[1]) * q + int(v[2]) * q * q


def frobenius(spec: FieldSpec, x: int, i: int = 1) -> int:
    """``x ** (q ** i)`` for ``i`` in {0, 1, 2}."""
    if i not in (0, 1, 2):
        raise ValueError("i must be 0, 1 or 2")
    for _ in range(i):
        x = int(spec.top.frob[x])
    return x


def multiplication_matrix(spec: FieldSpec, t: int) -> np.ndarray:
    """3x3 matrix ``T`` over GF(q) with ``theta(x) T = theta(t x)``."""
    top, q = spec.top, spec.q
    basis = (1, q, q * q)
    return np.array([theta(spec, top.mul[t, b]) for b in basis], dtype=np.int64)


def frobenius_matrix(spec: FieldSpec) -> np.ndarray:
    """3x3 matrix ``A`` over GF(q) with ``theta(x) A = theta(x**q)``."""
    tau = spec.tau
    rows = [theta(spec, 1), theta(spec, frobenius(spec, tau)),
            theta(spec, frobenius(spec, spec.top.mul[tau, tau]))]
    return np.array(rows, dtype=np.int64)


def cube_roots_of_unity(field: FiniteField) -> list[int]:
    return [x for x in range(1, field.order) if field.power(x, 3) == 1]
