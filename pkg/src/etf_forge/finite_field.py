"""Arithmetic in GF(p^m).

Elements are integer indices in ``[0, q)``: the coefficient vector
``(c_0, ..., c_{m-1})`` of a polynomial of degree < m is encoded as
``sum(c_i * p**i)``.  Multiplication goes through exp/log tables built
from a primitive element, addition through base-p digit tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import DivisionByZero, FieldMismatch, NotPrime, TooLarge

DEFAULT_MAX_ORDER = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    return (p, m) if rest == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


@dataclass(frozen=True)
class PrimePower:
    p: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError(f"exponent must be >= 1, got {self.m}")

    @property
    def q(self) -> int:
        return self.p**self.m

    @classmethod
    def from_order(cls, q: int) -> "PrimePower":
        pm = prime_power_decomposition(q)
        if pm is None:
            raise NotPrime(f"{q} is not a prime power")
        return cls(*pm)


# -- polynomial helpers over Z_p; coefficient lists are low-degree first --

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Brute-force irreducibility test by trial division.

    ``poly`` is monic, low-degree coefficient first.
    """
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over Z_p.

    Non-leading coefficients are compared low degree first.
    """
    if m == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=m):
        if low[0] == 0:
            continue
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field:
    """The finite field GF(p^m) with a deterministic modulus."""

    def __init__(self, p: int, m: int = 1, *, max_order: int = DEFAULT_MAX_ORDER):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m < 1:
            raise ValueError(f"exponent must be >= 1, got {m}")
        q = p**m
        if q > max_order:
            raise TooLarge(f"GF({p}^{m}) has order {q} > {max_order}")
        self.pp = PrimePower(p, m)
        self.p, self.m, self.q = p, m, q
        self.modulus = smallest_irreducible(p, m)

        self._pow_p = p ** np.arange(m, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self._digits = (idx[:, None] // self._pow_p[None, :]) % p
        self._neg = (((-self._digits) % p) @ self._pow_p).astype(np.int64)
        self._build_exp_log()

    def _mul_by_x(self, a: int) -> int:
        digits = [int(d) for d in self._digits[a]]
        top = digits[-1]
        shifted = [0] + digits[:-1]
        if top:
            shifted = [(s - top * c) % self.p for s, c in zip(shifted, self.modulus[:-1])]
        return int(np.dot(shifted, self._pow_p))

    def _poly_mul(self, a: int, b: int) -> int:
        # schoolbook product, used only while searching for a primitive element
        acc = 0
        power = a
        for d in self._digits[b]:
            for _ in range(int(d)):
                acc = self._add_scalar(acc, power)
            power = self._mul_by_x(power)
        return acc

    def _add_scalar(self, a: int, b: int) -> int:
        return int(((self._digits[a] + self._digits[b]) % self.p) @ self._pow_p)

    def _build_exp_log(self):
        q = self.q
        order = q - 1
        exp = np.zeros(max(order, 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        candidates = [self.p] if self.m > 1 else []
        candidates += [g for g in range(2, q) if g != self.p] if q > 2 else [1]
        for g in candidates:
            x = 1
            log[:] = -1
            ok = True
            for e in range(order):
                if log[x] != -1:
                    ok = False
                    break
                exp[e] = x
                log[x] = e
                if self.m == 1:
                    x = x * g % self.p
                elif g == self.p:
                    x = self._mul_by_x(x)
                else:
                    x = self._poly_mul(x, g)
            if ok and x == 1:
                self.primitive = int(g)
                self._exp, self._log = exp, log
                return
        raise AssertionError("no primitive element")  # unreachable

    # -- scalar API on indices --

    def _check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise FieldMismatch(f"{a} is not an element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        return self._add_scalar(self._check(a), self._check(b))

    def neg(self, a: int) -> int:
        return int(self._neg[self._check(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        a, b = self._check(a), self._check(b)
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        a = self._check(a)
        if a == 0:
            raise DivisionByZero("zero has no multiplicative inverse")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        """``a**e`` by square-and-multiply."""
        a = self._check(a)
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def order_of(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if self._check(a) == 0:
            raise DivisionByZero("zero has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    # -- vectorised helpers for the geometry generators --

    def add_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._pow_p

    def mul_arrays(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = self._exp[(self._log[a[nz]] + self._log[b[nz]]) % (self.q - 1)]
        return out

    def coefficients(self, a: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self._digits[self._check(a)])

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, self._check(value))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(self.q)]

    def is_square(self, a: int) -> bool:
        a = self._check(a)
        return a == 0 or self._log[a] % 2 == 0 or self.p == 2

    def quadratic_character(self, a: int) -> int:
        """Legendre-style character: 0, +1 on nonzero squares, -1 otherwise."""
        a = self._check(a)
        if a == 0:
            return 0
        return 1 if self.is_square(a) else -1

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))


@lru_cache(maxsize=64)
def make_field(p: int, m: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> Field:
    """Cached field constructor; fields are immutable so sharing is safe."""
    return Field(p, m, max_order=max_order)


def field_of_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> Field:
    if q > max_order:
        raise TooLarge(f"field order {q} exceeds {max_order}")
    pp = PrimePower.from_order(q)
    return make_field(pp.p, pp.m, max_order)


@dataclass(frozen=True)
class FieldElement:
    field: Field = field(repr=False)
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coefficients(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        raise FieldMismatch(f"cannot combine field element with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two elements of one field."""
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None


def frobenius_power(a: FieldElement, e: int) -> FieldElement:
    """``a**e`` for a nonnegative exponent (square-and-multiply)."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return a**e
