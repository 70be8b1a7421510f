"""Flat matrices: square, unimodular entries, orthogonal rows.

Entries are stored exactly as root-of-unity exponents: entry (i, j) is
``exp(2j*pi*tokens[i, j] / root_order)``.  Real Hadamard matrices use
``root_order == 2`` (token 0 is +1, token 1 is -1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import InadmissibleQ, TooLarge
from .finite_field import field_of_order, is_prime_power

DEFAULT_MAX_ORDER = 1 << 14


@dataclass(frozen=True, eq=False)
class FlatMatrix:
    tokens: np.ndarray
    root_order: int
    construction: str = "custom"

    @property
    def n(self) -> int:
        return self.tokens.shape[0]

    @property
    def is_real(self) -> bool:
        return self.root_order <= 2 or not np.any((2 * self.tokens) % self.root_order)

    @property
    def realness(self) -> str:
        return "real" if self.is_real else "complex"

    @property
    def entries(self) -> np.ndarray:
        return roots_of_unity(self.tokens, self.root_order)

    def integer_entries(self) -> np.ndarray:
        """The +/-1 matrix; only valid for real matrices."""
        if not self.is_real:
            raise ValueError("matrix is complex")
        half = (2 * self.tokens) // self.root_order  # 0 -> +1, 1 -> -1
        return np.where(half % 2 == 0, 1, -1).astype(np.int64)

    def with_root_order(self, order: int) -> "FlatMatrix":
        if order % self.root_order:
            raise ValueError(f"{order} is not a multiple of {self.root_order}")
        return FlatMatrix(self.tokens * (order // self.root_order), order, self.construction)

    def __eq__(self, other):
        if not isinstance(other, FlatMatrix) or self.tokens.shape != other.tokens.shape:
            return False
        order = np.lcm(self.root_order, other.root_order)
        a = self.with_root_order(order).tokens % order
        b = other.with_root_order(order).tokens % order
        return bool(np.array_equal(a, b))

    __hash__ = None


def roots_of_unity(tokens, order: int) -> np.ndarray:
    tokens = np.asarray(tokens) % order
    if order <= 2:
        return np.where(tokens == 0, 1.0, -1.0)
    # exact values at the quarter turns keep real/imaginary parts clean
    angle = 2 * np.pi * tokens / order
    out = np.exp(1j * angle)
    quarter = (4 * tokens) % order == 0
    if np.any(quarter):
        lut = np.array([1, 1j, -1, -1j])
        out[quarter] = lut[(4 * tokens[quarter]) // order]
    return out


def flat_defect(h: np.ndarray) -> float:
    """max |H H^* - n I|."""
    n = h.shape[0]
    return float(np.max(np.abs(h @ h.conj().T - n * np.eye(n))))


def is_flat(h: np.ndarray, tol: float = 1e-9) -> bool:
    h = np.asarray(h)
    n = h.shape[0]
    if np.max(np.abs(np.abs(h) - 1)) > 1e-12:
        return False
    return flat_defect(h) <= tol * n


def _from_pm1(h: np.ndarray, construction: str) -> FlatMatrix:
    return FlatMatrix((h < 0).astype(np.int64), 2, construction)


def _normalize_pm1(h: np.ndarray) -> np.ndarray:
    """Flip columns, then rows, so row 0 and column 0 are all +1."""
    h = h * h[0][None, :]
    return h * h[:, 0][:, None]


def sylvester(t: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FlatMatrix:
    """Real Hadamard matrix of order 2**t by repeated doubling."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if 2**t > max_order:
        raise TooLarge(f"order 2**{t} exceeds {max_order}")
    h = np.ones((1, 1), dtype=np.int64)
    for _ in range(t):
        h = np.block([[h, h], [h, -h]])
    return _from_pm1(h, f"sylvester({2**t})")


def paley_hadamard(q: int) -> FlatMatrix:
    """Paley I Hadamard matrix of order q+1 for a prime power q = 3 (mod 4)."""
    if q % 4 != 3 or not is_prime_power(q):
        raise InadmissibleQ(f"Paley I needs a prime power q = 3 mod 4, got {q}")
    gf = field_of_order(q)
    chi = np.array([gf.quadratic_character(x) for x in range(q)], dtype=np.int64)
    diff = np.array([[gf.sub(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    jacobsthal = chi[diff]
    s = np.zeros((q + 1, q + 1), dtype=np.int64)
    s[0, 1:] = 1
    s[1:, 0] = -1
    s[1:, 1:] = jacobsthal
    h = _normalize_pm1(s + np.eye(q + 1, dtype=np.int64))
    return _from_pm1(h, f"paley({q})")


def dft_matrix(n: int) -> FlatMatrix:
    """Entries omega**(j*k) with omega = exp(2*pi*i/n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.arange(n, dtype=np.int64)
    return FlatMatrix(np.outer(j, j) % n, n, f"dft({n})")


def kronecker(a: FlatMatrix, b: FlatMatrix) -> FlatMatrix:
    order = int(np.lcm(a.root_order, b.root_order))
    ta = a.with_root_order(order).tokens
    tb = b.with_root_order(order).tokens
    tokens = (ta[:, None, :, None] + tb[None, :, None, :]).reshape(a.n * b.n, a.n * b.n) % order
    return FlatMatrix(tokens, order, f"{a.construction}x{b.construction}")


@lru_cache(maxsize=None)
def _real_recipe(n: int) -> tuple | None:
    """How to build a real Hadamard matrix of order n, or None."""
    if n in (1, 2) or (n & (n - 1)) == 0:
        return ("sylvester", n.bit_length() - 1)
    if n % 4:
        return None
    if is_prime_power(n - 1) and (n - 1) % 4 == 3:
        return ("paley", n - 1)
    for a in range(2, int(n**0.5) + 1):
        if n % a == 0:
            ra, rb = _real_recipe(a), _real_recipe(n // a)
            if ra is not None and rb is not None:
                return ("kron", a, n // a)
    return None


def has_real_hadamard(n: int) -> bool:
    """Whether :func:`best_flat` finds a real matrix of order n."""
    return n >= 1 and _real_recipe(n) is not None


def _build_real(n: int) -> FlatMatrix:
    recipe = _real_recipe(n)
    if recipe[0] == "sylvester":
        return sylvester(recipe[1])
    if recipe[0] == "paley":
        return paley_hadamard(recipe[1])
    return kronecker(_build_real(recipe[1]), _build_real(recipe[2]))


def best_flat(n: int, prefer_real: bool = True) -> FlatMatrix:
    """A flat matrix of order n, real when a construction is available.

    Falls back to the DFT matrix, which is complex for n > 2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if prefer_real and has_real_hadamard(n):
        return _build_real(n)
    return dft_matrix(n)
