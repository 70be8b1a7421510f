"""Design parameters of Steiner ETFs, in both directions.

Forward: the closed-form (M, N) of each known family of Steiner systems.
Backward: which (k, v) a Steiner ETF of given (M, N) would need.
Everything here is exact rational arithmetic.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterator

from .exceptions import InvalidDims, InvalidK
from .finite_field import is_prime_power
from .flat import has_real_hadamard

# (k, v) pairs that are admissible yet have no Steiner system
KNOWN_NONEXISTENT = frozenset({(6, 16), (6, 21), (6, 36), (6, 46), (7, 43)})

# thresholds beyond which every admissible v is realised; metadata only
ASYMPTOTIC_THRESHOLDS = {6: 801, 7: 2605, 8: 3753, 9: 16497}

INADMISSIBLE = "inadmissible"
KNOWN_EXISTS = "admissible-known-exists"
KNOWN_NONEXISTENT_STATUS = "admissible-known-nonexistent"
UNKNOWN = "admissible-unknown"


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    num, den = isqrt(x.numerator), isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class AdmissibilityVerdict:
    k: int
    v: int
    status: str
    witnesses: tuple[str, ...] = ()
    v0: int | None = None

    @property
    def admissible(self) -> bool:
        return self.status != INADMISSIBLE

    def __str__(self):
        text = f"(k={self.k}, v={self.v}): {self.status}"
        if self.witnesses:
            text += f" [{'; '.join(self.witnesses)}]"
        return text


@dataclass(frozen=True)
class DesignParams:
    """Integral parameters recovered from (M, N)."""

    M: int
    N: int
    v: int
    b: int
    r: int
    k: int
    alpha_sq: Fraction
    verdict: AdmissibilityVerdict

    is_steiner = True

    def __str__(self):
        return (f"Steiner candidate: v={self.v}, b={self.b}, r={self.r}, k={self.k}, "
                f"alpha^2={_fmt(self.alpha_sq)}; {self.verdict.status}")


@dataclass(frozen=True)
class NotSteiner:
    """(M, N) cannot come from a Steiner system; ``offending`` names the
    quantities that failed to be integers."""

    M: int
    N: int
    alpha_sq: Fraction
    v: Fraction | None = None
    r: Fraction | None = None
    k: Fraction | None = None
    offending: tuple[str, ...] = ()

    is_steiner = False

    def __str__(self):
        if self.v is None:
            return f"NotSteiner: alpha^2={_fmt(self.alpha_sq)} is not a rational square"
        parts = ", ".join(f"{name}={_fmt(getattr(self, name))}" for name in self.offending)
        return f"NotSteiner: {parts}"


def is_admissible(k: int, v: int) -> bool:
    return k >= 2 and v >= k and (v - 1) % (k - 1) == 0 and (v * (v - 1)) % (k * (k - 1)) == 0


def _int_log(value: int, base: int) -> int | None:
    """n with base**n == value, else None."""
    n, x = 0, 1
    while x < value:
        x *= base
        n += 1
    return n if x == value else None


def known_constructions(k: int, v: int) -> list[str]:
    """Labels of the known infinite families containing a (2, k, v) system."""
    labels = []
    if v == k:
        labels.append(f"single block of v={v}")
    if k == 2 and v >= 2:
        labels.append(f"2-blocks of v={v}")
    if k == 3 and v % 6 in (1, 3) and v > 3:
        labels.append(f"3-blocks of v={v}")
    if k == 4 and v % 12 in (1, 4) and v > 4:
        labels.append(f"4-blocks of v={v}")
    if k == 5 and v % 20 in (1, 5) and v > 5:
        labels.append(f"5-blocks of v={v}")
    if is_prime_power(k):
        n = _int_log(v, k)
        if n is not None and n >= 2:
            labels.append(f"Affine with q={k}, n={n}")
    q = k - 1
    if q >= 2 and is_prime_power(q):
        # v = (q^{n+1} - 1)/(q - 1)
        n = _int_log(v * (q - 1) + 1, q)
        if n is not None and n - 1 >= 2:
            labels.append(f"Projective with q={q}, n={n - 1}")
        if v == q**3 + 1:
            labels.append(f"Unital with q={q}")
    a = _int_log(k, 2)
    if a is not None and a >= 2:
        s = a + 1
        while 2 ** (a + s) + 2**a - 2**s <= v:
            if 2 ** (a + s) + 2**a - 2**s == v:
                labels.append(f"Denniston with r={a}, s={s}")
            s += 1
    return labels


def admissible(k: int, v: int) -> AdmissibilityVerdict:
    """Classify (k, v) for existence of a (2, k, v)-Steiner system."""
    if k < 2 or v < k:
        raise InvalidK(f"need 2 <= k <= v, got k={k}, v={v}")
    v0 = ASYMPTOTIC_THRESHOLDS.get(k)
    if not is_admissible(k, v):
        return AdmissibilityVerdict(k, v, INADMISSIBLE, v0=v0)
    if (k, v) in KNOWN_NONEXISTENT:
        return AdmissibilityVerdict(k, v, KNOWN_NONEXISTENT_STATUS, v0=v0)
    witnesses = known_constructions(k, v)
    if witnesses:
        return AdmissibilityVerdict(k, v, KNOWN_EXISTS, tuple(witnesses), v0=v0)
    return AdmissibilityVerdict(k, v, UNKNOWN, v0=v0)


def recover_design_params(M: int, N: int) -> DesignParams | NotSteiner:
    """Invert the Steiner ETF dimension formulas.

    With alpha^2 = (N-M)/(M(N-1)): v = N alpha/(1+alpha), b = M,
    r = 1/alpha, k = N/(M(1+alpha)).
    """
    if not (1 <= M < N):
        raise InvalidDims(f"need 1 <= M < N, got M={M}, N={N}")
    alpha_sq = Fraction(N - M, M * (N - 1))
    alpha = rational_sqrt(alpha_sq)
    if alpha is None:
        return NotSteiner(M, N, alpha_sq)
    v = N * alpha / (1 + alpha)
    r = 1 / alpha
    k = Fraction(N) / (M * (1 + alpha))
    offending = tuple(name for name, x in (("v", v), ("r", r), ("k", k)) if x.denominator != 1)
    if offending:
        return NotSteiner(M, N, alpha_sq, v, r, k, offending)
    v, r, k = int(v), int(r), int(k)
    verdict = admissible(k, v) if 2 <= k <= v else AdmissibilityVerdict(k, v, INADMISSIBLE)
    return DesignParams(M, N, v, M, r, k, alpha_sq, verdict)


def steiner_dimensions(k: int, v: int) -> tuple[int, int]:
    """(M, N) of the Steiner ETF of an admissible (k, v)."""
    if not is_admissible(k, v):
        raise InvalidK(f"(k={k}, v={v}) is not admissible")
    r = (v - 1) // (k - 1)
    return v * (v - 1) // (k * (k - 1)), v * (r + 1)


# -- family tables ---------------------------------------------------------------

FAMILY_ORDER = ("2-blocks", "3-blocks", "4-blocks", "5-blocks",
                "affine", "projective", "unital", "denniston")
GENERATED_FAMILIES = frozenset({"2-blocks", "3-blocks", "affine", "projective", "unital"})


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    k: int
    v: int
    params: tuple[tuple[str, int], ...]

    @property
    def label(self) -> str:
        p = dict(self.params)
        if self.family.endswith("-blocks"):
            return f"{self.family} of v={self.v}"
        if self.family in ("affine", "projective"):
            return f"{self.family.capitalize()} with q={p['q']}, n={p['n']}"
        if self.family == "unital":
            return f"Unital with q={p['q']}"
        return f"Denniston with r={p['r']}, s={p['s']}"

    @property
    def generated(self) -> bool:
        return self.family in GENERATED_FAMILIES


@dataclass(frozen=True)
class FamilyRow:
    M: int
    N: int
    k: int
    v: int
    r: int
    real: bool
    instances: tuple[FamilyInstance, ...] = field(default=())

    @property
    def hadamard_order(self) -> int:
        return self.r + 1

    @property
    def realness(self) -> str:
        return "R" if self.real else "C"

    @property
    def constructions(self) -> str:
        return "; ".join(inst.label for inst in self.instances)

    @property
    def generated_instance(self) -> FamilyInstance | None:
        return next((i for i in self.instances if i.generated), None)


def _block_family(k: int, congruences: tuple[int, ...], modulus: int, m_max: int) -> Iterator[FamilyInstance]:
    v = k + 1
    while v * (v - 1) // (k * (k - 1)) <= m_max:
        if v % modulus in congruences and is_admissible(k, v):
            yield FamilyInstance(f"{k}-blocks", k, v, (("v", v),))
        v += 1


def _prime_powers_from(start: int = 2) -> Iterator[int]:
    q = start
    while True:
        if is_prime_power(q):
            yield q
        q += 1


def iter_family_instances(m_max: int) -> Iterator[FamilyInstance]:
    """Every family member with M <= m_max (single-block systems excluded)."""
    if m_max < 1:
        return
    yield from _block_family(2, (0, 1), 1, m_max)
    yield from _block_family(3, (1, 3), 6, m_max)
    yield from _block_family(4, (1, 4), 12, m_max)
    yield from _block_family(5, (1, 5), 20, m_max)

    for q in _prime_powers_from():
        if q * (q + 1) > m_max:  # affine plane, n = 2
            break
        n = 2
        while q ** (n - 1) * (q**n - 1) // (q - 1) <= m_max:
            yield FamilyInstance("affine", q, q**n, (("q", q), ("n", n)))
            n += 1

    for q in _prime_powers_from():
        if q * q + q + 1 > m_max:  # projective plane, n = 2
            break
        n = 2
        while (q**n - 1) * (q ** (n + 1) - 1) // ((q + 1) * (q - 1) ** 2) <= m_max:
            yield FamilyInstance("projective", q + 1, (q ** (n + 1) - 1) // (q - 1), (("q", q), ("n", n)))
            n += 1

    for q in _prime_powers_from():
        if q * q * (q * q - q + 1) > m_max:
            break
        yield FamilyInstance("unital", q + 1, q**3 + 1, (("q", q),))

    a = 2
    while True:
        s = a + 1
        first = (2**s + 1) * (2 ** (a + s) + 2**a - 2**s) // 2**a
        if first > m_max:
            break
        while (2**s + 1) * (2 ** (a + s) + 2**a - 2**s) // 2**a <= m_max:
            yield FamilyInstance("denniston", 2**a, 2 ** (a + s) + 2**a - 2**s, (("r", a), ("s", s)))
            s += 1
        a += 1


def enumerate_families(m_max: int) -> list[FamilyRow]:
    """Steiner ETFs of dimension <= m_max from the eight known families.

    Instances with equal (M, N) merge into one row.  Real rows come first,
    each group sorted by (M, N).
    """
    merged: dict[tuple[int, int], list[FamilyInstance]] = {}
    for inst in iter_family_instances(m_max):
        M, N = steiner_dimensions(inst.k, inst.v)
        merged.setdefault((M, N), []).append(inst)
    rows = []
    for (M, N), insts in merged.items():
        insts.sort(key=lambda i: (FAMILY_ORDER.index(i.family), i.params))
        k, v = insts[0].k, insts[0].v
        r = (v - 1) // (k - 1)
        rows.append(FamilyRow(M, N, k, v, r, has_real_hadamard(r + 1), tuple(insts)))
    rows.sort(key=lambda row: (not row.real, row.M, row.N))
    return rows


TABLE_COLUMNS = ("M", "N", "k", "v", "r", "realness", "constructions")


def format_table(rows: list[FamilyRow], fmt: str = "text") -> str:
    records = [(row.M, row.N, row.k, row.v, row.r, row.realness, row.constructions) for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TABLE_COLUMNS)
        writer.writerows(records)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown table format {fmt!r}")
    header = ("M", "N", "k", "v", "r", "R/C", "Construction of the Steiner system")
    widths = [max([len(header[i])] + [len(str(rec[i])) for rec in records]) for i in range(6)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header[:6], widths)) + "  " + header[6]]
    for rec in records:
        lines.append("  ".join(str(x).rjust(w) for x, w in zip(rec[:6], widths)) + "  " + rec[6])
    return "\n".join(lines) + "\n"


# -- asymptotic series -------------------------------------------------------------

@dataclass(frozen=True)
class SeriesRecord:
    v: int
    M: int
    N: int
    redundancy: Fraction
    hadamard_order: int


def asymptotic_series(k: int, j: int) -> tuple[SeriesRecord, SeriesRecord]:
    """The admissible series v = jk(k-1)+1 and v = jk(k-1)+k."""
    if k < 2:
        raise InvalidK(f"k must be >= 2, got {k}")
    if j < 1:
        raise InvalidK(f"j must be >= 1, got {j}")
    v1 = j * k * (k - 1) + 1
    first = SeriesRecord(
        v=v1, M=j * v1, N=(j * k + 1) * v1,
        redundancy=k + Fraction(1, j), hadamard_order=j * k + 1,
    )
    v2 = j * k * (k - 1) + k
    second = SeriesRecord(
        v=v2, M=(j * k + 1) * (j * (k - 1) + 1), N=k * (j * k + 2) * (j * (k - 1) + 1),
        redundancy=Fraction(k * (j * k + 2), j * k + 1), hadamard_order=j * k + 2,
    )
    return first, second
