"""(2, k, v)-Steiner systems: generators, verification, incidence matrices."""
from __future__ import annotations

import hashlib
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .exceptions import InadmissibleV, InvalidDesign, InvalidV, TooLarge
from .finite_field import DEFAULT_MAX_ORDER, Field, field_of_order

DEFAULT_MAX_POINTS = 20_000


@dataclass(frozen=True)
class SteinerSystem:
    """A block list on points ``0..v-1``; blocks are sorted tuples.

    ``b`` and ``r`` are the closed forms ``v(v-1)/(k(k-1))`` and
    ``(v-1)/(k-1)``; they are only meaningful for admissible ``(k, v)``.
    """

    v: int
    k: int
    blocks: tuple[tuple[int, ...], ...]
    family: str = field(default="custom", compare=False)

    @classmethod
    def from_blocks(cls, v: int, blocks, family: str = "custom") -> "SteinerSystem":
        blocks = [tuple(sorted(int(x) for x in blk)) for blk in blocks]
        if not blocks:
            raise InvalidDesign("a design needs at least one block")
        k = len(blocks[0])
        return cls(v=v, k=k, blocks=tuple(sorted(blocks)), family=family)

    @property
    def b(self) -> int:
        return self.v * (self.v - 1) // (self.k * (self.k - 1))

    @property
    def r(self) -> int:
        return (self.v - 1) // (self.k - 1)

    def canonical_hash(self) -> str:
        """Order-independent digest of (v, k, sorted blocks)."""
        payload = json.dumps(self.to_dict(), separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_dict(self) -> dict:
        return {"v": self.v, "k": self.k, "blocks": [list(b) for b in sorted(self.blocks)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, family: str = "custom") -> "SteinerSystem":
        system = cls.from_blocks(int(data["v"]), data["blocks"], family=family)
        if "k" in data and int(data["k"]) != system.k:
            raise InvalidDesign(f"declared k={data['k']} but blocks have size {system.k}")
        return system

    @classmethod
    def from_json(cls, text: str, family: str = "custom") -> "SteinerSystem":
        return cls.from_dict(json.loads(text), family=family)


@dataclass
class DesignCheck:
    """Outcome of :func:`verify_design`, one flag per incidence fact."""

    size_ok: bool = True          # b = v(v-1)/(k(k-1)) blocks
    row_weight_ok: bool = True    # k distinct in-range points per block
    column_weight_ok: bool = True # each point in r blocks
    pair_ok: bool = True          # each pair covered exactly once
    identities_ok: bool = True    # vr = bk and r(k-1) = v-1
    counterexamples: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all((self.size_ok, self.row_weight_ok, self.column_weight_ok,
                    self.pair_ok, self.identities_ok))

    def __bool__(self):
        return self.passed


def verify_design(system: SteinerSystem) -> DesignCheck:
    """Check the four incidence facts of a (2, k, v)-Steiner system.

    Failures are recorded with the first counterexample found; nothing is
    raised.
    """
    check = DesignCheck()
    v, k = system.v, system.k
    blocks = system.blocks

    if k < 2 or (v - 1) % (k - 1) or (v * (v - 1)) % (k * (k - 1)):
        check.identities_ok = False
        check.counterexamples["identities"] = {"k": k, "v": v, "reason": "inadmissible (k, v)"}
        b_expected = r_expected = None
    else:
        b_expected, r_expected = system.b, system.r
        if v * r_expected != b_expected * k or r_expected * (k - 1) != v - 1:
            check.identities_ok = False
            check.counterexamples["identities"] = {"b": b_expected, "r": r_expected}

    if b_expected is None or len(blocks) != b_expected:
        check.size_ok = False
        check.counterexamples["size"] = {"blocks": len(blocks), "expected": b_expected}

    for i, blk in enumerate(blocks):
        if len(blk) != k or len(set(blk)) != k or any(not 0 <= x < v for x in blk):
            check.row_weight_ok = False
            check.counterexamples["row_weight"] = {"block": i, "points": list(blk)}
            break

    counts = np.zeros(v, dtype=np.int64)
    pairs: Counter = Counter()
    for blk in blocks:
        pts = sorted({x for x in blk if 0 <= x < v})
        counts[pts] += 1
        pairs.update(itertools.combinations(pts, 2))

    if r_expected is not None:
        bad = np.nonzero(counts != r_expected)[0]
        if bad.size:
            check.column_weight_ok = False
            p = int(bad[0])
            check.counterexamples["column_weight"] = {"point": p, "count": int(counts[p]),
                                                      "expected": r_expected}
    else:
        check.column_weight_ok = False

    offenders = [pair for pair, n in pairs.items() if n != 1]
    if len(pairs) != v * (v - 1) // 2:
        offenders.append(next(pair for pair in itertools.combinations(range(v), 2)
                              if pair not in pairs))
    if offenders:
        first = min(offenders)
        check.pair_ok = False
        check.counterexamples["pair"] = {"pair": list(first), "count": pairs.get(first, 0)}
    return check


@dataclass(frozen=True)
class IncidenceMatrixT:
    """Sparse b x v transposed incidence matrix; row i lists block i's points."""

    rows: tuple[tuple[int, ...], ...]
    n_cols: int

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.n_cols)

    def toarray(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        for i, row in enumerate(self.rows):
            out[i, list(row)] = 1
        return out

    def column_support(self, j: int) -> list[int]:
        """Block-row indices holding a one in column j, increasing."""
        return [i for i, row in enumerate(self.rows) if j in row]

    def column_supports(self) -> list[list[int]]:
        supports: list[list[int]] = [[] for _ in range(self.n_cols)]
        for i, row in enumerate(self.rows):
            for j in row:
                supports[j].append(i)
        return supports


def incidence_transpose(system: SteinerSystem) -> IncidenceMatrixT:
    check = verify_design(system)
    if not check:
        raise InvalidDesign(f"not a Steiner system: {check.counterexamples}")
    return IncidenceMatrixT(rows=tuple(system.blocks), n_cols=system.v)


def _check_points(v: int, max_points: int):
    if v > max_points:
        raise TooLarge(f"{v} points exceeds the bound {max_points}")


# -- generators ------------------------------------------------------------

def pair_design(v: int, *, max_points: int = DEFAULT_MAX_POINTS) -> SteinerSystem:
    """All 2-subsets of ``v`` points, in lexicographic order."""
    if v < 2:
        raise InvalidV(f"pair designs need v >= 2, got {v}")
    _check_points(v, max_points)
    return SteinerSystem(v=v, k=2, blocks=tuple(itertools.combinations(range(v), 2)),
                         family="pair")


def _bose_blocks(v: int) -> list[tuple[int, ...]]:
    # v = 6t + 3 on Z_{2t+1} x Z_3, idempotent commutative quasigroup x o y = (x + y)/2
    n = (v - 3) // 6
    order = 2 * n + 1
    half = n + 1  # inverse of 2 mod 2n+1
    label = lambda x, i: 3 * x + i  # noqa: E731
    blocks = [tuple(label(x, i) for i in range(3)) for x in range(order)]
    for x, y in itertools.combinations(range(order), 2):
        z = (x + y) * half % order
        for i in range(3):
            blocks.append((label(x, i), label(y, i), label(z, (i + 1) % 3)))
    return blocks


def _skolem_blocks(v: int) -> list[tuple[int, ...]]:
    # v = 6n + 1 on Z_{2n} x Z_3 plus a point at infinity; half-idempotent
    # commutative quasigroup from relabelling the addition table of Z_{2n}
    n = (v - 1) // 6
    order = 2 * n
    relabel = [s // 2 if s % 2 == 0 else n + s // 2 for s in range(order)]
    op = lambda x, y: relabel[(x + y) % order]  # noqa: E731
    label = lambda x, i: 3 * x + i  # noqa: E731
    inf = v - 1
    blocks = [tuple(label(x, i) for i in range(3)) for x in range(n)]
    for x in range(n):
        for i in range(3):
            blocks.append((inf, label(n + x, i), label(x, (i + 1) % 3)))
    for x, y in itertools.combinations(range(order), 2):
        z = op(x, y)
        for i in range(3):
            blocks.append((label(x, i), label(y, i), label(z, (i + 1) % 3)))
    return blocks


def steiner_triple(v: int, *, max_points: int = DEFAULT_MAX_POINTS) -> SteinerSystem:
    """Steiner triple system: Bose for v = 3 (mod 6), Skolem for v = 1 (mod 6)."""
    if v < 3 or v % 6 not in (1, 3):
        raise InadmissibleV(f"v ≡ 1,3 mod 6 required for triple systems, got v={v}")
    _check_points(v, max_points)
    blocks = _bose_blocks(v) if v % 6 == 3 else _skolem_blocks(v)
    return SteinerSystem.from_blocks(v, blocks, family="triple")


def _normalize(field_: Field, vec: tuple[int, ...]) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    for c in vec:
        if c:
            inv = field_.inv(c)
            return tuple(field_.mul(x, inv) for x in vec)
    return vec


def _normalized_vectors(field_: Field, dim: int) -> list[tuple[int, ...]]:
    """Nonzero vectors of GF(q)^dim with first nonzero coordinate 1, lex order."""
    out = []
    for lead in range(dim):
        for tail in itertools.product(range(field_.q), repeat=dim - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    return sorted(out)


def affine_lines(q: int, n: int, *, max_points: int = DEFAULT_MAX_POINTS,
                 max_order: int = DEFAULT_MAX_ORDER) -> SteinerSystem:
    """Lines of AG(n, q): a (2, q, q^n) system.

    Point ``(x_0, ..., x_{n-1})`` has index ``sum(x_i * q**(n-1-i))``.
    """
    if n < 2:
        raise InvalidV(f"affine geometries need n >= 2, got {n}")
    _check_points(q**n, max_points)
    gf = field_of_order(q, max_order)
    points = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    scalars = np.arange(q, dtype=np.int64)
    lines = set()
    for d in _normalized_vectors(gf, n):
        steps = gf.mul_arrays(scalars[:, None], np.array(d)[None, :])  # (q, n)
        covered = np.zeros(len(points), dtype=bool)
        for idx, p in enumerate(points):
            if covered[idx]:
                continue
            members = gf.add_arrays(p[None, :], steps) @ weights
            covered[members] = True
            lines.add(tuple(sorted(int(x) for x in members)))
    return SteinerSystem(v=q**n, k=q, blocks=tuple(sorted(lines)), family="affine")


def _projective_points(gf: Field, dim: int) -> list[tuple[int, ...]]:
    return _normalized_vectors(gf, dim)


def _lines_through(gf: Field, points: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """All projective lines as sorted tuples of point indices."""
    index = {p: i for i, p in enumerate(points)}
    arr = np.array(points, dtype=np.int64)
    scalars = np.arange(gf.q, dtype=np.int64)
    lines = set()
    covered = set()
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if (i, j) in covered:
                continue
            # Q + t P for t in GF(q), plus P itself
            combos = gf.add_arrays(arr[j][None, :], gf.mul_arrays(scalars[:, None], arr[i][None, :]))
            members = {i} | {index[_normalize(gf, tuple(int(x) for x in c))] for c in combos}
            line = tuple(sorted(members))
            lines.add(line)
            for a, b in itertools.combinations(line, 2):
                covered.add((a, b))
    return lines


def projective_lines(q: int, n: int, *, max_points: int = DEFAULT_MAX_POINTS,
                     max_order: int = DEFAULT_MAX_ORDER) -> SteinerSystem:
    """Lines of PG(n, q): a (2, q+1, (q^{n+1}-1)/(q-1)) system.

    Points are normalized homogeneous coordinates in lexicographic order.
    """
    if n < 2:
        raise InvalidV(f"projective geometries need n >= 2, got {n}")
    v = (q ** (n + 1) - 1) // (q - 1)
    _check_points(v, max_points)
    gf = field_of_order(q, max_order)
    points = _projective_points(gf, n + 1)
    lines = _lines_through(gf, points)
    return SteinerSystem(v=v, k=q + 1, blocks=tuple(sorted(lines)), family="projective")


def hermitian_curve_points(q: int, max_order: int = DEFAULT_MAX_ORDER) -> tuple[Field, list[tuple[int, ...]]]:
    """Points of PG(2, q^2) with x0^{q+1} + x1^{q+1} + x2^{q+1} = 0."""
    gf = field_of_order(q * q, max_order)
    norm = [gf.power(x, q + 1) for x in range(gf.q)]
    pts = []
    for p in _projective_points(gf, 3):
        total = gf.add(gf.add(norm[p[0]], norm[p[1]]), norm[p[2]])
        if total == 0:
            pts.append(p)
    return gf, pts


def line_curve_intersections(q: int) -> list[int]:
    """Size of (line cap Hermitian curve) for every line of PG(2, q^2)."""
    gf, pts = hermitian_curve_points(q)
    arr = np.array(pts, dtype=np.int64)
    sizes = []
    for line in _projective_points(gf, 3):
        dots = gf.add_arrays(gf.add_arrays(gf.mul_arrays(arr[:, 0], line[0]),
                                           gf.mul_arrays(arr[:, 1], line[1])),
                             gf.mul_arrays(arr[:, 2], line[2]))
        sizes.append(int(np.count_nonzero(dots == 0)))
    return sizes


def hermitian_unital(q: int, *, max_points: int = DEFAULT_MAX_POINTS,
                     max_order: int = DEFAULT_MAX_ORDER) -> SteinerSystem:
    """Classical unital in PG(2, q^2): a (2, q+1, q^3+1) system."""
    v = q**3 + 1
    _check_points(v, max_points)
    gf, pts = hermitian_curve_points(q, max_order)
    arr = np.array(pts, dtype=np.int64)
    blocks = set()
    for line in _projective_points(gf, 3):
        dots = gf.add_arrays(gf.add_arrays(gf.mul_arrays(arr[:, 0], line[0]),
                                           gf.mul_arrays(arr[:, 1], line[1])),
                             gf.mul_arrays(arr[:, 2], line[2]))
        members = np.nonzero(dots == 0)[0]
        if len(members) == q + 1:
            blocks.add(tuple(int(x) for x in members))
    return SteinerSystem(v=v, k=q + 1, blocks=tuple(sorted(blocks)), family="unital")


def expected_block_count(v: int, k: int) -> int:
    return comb(v, 2) // comb(k, 2)


FAMILIES = ("pair", "triple", "affine", "projective", "unital")


def make_design(family: str, *, v: int | None = None, q: int | None = None,
                n: int | None = None) -> SteinerSystem:
    """Dispatch to a generator by family name."""
    def need(name, value):
        if value is None:
            raise InvalidV(f"family {family!r} needs --{name}")
        return value

    if family == "pair":
        return pair_design(need("v", v))
    if family == "triple":
        return steiner_triple(need("v", v))
    if family == "affine":
        return affine_lines(need("q", q), need("n", n))
    if family == "projective":
        return projective_lines(need("q", q), need("n", n))
    if family == "unital":
        return hermitian_unital(need("q", q))
    raise InvalidV(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
