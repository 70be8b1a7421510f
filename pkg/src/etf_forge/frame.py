"""Steiner ETF assembly and verification.

An :class:`EtfMatrix` keeps the unscaled entries as root-of-unity tokens
in coordinate form plus an exact rational ``scale_sq``; the global scale
``sqrt(scale_sq)`` is applied only when a floating matrix is requested.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .designs import SteinerSystem, incidence_transpose
from .exceptions import AssignmentCollision, DimensionMismatch, NotTight, OrderMismatch
from .flat import FlatMatrix, best_flat, roots_of_unity

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Provenance:
    """How an ETF was built: the design, one flat matrix per point, and the
    flat-matrix rows handed to each point's one-entries (in block order)."""

    design: SteinerSystem
    flats: tuple[FlatMatrix, ...]
    rows_used: tuple[tuple[int, ...], ...]

    def omitted_row(self, j: int) -> int:
        (row,) = set(range(self.flats[j].n)) - set(self.rows_used[j])
        return row

    def block_columns(self, j: int) -> np.ndarray:
        size = self.design.r + 1
        return np.arange(j * size, (j + 1) * size)

    def to_dict(self) -> dict:
        distinct: list[FlatMatrix] = []
        index = []
        for h in self.flats:
            for i, seen in enumerate(distinct):
                if seen is h or seen == h:
                    index.append(i)
                    break
            else:
                distinct.append(h)
                index.append(len(distinct) - 1)
        return {
            "design": self.design.to_dict(),
            "family": self.design.family,
            "flats": [{"root_order": int(h.root_order), "construction": h.construction,
                       "tokens": h.tokens.tolist()} for h in distinct],
            "flat_index": index,
            "rows_used": [list(r) for r in self.rows_used],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Provenance":
        design = SteinerSystem.from_dict(data["design"], family=data.get("family", "custom"))
        distinct = [FlatMatrix(np.array(f["tokens"], dtype=np.int64), int(f["root_order"]),
                               f.get("construction", "custom")) for f in data["flats"]]
        flats = tuple(distinct[i] for i in data["flat_index"])
        rows_used = tuple(tuple(int(x) for x in r) for r in data["rows_used"])
        return cls(design, flats, rows_used)


@dataclass(frozen=True, eq=False)
class EtfMatrix:
    M: int
    N: int
    rows: np.ndarray
    cols: np.ndarray
    tokens: np.ndarray
    root_order: int
    scale_sq: Fraction
    provenance: Provenance | None = None
    family: str = "custom"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.M, self.N)

    @property
    def nnz(self) -> int:
        return int(self.rows.size)

    @property
    def scale(self) -> float:
        return sqrt(self.scale_sq)

    @property
    def is_real(self) -> bool:
        return self.root_order <= 2 or not np.any((2 * self.tokens) % self.root_order)

    def unscaled_values(self) -> np.ndarray:
        values = roots_of_unity(self.tokens, self.root_order)
        return values.real if self.is_real else values

    def integer_values(self) -> np.ndarray:
        """Unscaled entries as +/-1 integers (real frames only)."""
        if not self.is_real:
            raise ValueError("frame is complex")
        half = (2 * (self.tokens % self.root_order)) // max(self.root_order, 1)
        return np.where(half % 2 == 0, 1, -1).astype(np.int64)

    def to_sparse(self, scaled: bool = True) -> sp.csc_matrix:
        values = self.unscaled_values()
        if scaled:
            values = values * self.scale
        return sp.csc_matrix((values, (self.rows, self.cols)), shape=self.shape)

    def to_dense(self, scaled: bool = True) -> np.ndarray:
        return self.to_sparse(scaled).toarray()

    def integer_unscaled(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.rows, self.cols] = self.integer_values()
        return out

    def column_counts(self) -> np.ndarray:
        return np.bincount(self.cols, minlength=self.N)

    @classmethod
    def identity(cls, n: int) -> "EtfMatrix":
        idx = np.arange(n, dtype=np.int64)
        return cls(n, n, idx, idx.copy(), np.zeros(n, dtype=np.int64), 1, Fraction(1),
                   family="identity")

    @classmethod
    def from_dense(cls, matrix: np.ndarray, scale_sq: Fraction, root_order: int,
                   *, tol: float = 1e-9, provenance: Provenance | None = None,
                   family: str = "custom") -> "EtfMatrix | None":
        """Snap a floating matrix back to tokens, or return None if its nonzero
        entries are not ``sqrt(scale_sq)`` times ``root_order``-th roots of unity."""
        matrix = np.asarray(matrix)
        scale = sqrt(scale_sq)
        rows, cols = np.nonzero(np.abs(matrix) > tol)
        order = np.lexsort((rows, cols))
        rows, cols = rows[order], cols[order]
        values = matrix[rows, cols] / scale
        if values.size and np.max(np.abs(np.abs(values) - 1)) > tol:
            return None
        tokens = np.rint(np.angle(values) * root_order / (2 * np.pi)).astype(np.int64) % root_order
        if values.size and np.max(np.abs(roots_of_unity(tokens, root_order) - values)) > tol:
            return None
        return cls(matrix.shape[0], matrix.shape[1], rows.astype(np.int64), cols.astype(np.int64),
                   tokens, root_order, Fraction(scale_sq), provenance, family)


def as_dense(F) -> np.ndarray:
    return F.to_dense() if isinstance(F, EtfMatrix) else np.asarray(F)


# -- assembly ----------------------------------------------------------------

def _per_point(value, v: int) -> list:
    if isinstance(value, (list, tuple)) and len(value) == v and (
            v == 0 or not np.isscalar(value[0])):
        return list(value)
    return [value] * v


def assemble_etf(system: SteinerSystem, flats=None, assignment=None,
                 *, prefer_real: bool = True) -> EtfMatrix:
    """Build the Steiner ETF of ``system``.

    ``flats`` is a single :class:`FlatMatrix` shared by all points, a list
    with one per point, or None for ``best_flat(r + 1, prefer_real)``.
    ``assignment`` gives, in increasing block order, the flat-matrix rows
    handed to a point's one-entries: one sequence for all points, one per
    point, or None for rows ``1..r`` (row 0 omitted).
    """
    incidence = incidence_transpose(system)
    v, r = system.v, system.r
    size = r + 1
    if flats is None:
        flats = best_flat(size, prefer_real)
    flats = _per_point(flats, v)
    for j, h in enumerate(flats):
        if h.n != size:
            raise OrderMismatch(f"point {j}: flat order {h.n} != r + 1 = {size}")
    if assignment is None:
        assignment = tuple(range(1, size))
    assignment = [tuple(int(x) for x in a) for a in _per_point(assignment, v)]
    for j, rows_j in enumerate(assignment):
        if len(rows_j) != r or any(not 0 <= x < size for x in rows_j):
            raise OrderMismatch(f"point {j}: need {r} row indices in [0, {size}), got {rows_j}")
        if len(set(rows_j)) != r:
            raise AssignmentCollision(f"point {j}: repeated flat rows {rows_j}")

    order = int(np.lcm.reduce([h.root_order for h in flats]))
    supports = np.array(incidence.column_supports(), dtype=np.int64)  # (v, r)
    rows_out, cols_out, tokens_out = [], [], []
    for j in range(v):
        tok = flats[j].with_root_order(order).tokens[list(assignment[j])]  # (r, size)
        block_cols = j * size + np.arange(size)
        cc, rr = np.meshgrid(block_cols, supports[j])
        rows_out.append(rr.T.ravel())
        cols_out.append(cc.T.ravel())
        tokens_out.append(tok.T.ravel())
    provenance = Provenance(system, tuple(flats), tuple(assignment))
    return EtfMatrix(
        M=len(system.blocks), N=v * size,
        rows=np.concatenate(rows_out), cols=np.concatenate(cols_out),
        tokens=np.concatenate(tokens_out) % order, root_order=order,
        scale_sq=Fraction(system.k - 1, v - 1),
        provenance=provenance, family=system.family,
    )


# -- parameters ----------------------------------------------------------------

@dataclass(frozen=True)
class EtfParams:
    M: int
    N: int
    A: Fraction
    alpha_sq: Fraction
    redundancy: Fraction
    density: Fraction
    density_consistent: bool | None

    @property
    def alpha(self) -> float:
        return sqrt(self.alpha_sq)

    @property
    def real_bound(self) -> bool:
        """N <= M(M+1)/2."""
        return self.N * 2 <= self.M * (self.M + 1)


def welch_alpha_sq(M: int, N: int) -> Fraction:
    if N <= 1:
        return Fraction(0)
    return Fraction(N - M, M * (N - 1))


def compute_params(F) -> EtfParams:
    """Frame bound, Welch coherence and density from (M, N) and the sparsity."""
    if isinstance(F, EtfMatrix):
        M, N, nnz = F.M, F.N, F.nnz
    else:
        dense = np.asarray(F)
        (M, N), nnz = dense.shape, int(np.count_nonzero(np.abs(dense) > 1e-12))
    density = Fraction(nnz, M * N)
    consistent = None
    if N > M:
        consistent = density**2 == Fraction(N - 1, M * (N - M))
    return EtfParams(M, N, Fraction(N, M), welch_alpha_sq(M, N), Fraction(N, M), density, consistent)


# -- verification --------------------------------------------------------------

@dataclass
class TightReport:
    passed: bool
    frame_bound: float
    max_offdiag: float
    max_diag_dev: float
    exact_checked: bool = False
    exact_passed: bool | None = None
    counterexample: tuple[int, int] | None = None

    def __bool__(self):
        return self.passed


def verify_tight(F, tol: float = DEFAULT_TOL) -> TightReport:
    """FF* = (N/M) I to within ``tol * N/M``; exact integer check for +/-1 frames."""
    dense = as_dense(F)
    M, N = dense.shape
    A = N / M
    frame_op = dense @ dense.conj().T
    diag_dev = np.abs(np.diag(frame_op).real - A)
    off = np.abs(frame_op - np.diag(np.diag(frame_op)))
    bad = (off > tol * A) | np.diag(diag_dev > tol * A)
    report = TightReport(
        passed=not bad.any(), frame_bound=A,
        max_offdiag=float(off.max(initial=0.0)), max_diag_dev=float(diag_dev.max(initial=0.0)),
    )
    if isinstance(F, EtfMatrix) and F.is_real:
        report.exact_checked = True
        target = Fraction(N, M) / F.scale_sq
        U = F.integer_unscaled()
        product = U @ U.T
        if target.denominator == 1:
            exact_bad = product != int(target) * np.eye(M, dtype=np.int64)
        else:
            exact_bad = np.ones_like(product, dtype=bool)
        report.exact_passed = not exact_bad.any()
        bad = bad | exact_bad
        report.passed = report.passed and report.exact_passed
    if bad.any():
        i, j = np.argwhere(bad)[0]
        report.counterexample = (int(i), int(j))
    return report


@dataclass
class EquiangularReport:
    passed: bool
    alpha: float
    max_norm_dev: float
    max_modulus_dev: float
    counterexample: tuple[int, int] | None = None
    exact_checked: bool = False
    exact_passed: bool | None = None
    same_block_max_dev: float | None = None
    cross_block_max_dev: float | None = None
    same_block_values: list = field(default_factory=list)
    cross_block_values: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _distinct_values(values: np.ndarray, digits: int = 12) -> list:
    values = np.round(values, digits) + 0.0  # drop negative zeros
    if np.iscomplexobj(values):
        if np.all(values.imag == 0):
            values = values.real
        else:
            return sorted({complex(x) for x in values}, key=lambda z: (z.real, z.imag))
    return sorted({float(x) for x in values})


def verify_equiangular(F, tol: float = DEFAULT_TOL) -> EquiangularReport:
    """Unit-norm columns whose distinct-pair inner products all have modulus
    equal to the Welch bound."""
    dense = as_dense(F)
    M, N = dense.shape
    alpha = sqrt(welch_alpha_sq(M, N))
    G = dense.conj().T @ dense
    norm_dev = np.abs(np.diag(G).real - 1)
    mod_dev = np.abs(np.abs(G) - alpha)
    np.fill_diagonal(mod_dev, 0.0)
    bad = (mod_dev > tol) | np.diag(norm_dev > tol)
    report = EquiangularReport(
        passed=not bad.any(), alpha=alpha,
        max_norm_dev=float(norm_dev.max(initial=0.0)),
        max_modulus_dev=float(mod_dev.max(initial=0.0)),
    )

    if isinstance(F, EtfMatrix) and F.provenance is not None:
        prov = F.provenance
        size = prov.design.r + 1
        point = np.arange(N) // size
        same = (point[:, None] == point[None, :]) & ~np.eye(N, dtype=bool)
        cross = point[:, None] != point[None, :]
        expected = np.zeros_like(G)
        for j in range(prov.design.v):
            o = prov.omitted_row(j)
            h_row = prov.flats[j].entries[o]
            cols = prov.block_columns(j)
            expected[np.ix_(cols, cols)] = -float(F.scale_sq) * np.outer(h_row.conj(), h_row)
        same_dev = np.abs(G - expected)[same]
        cross_dev = np.abs(np.abs(G[cross]) - float(F.scale_sq))
        report.same_block_max_dev = float(same_dev.max(initial=0.0))
        report.cross_block_max_dev = float(cross_dev.max(initial=0.0))
        iu = np.triu_indices(N, 1)
        upper_same = same[iu]
        report.same_block_values = _distinct_values(G[iu][upper_same])
        report.cross_block_values = _distinct_values(G[iu][~upper_same])
        block_bad = np.zeros_like(bad)
        block_bad[same] = same_dev > tol
        bad = bad | block_bad
        report.passed = report.passed and report.same_block_max_dev <= tol

    if isinstance(F, EtfMatrix) and F.is_real:
        report.exact_checked = True
        U = F.integer_unscaled()
        gram_int = U.T @ U
        inv = 1 / F.scale_sq
        exact_bad = np.zeros_like(bad)
        if inv.denominator == 1 and M < N:
            exact_bad = np.abs(gram_int) != 1
            np.fill_diagonal(exact_bad, np.diag(gram_int) != int(inv))
        elif M == N:
            exact_bad = gram_int != int(inv) * np.eye(N, dtype=np.int64)
        else:
            exact_bad[:] = True
        report.exact_passed = not exact_bad.any()
        report.passed = report.passed and report.exact_passed
        bad = bad | exact_bad

    if bad.any():
        i, j = np.argwhere(bad)[0]
        report.counterexample = (int(i), int(j))
    return report


def gram(F) -> np.ndarray:
    """G = F* F."""
    if isinstance(F, EtfMatrix):
        S = F.to_sparse()
        return (S.conj().T @ S).toarray()
    dense = np.asarray(F)
    return dense.conj().T @ dense


def gram_spectrum(G: np.ndarray) -> np.ndarray:
    """Singular values of a self-adjoint Gram matrix, descending."""
    return np.sort(np.abs(scipy.linalg.eigvalsh(G)))[::-1]


def gram_rank(G: np.ndarray, threshold: float = 1e-6) -> int:
    return int(np.count_nonzero(gram_spectrum(G) > threshold))


def naimark_complement(F, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The (N - M) x N Naimark complement of a unit-norm tight frame.

    Rows are an orthonormal basis (from an SVD) of the orthogonal complement
    of the row space of ``sqrt(M/N) F``, rescaled to unit-norm columns.
    """
    report = verify_tight(F, tol)
    if not report.passed:
        raise NotTight(f"frame is not tight (counterexample {report.counterexample})")
    dense = as_dense(F)
    M, N = dense.shape
    if M == N:
        return np.zeros((0, N), dtype=dense.dtype)
    parseval = np.sqrt(M / N) * dense
    basis = scipy.linalg.null_space(parseval)  # (N, N - M), orthonormal columns
    return np.sqrt(N / (N - M)) * basis.conj().T


def analysis_apply(F: EtfMatrix, f: Sequence) -> np.ndarray:
    """F* f through the sparse structure (r multiply-adds per column)."""
    f = np.asarray(f)
    if f.shape != (F.M,):
        raise DimensionMismatch(f"expected a vector of length {F.M}, got shape {f.shape}")
    values = F.unscaled_values()
    prods = np.conj(values) * f[F.rows]
    out = np.zeros(F.N, dtype=np.result_type(prods, np.float64))
    np.add.at(out, F.cols, prods)
    return out * F.scale

