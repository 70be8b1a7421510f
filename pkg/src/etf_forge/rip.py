"""Restricted isometry estimates for frames.

delta_K is the largest ``max(lambda_max - 1, 1 - lambda_min)`` over the
K x K sub-Grams.  Small cases are enumerated exhaustively in
colexicographic order; large ones are sampled with a seeded generator and
reported as lower bounds.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import islice
from math import comb, isqrt
from typing import Iterator

import numpy as np

from .exceptions import BudgetExceeded, InvalidDelta, InvalidDims, NoProvenance
from .frame import EtfMatrix, as_dense, gram

JACOBI_TOL = 1e-12
TIE_TOL = 1e-12
DEFAULT_BUDGET = 1_000_000
CHUNK = 4096


@dataclass
class RipReport:
    K: int
    delta_lower: float
    delta_exact: float | None
    exact: bool
    witness: list[int]
    method: str
    seed: int | None = None
    n_subsets: int = 0
    sigma_min: float | None = None
    dependency_residual: float | None = None

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None or k == "delta_exact"}
        out["witness"] = [int(x) for x in self.witness]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("ETF_FORGE_THREADS", "1"))
    return max(1, int(threads))


# -- eigensolver -------------------------------------------------------------

def _off_norm(A: np.ndarray) -> np.ndarray:
    K = A.shape[-1]
    mask = ~np.eye(K, dtype=bool)
    return np.sqrt(np.sum(np.abs(A[:, mask]) ** 2, axis=-1))


def jacobi_eigvalsh(A: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a batch of Hermitian matrices by cyclic Jacobi.

    ``A`` has shape (..., K, K).  Each matrix is rotated only while its own
    off-diagonal norm exceeds ``tol``, so results do not depend on which
    other matrices share the batch.  Returns ascending eigenvalues.
    """
    A = np.array(A, copy=True)
    batch_shape = A.shape[:-2]
    K = A.shape[-1]
    A = A.reshape(-1, K, K)
    complex_input = np.iscomplexobj(A)
    for _ in range(max_sweeps):
        active = _off_norm(A) > tol
        if not active.any():
            break
        for p in range(K - 1):
            for q in range(p + 1, K):
                b = A[:, p, q]
                absb = np.abs(b)
                rot = active & (absb > 0)
                if not rot.any():
                    continue
                safe = np.where(rot, absb, 1.0)
                phase = np.where(rot, b / safe, 1.0)
                zeta = (A[:, q, q].real - A[:, p, p].real) / (2 * safe)
                t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1 + zeta * zeta))
                c = np.where(rot, 1 / np.sqrt(1 + t * t), 1.0)
                s = np.where(rot, t * c, 0.0)
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                u_pp, u_pq = c, s
                u_qp = -s * np.conj(phase)
                u_qq = c * np.conj(phase)
                if not complex_input:
                    u_qp, u_qq = u_qp.real, u_qq.real
                col_p = A[:, :, p].copy()
                col_q = A[:, :, q].copy()
                A[:, :, p] = col_p * u_pp[:, None] + col_q * u_qp[:, None]
                A[:, :, q] = col_p * u_pq[:, None] + col_q * u_qq[:, None]
                row_p = A[:, p, :].copy()
                row_q = A[:, q, :].copy()
                A[:, p, :] = np.conj(u_pp)[:, None] * row_p + np.conj(u_qp)[:, None] * row_q
                A[:, q, :] = np.conj(u_pq)[:, None] * row_p + np.conj(u_qq)[:, None] * row_q
                A[rot, p, q] = 0
                A[rot, q, p] = 0
    eig = np.sort(np.diagonal(A, axis1=-2, axis2=-1).real, axis=-1)
    return eig.reshape(batch_shape + (K,))


def subset_deltas(G: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """max(lambda_max - 1, 1 - lambda_min) of each sub-Gram G[S, S]."""
    sub = G[subsets[:, :, None], subsets[:, None, :]]
    eig = jacobi_eigvalsh(sub)
    return np.maximum(eig[:, -1] - 1, 1 - eig[:, 0])


# -- enumeration -------------------------------------------------------------

def colex_combinations(n: int, K: int) -> Iterator[tuple[int, ...]]:
    """K-subsets of range(n) in colexicographic order."""
    if K == 0:
        yield ()
        return
    for top in range(K - 1, n):
        for rest in colex_combinations(top, K - 1):
            yield rest + (top,)


def _chunks(it: Iterator[tuple[int, ...]], size: int) -> Iterator[np.ndarray]:
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _random_subsets(rng: np.random.Generator, N: int, K: int, count: int) -> Iterator[np.ndarray]:
    remaining = count
    while remaining > 0:
        size = min(CHUNK, remaining)
        keys = rng.random((size, N))
        picks = np.sort(np.argpartition(keys, K - 1, axis=1)[:, :K], axis=1)
        remaining -= size
        yield picks


def ric_exhaustive(F, K: int, budget: int = DEFAULT_BUDGET, *, allow_sampling: bool = True,
                   seed: int = 0, early_exit: float | None = None,
                   threads: int | None = None) -> RipReport:
    """Restricted isometry constant delta_K by enumeration or sampling.

    Enumerates all K-subsets when there are at most ``budget`` of them;
    otherwise samples ``budget`` random subsets (``seed``) and reports a
    lower bound.  With ``early_exit`` set, stops after the first chunk that
    reaches that value; the result is then a lower bound as well.
    """
    dense = as_dense(F)
    N = dense.shape[1]
    if not 1 <= K <= N:
        raise InvalidDims(f"need 1 <= K <= N = {N}, got K={K}")
    G = gram(F)
    total = comb(N, K)
    if total <= budget:
        chunks = _chunks(colex_combinations(N, K), CHUNK)
        exhaustive = True
        used_seed = None
    elif allow_sampling:
        chunks = _random_subsets(np.random.default_rng(seed), N, K, budget)
        exhaustive = False
        used_seed = seed
    else:
        raise BudgetExceeded(f"C({N}, {K}) = {total} subsets exceeds budget {budget}")

    workers = resolve_threads(threads)
    deltas: list[np.ndarray] = []
    subsets: list[np.ndarray] = []
    stopped = False
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while not stopped:
            wave = list(islice(chunks, workers))
            if not wave:
                break
            for chunk, d in zip(wave, pool.map(lambda s: subset_deltas(G, s), wave)):
                subsets.append(chunk)
                deltas.append(d)
                if early_exit is not None and d.max() >= early_exit:
                    stopped = True
                    break

    all_deltas = np.concatenate(deltas)
    all_subsets = np.concatenate(subsets)
    best = float(all_deltas.max())
    idx = int(np.argmax(all_deltas >= best - TIE_TOL))
    complete = exhaustive and not stopped
    return RipReport(
        K=K, delta_lower=best, delta_exact=best if complete else None, exact=complete,
        witness=[int(x) for x in all_subsets[idx]],
        method="exhaustive" if exhaustive else "sampled",
        seed=used_seed, n_subsets=int(all_deltas.size),
    )


# -- coherence-based bounds ----------------------------------------------------

def _check_unit_norm(G: np.ndarray, tol: float = 1e-9):
    dev = np.max(np.abs(np.diag(G).real - 1), initial=0.0)
    if dev > tol:
        raise ValueError(f"columns are not unit norm (max deviation {dev:.3g})")


def coherence(F) -> float:
    """Largest |<f_n, f_n'>| over distinct columns."""
    G = gram(F)
    _check_unit_norm(G)
    off = np.abs(G)
    np.fill_diagonal(off, 0.0)
    return float(off.max(initial=0.0))


def coherence_rip_sufficient(F, K: int) -> float:
    """Gershgorin bound (K - 1) * coherence: any delta above it certifies RIP."""
    if K < 1:
        raise InvalidDims(f"K must be >= 1, got {K}")
    return (K - 1) * coherence(F)


def gershgorin_K_bound(M: int, N: int, delta: float) -> int:
    """Largest K with K <= 1 + delta * sqrt(M(N-1)/(N-M)), evaluated exactly."""
    if not 0 < delta < 1:
        raise InvalidDelta(f"delta must lie in (0, 1), got {delta}")
    if not 1 <= M < N:
        raise InvalidDims(f"need 1 <= M < N, got M={M}, N={N}")
    t = Fraction(delta) ** 2 * Fraction(M * (N - 1), N - M)
    # floor(sqrt(t)) == isqrt(floor(t)) for rational t >= 0
    return 1 + isqrt(t.numerator // t.denominator)


def block_dependency_certificate(F: EtfMatrix, block: int = 0, tol: float = 1e-9) -> RipReport:
    """Certify delta_{r+1} >= 1: the r+1 columns of one block are dependent.

    Checks both the smallest singular value of the block submatrix and the
    explicit relation sum_c conj(H[o, c]) f_c = 0 for the omitted row o.
    """
    if not isinstance(F, EtfMatrix) or F.provenance is None:
        raise NoProvenance("frame carries no Steiner construction data")
    prov = F.provenance
    cols = prov.block_columns(block)
    sub = F.to_dense()[:, cols]
    sigma_min = float(np.linalg.svd(sub, compute_uv=False)[-1])
    weights = np.conj(prov.flats[block].entries[prov.omitted_row(block)])
    residual = float(np.linalg.norm(sub @ weights))
    if sigma_min > tol or residual > tol:
        raise ValueError(f"block {block} is not dependent (sigma_min={sigma_min:.3g}, "
                         f"residual={residual:.3g})")
    return RipReport(
        K=len(cols), delta_lower=1.0, delta_exact=None, exact=False,
        witness=[int(c) for c in cols], method="block-certificate",
        n_subsets=1, sigma_min=sigma_min, dependency_residual=residual,
    )
