"""Matrix Market export/import with a JSON metadata sidecar.

Stored values include the global scale.  The sidecar records the scale as
an exact rational under a square root, so Steiner frames are snapped back
to their root-of-unity tokens on import.
"""
from __future__ import annotations

import json
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sp

from .designs import SteinerSystem
from .exceptions import EtfForgeError
from .frame import EtfMatrix, Provenance, as_dense, assemble_etf, compute_params

SNAP_TOL = 1e-9


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".json")


def matrix_path(path) -> Path:
    path = Path(path)
    return path if path.suffix == ".mtx" else path.with_suffix(".mtx")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def frame_metadata(F, family: str | None = None) -> dict:
    """Sidecar dictionary for an EtfMatrix or a dense frame."""
    params = compute_params(F)
    dense = as_dense(F)
    real = F.is_real if isinstance(F, EtfMatrix) else not np.iscomplexobj(dense) or \
        bool(np.all(np.abs(dense.imag) <= SNAP_TOL))
    meta = {
        "M": params.M,
        "N": params.N,
        "alpha": params.alpha,
        "alpha_squared": _frac(params.alpha_sq),
        "density": float(params.density),
        "density_fraction": _frac(params.density),
        "real": bool(real),
        "family": family or (F.family if isinstance(F, EtfMatrix) else "dense"),
    }
    if isinstance(F, EtfMatrix):
        meta["scale"] = f"sqrt({_frac(F.scale_sq)})"
        meta["scale_squared"] = _frac(F.scale_sq)
        meta["root_order"] = int(F.root_order)
        if F.provenance is not None:
            design = F.provenance.design
            meta.update(v=design.v, k=design.k, r=design.r)
            meta["provenance"] = F.provenance.to_dict()
    return meta


def write_etf(F, path, family: str | None = None) -> tuple[Path, Path]:
    """Write ``path`` (.mtx) and its .json sidecar; returns both paths."""
    mtx, side = matrix_path(path), sidecar_path(path)
    if isinstance(F, EtfMatrix):
        values = F.to_sparse().tocoo()
        real = F.is_real
    else:
        dense = np.asarray(F)
        real = not np.iscomplexobj(dense) or bool(np.all(np.abs(dense.imag) <= SNAP_TOL))
        values = sp.coo_matrix(dense.real if real else dense)
    if real:
        values = sp.coo_matrix(values.real if np.iscomplexobj(values.data) else values)
    meta = frame_metadata(F, family)
    mtx.parent.mkdir(parents=True, exist_ok=True)
    scipy.io.mmwrite(str(mtx), values, field="real" if real else "complex",
                     precision=17, symmetry="general")
    side.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return mtx, side


def read_etf(path) -> tuple[EtfMatrix | np.ndarray, dict]:
    """Read a frame and its sidecar.

    Returns an :class:`EtfMatrix` when the sidecar carries an exact scale
    and the stored entries snap to it, otherwise the dense array.
    """
    mtx, side = matrix_path(path), sidecar_path(path)
    dense = scipy.io.mmread(str(mtx))
    dense = dense.toarray() if sp.issparse(dense) else np.asarray(dense)
    meta = json.loads(side.read_text()) if side.exists() else {}
    if "scale_squared" in meta:
        provenance = Provenance.from_dict(meta["provenance"]) if "provenance" in meta else None
        frame = EtfMatrix.from_dense(dense, Fraction(meta["scale_squared"]),
                                     int(meta.get("root_order", 2)), tol=SNAP_TOL,
                                     provenance=provenance, family=meta.get("family", "custom"))
        if frame is not None and _provenance_matches(frame):
            return frame, meta
        if frame is not None:
            return replace(frame, provenance=None), meta
    return dense, meta


def _provenance_matches(F: EtfMatrix) -> bool:
    """Stored provenance is only kept if it still describes the entries."""
    if F.provenance is None:
        return True
    prov = F.provenance
    try:
        rebuilt = assemble_etf(prov.design, list(prov.flats), [list(r) for r in prov.rows_used])
    except EtfForgeError:
        return False
    return rebuilt.shape == F.shape and \
        np.max(np.abs(rebuilt.to_dense() - F.to_dense()), initial=0.0) <= SNAP_TOL


def write_design(system: SteinerSystem, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = system.to_dict()
    data["family"] = system.family
    path.write_text(json.dumps(data, sort_keys=True) + "\n")
    return path


def read_design(path) -> SteinerSystem:
    data = json.loads(Path(path).read_text())
    return SteinerSystem.from_dict(data, family=data.get("family", "custom"))

