import json

import numpy as np
import pytest

from etf_forge.designs import pair_design, projective_lines, steiner_triple
from etf_forge.frame import EtfMatrix, assemble_etf, naimark_complement
from etf_forge.io import read_design, read_etf, write_design, write_etf


@pytest.mark.parametrize("build", [
    lambda: assemble_etf(pair_design(4)),
    lambda: assemble_etf(pair_design(3)),
    lambda: assemble_etf(projective_lines(3, 2)),
])
def test_round_trip_preserves_tokens(tmp_path, build):
    F = build()
    mtx, side = write_etf(F, tmp_path / "frame")
    assert mtx.suffix == ".mtx" and side.suffix == ".json"
    G, meta = read_etf(mtx)
    assert isinstance(G, EtfMatrix) and G.provenance is not None
    assert np.array_equal(G.rows, F.rows) and np.array_equal(G.cols, F.cols)
    assert np.array_equal(G.tokens % G.root_order, F.tokens % F.root_order)
    assert G.scale_sq == F.scale_sq
    assert np.array_equal(G.to_dense(), F.to_dense())
    assert meta["M"] == F.M and meta["N"] == F.N and meta["real"] == F.is_real


def test_sidecar_fields(tmp_path):
    F = assemble_etf(pair_design(4))
    _, side = write_etf(F, tmp_path / "six")
    meta = json.loads(side.read_text())
    for key in ("M", "N", "v", "k", "r", "alpha", "density", "real", "family"):
        assert key in meta
    assert meta["scale"] == "sqrt(1/3)" and meta["density_fraction"] == "1/2"
    assert (meta["v"], meta["k"], meta["r"]) == (4, 2, 3)
    assert meta["alpha"] == 1 / 3


def test_matrix_market_header(tmp_path):
    real_path, _ = write_etf(assemble_etf(pair_design(4)), tmp_path / "r")
    cplx_path, _ = write_etf(assemble_etf(pair_design(3)), tmp_path / "c")
    assert real_path.read_text().startswith("%%MatrixMarket matrix coordinate real general")
    assert cplx_path.read_text().startswith("%%MatrixMarket matrix coordinate complex general")
    assert "6 16 48" in real_path.read_text().splitlines()[2]


def test_dense_complement_round_trip(tmp_path):
    C = naimark_complement(assemble_etf(pair_design(4)))
    write_etf(C, tmp_path / "comp")
    back, meta = read_etf(tmp_path / "comp.mtx")
    assert isinstance(back, np.ndarray)
    assert np.array_equal(back, C)
    assert meta["family"] == "dense"


def test_tampered_entries_drop_provenance(tmp_path):
    F = assemble_etf(pair_design(4))
    mtx, _ = write_etf(F, tmp_path / "t")
    lines = mtx.read_text().splitlines()
    i, j, x = lines[3].split()
    lines[3] = f"{i} {j} {-float(x)!r}"
    mtx.write_text("\n".join(lines) + "\n")
    G, _ = read_etf(mtx)
    assert isinstance(G, EtfMatrix) and G.provenance is None


def test_writes_are_byte_identical(tmp_path):
    F = assemble_etf(steiner_triple(9))
    a = write_etf(F, tmp_path / "a")
    b = write_etf(F, tmp_path / "b")
    assert a[0].read_bytes() == b[0].read_bytes() and a[1].read_bytes() == b[1].read_bytes()


def test_design_json(tmp_path):
    s = steiner_triple(15)
    path = write_design(s, tmp_path / "d.json")
    back = read_design(path)
    assert back == s and back.family == s.family
