from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etf_forge.exceptions import InvalidDims, InvalidK
from etf_forge.parameters import (ASYMPTOTIC_THRESHOLDS, KNOWN_EXISTS, KNOWN_NONEXISTENT_STATUS,
                                  INADMISSIBLE, UNKNOWN, admissible, asymptotic_series,
                                  enumerate_families, format_table, is_admissible,
                                  rational_sqrt, recover_design_params, steiner_dimensions)
from tests.oracles import TABLE2, TABLE2_LABEL_ADDITIONS


def test_not_steiner_19_76():
    result = recover_design_params(19, 76)
    assert not result.is_steiner
    assert result.v == Fraction(38, 3) and result.r == 5 and result.k == Fraction(10, 3)
    assert str(result) == "NotSteiner: v=38/3, k=10/3"


def test_recover_6_16():
    p = recover_design_params(6, 16)
    assert (p.v, p.b, p.r, p.k) == (4, 6, 3, 2)
    assert p.verdict.status == KNOWN_EXISTS


def test_recover_42_288_is_known_nonexistent():
    p = recover_design_params(42, 288)
    assert (p.v, p.k, p.r) == (36, 6, 7)
    assert p.verdict.status == KNOWN_NONEXISTENT_STATUS


def test_recover_28_288_alpha_not_rational_square():
    result = recover_design_params(28, 288)
    assert not result.is_steiner
    assert result.alpha_sq == Fraction(65, 2009)
    assert rational_sqrt(result.alpha_sq) is None


def test_recover_errors():
    for M, N in [(0, 5), (5, 5), (6, 3)]:
        with pytest.raises(InvalidDims):
            recover_design_params(M, N)


@pytest.mark.parametrize("row", TABLE2, ids=lambda r: f"{r[0]}x{r[1]}")
def test_table_rows_round_trip(row):
    M, N, k, v, r = row[:5]
    p = recover_design_params(M, N)
    assert p.is_steiner and (p.v, p.b, p.r, p.k) == (v, M, r, k)
    assert v * r == M * k and r * (k - 1) == v - 1
    assert (M - 1) * v * v + 2 * (N - M) * v - N * (N - M) == 0
    assert steiner_dimensions(k, v) == (M, N)


def test_redundancy_bounds():
    for row in enumerate_families(100):
        assert Fraction(row.N, row.M) > 2
        assert row.N <= row.M**2
        if row.real:
            assert 2 * row.N <= row.M * (row.M + 1)


def test_admissible_examples():
    assert admissible(6, 16).status == KNOWN_NONEXISTENT_STATUS
    assert admissible(10, 46).status == UNKNOWN
    assert admissible(14, 92).status == UNKNOWN
    assert admissible(3, 8).status == INADMISSIBLE
    for v in range(2, 60):
        assert admissible(2, v).status == KNOWN_EXISTS
    assert admissible(6, 16).v0 == ASYMPTOTIC_THRESHOLDS[6] == 801
    assert "Unital with q=3" in admissible(4, 28).witnesses
    with pytest.raises(InvalidK):
        admissible(1, 5)


@given(st.integers(2, 12), st.integers(2, 400))
def test_admissibility_matches_divisibility(k, v):
    if v < k:
        return
    ok = (v - 1) % (k - 1) == 0 and (v * (v - 1)) % (k * (k - 1)) == 0
    assert is_admissible(k, v) == ok
    assert (admissible(k, v).status != INADMISSIBLE) == ok


@given(st.integers(2, 9), st.integers(2, 60))
def test_recover_inverts_steiner_dimensions(k, v):
    if not is_admissible(k, v) or v == k:
        return
    M, N = steiner_dimensions(k, v)
    p = recover_design_params(M, N)
    assert (p.v, p.k) == (v, k)


def test_enumerate_families_matches_table():
    rows = enumerate_families(100)
    assert [(r.M, r.N, r.k, r.v, r.r, r.realness) for r in rows] == [t[:6] for t in TABLE2]
    for row, expected in zip(rows, TABLE2):
        printed = set(expected[6].split("; "))
        ours = set(row.constructions.split("; "))
        assert ours == printed | TABLE2_LABEL_ADDITIONS.get((row.M, row.N), set())
    assert sum(r.real for r in rows) == 6


def test_enumerate_small():
    rows = enumerate_families(7)
    assert [(r.M, r.N, r.realness) for r in rows] == [(6, 16, "R"), (7, 28, "R"), (3, 9, "C")]
    assert enumerate_families(0) == []


def test_format_table():
    csv_text = format_table(enumerate_families(7), "csv")
    lines = csv_text.splitlines()
    assert lines[0] == "M,N,k,v,r,realness,constructions"
    assert lines[1] == '6,16,2,4,3,R,"2-blocks of v=4; Affine with q=2, n=2"'
    assert format_table([], "csv").splitlines() == ["M,N,k,v,r,realness,constructions"]
    assert "Projective with q=2, n=2" in format_table(enumerate_families(7))


def test_asymptotic_series():
    a, b = asymptotic_series(2, 1)
    assert (a.v, a.M, a.N) == (3, 3, 9) and (b.v, b.M, b.N) == (4, 6, 16)
    a, b = asymptotic_series(3, 2)
    assert (a.v, a.M, a.N) == (13, 26, 91) and (b.v, b.M, b.N) == (15, 35, 120)
    for k in range(2, 8):
        for j in range(1, 6):
            first, second = asymptotic_series(k, j)
            assert first.redundancy == k + Fraction(1, j)
            for rec in (first, second):
                assert steiner_dimensions(k, rec.v) == (rec.M, rec.N)
                assert Fraction(rec.N, rec.M) == rec.redundancy
                assert rec.hadamard_order == (rec.v - 1) // (k - 1) + 1
    with pytest.raises(InvalidK):
        asymptotic_series(1, 1)
