import numpy as np
import pytest

from etf_forge.exceptions import InadmissibleQ
from etf_forge.flat import (best_flat, dft_matrix, flat_defect, has_real_hadamard, is_flat,
                            kronecker, paley_hadamard, sylvester)
from etf_forge.finite_field import is_prime_power

PRINTED_H4 = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])


def _exact_hadamard(h):
    H = h.integer_entries()
    return np.array_equal(H @ H.T, h.n * np.eye(h.n, dtype=np.int64))


def test_sylvester_small():
    assert sylvester(0).integer_entries().tolist() == [[1]]
    assert np.array_equal(sylvester(2).integer_entries(), PRINTED_H4)
    assert _exact_hadamard(sylvester(3))


@pytest.mark.parametrize("t", range(0, 7))
def test_sylvester_row_sums(t):
    H = sylvester(t).integer_entries()
    sums = H.sum(axis=1)
    assert sums[0] == 2**t and np.all(sums[1:] == 0)
    assert np.all(H[0] == 1) and np.all(H[:, 0] == 1)


@pytest.mark.parametrize("q", [3, 7, 11, 19, 23, 27, 31, 43, 47, 59, 67, 71, 79, 83])
def test_paley_orders(q):
    h = paley_hadamard(q)
    assert h.n == q + 1 and h.is_real
    assert _exact_hadamard(h)


def test_paley_rejects_q_1_mod_4():
    for q in (5, 9, 13, 6):
        with pytest.raises(InadmissibleQ):
            paley_hadamard(q)


def test_dft():
    h3 = dft_matrix(3)
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(h3.entries, [[1, 1, 1], [1, w, w**2], [1, w**2, w]], atol=1e-15)
    assert dft_matrix(1).entries.tolist() == [[1]]
    assert flat_defect(dft_matrix(4).entries) < 1e-12
    for n in range(1, 40):
        assert is_flat(dft_matrix(n).entries)


def test_kronecker_mixed():
    h = kronecker(sylvester(1), dft_matrix(3))
    assert h.n == 6 and not h.is_real and is_flat(h.entries)
    assert _exact_hadamard(kronecker(paley_hadamard(3), paley_hadamard(11)))


def test_best_flat_examples():
    assert best_flat(4).is_real
    assert not best_flat(3).is_real
    assert best_flat(12).is_real and best_flat(12).construction.startswith("paley")
    assert not best_flat(4, prefer_real=False).is_real


def _constructible_real(n_max=100):
    base = {1, 2} | {2**t for t in range(8)} | {q + 1 for q in range(3, n_max) if
                                                 is_prime_power(q) and q % 4 == 3}
    orders = set(base)
    changed = True
    while changed:
        changed = False
        for a in list(orders):
            for b in list(orders):
                if a * b <= n_max and a * b not in orders:
                    orders.add(a * b)
                    changed = True
    return {n for n in orders if n <= n_max}


def test_realness_coverage_to_100():
    expected = _constructible_real(100)
    for n in range(1, 101):
        h = best_flat(n)
        assert h.is_real == (n in expected), n
        assert has_real_hadamard(n) == (n in expected)
        assert is_flat(h.entries)
        if h.is_real:
            assert _exact_hadamard(h)


def test_root_order_rescaling_preserves_entries():
    h = dft_matrix(3)
    assert np.allclose(h.with_root_order(6).entries, h.entries)
    assert h.with_root_order(6) == h
