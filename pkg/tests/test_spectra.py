import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bandlab.ensemble import EnsembleParams, sample_matrix
from bandlab.spectra import (
    ShiftSet,
    det_ratio,
    det_ratio_direct,
    eigenvalues,
    eigh_with_vectors,
    imag_resolvent_pair,
    resolvent_trace,
)
from oracles import direct_det_ratio, jacobi_eigenvalues


@pytest.mark.parametrize("n, W", [(1, 6), (3, 3), (4, 2), (2, 5)])
def test_eigenvalues_match_jacobi(n, W):
    H = sample_matrix(EnsembleParams(n, W, 0.1, seed=5), 0)
    assert np.allclose(eigenvalues(H), jacobi_eigenvalues(H.to_dense()), atol=1e-12)


def test_banded_path_matches_dense():
    H = sample_matrix(EnsembleParams(64, 3, 0.1, seed=2), 1)
    assert H.bandwidth < 0.0625 * H.N
    dense = np.linalg.eigvalsh(H.to_dense())
    assert np.allclose(eigenvalues(H), dense, atol=1e-12)


def test_eigenvalues_sorted_and_trace():
    H = sample_matrix(EnsembleParams(4, 8, 0.1, seed=3), 0)
    w = eigenvalues(H)
    assert np.all(np.diff(w) >= 0)
    assert abs(w.sum() - H.trace()) < 1e-10
    assert abs(np.sum(w**2) - H.frobenius_sq) < 1e-10


def test_residuals_with_vectors():
    H = sample_matrix(EnsembleParams(3, 4, 0.1, seed=8), 0).to_dense()
    w, v = eigh_with_vectors(H)
    assert np.max(np.abs(H @ v - v * w)) < 1e-12


def test_trivial_matrices():
    assert np.array_equal(eigenvalues(np.diag([3.0, 1.0, 2.0])), [1.0, 2.0, 3.0])
    assert eigenvalues(np.zeros((0, 0))).size == 0


def test_resolvent_trace_rejects_real():
    with pytest.raises(ValueError):
        resolvent_trace(np.array([0.0]), 1.0)


def test_shiftset_validation():
    with pytest.raises(ValueError):
        ShiftSet((1j,), (1j, 2j))
    with pytest.raises(ValueError):
        ShiftSet((1j,), (1.0,))


def test_equal_shifts_give_exactly_one():
    s = np.linspace(-1, 1, 50)
    z = 0.1 + 0.01j
    assert det_ratio(s, ShiftSet((z, z.conjugate()), (z, z.conjugate()))) == 1


def test_det_ratio_matches_determinants():
    H = sample_matrix(EnsembleParams(2, 4, 0.1, seed=1), 0).to_dense()
    s = eigenvalues(H)
    num = (0.1 + 0.05j, -0.2 - 0.03j)
    den = (0.12 + 0.06j, -0.18 - 0.04j)
    ref = direct_det_ratio(H, num, den)
    assert abs(det_ratio(s, ShiftSet(num, den)) - ref) < 1e-12 * abs(ref)
    assert abs(det_ratio_direct(s, ShiftSet(num, den)) - ref) < 1e-12 * abs(ref)


@settings(max_examples=40)
@given(
    st.lists(st.floats(-2, 2), min_size=1, max_size=30),
    st.floats(-1, 1),
    st.floats(0.01, 1),
    st.floats(-0.5, 0.5),
)
def test_det_ratio_log_space_agrees_with_product(s, e, eta, shift):
    s = np.array(s)
    sh = ShiftSet((complex(e, eta),), (complex(e + shift, eta),))
    a, b = det_ratio(s, sh), det_ratio_direct(s, sh)
    assert abs(a - b) <= 1e-10 * max(1.0, abs(b))


def test_det_ratio_large_n_no_overflow():
    s = np.linspace(-2, 2, 4000)
    sh = ShiftSet((0.5j, -0.5j), (0.5j + 0.001, -0.5j + 0.001))
    assert np.isfinite(det_ratio(s, sh))


def test_imag_resolvent_pair_is_real_and_positive():
    s = np.linspace(-2, 2, 100)
    v = imag_resolvent_pair(s, 0.1 + 0.01j, 0.12 + 0.01j, 0.3)
    assert abs(v.imag) < 1e-14 * abs(v)
    assert v.real > 0


def test_imag_resolvent_pair_needs_upper_half_plane():
    with pytest.raises(ValueError):
        imag_resolvent_pair(np.zeros(3), 0.1 - 0.01j, 0.1 + 0.01j, 0.3)
