import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swcorr import fock, heisenberg as H, numkit


def test_vacuum_is_constant_one():
    v = np.zeros(numkit.count(1, 10), dtype=complex)
    v[0] = 1
    e0 = fock.FockVector(v, 1, 10, 1.0)
    assert np.allclose(e0(np.array([0.0, 1 + 2j, -3j])), 1.0)


@pytest.mark.parametrize("z", [0.0, 0.7 - 0.2j, 1.5 + 1j])
def test_coherent_norm(z):
    lam = 1.0
    c = fock.coherent_coeffs(np.array([z]), 1, 25, lam)
    assert np.vdot(c, c).real == pytest.approx(np.exp(abs(z) ** 2 / (2 * lam)), rel=1e-10)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_reproducing_property(seed):
    rng = np.random.default_rng(seed)
    lam, N = 0.8, 12
    F = fock.FockVector(rng.normal(size=numkit.count(2, N)) + 0j, 2, N, lam)
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    ez = fock.coherent_state(z, 40, lam)
    pad = np.zeros(numkit.count(2, 40), dtype=complex)
    pad[:len(F.coeffs)] = F.coeffs
    assert np.vdot(ez.coeffs, pad) == pytest.approx(F(z), rel=1e-9, abs=1e-9)


def test_inner_product_by_quadrature():
    lam, N = 1.5, 6
    m = numkit.count(1, N)
    E = [fock.FockVector(np.eye(m)[i], 1, N, lam) for i in range(m)]
    G = np.array([[fock.fock_inner_quadrature(a, b, 1, lam, 30) for b in E] for a in E])
    assert np.max(np.abs(G - np.eye(m))) < 1e-12


@pytest.mark.parametrize("n", [1, 2])
def test_sb_matrix_diagonal_unitary(n):
    N, lam = 14, 1.0
    B = fock.segal_bargmann_matrix(N, lam, n, order=40).data
    ph = fock.sb_phases(N, n)
    assert np.max(np.abs(B - np.diag(ph))) < 1e-12
    assert np.max(np.abs(B @ B.conj().T - np.eye(len(B)))) < 1e-12


def test_sb_inverse_maps_vacuum_to_ground_state():
    B_inv = fock.segal_bargmann_inverse_matrix(14, 1.0, 1, order=40)
    col = B_inv.data[:, 0]
    assert abs(col[0]) == pytest.approx(1.0, abs=1e-13)
    assert np.max(np.abs(col[1:])) < 1e-13


def test_sb_kernel_maps_ground_state_to_constant():
    lam = 1.3
    rule = numkit.gauss_hermite(60)
    x = rule.nodes / np.sqrt(lam)
    w = rule.weights * np.exp(rule.nodes ** 2) / np.sqrt(lam)
    h0 = numkit.hermite_fn(0, lam, x)
    for z in (0.0, 0.5 + 0.3j, -1j):
        val = np.sum(w * fock.sb_kernel(np.array([z]), x[:, None], lam) * h0)
        assert val == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_sb_intertwines_derived_reps(lam):
    N = 16
    B = fock.segal_bargmann_matrix(N, lam, 1, order=40)
    for X in H.HeisAlgElement.basis(1):
        moved = fock.conjugate_to_fock(H.dsigma0_matrix(X, N, lam), B)
        target = H.dpi0_matrix(X, N, lam)
        assert np.max(np.abs(moved.interior(4) - target.interior(4))) < 1e-10
