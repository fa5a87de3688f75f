import numpy as np
import pytest
from hypothesis import given, strategies as st

from swcorr import heisenberg as H

floats = st.floats(-2, 2, allow_nan=False)


def elem(n):
    return st.builds(lambda a, b, c: H.HeisElement(np.array(a), np.array(b), c),
                     st.lists(floats, min_size=n, max_size=n),
                     st.lists(floats, min_size=n, max_size=n), floats)


def test_identity_is_neutral():
    g = H.HeisElement([0.3, -1.0], [2.0, 0.5], 0.7)
    assert (g * H.HeisElement.identity(2)).close_to(g, 0)
    assert (H.HeisElement.identity(2) * g).close_to(g, 0)


def test_commutator_is_central():
    g = H.HeisElement([1.0], [0.0], 0.0)
    h = H.HeisElement([0.0], [1.0], 0.0)
    comm = g * h * g.inverse() * h.inverse()
    # [a, b] = ab in the central coordinate
    assert comm.close_to(H.HeisElement([0.0], [0.0], 1.0), 1e-15)


@given(elem(2), elem(2), elem(2))
def test_associativity(g, h, k):
    assert ((g * h) * k).close_to(g * (h * k), 1e-12)


@given(elem(1))
def test_inverse(g):
    assert (g * g.inverse()).close_to(H.HeisElement.identity(1), 1e-12)


def test_coadjoint_trivial_when_gamma_zero():
    xi = H.HeisCoadjPoint([0.4], [-1.1], 0.0)
    g = H.HeisElement([2.0], [3.0], 1.0)
    assert np.array_equal(H.h_coadjoint(g, xi).as_array(), xi.as_array())


def test_coadjoint_of_central_functional():
    lam = 1.7
    g = H.HeisElement([0.3], [-0.8], 5.0)
    out = H.h_coadjoint(g, H.HeisCoadjPoint([0.0], [0.0], lam))
    assert np.allclose(out.as_array(), [lam * -0.8, -lam * 0.3, lam])


@given(elem(1), elem(1))
def test_coadjoint_is_action(g, h):
    xi = H.HeisCoadjPoint([0.2], [0.9], 1.3)
    lhs = H.h_coadjoint(g * h, xi).as_array()
    rhs = H.h_coadjoint(g, H.h_coadjoint(h, xi)).as_array()
    assert np.allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_center_characters(lam):
    N, c = 16, 0.37
    g = H.HeisElement([0.0], [0.0], c)
    expect = np.exp(1j * lam * c) * np.eye(N + 1)
    assert np.max(np.abs(H.pi0_matrix(g, N, lam).data - expect)) < 1e-13
    assert np.max(np.abs(H.sigma0_matrix(g, N, lam, 40).data - expect)) < 1e-10


@pytest.mark.parametrize("n", [1, 2])
def test_derived_center(n):
    lam, N = 1.3, 10
    Z = H.HeisAlgElement(np.zeros(n), np.zeros(n), 1.0)
    for mat in (H.dpi0_matrix(Z, N, lam), H.dsigma0_matrix(Z, N, lam)):
        assert np.max(np.abs(mat.data - 1j * lam * np.eye(mat.size))) < 1e-14


def test_derived_bracket():
    lam, N = 1.0, 12
    X, Y, Z = H.HeisAlgElement.basis(1)
    for f in (H.dpi0_matrix, H.dsigma0_matrix):
        A, B, C = f(X, N, lam), f(Y, N, lam), f(Z, N, lam)
        comm = A.commutator(B)
        assert np.max(np.abs(comm.interior(4) - C.interior(4))) < 1e-12


def test_pi0_unitary_and_vacuum():
    lam, N = 1.0, 30
    g = H.HeisElement([0.4], [-0.2], 0.1)
    P = H.pi0_matrix(g, N, lam)
    m = 10
    assert np.max(np.abs((P.data.conj().T @ P.data)[:m, :m] - np.eye(m))) < 1e-10
