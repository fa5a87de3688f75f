import json

import numpy as np
import pytest

from swcorr import fock, swc, weyl
from swcorr.compactk import CompactChoice
from swcorr.motion import MotionAlgElement, SplitOp, big_phi
from swcorr.operators import DiffOp, rank_one
from swcorr.polysym import PolySymbol

TORUS = CompactChoice.torus([1])
HALF = CompactChoice.su2(0.5)


@pytest.mark.parametrize("side", ["fock", "schrodinger"])
@pytest.mark.parametrize("ch", [TORUS, HALF], ids=["torus", "j1/2"])
def test_symbol_of_identity(side, ch):
    sw = swc.SWMap.build(side, ch, 1.0)
    one = sw(SplitOp(DiffOp.scalar(ch.n, 1.0), np.zeros((ch.dim_v, ch.dim_v))))
    rng = np.random.default_rng(0)
    z = rng.normal(size=(4, ch.n)) + 1j * rng.normal(size=(4, ch.n))
    pts = [ch.random_point(rng) for _ in range(3)]
    assert np.allclose(one.values(z, pts), 1, atol=1e-12)


@pytest.mark.parametrize("ch", [TORUS, HALF], ids=["torus", "j1/2"])
def test_derived_symbols_at_origin(ch):
    """At z = 0 the symbol of dpi(X) is i lam c + w(drho(A)) + Tr(A)/2."""
    lam = 1.3
    sw = swc.SWMap.build("fock", ch, lam)
    pt = ch.orbit_point(np.eye(ch.n))
    for X in MotionAlgElement.basis(ch):
        got = sw(sw.derived(X))(np.zeros(ch.n), pt)
        want = 1j * lam * X.c + sw.calc.w(ch.drho(X.A))(pt) + 0.5 * np.trace(X.A)
        assert got == pytest.approx(want, abs=1e-12)
        assert swc.dpi_symbol_closed_form(X, np.zeros(ch.n), pt, lam, sw.calc) == pytest.approx(want)


def test_two_sides_agree_through_the_chart():
    lam = 0.8
    f = swc.SWMap.build("fock", HALF, lam)
    s = swc.SWMap.build("schrodinger", HALF, lam)
    rng = np.random.default_rng(1)
    z = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    pts = [HALF.random_point(rng) for _ in range(2)]
    for X in MotionAlgElement.basis(HALF):
        assert np.allclose(f(f.derived(X)).values(z, pts), s(s.derived(X)).values(z, pts), atol=1e-10)


@pytest.mark.parametrize("side", ["fock", "schrodinger"])
def test_axioms_small(side):
    sw = swc.SWMap.build(side, TORUS, 1.0)
    rng = np.random.default_rng(2)
    assert swc.reality_residual(sw, 16, rng) < 1e-8
    assert swc.covariance_residual(sw, 16, rng, ngroup=4, order=40) < 1e-5
    assert swc.traciality_residual(sw, 4, 4) < 1e-5


def test_traciality_spin_half():
    sw = swc.SWMap.build("fock", HALF, 1.0)
    assert swc.traciality_residual(sw, 1, 5) < 1e-8


def test_schrodinger_symbol_is_wigner_times_w():
    lam = 1.0
    sw = swc.SWMap.build("schrodinger", HALF, lam)
    A0 = rank_one("hermite", 2, 2, lam, 1, 3)
    C = np.array([[1, 2j], [0.5, -1]])
    rng = np.random.default_rng(3)
    z = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    pts = [HALF.random_point(rng) for _ in range(2)]
    want = np.outer(weyl.wigner_dequantize(A0).at_z(z), sw.calc.w(C).values(pts))
    assert np.allclose(sw(A0.kron(C)).values(z, pts), want, atol=1e-13)


def test_big_berezin_unit_and_kernel():
    lam = 1.0
    calc = swc.SWMap.build("fock", HALF, lam).calc
    unit = swc.TensorSymbol(((PolySymbol.constant(2, 1.0), np.eye(2)),), HALF)
    pt = HALF.random_point(np.random.default_rng(4))
    assert swc.big_berezin_tensor(unit, calc, lam)(np.zeros(2), pt) == pytest.approx(1.0)
    rng = np.random.default_rng(5)
    f = swc.TensorSymbol(((PolySymbol.random(2, 2, rng), rng.normal(size=(2, 2))),), HALF)
    z = 0.3 * (rng.normal(size=2) + 1j * rng.normal(size=2))
    tens = swc.big_berezin_tensor(f, calc, lam)(z, pt)
    kern = swc.big_berezin_kernel(f, z, pt, calc, lam, order=16)
    assert tens == pytest.approx(kern, abs=1e-8)


def test_unitary_part_matches_berezin_route():
    lam = 1.0
    sw = swc.SWMap.build("fock", HALF, lam)
    rng = np.random.default_rng(6)
    A = rank_one("fock", 3, 2, lam, 2, 5, 2)
    z = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    pts = [HALF.random_point(rng) for _ in range(3)]
    assert np.allclose(swc.u_via_berezin(A, sw.calc).values(z, pts), sw(A).values(z, pts), atol=1e-10)


def test_transfers_read_the_same_function():
    lam = 1.0
    fsw = swc.SWMap.build("fock", TORUS, lam)
    ssw = swc.SWMap.build("schrodinger", TORUS, lam)
    N = 6
    B = fock.segal_bargmann_matrix(N, lam, 1, 40)
    A = rank_one("hermite", N, 1, lam, 1, 2)
    W1 = swc.orbit_transfer(ssw(A), "psi", lam)
    W2 = swc.orbit_transfer(fsw(fock.conjugate_to_fock(A, B)), "phi", lam)
    pt = TORUS.orbit_point(np.eye(1))
    for z in (0.3 + 0.2j, -1j):
        xi = big_phi(np.array([z]), pt, lam, TORUS)
        assert W1(xi) == pytest.approx(W2(xi), abs=1e-10)
        p, q = weyl.j_inverse(np.array([z]), lam)
        assert W1(xi) == pytest.approx(weyl.wigner_quadrature(A, p, q)[0], abs=1e-10)


def test_report_serialization():
    rep = swc.VerificationReport("demo", {"n": 1})
    rep.add("a", 1e-3, 1e-2)
    rep.add("b", 0.5, 0.1)
    assert not rep.passed
    doc = json.loads(rep.to_json())
    assert doc["schema"] == swc.SCHEMA and [c["passed"] for c in doc["checks"]] == [True, False]
    lines = rep.to_csv().splitlines()
    assert lines[0] == "suite,check,residual,tol,passed"
    assert lines[1] == "demo,a,1.0000000000000000e-03,1.0000000000000000e-02,1"
    assert rep.to_csv(header=False).splitlines() == lines[1:]
