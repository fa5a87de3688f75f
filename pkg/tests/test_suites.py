import numpy as np
import pytest

from swcorr.cli import RunConfig
from swcorr.suites import REDUCTIONS, SUITES, check_rng, run_suite, shared_checks

SMALL = dict(N=14, quad_order=40)
CONFIGS = {
    "torus1": dict(n=1, **SMALL),
    "torus1-lam0.5": dict(n=1, lam=0.5, m=(2,), **SMALL),
    "torus1-lam2": dict(n=1, lam=2.0, m=(-1,), **SMALL),
    "su2-half": dict(n=2, k="su2", j=0.5, **SMALL),
    "torus2": dict(n=2, m=(1, 2), **SMALL),
}


def _failures(rep):
    return [(c.name, c.residual, c.tol) for c in rep.checks if not c.passed]


@pytest.mark.parametrize("suite", list(SUITES))
@pytest.mark.parametrize("cfg", list(CONFIGS), ids=list(CONFIGS))
def test_suite_passes(suite, cfg):
    rep = run_suite(suite, RunConfig(**CONFIGS[cfg]))
    assert rep.checks
    assert rep.passed, _failures(rep)


@pytest.mark.parametrize("suite", ["compact-orbit", "motion-fock", "motion-schrodinger"])
def test_spin_one(suite):
    rep = run_suite(suite, RunConfig(n=2, k="su2", j=1.0, **SMALL))
    assert rep.passed, _failures(rep)


def test_check_rng_is_per_name():
    a = check_rng(0, "x").normal(size=3)
    assert np.array_equal(a, check_rng(0, "x").normal(size=3))
    assert not np.array_equal(a, check_rng(0, "y").normal(size=3))
    assert not np.array_equal(a, check_rng(1, "x").normal(size=3))


def test_suites_are_deterministic():
    cfg = RunConfig(n=1, seed=3, **SMALL)
    a = run_suite("motion-fock", cfg).to_dict()
    b = run_suite("motion-fock", cfg).to_dict()
    assert a == b


def test_tolerance_overrides():
    rep = run_suite("heisenberg-core", RunConfig(n=1, tol_overrides={"group.inverse": 0.0},
                                                 tol_all=1.0, **SMALL))
    tols = {c.name: c.tol for c in rep.checks}
    assert tols["group.inverse"] == 0.0
    assert all(t == 1.0 for name, t in tols.items() if name != "group.inverse")


@pytest.mark.parametrize("n", [1, 2])
def test_trivial_compact_factor_reduces_exactly(n):
    cfg = RunConfig(n=n, k="trivial", N=16, quad_order=40)
    cache = {}
    for motion_suite, scalars in REDUCTIONS.items():
        mrep = run_suite(motion_suite, cfg)
        shared = []
        for name in scalars:
            srep = cache.setdefault(name, run_suite(name, cfg))
            shared += shared_checks(mrep, srep)
        assert shared, motion_suite
        for name, a, b in shared:
            assert a == b, (motion_suite, name, a, b)
