"""Command line entry point: ``swcorr run`` and ``swcorr table``.

Exit codes: 0 when every check passes, 1 on a tolerance failure, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import heisenberg, swc
from .compactk import CompactChoice

SCHEMA = "swcorr.report/1"
TABLE_SCHEMA = "swcorr.table/1"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    lam: float = 1.0
    n: int = 1
    N: int = 24
    quad_order: int = 60
    k: str = "torus"
    m: tuple = (1,)
    j: float = 0.5
    seed: int = 0
    tol_overrides: dict = field(default_factory=dict)
    tol_all: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.lam) or self.lam <= 0:
            raise ConfigError(f"lambda must be positive, got {self.lam}")
        if self.n not in (1, 2):
            raise ConfigError(f"n must be 1 or 2, got {self.n}")
        if self.N < 14:
            raise ConfigError(f"N must be at least 14, got {self.N}")
        if self.quad_order < heisenberg.min_quad_order(self.N):
            raise ConfigError(f"quad-order must be at least N + 12 = {heisenberg.min_quad_order(self.N)}")
        if self.k not in ("torus", "su2", "trivial"):
            raise ConfigError(f"unknown compact factor {self.k!r}")
        if self.k == "torus" and len(self.m) != self.n:
            raise ConfigError(f"torus needs {self.n} charges, got {len(self.m)}")
        if self.k == "su2":
            if self.n != 2:
                raise ConfigError("su2 acts on C^2 and needs n = 2")
            if self.j < 0 or abs(2 * self.j - round(2 * self.j)) > 1e-12:
                raise ConfigError(f"spin must be a non-negative half-integer, got {self.j}")
        for name, tol in self.tol_overrides.items():
            if not tol >= 0:
                raise ConfigError(f"tolerance for {name} must be non-negative")
        if self.tol_all is not None and not self.tol_all >= 0:
            raise ConfigError("tolerance must be non-negative")

    def choice(self) -> CompactChoice:
        if self.k == "su2":
            return CompactChoice.su2(self.j)
        if self.k == "trivial":
            return CompactChoice.trivial(self.n)
        return CompactChoice.torus(list(self.m))

    def tol_for(self, name: str, default: float) -> float:
        if name in self.tol_overrides:
            return self.tol_overrides[name]
        return self.tol_all if self.tol_all is not None else default

    def params(self) -> dict:
        out = {"lambda": self.lam, "n": self.n, "N": self.N, "quad_order": self.quad_order,
               "k": self.k, "seed": self.seed}
        if self.k == "torus":
            out["m"] = list(self.m)
        if self.k == "su2":
            out["j"] = self.j
        return out


def _parse_tols(items):
    over, whole = {}, None
    for item in items or []:
        if "=" in item:
            name, _, val = item.partition("=")
            try:
                over[name.strip()] = float(val)
            except ValueError:
                raise ConfigError(f"bad tolerance {item!r}") from None
        else:
            try:
                whole = float(item)
            except ValueError:
                raise ConfigError(f"bad tolerance {item!r}") from None
    return over, whole


def config_from_args(args) -> RunConfig:
    over, whole = _parse_tols(args.tol)
    m = tuple(args.m) if args.m is not None else (1,) * args.n
    return RunConfig(lam=args.lam, n=args.n, N=args.N, quad_order=args.quad_order, k=args.k,
                     m=m, j=args.j, seed=args.seed, tol_overrides=over, tol_all=whole)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="swcorr", description="Stratonovich-Weyl correspondence checks")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--N", type=int, default=24)
        sp.add_argument("--quad-order", type=int, default=60)
        sp.add_argument("--k", choices=["torus", "su2", "trivial"], default="torus")
        sp.add_argument("--m", type=int, nargs="+", default=None, help="torus charges")
        sp.add_argument("--j", type=float, default=0.5, help="su(2) spin")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--format", choices=["json", "csv"], default="json")

    run = sub.add_parser("run", help="run verification suites")
    run.add_argument("--suite", action="append", required=True,
                     help="suite name or 'all'; repeatable")
    run.add_argument("--tol", action="append", default=None,
                     help="NAME=VALUE for one check, or a bare value for all checks")
    common(run)

    table = sub.add_parser("table", help="print symbol tables")
    table.add_argument("which", choices=["dpi-symbols", "dsigma-symbols", "moment-map"])
    table.add_argument("--points", type=int, default=4)
    table.add_argument("--tol", action="append", default=None)
    common(table)
    return p


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _run(args, cfg: RunConfig) -> int:
    from .suites import SUITES, run_suite

    names = []
    for s in args.suite:
        names.extend(SUITES if s == "all" else [s])
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    reports = [run_suite(s, cfg) for s in dict.fromkeys(names)]
    if args.format == "json":
        doc = {"schema": SCHEMA, "config": cfg.params(), "reports": [r.to_dict() for r in reports],
               "passed": all(r.passed for r in reports)}
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit("".join(r.to_csv(header=(i == 0)) for i, r in enumerate(reports)), args.out)
    return 0 if all(r.passed for r in reports) else 1


def _table(args, cfg: RunConfig) -> int:
    """Closed forms against computed values on the basis of the Lie algebra.

    dpi-symbols:    U(dpi(X)) against the closed form on C^n x o(phi0);
    dsigma-symbols: W^-1(dsigma(X)) against the closed form in (p, q, phi);
    moment-map:     the Berezin symbol S(dpi(X)) against i <Phi(z, phi), X>.
    The first sample point is (0, phi0); the rest are drawn from the seed.
    """
    from .motion import MotionAlgElement, big_phi, big_symbol, dpi_op
    from .weyl import j_inverse

    ch = cfg.choice()
    n, lam = cfg.n, cfg.lam
    rng = np.random.default_rng(cfg.seed)
    side = "schrodinger" if args.which == "dsigma-symbols" else "fock"
    sw = swc.SWMap.build(side, ch, lam)
    basis = MotionAlgElement.basis(ch)
    samples = [(np.zeros(n, dtype=complex), ch.orbit_point(np.eye(n)))]
    for _ in range(max(args.points - 1, 0)):
        samples.append((rng.normal(size=n) + 1j * rng.normal(size=n), ch.random_point(rng)))
    rows, worst = [], 0.0
    for i, (z, pt) in enumerate(samples):
        xi = big_phi(z, pt, lam, ch)
        for b, X in enumerate(basis):
            if args.which == "moment-map":
                computed = big_symbol(dpi_op(X, lam, ch), z, pt, ch, lam)
                closed = 1j * xi.pair(X, ch)
            elif side == "fock":
                computed = sw(sw.derived(X))(z, pt)
                closed = swc.dpi_symbol_closed_form(X, z, pt, lam, sw.calc)
            else:
                computed = sw(sw.derived(X))(z, pt)
                closed = swc.dsigma_symbol_closed_form(X, *j_inverse(z, lam), pt, lam, sw.calc)
            computed, closed = complex(computed), complex(closed)
            res = abs(computed - closed)
            worst = max(worst, res)
            rows.append({"basis": b, "point": i,
                         "z": [[float(c.real), float(c.imag)] for c in z],
                         "phi": [float(x) for x in pt.phi],
                         "closed": [closed.real, closed.imag],
                         "computed": [computed.real, computed.imag], "residual": res})
    tol = cfg.tol_for(args.which, 1e-6)
    if args.format == "json":
        doc = {"schema": TABLE_SCHEMA, "table": args.which, "config": cfg.params(), "rows": rows,
               "max_residual": worst, "tolerance": tol, "passed": worst <= tol}
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["basis", "point"] + [f"{c}{k}_{part}" for k in range(n) for c in "z"
                                         for part in ("re", "im")]
                   + [f"phi_{k}" for k in range(len(samples[0][1].phi))]
                   + ["closed_re", "closed_im", "computed_re", "computed_im", "residual"])
        for r in rows:
            nums = [x for pair in r["z"] for x in pair] + r["phi"] + r["closed"] + r["computed"] \
                + [r["residual"]]
            w.writerow([r["basis"], r["point"]] + [f"{x:.16e}" for x in nums])
        _emit(buf.getvalue(), args.out)
    return 0 if worst <= tol else 1


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = config_from_args(args)
        if args.command == "run":
            return _run(args, cfg)
        return _table(args, cfg)
    except ConfigError as exc:
        print(f"swcorr: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
