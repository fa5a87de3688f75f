"""Coefficient-table symbols.

``PolySymbol`` stores sum c_ab u^a v^b for one of two variable pairs:

* ``kind="z"``:  u = z, v = conj(z) on C^n,
* ``kind="pq"``: u = p, v = q on R^2n.

``GaussPolySymbol`` is ``P(z, conj z) * exp(-kappa |z|^2)``; the family is
closed under Gaussian convolution, so heat flow acts in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np


def _clean(d: dict, tol: float = 0.0) -> dict:
    return {k: v for k, v in d.items() if abs(v) > tol}


def _monomial_values(x: np.ndarray, E: np.ndarray) -> np.ndarray:
    """prod_k x[..., k] ** E[:, k], gathered from power tables."""
    D = int(E.max()) if E.size else 0
    pw = np.ones(x.shape + (D + 1,), dtype=complex)
    for d in range(1, D + 1):
        pw[..., d] = pw[..., d - 1] * x
    out = pw[..., 0, E[:, 0]]
    for k in range(1, E.shape[1]):
        out = out * pw[..., k, E[:, k]]
    return out


def _mono_key(n, a=None, b=None):
    z = (0,) * n
    return (tuple(a) if a is not None else z, tuple(b) if b is not None else z)


@dataclass(frozen=True)
class PolySymbol:
    n: int
    coeffs: dict = field(default_factory=dict)
    kind: str = "z"

    # -- construction --------------------------------------------------------
    @classmethod
    def constant(cls, n: int, c: complex = 1.0, kind: str = "z") -> "PolySymbol":
        return cls(n, {_mono_key(n): complex(c)}, kind)

    @classmethod
    def monomial(cls, a, b, c: complex = 1.0, kind: str = "z") -> "PolySymbol":
        return cls(len(a), {(tuple(a), tuple(b)): complex(c)}, kind)

    @classmethod
    def first(cls, n: int, k: int, c: complex = 1.0, kind: str = "z") -> "PolySymbol":
        """c * u_k (z_k or p_k)."""
        e = [0] * n
        e[k] = 1
        return cls(n, {(tuple(e), (0,) * n): complex(c)}, kind)

    @classmethod
    def second(cls, n: int, k: int, c: complex = 1.0, kind: str = "z") -> "PolySymbol":
        """c * v_k (conj z_k or q_k)."""
        e = [0] * n
        e[k] = 1
        return cls(n, {((0,) * n, tuple(e)): complex(c)}, kind)

    @classmethod
    def random(cls, n: int, degree: int, rng, kind: str = "z") -> "PolySymbol":
        from .numkit import multi_indices
        out = {}
        for a in multi_indices(n, degree):
            for b in multi_indices(n, degree - int(a.sum())):
                out[(tuple(a), tuple(b))] = complex(rng.normal() + 1j * rng.normal())
        return cls(n, out, kind)

    # -- linear structure ------------------------------------------------------
    def _same(self, other: "PolySymbol"):
        if (self.n, self.kind) != (other.n, other.kind):
            raise ValueError("symbols live on different spaces")

    def __add__(self, other):
        if not isinstance(other, PolySymbol):
            other = PolySymbol.constant(self.n, other, self.kind)
        self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return PolySymbol(self.n, out, self.kind)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, PolySymbol):
            self._same(other)
            out: dict = {}
            for (a1, b1), c1 in self.coeffs.items():
                for (a2, b2), c2 in other.coeffs.items():
                    key = (tuple(x + y for x, y in zip(a1, a2)),
                           tuple(x + y for x, y in zip(b1, b2)))
                    out[key] = out.get(key, 0) + c1 * c2
            return PolySymbol(self.n, out, self.kind)
        return PolySymbol(self.n, {k: other * v for k, v in self.coeffs.items()}, self.kind)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        out = PolySymbol.constant(self.n, 1.0, self.kind)
        for _ in range(m):
            out = out * self
        return out

    def conj(self) -> "PolySymbol":
        """Complex conjugate as a function (z kind only)."""
        if self.kind != "z":
            return PolySymbol(self.n, {k: np.conj(v) for k, v in self.coeffs.items()}, self.kind)
        return PolySymbol(self.n, {(b, a): np.conj(v) for (a, b), v in self.coeffs.items()}, "z")

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self.coeffs), default=0)

    def truncate(self, max_deg: int) -> "PolySymbol":
        """Keep monomials with |a| <= max_deg and |b| <= max_deg."""
        return PolySymbol(self.n, {k: v for k, v in self.coeffs.items()
                                   if sum(k[0]) <= max_deg and sum(k[1]) <= max_deg}, self.kind)

    def cleaned(self, tol: float = 0.0) -> "PolySymbol":
        return PolySymbol(self.n, _clean(self.coeffs, tol), self.kind)

    def max_coeff_diff(self, other: "PolySymbol") -> float:
        d = (self - other).coeffs
        return max((abs(v) for v in d.values()), default=0.0)

    # -- evaluation -------------------------------------------------------------
    def __call__(self, u, v=None):
        """Evaluate. z kind: ``f(z)`` with z of shape (..., n). pq kind: ``f(p, q)``."""
        if self.kind == "z":
            z = np.asarray(u, dtype=complex)
            first, second = z, np.conj(z)
        else:
            first = np.asarray(u, dtype=float)
            second = np.asarray(v, dtype=float)
        if first.ndim == 0 or first.shape[-1] != self.n:
            first = first[..., None]
            second = second[..., None]
        if not self.coeffs:
            return np.zeros(first.shape[:-1], dtype=complex)
        keys = list(self.coeffs)
        A = np.array([k[0] for k in keys])
        B = np.array([k[1] for k in keys])
        c = np.array([self.coeffs[k] for k in keys], dtype=complex)
        fa = _monomial_values(first, A)
        fb = _monomial_values(second, B)
        return (fa * fb) @ c

    # -- differential structure -------------------------------------------------
    def mixed_exp(self, t: complex) -> "PolySymbol":
        """exp(t * sum_k d/du_k d/dv_k) applied exactly (finite series)."""
        out: dict = {}
        for (a, b), c in self.coeffs.items():
            per = []
            for k in range(self.n):
                per.append([(j, t ** j / factorial(j) * factorial(a[k]) / factorial(a[k] - j)
                             * factorial(b[k]) / factorial(b[k] - j))
                            for j in range(min(a[k], b[k]) + 1)])
            for choice in np.ndindex(*[len(p) for p in per]):
                coef = c
                aa, bb = list(a), list(b)
                for k, ci in enumerate(choice):
                    j, cj = per[k][ci]
                    coef = coef * cj
                    aa[k] -= j
                    bb[k] -= j
                key = (tuple(aa), tuple(bb))
                out[key] = out.get(key, 0) + coef
        return PolySymbol(self.n, out, self.kind)

    def laplacian(self) -> "PolySymbol":
        """Delta = 4 sum d_z d_zbar (z kind)."""
        out: dict = {}
        for (a, b), c in self.coeffs.items():
            for k in range(self.n):
                if a[k] and b[k]:
                    aa, bb = list(a), list(b)
                    aa[k] -= 1
                    bb[k] -= 1
                    key = (tuple(aa), tuple(bb))
                    out[key] = out.get(key, 0) + 4 * a[k] * b[k] * c
        return PolySymbol(self.n, out, self.kind)

    def heat(self, t: float) -> "PolySymbol":
        """exp(t Delta) with Delta = 4 sum d_z d_zbar; any real t."""
        if self.kind != "z":
            raise ValueError("heat flow is defined on (z, zbar) symbols")
        return self.mixed_exp(4 * t)

    def rescale(self, r: complex) -> "PolySymbol":
        """The symbol z -> P(r z) for real r (u -> r u, v -> r v)."""
        return PolySymbol(self.n, {k: v * r ** (sum(k[0]) + sum(k[1]))
                                   for k, v in self.coeffs.items()}, self.kind)

    # -- change of variables between C^n and R^2n -------------------------------
    def substitute(self, first_images: list, second_images: list, kind: str) -> "PolySymbol":
        """Replace u_k, v_k by the given PolySymbols (of the target kind)."""
        out = PolySymbol(self.n, {}, kind)
        cache: dict = {}

        def power(images, k, m):
            key = (id(images), k, m)
            if key not in cache:
                cache[key] = images[k] ** m
            return cache[key]

        for (a, b), c in self.coeffs.items():
            term = PolySymbol.constant(self.n, c, kind)
            for k in range(self.n):
                if a[k]:
                    term = term * power(first_images, k, a[k])
                if b[k]:
                    term = term * power(second_images, k, b[k])
            out = out + term
        return out

    def to_phase(self, lam: float) -> "PolySymbol":
        """z-kind symbol F -> F o j with j(p, q) = q - i lam p."""
        if self.kind != "z":
            raise ValueError("expected a z-kind symbol")
        n = self.n
        zs = [PolySymbol.second(n, k, 1.0, "pq") + PolySymbol.first(n, k, -1j * lam, "pq")
              for k in range(n)]
        zbs = [PolySymbol.second(n, k, 1.0, "pq") + PolySymbol.first(n, k, 1j * lam, "pq")
               for k in range(n)]
        return self.substitute(zs, zbs, "pq")

    def to_complex(self, lam: float) -> "PolySymbol":
        """pq-kind symbol f -> f o j^-1 with p = i (z - zbar)/(2 lam), q = (z + zbar)/2."""
        if self.kind != "pq":
            raise ValueError("expected a pq-kind symbol")
        n = self.n
        ps = [PolySymbol.first(n, k, 1j / (2 * lam)) + PolySymbol.second(n, k, -1j / (2 * lam))
              for k in range(n)]
        qs = [PolySymbol.first(n, k, 0.5) + PolySymbol.second(n, k, 0.5) for k in range(n)]
        return self.substitute(ps, qs, "z")


def gaussian_series(n: int, kappa: float, max_deg: int) -> PolySymbol:
    """Taylor polynomial of exp(-kappa |z|^2), degree <= max_deg in z and in zbar."""
    out: dict = {}
    from .numkit import multi_indices
    for a in multi_indices(n, max_deg):
        a = tuple(int(x) for x in a)
        c = 1.0
        for m in a:
            c *= (-kappa) ** m / factorial(m)
        out[(a, a)] = c
    return PolySymbol(n, out, "z")


@dataclass(frozen=True)
class GaussPolySymbol:
    """P(z, zbar) * exp(-kappa |z|^2)."""
    poly: PolySymbol
    kappa: float

    @property
    def n(self) -> int:
        return self.poly.n

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zz = z if (z.ndim and z.shape[-1] == self.n) else z[..., None]
        return self.poly(zz) * np.exp(-self.kappa * np.sum(np.abs(zz) ** 2, axis=-1))

    def __add__(self, other: "GaussPolySymbol") -> "GaussPolySymbol":
        if not np.isclose(self.kappa, other.kappa):
            raise ValueError("Gaussian widths differ")
        return GaussPolySymbol(self.poly + other.poly, self.kappa)

    def __mul__(self, c):
        if isinstance(c, GaussPolySymbol):
            return GaussPolySymbol(self.poly * c.poly, self.kappa + c.kappa)
        return GaussPolySymbol(self.poly * c, self.kappa)

    __rmul__ = __mul__

    def conj(self) -> "GaussPolySymbol":
        return GaussPolySymbol(self.poly.conj(), self.kappa)

    def heat(self, t: float) -> "GaussPolySymbol":
        """exp(t Delta) in closed form (Gaussian convolution of variance 4t).

        For t < 0 the same formula is the analytic continuation; it is
        defined whenever kappa + 1/(4t) != 0.
        """
        if t == 0:
            return self
        if self.kappa == 0:
            return GaussPolySymbol(self.poly.heat(t), 0.0)
        s = 1.0 / (4.0 * t)
        tot = self.kappa + s
        if abs(tot) < 1e-300:
            raise ZeroDivisionError("heat flow blows up the Gaussian")
        r = s / tot
        kappa_new = self.kappa * s / tot
        inner = self.poly.heat(1.0 / (4.0 * tot)).rescale(r)
        return GaussPolySymbol(inner * r ** self.n, kappa_new)

    def to_poly(self, max_deg: int) -> PolySymbol:
        """Expand exp(-kappa|z|^2) and keep bidegrees <= max_deg."""
        g = gaussian_series(self.n, self.kappa, max_deg)
        return (self.poly.truncate(max_deg) * g).truncate(max_deg)

