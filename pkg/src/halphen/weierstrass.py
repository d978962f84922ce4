"""Weierstrass invariants, root triples and the half-line elliptic integral."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .exactmath import Polynomial, QComplex, as_fraction, is_exact, solve_cubic, sort_key

__all__ = [
    "EllipticInvariants", "RootTriple", "roots_from_invariants",
    "invariants_from_roots", "weierstrass_cubic", "r_to_w", "integrate_gk", "discrepancies",
]


@dataclass(frozen=True)
class EllipticInvariants:
    g2: Fraction
    g3: Fraction

    def __post_init__(self):
        if is_exact(self.g2) and is_exact(self.g3):
            object.__setattr__(self, "g2", as_fraction(self.g2))
            object.__setattr__(self, "g3", as_fraction(self.g3))

    @property
    def discriminant(self):
        return self.g2 ** 3 - 27 * self.g3 ** 2

    @property
    def all_real_roots(self) -> bool:
        return self.discriminant >= 0


def weierstrass_cubic(g2, g3) -> Polynomial:
    """``4r^3 - g2 r - g3`` as a Polynomial."""
    return Polynomial([-as_fraction(g3), -as_fraction(g2), Fraction(0), Fraction(4)])


def _expand(e1, e2, e3):
    """Coefficients (g2, g3) read off 4(r-e1)(r-e2)(r-e3)."""
    return -4 * (e1 * e2 + e2 * e3 + e1 * e3), 4 * e1 * e2 * e3


@dataclass(frozen=True)
class RootTriple:
    """Roots of the Weierstrass cubic, descending real part then imaginary part."""

    e1: object
    e2: object
    e3: object
    g2: object
    g3: object

    def __post_init__(self):
        total = self.e1 + self.e2 + self.e3
        g2, g3 = _expand(self.e1, self.e2, self.e3)
        if self.exact:
            ok = total == 0 and g2 == self.g2 and g3 == self.g3
        else:
            scale = 1 + max(abs(complex(self.g2)), abs(complex(self.g3)))
            ok = (abs(complex(total)) <= 1e-12 * scale
                  and abs(complex(g2) - complex(self.g2)) <= 1e-10 * scale
                  and abs(complex(g3) - complex(self.g3)) <= 1e-10 * scale)
        if not ok:
            raise AssertionError("root triple does not expand to 4r^3 - g2 r - g3")

    @property
    def exact(self) -> bool:
        return all(is_exact(e) for e in self.as_tuple())

    def as_tuple(self) -> tuple:
        return (self.e1, self.e2, self.e3)

    @property
    def all_real(self) -> bool:
        return all(abs(complex(e).imag) == 0 for e in self.as_tuple())

    def distinct(self) -> bool:
        a, b, c = self.as_tuple()
        return a != b and b != c and a != c

    def max_real(self) -> float:
        return max(complex(e).real for e in self.as_tuple())

    def relabel(self, perm) -> tuple:
        """Roots reordered by a permutation of (0, 1, 2), e.g. the lemniscatic
        labelling e1=0, e2=1/2, e3=-1/2 is ``relabel((1, 0, 2))``."""
        t = self.as_tuple()
        return tuple(t[i] for i in perm)


def _descending(z):
    k = sort_key(z)
    return (-k[0], -k[1])


def roots_from_invariants(inv: EllipticInvariants) -> RootTriple:
    cubic = solve_cubic(4, 0, -inv.g2, -inv.g3)
    vals = sorted(cubic.values, key=_descending)
    vals = [v.re if isinstance(v, QComplex) and v.im == 0 else v for v in vals]
    return RootTriple(*vals, g2=inv.g2, g3=inv.g3)


def invariants_from_roots(e1, e2, e3, tol: float = 1e-12) -> EllipticInvariants:
    total = e1 + e2 + e3
    exact = all(is_exact(e) for e in (e1, e2, e3))
    if (exact and total != 0) or (not exact and abs(complex(total)) > tol * (1 + max(abs(complex(e)) for e in (e1, e2, e3)))):
        raise DomainError(f"root sum must vanish, got {total}")
    g2, g3 = _expand(e1, e2, e3)
    if exact:
        if isinstance(g2, QComplex):
            if g2.im != 0 or g3.im != 0:
                raise DomainError("roots do not give real invariants")
            g2, g3 = g2.re, g3.re
        return EllipticInvariants(g2, g3)
    g2c, g3c = complex(g2), complex(g3)
    if abs(g2c.imag) > 1e-9 * (1 + abs(g2c)) or abs(g3c.imag) > 1e-9 * (1 + abs(g3c)):
        raise DomainError("roots do not give real invariants")
    return EllipticInvariants(g2c.real, g3c.real)


# ---------------------------------------------------------------------------
# adaptive Gauss-Kronrod (7, 15)
# ---------------------------------------------------------------------------

_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])


def _gk15(f, a, b):
    c, h = 0.5 * (a + b), 0.5 * (b - a)
    x = np.concatenate([c - h * _XGK[:-1], [c], c + h * _XGK[:-1][::-1]])
    y = f(x)
    yl, yc, yr = y[:7], y[7], y[8:][::-1]
    kron = _WGK[7] * yc + np.sum(_WGK[:7] * (yl + yr))
    # Gauss nodes are the odd-indexed Kronrod nodes
    gauss = _WG[3] * yc + np.sum(_WG[:3] * (yl[1::2] + yr[1::2]))
    return h * kron, abs(h * (kron - gauss))


def integrate_gk(f, a: float, b: float, rel_tol: float = 1e-10,
                 abs_tol: float = 1e-300, max_intervals: int = 4000) -> tuple[float, float]:
    """Adaptive GK15 with worst-interval bisection; returns (value, error estimate)."""
    val, err = _gk15(f, a, b)
    intervals = [(err, a, b, val)]
    total, total_err = val, err
    while total_err > max(abs_tol, rel_tol * abs(total)):
        if len(intervals) >= max_intervals:
            break
        intervals.sort(key=lambda t: t[0])
        e, lo, hi, v = intervals.pop()
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            intervals.append((0.0, lo, hi, v))
            continue
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        intervals += [(e1, lo, mid, v1), (e2, mid, hi, v2)]
        total += v1 + v2 - v
        total_err += e1 + e2 - e
    total = math.fsum(t[3] for t in intervals)
    return total, math.fsum(t[0] for t in intervals)


def r_to_w(r: float, inv: EllipticInvariants, rel_tol: float = 1e-10) -> float:
    """``w = integral_r^inf du / sqrt(4u^3 - g2 u - g3)`` for r above the largest root.

    The half line is mapped to [0, 1) with u = r + t/(1-t); a second change
    t = 1 - v^2 removes the (1-t)^(-1/2) endpoint singularity so the
    integrand is bounded.
    """
    if math.isinf(r):
        return 0.0
    roots = roots_from_invariants(inv)
    if not roots.all_real:
        raise DomainError("r_to_w needs three real Weierstrass roots")
    if r <= roots.max_real():
        raise DomainError(f"r = {r} must exceed the largest root {roots.max_real()}")
    g2, g3 = float(inv.g2), float(inv.g3)

    def integrand(v):
        v = np.asarray(v, dtype=float)
        s = v * v                 # 1 - t
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            u = r + (1.0 - s) / s
            p3 = 4 * u ** 3 - g2 * u - g3
            # du = dt / s^2, dt = -2v dv; as v -> 0, v^3 sqrt(p3) -> 2
            out = 2.0 / (v ** 3 * np.sqrt(p3))
        return np.where(v == 0, 1.0, out)

    value, _ = integrate_gk(integrand, 0.0, 1.0, rel_tol=rel_tol * 1e-2)
    return value


def discrepancies(e=(Fraction(1, 2), Fraction(0), Fraction(-1, 2))) -> list:
    from .report import Discrepancy
    e1, e2, e3 = e
    stated = 4 * (e1 * e2 + e2 * e3 + e1 * e3)
    g2, _ = _expand(e1, e2, e3)
    if stated == g2:
        return []
    return [Discrepancy(f"g2 from roots {tuple(map(str, e))}", stated, g2,
                        "expanding 4(r-e1)(r-e2)(r-e3) = 4r^3 - g2 r - g3 gives g2 = -4(e1e2+e2e3+e1e3)")]
