"""Quasi-exact solvability of the algebraized radial operator.

Acting on the monomials r^0..r^n (n = 2j) the operator gives a banded matrix
M with ``op(r^k) = sum_p M[p][k] r^p - B r^k``. Polynomial eigenfunctions
are null vectors of ``T(B) = M - B I`` and the admissible accessory
parameters B are the eigenvalues of M.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .algebraization import (DifferentialOperator, apply_spec_directly, canonical_operator,
                             radial_spec, printed_algebraized_operator, weierstrass_poly)
from .errors import (DomainError, NoNullVectorError, PoleError,
                     RecurrenceInapplicableError, StructuralError)
from .exactmath import (Polynomial, QComplex, as_fraction, cardano_roots, charpoly_exact,
                        det_exact, interpolate, is_exact, nullspace_exact, polish_root,
                        polynomial_roots, sort_key)
from .report import Discrepancy
from .weierstrass import EllipticInvariants, RootTriple, roots_from_invariants

__all__ = [
    "SpectralMatrix", "QESSolution", "matrix_from_operator", "spectral_matrix",
    "tau_paper", "printed_tau_matrix", "accessory_spectrum", "eigen_polynomial",
    "mu_paper", "determinant_paper", "determinant_closed_form", "dense_determinant_poly",
    "cubic_accessory_roots", "gauge_exponents", "radial_wavefunction",
    "schrodinger_potential", "potential_printed", "solve_qes", "residual_polynomial",
    "discrepancies",
]


@dataclass(frozen=True)
class SpectralMatrix:
    """``m_matrix[p][k]``: coefficient of r^p in op(r^k), accessory part removed."""

    dim: int
    m_matrix: tuple
    j: Fraction = Fraction(0)

    def T(self, B):
        return [[self.m_matrix[p][k] - (B if p == k else 0) for k in range(self.dim)]
                for p in range(self.dim)]

    @property
    def band_profile(self) -> dict:
        n = self.dim
        m = self.m_matrix
        return {
            "super": [m[k][k + 1] for k in range(n - 1)],
            "sub": [m[k + 1][k] for k in range(n - 1)],
            "subsub": [m[k + 2][k] for k in range(n - 2)],
        }

    def entry(self, p: int, k: int):
        return self.m_matrix[p][k]

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for row in self.m_matrix for x in row)


def matrix_from_operator(op: DifferentialOperator, n: int, truncate: bool = False) -> SpectralMatrix:
    """Matrix of ``op`` on span{1, r, ..., r^n}.

    The constant term of p0 is read as -B and removed from the diagonal. Any
    image coefficient above r^n raises StructuralError unless ``truncate``.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    shift = op.p0[0]
    cols = []
    for k in range(n + 1):
        img = op.apply(Polynomial.monomial(k)) - Polynomial.monomial(k, shift)
        if img.degree > n and not truncate:
            raise StructuralError(
                f"operator leaks out of degree <= {n}: image of r^{k} has r^{img.degree} "
                f"coefficient {img[img.degree]}")
        cols.append([img[p] for p in range(n + 1)])
    m = tuple(tuple(cols[k][p] for k in range(n + 1)) for p in range(n + 1))
    return SpectralMatrix(n + 1, m)


def spectral_matrix(n: int, g2, g3, j=None) -> SpectralMatrix:
    """Matrix of the canonical operator at spin j (default n/2).

    With j != n/2 the space is not invariant and the matrix is the truncation.
    """
    jj = Fraction(n, 2) if j is None else as_fraction(j)
    op = canonical_operator(jj, g2, g3, 0)
    sm = matrix_from_operator(op, n, truncate=j is not None)
    return SpectralMatrix(sm.dim, sm.m_matrix, jj)


def tau_paper(k: int, j, g2, g3, B=0) -> tuple:
    """(tau_{k,k+1}, tau_{k,k}, tau_{k,k-1}, tau_{k,k-2}) as printed."""
    if k < 0:
        raise DomainError("k must be >= 0")
    j, g2, g3, B = (as_fraction(x) for x in (j, g2, g3, B))
    up = 4 * k * (k - 1) + Fraction(9, 2) * (2 * j - 1) * k + 7 * j * (2 * j - 1)
    down = -g2 / 4 * k * (4 * k - 3)
    down2 = -k * (k - 1) * g3
    return up, -B, down, down2


def printed_tau_matrix(n: int, j, g2, g3) -> SpectralMatrix:
    """The printed tau entries laid out in the same convention as M."""
    m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        up, _, down, down2 = tau_paper(k, j, g2, g3)
        if k + 1 <= n:
            m[k + 1][k] = up
        if k >= 1:
            m[k - 1][k] = down
        if k >= 2:
            m[k - 2][k] = down2
    return SpectralMatrix(n + 1, tuple(tuple(r) for r in m), as_fraction(j))


def _spectrum_pairs(sm: SpectralMatrix) -> list[tuple[object, int]]:
    return polynomial_roots(charpoly_exact(sm.m_matrix))


def accessory_spectrum(n: int, g2, g3, j=None, path: str = "derived") -> list:
    """Accessory parameters B with det T(B) = 0, repeated by multiplicity."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if path == "derived":
        sm = spectral_matrix(n, g2, g3, j)
    elif path == "printed":
        sm = printed_tau_matrix(n, Fraction(n, 2) if j is None else j, g2, g3)
    else:
        raise ValueError(f"unknown path {path!r}")
    out = []
    for z, mult in _spectrum_pairs(sm):
        out.extend([z] * mult)
    return out


def _normalize(v):
    scale = max(abs(complex(x)) for x in v)
    for x in v:
        if abs(complex(x)) > 1e-12 * scale:
            return [y / x for y in v]
    raise NoNullVectorError("null vector is zero")


def _clean(z, tol=1e-14):
    z = complex(z)
    if abs(z.imag) <= tol * (1 + abs(z.real)):
        return float(z.real)
    if abs(z.real) <= tol * abs(z.imag):
        return complex(0.0, z.imag)
    return z


def eigen_polynomial(B, sm: SpectralMatrix) -> list:
    """Null vector a_0..a_n of T(B), first nonzero entry normalized to 1."""
    if is_exact(B) and sm.exact:
        basis = nullspace_exact(sm.T(B))
        if not basis:
            raise NoNullVectorError(f"B = {B} is not in the spectrum")
        return _normalize(basis[0])
    cp = charpoly_exact(sm.m_matrix)
    with mpmath.workdps(50):
        Bp = polish_root(cp, complex(B))
        scale = 1 + max(abs(complex(x)) for row in sm.m_matrix for x in row)
        if abs(Bp - mpmath.mpc(complex(B))) > 1e-6 * (1 + abs(complex(B))):
            raise NoNullVectorError(f"B = {B} is not in the spectrum")
        A = mpmath.matrix(sm.dim, sm.dim)
        for p in range(sm.dim):
            for k in range(sm.dim):
                x = sm.m_matrix[p][k]
                A[p, k] = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) \
                    else mpmath.mpc(complex(x))
            A[p, p] -= Bp
        U, S, V = mpmath.svd_c(A)
        if S[sm.dim - 1] > mpmath.mpf(10) ** -20 * scale:
            raise NoNullVectorError(f"B = {B} is not in the spectrum")
        v = [mpmath.conj(V[sm.dim - 1, i]) for i in range(sm.dim)]
        big = max(abs(x) for x in v)
        first = next(x for x in v if abs(x) > mpmath.mpf(10) ** -12 * big)
        return [_clean(x / first) for x in v]


def residual_polynomial(coeffs, j, g2, g3, B, path: str = "composition") -> Polynomial:
    """Canonical operator (with accessory parameter B) applied to sum a_m r^m."""
    P = Polynomial(coeffs)
    if path == "composition":
        img = apply_spec_directly(radial_spec(j, g2, g3, 0), P)
    else:
        img = canonical_operator(j, g2, g3, 0).apply(P)
    return img - P * B


def mu_paper(m: int, j, B, g2, g3) -> object:
    """Coefficient ratios a_m / a_0 from the printed formulas."""
    j, g2, g3 = (as_fraction(x) for x in (j, g2, g3))
    if m < 1:
        raise DomainError("m must be >= 1")
    den1 = 4 * (7 * j * (2 * j - 1) - B)
    if den1 == 0:
        raise DomainError("mu^(1) denominator vanishes")
    mu1 = (g2 + 4 * B) / den1
    if m == 1:
        return mu1
    if m == 2:
        den = (28 * j + 18) * (2 * j - 1) - 4 * B
        if den == 0:
            raise DomainError("mu^(2) denominator vanishes")
        return -(4 * B + g2 + 8 * g3 + (28 * j * (2 * j - 1) - 4 * B - 10 * g2) * mu1) / den
    mus = [None] + [mu_paper(i, j, B, g2, g3) for i in range(1, m)]

    def tau(k, p):
        up, diag, down, down2 = tau_paper(k, j, g2, g3, 0)
        return {1: up, 0: -B, -1: down, -2: down2}.get(p - k, 0)

    num = sum(tau(k, 0) + sum(tau(k, i) * mus[i] for i in range(1, m)) for k in range(m + 1))
    den = sum(tau(k, m) for k in range(m + 1))
    if den == 0:
        raise DomainError(f"mu^({m}) denominator vanishes")
    return num / den


def mu_general(m: int, j, B, g2, g3) -> object:
    """The general mu^(m) display applied from m = 1 upward."""
    j, g2, g3 = (as_fraction(x) for x in (j, g2, g3))

    def tau(k, p):
        up, _, down, down2 = tau_paper(k, j, g2, g3, 0)
        return {1: up, 0: -B, -1: down, -2: down2}.get(p - k, 0)

    mus = [None]
    for mm in range(1, m + 1):
        num = sum(tau(k, 0) + sum(tau(k, i) * mus[i] for i in range(1, mm)) for k in range(mm + 1))
        den = sum(tau(k, mm) for k in range(mm + 1))
        if den == 0:
            raise DomainError(f"mu^({mm}) denominator vanishes")
        mus.append(num / den)
    return mus[m]


def determinant_paper(sm: SpectralMatrix, B) -> object:
    """det T(B) by the three-term recurrence D_{k+1} = -B D_k - t t' D_{k-1}.

    Valid only for a tridiagonal matrix (g3 = 0).
    """
    m = sm.m_matrix
    if any(m[p][k] != 0 for k in range(sm.dim) for p in range(sm.dim) if abs(p - k) > 1):
        raise RecurrenceInapplicableError("matrix is not tridiagonal (g3 != 0)")
    d_prev, d = Fraction(0), Fraction(1)
    for k in range(sm.dim):
        coupling = m[k - 1][k] * m[k][k - 1] if k >= 1 else 0
        d_prev, d = d, -B * d - coupling * d_prev
    return d


def determinant_closed_form(sm: SpectralMatrix, B) -> complex:
    """The printed closed form -(lambda_-^{n+1} + lambda_+^{n+1})/2."""
    n = sm.dim - 1
    m = sm.m_matrix
    c = complex(m[n - 1][n] * m[n][n - 1]) if n >= 1 else 0.0
    B = complex(B)
    root = cmath.sqrt(B * B - 4 * c)
    lp, lm = (B + root) / 2, (B - root) / 2
    return -0.5 * (lm ** (n + 1) + lp ** (n + 1))


def dense_determinant_poly(sm: SpectralMatrix) -> Polynomial:
    """det T(B) as a polynomial in B, interpolated from exact dense determinants."""
    xs = [Fraction(i) for i in range(sm.dim + 1)]
    ys = [det_exact(sm.T(x)) for x in xs]
    return interpolate(xs, ys)


def cubic_coefficients(sm: SpectralMatrix) -> tuple:
    """(b2, b1, b0) of det(B I - M) = B^3 + b2 B^2 + b1 B + b0 for a 3x3 M with zero diagonal."""
    if sm.dim != 3:
        raise DomainError("cubic formula needs the 3x3 case")
    m = sm.m_matrix
    b1 = -(m[0][1] * m[1][0] + m[1][2] * m[2][1] + m[0][2] * m[2][0])
    b0 = -(m[0][1] * m[1][2] * m[2][0] + m[0][2] * m[2][1] * m[1][0])
    return Fraction(0), b1, b0


def cubic_coefficients_printed(sm: SpectralMatrix) -> tuple:
    """(b2, b1, b0) as printed, reading tau_{k,p} = M[p][k]."""
    t = lambda k, p: sm.m_matrix[p][k]
    b1 = -(t(2, 1) * t(1, 2) + t(0, 1) * t(1, 0) * t(0, 2) * t(2, 0))
    b0 = t(0, 1) * t(2, 0) * t(1, 2) + t(0, 2) * t(1, 0) * t(2, 1)
    return Fraction(0), b1, b0


def cubic_accessory_roots(sm: SpectralMatrix) -> list[complex]:
    b2, b1, b0 = cubic_coefficients(sm)
    return sorted((_clean(z, 1e-12) for z in cardano_roots(b2, b1, b0)), key=sort_key)


# ---------------------------------------------------------------------------
# gauge factor, wave functions, potentials
# ---------------------------------------------------------------------------

def _roots(inv) -> RootTriple:
    if isinstance(inv, RootTriple):
        return inv
    return roots_from_invariants(inv)


def gauge_exponents(j, inv) -> tuple:
    """eta_s = ((9/2)(2j-1) e_s^2 + g2/4) / (4 prod_{t != s}(e_s - e_t))."""
    rt = _roots(inv)
    j = as_fraction(j)
    e = rt.as_tuple()
    g2 = rt.g2
    out = []
    for s in range(3):
        den = 4
        for t in range(3):
            if t != s:
                den = den * (e[s] - e[t])
        if den == 0 or (not is_exact(den) and abs(complex(den)) < 1e-14):
            raise PoleError("gauge exponents need distinct roots")
        out.append((Fraction(9, 2) * (2 * j - 1) * e[s] ** 2 + g2 / 4) / den)
    return tuple(out)


@dataclass(frozen=True)
class QESSolution:
    B: object
    coefficients: tuple
    residual_norm: float
    j: Fraction
    g2: Fraction
    g3: Fraction
    multiplicity: int = 1
    roots: tuple = ()
    eta: tuple = ()

    @property
    def exact(self) -> bool:
        return is_exact(self.B) and all(is_exact(a) for a in self.coefficients)

    @property
    def exponents(self) -> tuple:
        return tuple(h - self.j / 2 for h in self.eta)


def solve_qes(n: int, g2, g3) -> list[QESSolution]:
    """Every accessory parameter with its polynomial and residual, for spin n/2."""
    g2, g3 = as_fraction(g2), as_fraction(g3)
    j = Fraction(n, 2)
    sm = spectral_matrix(n, g2, g3)
    rt = roots_from_invariants(EllipticInvariants(g2, g3))
    try:
        eta = gauge_exponents(j, rt)
    except PoleError:
        eta = ()
    sols = []
    for B, mult in _spectrum_pairs(sm):
        a = eigen_polynomial(B, sm)
        res = residual_polynomial(a, j, g2, g3, B)
        scale = max(abs(complex(x)) for x in a)
        rn = 0.0 if res.is_zero() else res.max_abs() / scale
        sols.append(QESSolution(B, tuple(a), rn, j, g2, g3, mult, rt.as_tuple(), eta))
    return sols


def radial_wavefunction(sol: QESSolution, r: float) -> float:
    """2^{-j} prod (r - e_s)^{eta_s - j/2} sum a_m r^m."""
    e = [complex(x) for x in sol.roots]
    if any(abs(x.imag) > 0 for x in e) or r <= max(x.real for x in e):
        raise DomainError("radial wave function needs real roots and r > max e_s")
    val = 2.0 ** (-float(sol.j))
    for es, h in zip(e, sol.eta):
        val *= (r - es.real) ** (float(complex(h).real) - float(sol.j) / 2)
    poly = sum(complex(a) * r ** m for m, a in enumerate(sol.coefficients))
    return _clean(val * poly)


def _pvals(p: Polynomial, r: float, k: int = 3):
    out = []
    for _ in range(k):
        out.append(float(complex(p(r)).real) if not p.is_zero() else 0.0)
        p = p.derivative()
    return out


def schrodinger_potential(op: DifferentialOperator, r: float) -> float:
    """Potential after the Liouville change of variable and gauge.

    V = (3P'^2 - 8P'Q + 4Q^2)/(16P) - P''/4 + Q'/2 - R with P, Q, R the
    second, first and zeroth order coefficients.
    """
    P, dP, ddP = _pvals(op.p2, r)
    Q, dQ, _ = _pvals(op.p1, r)
    R = _pvals(op.p0, r, 1)[0]
    if P <= 0:
        raise DomainError(f"leading coefficient must be positive, got {P} at r={r}")
    return (3 * dP ** 2 - 8 * dP * Q + 4 * Q ** 2) / (16 * P) - ddP / 4 + dQ / 2 - R


def schrodinger_potential_printed_sign(op: DifferentialOperator, r: float) -> float:
    """Same formula with the first term's sign as printed (minus)."""
    P, dP, ddP = _pvals(op.p2, r)
    Q, dQ, _ = _pvals(op.p1, r)
    R = _pvals(op.p0, r, 1)[0]
    return -(3 * dP ** 2 - 8 * dP * Q + 4 * Q ** 2) / (16 * P) - ddP / 4 + dQ / 2 - R


def potential_printed(r: float, j, g2, g3, B) -> float:
    """The explicit potential display, evaluated at r."""
    j, g2, g3, B = (float(as_fraction(x)) for x in (j, g2, g3, B))
    P = 4 * r ** 3 - g2 * r - g3
    t1 = (12 * r - g2) * (36 * r * (1 - (2 * j - 1) * r) - 5 * g2) / (16 * P)
    t2 = (18 * (2 * j - 1) * r ** 2 + g2) ** 2 / (64 * P)
    return t1 + t2 - 0.5 * (28 * j ** 2 + 32 * j - 3) * r + B


# ---------------------------------------------------------------------------
# discrepancy report
# ---------------------------------------------------------------------------

def discrepancies(n: int = 2, g2=Fraction(1), g3=Fraction(0), B=Fraction(1)) -> list[Discrepancy]:
    g2, g3, B = as_fraction(g2), as_fraction(g3), as_fraction(B)
    j = Fraction(n, 2)
    out = []
    sm = spectral_matrix(n, g2, g3)
    pm = printed_tau_matrix(n, j, g2, g3)
    for k in range(sm.dim):
        for p in range(sm.dim):
            if sm.m_matrix[p][k] != pm.m_matrix[p][k]:
                out.append(Discrepancy(f"tau[{k},{p}] (n={n}, g2={g2}, g3={g3})",
                                       pm.m_matrix[p][k], sm.m_matrix[p][k],
                                       "printed tau vs operator action"))
    try:
        matrix_from_operator(printed_algebraized_operator(j, g2, g3, 0), n)
    except StructuralError as exc:
        out.append(Discrepancy(f"printed first-order coefficient, invariance (n={n})",
                               "preserves polynomials of degree <= n", str(exc), ""))
    out.append(Discrepancy("determinant recurrence, D_1", B, -B,
                           "diagonal entries are -B, so the 1x1 determinant is -B"))
    # mu^(1) from the general display vs the case (ii) definition
    try:
        m1_general = mu_general(1, j, B, g2, g3)
        m1 = mu_paper(1, j, B, g2, g3)
        if m1 != m1_general:
            out.append(Discrepancy("mu^(1): case definition vs general formula", m1, m1_general, ""))
    except DomainError:
        pass
    if n >= 1:
        try:
            a = eigen_polynomial(accessory_spectrum(n, g2, g3)[-1], sm)
            Bv = accessory_spectrum(n, g2, g3)[-1]
            if is_exact(Bv) and a[0] == 1:
                m1 = mu_paper(1, j, Bv, g2, g3)
                if m1 != a[1]:
                    out.append(Discrepancy(f"a_1/a_0 at B={Bv} (n={n})", m1, a[1],
                                           "null vector of T(B)"))
        except DomainError:
            pass
    # cubic coefficients
    if n == 2:
        mine = cubic_coefficients(sm)
        printed = cubic_coefficients_printed(sm)
        if mine != printed:
            out.append(Discrepancy("cubic in B, coefficients (b2, b1, b0)", printed, mine,
                                   "3x3 expansion with zero diagonal"))
    # closed form of the determinant
    if n >= 1 and g3 == 0:
        rec = determinant_paper(sm, B)
        cf = determinant_closed_form(sm, B)
        if abs(complex(rec) - cf) > 1e-9 * (1 + abs(cf)):
            out.append(Discrepancy(f"determinant closed form at B={B} (n={n})", cf, rec,
                                   "three-term recurrence"))
    # potential
    r = 2.0
    op = canonical_operator(j, g2, g3, B)
    try:
        vg = schrodinger_potential(op, r)
        vp = potential_printed(r, j, g2, g3, B)
        if abs(vg - vp) > 1e-9 * (1 + abs(vg)):
            out.append(Discrepancy(f"potential at r={r} (n={n})", vp, vg, "Liouville normal form"))
        vs = schrodinger_potential_printed_sign(op, r)
        if abs(vs - vg) > 1e-9 * (1 + abs(vg)):
            out.append(Discrepancy("general potential formula, sign of first term", vs, vg,
                                   "direct conjugation of the operator"))
    except DomainError:
        pass
    return out
