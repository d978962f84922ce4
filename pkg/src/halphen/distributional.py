"""Delta-series solutions R(r) = sum a_k delta^(k)(r) of the radial operator.

Paired with e^{i sigma r}, delta^(b) becomes (-i sigma)^b and multiplication
by r^a becomes a-fold (-i d/dsigma). The coefficients a_k solve the three-term
recurrence

    E(k) a_{k-2} + S(k) a_{k-1} - D(k) a_k = 0

with falling factorials (k)_m:

    E(k) = 4 (k)_{m+1} + (k)_{m-1}
    S(k) = (1 - 2n) [3 (k)_{m+1} + (k)_{m-1} / 4]
    D(k) = n (2n - 1) (k)_{m+1} - q (k)_m

so ``a_k = sigma_k a_{k-1} + eps_k a_{k-2}`` with ``sigma_k = S/D``,
``eps_k = E/D``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .exactmath import (QComplex, Surd, as_fraction, falling_factorial,
                        generalized_binomial, is_exact)
from .report import Discrepancy

__all__ = [
    "WeightSpec", "SigmaPolynomial", "DistributionExpansion", "weight_exponents",
    "fourier_term", "sigma_epsilon", "leading_index", "coefficients_recurrence",
    "coefficients_printed_chain", "coefficients_closed_form", "assemble_distribution",
    "verify_fourier_condition", "inject_fault", "literal_fourier_diagnostic", "discrepancies",
]

_MINUS_I_POWERS = (QComplex(1), QComplex(0, -1), QComplex(-1), QComplex(0, 1))


def _minus_i_pow(k: int) -> QComplex:
    return _MINUS_I_POWERS[k % 4]


# ---------------------------------------------------------------------------
# weight function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightSpec:
    n: int
    N1: Fraction
    N2: Fraction
    N3: Fraction
    floor_N1: int
    integral_path: bool
    terms: tuple = ()   # (p, m, floor weight 2^{-2p} C(floor N1, p), series weight (-1)^p 2^{-2p} C(N1, p))

    @property
    def ms(self) -> list[int]:
        return sorted(t[1] for t in self.terms)


def _exponent_from_roots(n, e_s, others, g2=Fraction(1)):
    den = 4
    for e in others:
        den *= e_s - e
    return -(n - Fraction(1, 2)) * (6 * e_s ** 2 - g2 / 2) / den - 1


def weight_exponents(n: int) -> WeightSpec:
    """Exponents of the lemniscatic weight (r - e_1)^N1 (r - e_2)^N2 (r - e_3)^N3."""
    n = as_fraction(n)
    e = (Fraction(0), Fraction(1, 2), Fraction(-1, 2))
    Ns = [_exponent_from_roots(n, e[s], [e[t] for t in range(3) if t != s]) for s in range(3)]
    N1 = Ns[0]
    fl = math.floor(N1)
    integral = n.denominator == 1 and n < 0 and n % 2 == 0
    terms = []
    if fl >= 0:
        for p in range(fl + 1):
            m = 3 * fl - 2 * p
            w_floor = Fraction(math.comb(fl, p), 4 ** p)
            w_series = (-1) ** p * generalized_binomial(N1, p) / 4 ** p
            terms.append((p, m, w_floor, w_series))
    return WeightSpec(int(n), Ns[0], Ns[1], Ns[2], fl, integral, tuple(terms))


# ---------------------------------------------------------------------------
# sigma polynomials
# ---------------------------------------------------------------------------

class SigmaPolynomial:
    """Finite sum c_j sigma^j, stored sparsely."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    def __add__(self, other: "SigmaPolynomial") -> "SigmaPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SigmaPolynomial(out)

    def scale(self, c) -> "SigmaPolynomial":
        return SigmaPolynomial({k: v * c for k, v in self.terms.items()})

    def coefficient(self, j: int):
        return self.terms.get(j, Fraction(0))

    @property
    def max_order(self) -> int:
        return max(self.terms, default=-1)

    def __eq__(self, other):
        return isinstance(other, SigmaPolynomial) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"({v})s^{k}" for k, v in sorted(self.terms.items())) or "0"


def fourier_term(power_r: int, deriv_order: int) -> SigmaPolynomial:
    """Transform of r^a delta^(b): (-i)^{a+b} (b)_a sigma^{b-a}, zero for a > b."""
    a, b = power_r, deriv_order
    if a < 0 or b < 0:
        raise DomainError("orders must be >= 0")
    if a > b:
        return SigmaPolynomial()
    return SigmaPolynomial({b - a: _minus_i_pow(a + b) * falling_factorial(b, a)})


# ---------------------------------------------------------------------------
# recurrence
# ---------------------------------------------------------------------------

def _brackets(k: int, m: int, n, q):
    ff = lambda j: falling_factorial(k, j)
    E = 4 * ff(m + 1) + ff(m - 1)
    S = (1 - 2 * n) * (3 * ff(m + 1) + ff(m - 1) / 4)
    D = n * (2 * n - 1) * ff(m + 1) - ff(m) * q
    return E, S, D


def _num(x):
    return as_fraction(x) if is_exact(x) else x


def sigma_epsilon(k: int, m: int, n, q) -> tuple:
    n, q = _num(n), _num(q)
    E, S, D = _brackets(k, m, n, q)
    if D == 0:
        raise DomainError(f"sigma/epsilon denominator vanishes at k={k}, m={m}")
    return S / D, E / D


def leading_index(m: int, n, q, K: int) -> int:
    """First index k0 with D(k) != 0 for every k0 < k <= K.

    Below it the recurrence forces a_k = 0 (trivial part of the series).
    """
    n, q = _num(n), _num(q)
    k0 = 0
    for k in range(1, K + 1):
        if _brackets(k, m, n, q)[2] == 0:
            k0 = k
    return k0


def _sqrt(d, scale):
    if is_exact(d) and is_exact(scale):
        return Surd.sqrt(d, scale)
    d = complex(d)
    root = d ** 0.5 if d.imag or d.real < 0 else math.sqrt(d.real)
    return float(scale) * root


@dataclass(frozen=True)
class DistributionExpansion:
    coeffs: tuple
    n: int
    s: int
    q: object
    K2: object
    K: int
    per_m: dict = field(default_factory=dict)    # m -> tuple a_0..a_K
    leading: dict = field(default_factory=dict)  # m -> k0
    weights: dict = field(default_factory=dict)  # m -> (floor weight, series weight)

    @property
    def exact(self) -> bool:
        return all(is_exact(a) for a in self.coeffs)


def _sequence(K, m, n, q, K2, step):
    k0 = leading_index(m, n, q, K)
    a = [Fraction(0)] * (K + 1)
    if k0 > K:
        return a, k0
    a[k0] = Fraction(1)
    if k0 + 1 <= K:
        sg, ep = sigma_epsilon(k0 + 1, m, n, q)
        lam = _sqrt(sg * sg + 4 * ep, 1 - 2 * K2)
        a[k0 + 1] = (lam + sg) / 2
    for k in range(k0 + 2, K + 1):
        sg, ep = sigma_epsilon(k, m, n, q)
        a[k] = step(sg, ep, a[k - 1], a[k - 2])
    return a, k0


def coefficients_recurrence(K: int, n: int, q, K2, m: int = 0) -> DistributionExpansion:
    """Single-m delta series from a_k = sigma_k a_{k-1} + eps_k a_{k-2}."""
    if K < 1:
        raise DomainError("truncation K must be >= 1")
    K2 = _num(K2)
    if not 0 < K2 < 1:
        raise DomainError("K2 must lie in (0, 1)")
    a, k0 = _sequence(K, m, _num(n), _num(q), K2, lambda sg, ep, a1, a2: sg * a1 + ep * a2)
    s = -int(n) // 2
    return DistributionExpansion(tuple(a), int(n), s, _num(q), K2, K, {m: tuple(a)}, {m: k0})


def coefficients_printed_chain(K: int, n: int, q, K2, m: int = 0) -> tuple:
    """The worked chain as printed: a_k = eps_k a_{k-1} + sigma_k a_{k-2}."""
    a, _ = _sequence(K, m, _num(n), _num(q), _num(K2), lambda sg, ep, a1, a2: ep * a1 + sg * a2)
    return tuple(a)


def coefficients_closed_form(k: int, m: int, n, q, K1, K2):
    """K1 t_+^k + K2 t_-^k with t_+- from the k-th sigma, eps (characteristic roots)."""
    if k == 0:
        return K1 + K2
    sg, ep = sigma_epsilon(k, m, n, q)
    disc = float(sg * sg + 4 * ep)
    root = math.sqrt(disc) if disc >= 0 else 1j * math.sqrt(-disc)
    tp, tm = (float(sg) + root) / 2, (float(sg) - root) / 2
    return float(K1) * tp ** k + float(K2) * tm ** k


def assemble_distribution(s: int, q, K2, K: int = 12) -> DistributionExpansion:
    """Sum of the per-m series over m = 3 floor(N1) - 2p, p = 0..floor(N1)."""
    if s < 1:
        raise DomainError("s must be >= 1")
    n = -2 * s
    ws = weight_exponents(n)
    per_m, lead, weights = {}, {}, {}
    total = [Fraction(0)] * (K + 1)
    for p, m, w_floor, w_series in sorted(ws.terms, key=lambda t: t[1]):
        part = coefficients_recurrence(K, n, q, K2, m)
        per_m[m] = part.per_m[m]
        lead[m] = part.leading[m]
        weights[m] = (w_floor, w_series)
        total = [x + y for x, y in zip(total, per_m[m])]
    return DistributionExpansion(tuple(total), n, s, _num(q), _num(K2), K, per_m, lead, weights)


def inject_fault(exp: DistributionExpansion, index: int = 3, delta=Fraction(1, 1000)) -> DistributionExpansion:
    """Copy with a_index perturbed in every per-m series."""
    per_m = {m: tuple(a + delta if k == index else a for k, a in enumerate(seq))
             for m, seq in exp.per_m.items()}
    coeffs = tuple(a + delta * len(per_m) if k == index else a for k, a in enumerate(exp.coeffs))
    return DistributionExpansion(coeffs, exp.n, exp.s, exp.q, exp.K2, exp.K, per_m,
                                 dict(exp.leading), dict(exp.weights))


# ---------------------------------------------------------------------------
# Fourier-side check
# ---------------------------------------------------------------------------

def transformed_condition(seq, m: int, n, q) -> SigmaPolynomial:
    """Transform of the bracket applied to sum a_k delta^(k), built term by term.

    Each a_k contributes E(k+2) F[delta^(k+2)] + S(k+1) F[delta^(k+1)]
    - D(k) F[delta^(k)].
    """
    out = SigmaPolynomial()
    for k, a in enumerate(seq):
        if a == 0:
            continue
        E = _brackets(k + 2, m, n, q)[0]
        S = _brackets(k + 1, m, n, q)[1]
        D = _brackets(k, m, n, q)[2]
        out = out + fourier_term(0, k + 2).scale(E * a) \
            + fourier_term(0, k + 1).scale(S * a) + fourier_term(0, k).scale(-D * a)
    return out


def _mag(x) -> float:
    return abs(complex(x))


def verify_fourier_condition(exp: DistributionExpansion) -> dict:
    """Sigma-coefficients of the transformed equation, split by role.

    Orders k0 and k0+1 carry the free initial data, orders above K are the
    truncation boundary; every order in between must vanish.
    """
    report = {"per_m": {}, "max_interior": 0.0, "interior_exact_zero": True,
              "first_nonzero_interior": None}
    for m, seq in sorted(exp.per_m.items()):
        k0 = exp.leading.get(m, 0)
        poly = transformed_condition(seq, m, _num(exp.n), exp.q)
        initial = {j: poly.coefficient(j) for j in (k0, k0 + 1) if j <= exp.K}
        interior = {j: poly.coefficient(j) for j in range(k0 + 2, exp.K + 1)}
        boundary = {j: poly.coefficient(j) for j in (exp.K + 1, exp.K + 2)}
        nz = [j for j, c in interior.items() if c != 0]
        worst = max((_mag(c) for c in interior.values()), default=0.0)
        report["per_m"][m] = {"k0": k0, "initial": initial, "interior": interior,
                              "boundary": boundary, "max_interior": worst,
                              "nonzero_interior_orders": nz}
        report["max_interior"] = max(report["max_interior"], worst)
        if nz:
            report["interior_exact_zero"] = False
            first = min(nz)
            cur = report["first_nonzero_interior"]
            report["first_nonzero_interior"] = first if cur is None else min(cur, first)
    return report


def literal_fourier_diagnostic(exp: DistributionExpansion, g2=1, g3=0) -> dict:
    """Transform of r^m H[R] using the operator as printed, with B = i q.

    Evaluated term by term with the r^a delta^(b) rule; returns the largest
    |coefficient| per m. This is a diagnostic of the printed index shift,
    not a pass/fail check.
    """
    n = Fraction(exp.n)
    q = exp.q if is_exact(exp.q) else complex(exp.q)
    B = QComplex(0, 1) * q if is_exact(q) else 1j * q
    g2, g3 = as_fraction(g2), as_fraction(g3)
    out = {}
    for m, seq in sorted(exp.per_m.items()):
        acc = {}
        for k, a in enumerate(seq):
            if a == 0:
                continue
            av = complex(a)
            pieces = [  # (coefficient, power of r, derivative order)
                (4, 3, k + 2), (-g2, 1, k + 2), (-g3, 0, k + 2),
                (-(n - Fraction(1, 2)) * 6, 2, k + 1), ((n - Fraction(1, 2)) * g2 / 2, 0, k + 1),
                (n * (2 * n - 1), 1, k), (-B, 0, k),
            ]
            for c, pw, d in pieces:
                for j, v in fourier_term(pw + m, d).terms.items():
                    acc[j] = acc.get(j, 0) + complex(c) * complex(v) * av
        out[m] = max((abs(v) for v in acc.values()), default=0.0)
    return out


def discrepancies(K: int = 6) -> list[Discrepancy]:
    out = []
    half = Fraction(1, 2)
    exp = coefficients_recurrence(K, -2, 0, half, 0)
    chain = coefficients_printed_chain(K, -2, 0, half, 0)
    for k in range(2, K + 1):
        if chain[k] != exp.coeffs[k]:
            out.append(Discrepancy(f"delta series a_{k} (s=1, q=0, K2=1/2)", chain[k], exp.coeffs[k],
                                   "printed chain swaps sigma and eps relative to the recurrence"))
            break
    for k in range(2, min(K, 4) + 1):
        cf = coefficients_closed_form(k, 0, -2, 0, half, half)
        rv = float(exp.coeffs[k])
        if abs(cf - rv) > 1e-12 * (1 + abs(rv)):
            out.append(Discrepancy(f"characteristic-root closed form a_{k} (s=1, q=0, K2=1/2)", cf, rv,
                                   "sigma and eps depend on k, so constant-coefficient roots do not apply"))
    exp2 = assemble_distribution(2, 0, half, K)
    for m, k0 in sorted(exp2.leading.items()):
        if k0 > 0:
            out.append(Discrepancy(f"series start for m={m} (s=2, q=0)", "a_0 = 1, a_1 = sigma_1/2",
                                   f"a_k = 0 for k < {k0}, a_{k0} = 1",
                                   f"denominator vanishes at k <= {k0}"))
    diag = literal_fourier_diagnostic(exp)
    if any(v > 1e-12 for v in diag.values()):
        out.append(Discrepancy("transformed condition with the printed operator (s=1, q=0)", 0.0,
                               max(diag.values()), "index shift between the transformed sum and the recurrence"))
    return out
