"""Exactly solvable branch at spin j = 1/2.

The operator ``P3 D^2 + (g2/4) D + B`` is mapped onto the hypergeometric
equation ``w(w-1)F'' + [(nu+1)w - gamma]F' - m(m+nu)F = 0`` through
``w = exp(k r)`` and a gauge factor built from the residues nu_s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebraization import DifferentialOperator, OperatorSpec, build_from_spec, weierstrass_poly
from .errors import DegenerateBranchError, DomainError, PoleError, SingularityError
from .exactmath import Polynomial, as_fraction, is_exact, _is_square, _exact_sqrt
from .report import Discrepancy
from .weierstrass import EllipticInvariants, RootTriple, roots_from_invariants

__all__ = [
    "PCTParams", "ResidueTriple", "KPair", "exact_operator", "exact_spec", "gauge_residues",
    "k_pm", "hypergeometric_2f1_terminating", "hypergeometric_ode_residual", "jacobi_p",
    "jacobi_p_recurrence", "jacobi_p_printed", "jacobi_norm", "exact_wavefunction",
    "residual_diagnostic", "discrepancies",
]


def exact_operator(g2, g3, B) -> DifferentialOperator:
    g2, g3, B = as_fraction(g2), as_fraction(g3), as_fraction(B)
    return DifferentialOperator(weierstrass_poly(g2, g3), Polynomial([g2 / 4]), Polynomial([B]))


def exact_spec(g2, g3, B) -> OperatorSpec:
    """Generator form of the exactly solvable operator (no J+ term)."""
    g2, g3, B = as_fraction(g2), as_fraction(g3), as_fraction(B)
    return OperatorSpec.from_constants(Fraction(1, 2), c_p0=2, c_0m=-g2 / 2, c_mm=-g3,
                                       c_m=g2 / 4, c_star=B)


@dataclass(frozen=True)
class ResidueTriple:
    nu_1: object
    nu_2: object
    nu_3: object

    def as_tuple(self):
        return (self.nu_1, self.nu_2, self.nu_3)


def _roots(inv) -> RootTriple:
    return inv if isinstance(inv, RootTriple) else roots_from_invariants(inv)


def gauge_residues(inv) -> ResidueTriple:
    """nu_s = g2 / (32 prod_{t != s}(e_s - e_t))."""
    rt = _roots(inv)
    e = rt.as_tuple()
    out = []
    for s in range(3):
        den = 32
        for t in range(3):
            if t != s:
                den = den * (e[s] - e[t])
        if den == 0 or (not is_exact(den) and abs(complex(den)) < 1e-14):
            raise PoleError("gauge residues need distinct roots")
        out.append(rt.g2 / den)
    return ResidueTriple(*out)


@dataclass(frozen=True)
class KPair:
    k_plus: object
    k_minus: object
    complex_pair: bool


def k_pm(B, g2, g3) -> KPair:
    """Roots of 2(g3+2)k^2 + g2 k - 8B = 0 in the printed +- order."""
    B, g2, g3 = as_fraction(B), as_fraction(g2), as_fraction(g3)
    if g3 == -2:
        raise DegenerateBranchError("g3 = -2 makes the k equation linear")
    disc = g2 * g2 + 64 * B * (g3 + 2)
    den = 4 * (g3 + 2)
    if _is_square(disc):
        s = _exact_sqrt(disc)
        return KPair((-g2 + s) / den, (-g2 - s) / den, False)
    if disc >= 0:
        s = math.sqrt(disc)
        return KPair((-float(g2) + s) / float(den), (-float(g2) - s) / float(den), False)
    s = 1j * math.sqrt(-disc)
    return KPair((-float(g2) + s) / float(den), (-float(g2) - s) / float(den), True)


def _rising(x, k):
    out = Fraction(1) if is_exact(x) else 1.0
    for i in range(k):
        out = out * (x + i)
    return out


def hypergeometric_2f1_terminating(m: int, nu, gamma, w=None):
    """2F1(-m, m+nu; gamma | w) as a Polynomial (w is None) or its value at w."""
    if m < 0:
        raise DomainError("m must be >= 0")
    nu = as_fraction(nu) if is_exact(nu) else nu
    gamma = as_fraction(gamma) if is_exact(gamma) else gamma
    coeffs = []
    for k in range(m + 1):
        den = _rising(gamma, k) * math.factorial(k)
        if den == 0:
            raise DomainError(f"Pochhammer pole: (gamma)_{k} = 0 with gamma = {gamma}")
        coeffs.append(_rising(-m, k) * _rising(m + nu, k) / den)
    poly = Polynomial(coeffs)
    return poly if w is None else poly(w)


def hypergeometric_ode_residual(F: Polynomial, m: int, nu, gamma) -> Polynomial:
    """w(w-1)F'' + [(nu+1)w - gamma]F' - m(m+nu)F."""
    nu, gamma = as_fraction(nu), as_fraction(gamma)
    w = Polynomial([Fraction(0), Fraction(1)])
    return (w * (w - 1)) * F.derivative(2) + (w * (nu + 1) - gamma) * F.derivative() \
        - F * (m * (m + nu))


def _gamma(x: float) -> float:
    if x <= 0 and float(x).is_integer():
        raise DomainError(f"Gamma pole at {x}")
    return math.gamma(x)


def jacobi_p(m: int, alpha, beta, x) -> float:
    """Jacobi polynomial from its finite Gamma-ratio sum in powers of (x-1)/2."""
    a, b = float(alpha), float(beta)
    pref = _gamma(a + m + 1) / (math.factorial(m) * _gamma(a + b + m + 1))
    total = 0.0
    for n in range(m + 1):
        total += math.comb(m, n) * _gamma(a + b + n + m + 1) / _gamma(a + n + 1) \
            * ((x - 1) / 2) ** n
    return pref * total


def jacobi_p_printed(m: int, alpha, beta, w) -> float:
    """The printed series in w, with powers of (1 - w)."""
    a, b = float(alpha), float(beta)
    pref = _gamma(a + m + 1) / (math.factorial(m) * _gamma(a + b + m + 1))
    return pref * sum(math.comb(m, n) * _gamma(a + b + n + m + 1) / _gamma(a + n + 1)
                      * (1 - w) ** n for n in range(m + 1))


def jacobi_p_recurrence(m: int, alpha, beta, x) -> float:
    """Standard three-term recurrence in the degree."""
    a, b = float(alpha), float(beta)
    p0 = 1.0
    if m == 0:
        return p0
    p1 = (a + 1) + (a + b + 2) * (x - 1) / 2
    for n in range(2, m + 1):
        c = 2 * n + a + b
        a1 = 2 * n * (n + a + b) * (c - 2)
        a2 = (c - 1) * (a * a - b * b)
        a3 = (c - 1) * c * (c - 2)
        a4 = 2 * (n + a - 1) * (n + b - 1) * c
        p0, p1 = p1, ((a2 + a3 * x) * p1 - a4 * p0) / a1
    return p1


def jacobi_norm(m: int, nu, gamma) -> float:
    """2^{nu-1} G(m+nu-gamma+1) G(m+gamma) / (m! (2m+nu) G(m+nu))."""
    nu, gamma = float(nu), float(gamma)
    if 2 * m + nu == 0:
        raise DomainError("2m + nu = 0")
    for arg in (m + nu - gamma + 1, m + gamma, m + nu):
        if arg <= 0:
            raise DomainError(f"Gamma argument {arg} is not positive")
    return 2 ** (nu - 1) * math.gamma(m + nu - gamma + 1) * math.gamma(m + gamma) \
        / (math.factorial(m) * (2 * m + nu) * math.gamma(m + nu))


@dataclass(frozen=True)
class PCTParams:
    nu: int = 2
    gamma: int = 1
    m: int = 0
    B: Fraction = Fraction(0)
    branch: str = "plus"
    inv: EllipticInvariants = EllipticInvariants(Fraction(1), Fraction(0))

    def __post_init__(self):
        if self.gamma < 1 or self.m < 0 or self.nu < 0:
            raise DomainError("need gamma >= 1, m >= 0, nu >= 0")
        if self.branch not in ("plus", "minus"):
            raise DomainError("branch must be 'plus' or 'minus'")
        object.__setattr__(self, "B", as_fraction(self.B))

    @property
    def sign(self) -> int:
        return 1 if self.branch == "plus" else -1

    def k(self):
        pair = k_pm(self.B, self.inv.g2, self.inv.g3)
        if pair.complex_pair:
            raise DomainError("k is complex for these inputs; exponents would not be real")
        return pair.k_plus if self.branch == "plus" else pair.k_minus


def _power(base, expo, what):
    if base == 0 and expo < 0:
        raise SingularityError(f"{what} vanishes with negative exponent {expo}")
    if base < 0:
        if float(expo).is_integer():
            return base ** int(expo)
        raise SingularityError(
            f"{what} = {mpmath.nstr(base, 6)} < 0 with non-integer exponent {expo}; "
            "try the other branch")
    return base ** expo


def _wave_mp(params: PCTParams, r):
    """Wave function in mpmath, so exp(k r) cannot overflow."""
    k = params.k()
    if k == 0:
        raise DegenerateBranchError(f"k_{params.branch} = 0: w(r) is constant")
    rt = roots_from_invariants(params.inv)
    if not rt.all_real or r <= rt.max_real():
        raise DomainError("need three real roots and r > max e_s")
    nus = gauge_residues(rt).as_tuple()
    kk = mpmath.mpf(float(k))
    w = mpmath.exp(kk * r)
    val = abs(kk) ** mpmath.mpf(-0.5)
    for e, nu_s in zip(rt.as_tuple(), nus):
        val *= mpmath.mpf(r - float(complex(e).real)) ** (-mpmath.mpf(float(nu_s)) / 2)
    s = params.sign
    val *= _power(w, -mpmath.mpf(params.gamma + s) / 2, "w")
    val *= _power(w - 1, mpmath.mpf(params.nu - params.gamma + s) / 2, "w - 1")
    x = 2 * w - 1
    alpha, beta = params.nu - params.gamma, params.gamma - 1
    # same finite sum as jacobi_p, in mpmath
    pref = mpmath.gamma(alpha + params.m + 1) / (math.factorial(params.m)
                                                  * mpmath.gamma(alpha + beta + params.m + 1))
    poly = sum(math.comb(params.m, n) * mpmath.gamma(alpha + beta + n + params.m + 1)
               / mpmath.gamma(alpha + n + 1) * ((x - 1) / 2) ** n for n in range(params.m + 1))
    return val * pref * poly


def exact_wavefunction(params: PCTParams, r: float) -> float:
    with mpmath.workdps(30):
        return float(_wave_mp(params, mpmath.mpf(r)))


def residual_diagnostic(params: PCTParams, rs) -> list[tuple[float, float]]:
    """Relative size of H_e R at each r, derivatives by Richardson-refined differences."""
    inv = params.inv
    g2, g3, B = float(inv.g2), float(inv.g3), float(params.B)
    out = []
    with mpmath.workdps(40):
        f = lambda x: _wave_mp(params, x)
        for r in rs:
            r = mpmath.mpf(r)
            h = mpmath.mpf("1e-5") * r

            def d12(h):
                fp, f0, fm = f(r + h), f(r), f(r - h)
                return (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h), f0

            d1a, d2a, f0 = d12(h)
            d1b, d2b, _ = d12(h / 2)
            d1 = (4 * d1b - d1a) / 3
            d2 = (4 * d2b - d2a) / 3
            P = 4 * r ** 3 - g2 * r - g3
            terms = [P * d2, g2 / 4 * d1, B * f0]
            scale = sum(abs(t) for t in terms)
            out.append((float(r), float(abs(sum(terms)) / scale) if scale else 0.0))
    return out


def discrepancies(g2=Fraction(1), g3=Fraction(0), B=Fraction(1)) -> list[Discrepancy]:
    from .algebraization import radial_spec
    g2, g3, B = as_fraction(g2), as_fraction(g3), as_fraction(B)
    out = []
    e53 = exact_operator(g2, g3, B)
    canon = build_from_spec(radial_spec(Fraction(1, 2), g2, g3, B))
    if (e53.p1, e53.p0) != (canon.p1, canon.p0):
        out.append(Discrepancy("exactly solvable operator vs spin-1/2 canonical operator",
                               {"p1": e53.p1, "p0": e53.p0}, {"p1": canon.p1, "p0": canon.p0},
                               "linear and constant terms change sign"))
    pair = k_pm(B, g2, g3)
    if not pair.complex_pair:
        printed = (g2 + math.sqrt(float(g2 * g2 + 64 * B * (g3 + 2)))) / (4 * float(g3 + 2))
        out.append(Discrepancy("w_+ exponent as stated", printed,
                               pair.k_plus, "root of 2(g3+2)k^2 + g2 k - 8B = 0"))
    m, nu, gamma, w = 2, 3, 1, 0.3
    lhs = float(hypergeometric_2f1_terminating(m, nu, gamma, Fraction(3, 10)))
    jac = jacobi_p(m, nu - gamma, gamma - 1, 2 * w - 1)
    printed = (-1) ** m * math.gamma(2 * m + nu) * math.factorial(m) / math.gamma(m + gamma) * jac
    derived = (-1) ** m * math.factorial(m) * math.gamma(gamma) / math.gamma(m + gamma) * jac
    out.append(Discrepancy(f"2F1 to Jacobi constant (m={m}, nu={nu}, gamma={gamma}, w={w})",
                           printed, derived, f"2F1 value {lhs!r}"))
    pj = jacobi_p_printed(m, nu - gamma, gamma - 1, w)
    if abs(pj - jac) > 1e-12 * (1 + abs(jac)):
        out.append(Discrepancy("Jacobi finite sum in w", pj, jac, "powers of (w - 1), not (1 - w)"))
    out.append(Discrepancy("gauge product exponent", "-nu_s (as stated)",
                           "-nu_s/2 (gauge factor derivation)", "the derivation is used"))
    return out
