"""sl(2) generators acting on polynomials and the operators built from them.

Generators (spin j):

    J-  = d/dr
    J0  = r d/dr - j
    J+  = r^2 d/dr - 2 j r

A quadratic element ``sum c_ab J_a J_b + sum c_a J_a + c_*`` is stored as an
:class:`OperatorSpec`. Two independent routes turn it into a differential
operator: literal composition of generators (:func:`apply_spec_directly`,
authoritative) and the closed-form coefficient polynomials
(:func:`build_from_spec`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .exactmath import Polynomial, QComplex, as_fraction, det_exact, is_exact
from .report import Discrepancy

__all__ = [
    "GENERATORS", "OperatorSpec", "DifferentialOperator", "StructureMetric",
    "apply_generator", "apply_spec_directly", "build_from_spec",
    "radial_operator", "printed_algebraized_operator", "radial_spec", "canonical_operator",
    "structure_metric", "adjoint", "commutator", "discrepancies",
]

GENERATORS = ("+", "0", "-")
_R = Polynomial([Fraction(0), Fraction(1)])


def _q(x):
    if isinstance(x, QComplex):
        return x
    return as_fraction(x)


def _conj(x):
    return x.conjugate() if isinstance(x, QComplex) else x


@dataclass(frozen=True)
class DifferentialOperator:
    """``p2 D^2 + p1 D + p0`` with polynomial coefficients."""

    p2: Polynomial
    p1: Polynomial
    p0: Polynomial

    def apply(self, p: Polynomial) -> Polynomial:
        return self.p2 * p.derivative(2) + self.p1 * p.derivative(1) + self.p0 * p

    __call__ = apply

    def __add__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        return DifferentialOperator(self.p2 + other.p2, self.p1 + other.p1, self.p0 + other.p0)

    def __sub__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        return DifferentialOperator(self.p2 - other.p2, self.p1 - other.p1, self.p0 - other.p0)

    def coefficients(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        return (self.p2, self.p1, self.p0)

    def evaluate(self, r: float) -> tuple[float, float, float]:
        return tuple(float(complex(c(r)).real) if c.coeffs else 0.0
                     for c in (self.p2, self.p1, self.p0))


@dataclass(frozen=True)
class OperatorSpec:
    """Structure constants of ``-H = sum c_ab J_a J_b + sum c_a J_a + c_*``.

    ``c_ab`` is a symmetric 3x3 table indexed in the order (+, 0, -);
    ``c_a`` is (c_+, c_0, c_-).
    """

    c_ab: tuple
    c_a: tuple
    c_star: object
    j: Fraction

    def __post_init__(self):
        m = tuple(tuple(_q(x) for x in row) for row in self.c_ab)
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("c_ab must be 3x3")
        for a in range(3):
            for b in range(a):
                if m[a][b] != m[b][a]:
                    raise ValueError(f"c_ab not symmetric at ({GENERATORS[a]},{GENERATORS[b]})")
        object.__setattr__(self, "c_ab", m)
        object.__setattr__(self, "c_a", tuple(_q(x) for x in self.c_a))
        object.__setattr__(self, "c_star", _q(self.c_star))
        object.__setattr__(self, "j", as_fraction(self.j))

    @classmethod
    def from_constants(cls, j, c_pp=0, c_p0=0, c_pm=0, c_00=0, c_0m=0, c_mm=0,
                       c_p=0, c_0=0, c_m=0, c_star=0) -> "OperatorSpec":
        c_ab = ((c_pp, c_p0, c_pm), (c_p0, c_00, c_0m), (c_pm, c_0m, c_mm))
        return cls(c_ab, (c_p, c_0, c_m), c_star, j)

    @classmethod
    def zero(cls, j=0) -> "OperatorSpec":
        return cls.from_constants(j)

    def c(self, a: str, b: str):
        return self.c_ab[GENERATORS.index(a)][GENERATORS.index(b)]

    @property
    def exactly_solvable(self) -> bool:
        """No positive-grading part: nothing raising the degree."""
        return (self.c("+", "-") == 0 and self.c("+", "+") == 0
                and self.c("+", "0") == 0 and self.c_a[0] == 0)


def apply_generator(which: str, j, p: Polynomial) -> Polynomial:
    j = as_fraction(j)
    if which == "-":
        return p.derivative()
    if which == "0":
        return _R * p.derivative() - p * j
    if which == "+":
        return _R * _R * p.derivative() - _R * p * (2 * j)
    raise ValueError(f"unknown generator {which!r}")


def apply_spec_directly(spec: OperatorSpec, p: Polynomial) -> Polynomial:
    """Evaluate the operator by composing generators term by term."""
    out = p * spec.c_star
    first = {a: apply_generator(a, spec.j, p) for a in GENERATORS}
    for ia, a in enumerate(GENERATORS):
        if spec.c_a[ia] != 0:
            out = out + first[a] * spec.c_a[ia]
        for ib, b in enumerate(GENERATORS):
            c = spec.c_ab[ia][ib]
            if c != 0:
                out = out + apply_generator(a, spec.j, first[b]) * c
    return out


def closed_form_parts(spec: OperatorSpec) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(P4, P2, P0) of the closed form."""
    c = spec.c
    j = spec.j
    p4 = Polynomial([c("-", "-"), 2 * c("0", "-"), c("0", "0") + 2 * c("+", "-"),
                     2 * c("+", "0"), c("+", "+")])
    cp, c0, cm = spec.c_a
    p2 = Polynomial([cm, c0, cp])
    p0 = Polynomial([j * (j + 1) / 3 * (c("0", "0") - 4 * c("+", "-")) + spec.c_star])
    return p4, p2, p0


def build_from_spec(spec: OperatorSpec) -> DifferentialOperator:
    j = spec.j
    p4, p2, p0 = closed_form_parts(spec)
    q1 = p2 - p4.derivative() * ((2 * j - 1) / 2)
    q0 = p0 - p2.derivative() * j + p4.derivative(2) * (j * (2 * j - 1) / 6)
    return DifferentialOperator(p4, q1, q0)


def operator_by_composition(spec: OperatorSpec) -> DifferentialOperator:
    """Recover (p2, p1, p0) from the action on 1, r, r^2.

    Every quadratic element has polynomial coefficients of degree <= 4, 3, 2,
    so the images of three monomials pin them down.
    """
    f0 = apply_spec_directly(spec, Polynomial([Fraction(1)]))
    f1 = apply_spec_directly(spec, _R)
    f2 = apply_spec_directly(spec, _R * _R)
    p0 = f0
    p1 = f1 - _R * p0
    p2 = (f2 - _R * _R * p0 - _R * p1 * 2) * Fraction(1, 2)
    return DifferentialOperator(p2, p1, p0)


def weierstrass_poly(g2, g3) -> Polynomial:
    return Polynomial([-_q(g3), -_q(g2), Fraction(0), Fraction(4)])


def radial_operator(n: int, g2, g3, B) -> DifferentialOperator:
    """Radial operator in the integer parameter n (spin j = n/2)."""
    g2, g3, B = _q(g2), _q(g3), _q(B)
    n = as_fraction(n)
    p1 = Polynomial([-g2 / 2, Fraction(0), Fraction(6)]) * (-(n - Fraction(1, 2)))
    p0 = Polynomial([-B, n * (2 * n - 1)])
    return DifferentialOperator(weierstrass_poly(g2, g3), p1, p0)


def printed_algebraized_operator(j, g2, g3, B) -> DifferentialOperator:
    """The first-order coefficient exactly as printed for the algebraized form.

    It does not preserve the polynomial space of degree 2j for j >= 1; kept
    for comparison only.
    """
    j, g2, g3, B = as_fraction(j), _q(g2), _q(g3), _q(B)
    p1 = Polynomial([g2 / 4, Fraction(0), Fraction(9, 2) * (2 * j - 1)])
    p0 = Polynomial([-B, 7 * j * (2 * j - 1)])
    return DifferentialOperator(weierstrass_poly(g2, g3), p1, p0)


def radial_spec(j, g2, g3, B) -> OperatorSpec:
    """Structure constants of the algebraized radial operator."""
    j, g2, g3, B = as_fraction(j), _q(g2), _q(g3), _q(B)
    return OperatorSpec.from_constants(
        j, c_p0=2, c_0m=-g2 / 2, c_mm=-g3,
        c_p=3 * (Fraction(1, 2) - j), c_m=-(j - Fraction(1, 4)) * g2, c_star=-B)


def canonical_operator(j, g2, g3, B) -> DifferentialOperator:
    """The algebraized radial operator, built from its structure constants."""
    return build_from_spec(radial_spec(j, g2, g3, B))


@dataclass(frozen=True)
class StructureMetric:
    matrix: tuple
    determinant: object
    vector_modulus: float


def structure_metric(spec: OperatorSpec) -> StructureMetric:
    det = det_exact([list(row) for row in spec.c_ab]) if all(
        isinstance(x, Fraction) for row in spec.c_ab for x in row) else _det3(spec.c_ab)
    modulus = math.sqrt(sum(abs(complex(c)) ** 2 for c in spec.c_a))
    return StructureMetric(spec.c_ab, det, modulus)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def adjoint(spec: OperatorSpec) -> OperatorSpec:
    """Quadratic block negated, linear part and constant conjugated."""
    c_ab = tuple(tuple(-x for x in row) for row in spec.c_ab)
    return OperatorSpec(c_ab, tuple(_conj(x) for x in spec.c_a), _conj(spec.c_star), spec.j)


def commutator(a: str, b: str, j, p: Polynomial) -> Polynomial:
    return (apply_generator(a, j, apply_generator(b, j, p))
            - apply_generator(b, j, apply_generator(a, j, p)))


def discrepancies(j=Fraction(1), g2=Fraction(1), g3=Fraction(0), B=Fraction(0)) -> list[Discrepancy]:
    """Printed algebraization formulas that disagree with generator composition."""
    out = []
    j, g2, g3, B = as_fraction(j), _q(g2), _q(g3), _q(B)
    k = 3
    rk = Polynomial.monomial(k)
    got = commutator("+", "-", j, rk)
    claimed = apply_generator("0", j, rk) * 2
    if got != claimed:
        out.append(Discrepancy(
            "commutator [J+, J-]", f"+2 J0 r^{k} = {claimed}", f"{got} = -2 J0 r^{k}",
            "the differential realization gives [J+, J-] = -2 J0"))

    spec = radial_spec(j, g2, g3, B)
    comp = operator_by_composition(spec)
    printed = printed_algebraized_operator(j, g2, g3, B)
    if comp.p1 != printed.p1:
        out.append(Discrepancy(
            f"algebraized radial operator, first-order coefficient (j={j}, g2={g2})",
            printed.p1, comp.p1, "composition of the structure constants"))

    rad = radial_operator(2 * j, g2, g3, B)
    if rad.p1 != comp.p1 or rad.p0 != comp.p0:
        out.append(Discrepancy(
            f"radial operator vs algebraized operator (j={j})",
            {"p1": rad.p1, "p0": rad.p0}, {"p1": comp.p1, "p0": comp.p0},
            "the two printed radial forms are not the same operator"))

    # the proof's constant term against the statement
    rnd = OperatorSpec.from_constants(j, c_00=1, c_pm=1)
    proof_p0 = j * (j + 1) / 3 + 2 * j * (2 * j - 1) / 3
    stated = closed_form_parts(rnd)[2][0]
    if proof_p0 != stated:
        out.append(Discrepancy(
            f"closed form constant P0 with c00 = c+- = 1 (j={j})", proof_p0, stated,
            "proof's P0 differs from the statement; the statement matches composition"))

    # linear J- coefficient in the printed canonical form vs the constants table
    printed_cm = (j - Fraction(1, 4)) * g2
    if printed_cm != spec.c_a[2]:
        out.append(Discrepancy(
            "canonical form, J- coefficient", printed_cm, spec.c_a[2],
            "sign differs from the structure-constant table"))
    return out
