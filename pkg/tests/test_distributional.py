from fractions import Fraction as F

import pytest
import sympy

from halphen import distributional as dist
from halphen.errors import DomainError
from halphen.exactmath import QComplex, Surd

HALF = F(1, 2)


def test_weight_exponents():
    w1 = dist.weight_exponents(-2)
    assert (w1.N1, w1.N2, w1.N3, w1.floor_N1) == (F(1, 4),) * 3 + (0,)
    assert [t[1] for t in w1.terms] == [0]
    w2 = dist.weight_exponents(-4)
    assert w2.N1 == F(5, 4) and w2.floor_N1 == 1 and [t[0] for t in w2.terms] == [0, 1]
    assert w2.ms == [1, 3]
    w0 = dist.weight_exponents(0)
    assert w0.N1 == F(-3, 4) and not w0.integral_path
    assert all(dist.weight_exponents(-2 * s).floor_N1 == s - 1 for s in range(1, 11))


def test_fourier_term_rules():
    assert dist.fourier_term(0, 2).terms == {2: QComplex(-1)}
    assert dist.fourier_term(0, 3).terms == {3: QComplex(0, 1)}
    assert dist.fourier_term(2, 2).terms == {0: QComplex(2)}
    assert not dist.fourier_term(3, 2).terms


def test_fourier_term_against_pairing():
    r, s = sympy.symbols("r s")
    for a in range(4):
        for b in range(6):
            # <r^a delta^(b), e^{i s r}> = (-1)^b d^b/dr^b [r^a e^{i s r}] at r = 0
            val = sympy.expand((-1) ** b * sympy.diff(r ** a * sympy.exp(sympy.I * s * r), r, b).subs(r, 0))
            got = dist.fourier_term(a, b).terms
            if val == 0:
                assert not got
                continue
            ((exp,), coeff), = sympy.Poly(val, s).terms()
            assert got == {exp: QComplex(F(str(sympy.re(coeff))), F(str(sympy.im(coeff))))}


def test_sigma_epsilon_values():
    assert dist.sigma_epsilon(1, 0, -2, 0) == (F(25, 16), F(9, 20))
    sg, ep = dist.sigma_epsilon(4, 0, -2, 10 ** 9)
    assert abs(sg) < 1e-7 and abs(ep) < 1e-7
    dist.sigma_epsilon(2, 0, 0, 1)   # degenerate n, no special casing


def test_sigma_epsilon_zero_denominator():
    with pytest.raises(DomainError, match="k=1, m=3"):
        dist.sigma_epsilon(1, 3, -4, 0)


def test_first_coefficients():
    exp = dist.coefficients_recurrence(6, -2, 0, HALF)
    sg1, _ = dist.sigma_epsilon(1, 0, -2, 0)
    sg2, ep2 = dist.sigma_epsilon(2, 0, -2, 0)
    assert exp.coeffs[0] == 1 and exp.coeffs[1] == F(25, 32) == sg1 / 2
    assert exp.coeffs[2] == sg2 * exp.coeffs[1] + ep2
    assert exp.exact


def test_surd_initial_value():
    exp = dist.coefficients_recurrence(4, -2, 1, F(1, 3))
    assert isinstance(exp.coeffs[1], Surd) and exp.exact


def test_printed_chain_differs_from_step_two():
    rec = dist.coefficients_recurrence(4, -2, 0, HALF).coeffs
    chain = dist.coefficients_printed_chain(4, -2, 0, HALF)
    assert rec[:2] == chain[:2] and rec[2] != chain[2]


def test_closed_form_agrees_only_at_start():
    rec = dist.coefficients_recurrence(5, -2, 0, HALF).coeffs
    for k in (0, 1):
        assert dist.coefficients_closed_form(k, 0, -2, 0, HALF, HALF) == pytest.approx(float(rec[k]))
    assert dist.coefficients_closed_form(2, 0, -2, 0, HALF, HALF) != pytest.approx(float(rec[2]))


def test_argument_guards():
    with pytest.raises(DomainError):
        dist.coefficients_recurrence(0, -2, 0, HALF)
    with pytest.raises(DomainError):
        dist.coefficients_recurrence(4, -2, 0, F(3, 2))
    with pytest.raises(DomainError):
        dist.assemble_distribution(0, 0, HALF)


def test_assembly_structure():
    e1 = dist.assemble_distribution(1, 0, HALF, 8)
    assert list(e1.per_m) == [0] and e1.coeffs == e1.per_m[0]
    e2 = dist.assemble_distribution(2, 0, HALF, 8)
    assert sorted(e2.per_m) == [1, 3]
    assert e2.leading == {1: 1, 3: 3}
    assert e2.weights[1][0] == F(1, 4)
    assert e2.coeffs == tuple(a + b for a, b in zip(e2.per_m[1], e2.per_m[3]))


def _sympy_condition(seq, m, n, q):
    """Independent transform: sum a_k [E(k+2)(-is)^{k+2} + S(k+1)(-is)^{k+1} - D(k)(-is)^k]."""
    s = sympy.Symbol("s")
    n, q = sympy.Rational(n), sympy.Rational(str(q))

    def ff(k, j):
        return sympy.gamma(k + 1) / sympy.gamma(k - j + 1) if k - j + 1 > 0 else (
            sympy.Integer(0) if j >= 0 else sympy.gamma(k + 1) / sympy.gamma(k - j + 1))

    E = lambda k: 4 * ff(k, m + 1) + ff(k, m - 1)
    S = lambda k: (1 - 2 * n) * (3 * ff(k, m + 1) + ff(k, m - 1) / 4)
    D = lambda k: n * (2 * n - 1) * ff(k, m + 1) - ff(k, m) * q
    expr = 0
    for k, a in enumerate(seq):
        if isinstance(a, Surd):
            a = sympy.Rational(str(a.a)) + sympy.Rational(str(a.b)) * sympy.sqrt(sympy.Rational(str(a.d)))
        else:
            a = sympy.Rational(str(a))
        expr += a * (E(k + 2) * (-sympy.I * s) ** (k + 2) + S(k + 1) * (-sympy.I * s) ** (k + 1)
                     - D(k) * (-sympy.I * s) ** k)
    return sympy.Poly(sympy.expand(expr), s)


@pytest.mark.parametrize("s,q", [(1, 0), (1, -2), (2, 1)])
def test_interior_vanishes_against_sympy(s, q):
    exp = dist.assemble_distribution(s, q, HALF, 10)
    for m, seq in exp.per_m.items():
        poly = _sympy_condition(seq, m, exp.n, q)
        k0 = exp.leading[m]
        for j in range(k0 + 2, 11):
            assert sympy.simplify(poly.coeff_monomial(sympy.Symbol("s") ** j)) == 0


@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("q", [0, 1, -2])
@pytest.mark.parametrize("K2", [HALF, F(1, 4)])
def test_closure_grid(s, q, K2):
    rep = dist.verify_fourier_condition(dist.assemble_distribution(s, q, K2, 12))
    assert rep["interior_exact_zero"]
    # the initial and boundary orders are not forced to vanish
    assert any(v["boundary"][13] != 0 or v["boundary"][14] != 0 for v in rep["per_m"].values())


def test_vacuous_interior():
    rep = dist.verify_fourier_condition(dist.coefficients_recurrence(1, -2, 0, HALF))
    assert rep["per_m"][0]["interior"] == {} and rep["interior_exact_zero"]


def test_fault_injection_localized():
    exp = dist.assemble_distribution(1, 0, HALF, 12)
    rep = dist.verify_fourier_condition(dist.inject_fault(exp, 3))
    assert rep["first_nonzero_interior"] == 3
    assert rep["per_m"][0]["nonzero_interior_orders"] == [3, 4, 5]


def test_literal_diagnostic_and_report():
    diag = dist.literal_fourier_diagnostic(dist.coefficients_recurrence(6, -2, 0, HALF))
    assert diag[0] > 0
    locs = [d.location for d in dist.discrepancies()]
    assert any("closed form" in loc for loc in locs)
    assert any("series start" in loc for loc in locs)
