from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from halphen.errors import DomainError
from halphen.exactmath import (Polynomial, QComplex, Surd, cardano_roots, charpoly_exact,
                               det_exact, falling_factorial, generalized_binomial,
                               nullspace_exact, poly_gcd, polynomial_roots, solve_cubic,
                               squarefree_decomposition)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_falling_factorial_values():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 4) == 0
    assert falling_factorial(1, -1) == F(1, 2)
    assert falling_factorial(0, -1) == 1
    assert falling_factorial(4, 0) == 1


def test_falling_factorial_pole():
    with pytest.raises(DomainError):
        falling_factorial(-1, -1)


def test_generalized_binomial():
    assert generalized_binomial(F(5, 4), 1) == F(5, 4)
    assert generalized_binomial(6, 2) == 15


def test_qcomplex_arithmetic():
    z = QComplex(1, 2)
    assert z * z.conjugate() == 5
    assert (z / z) == 1
    assert QComplex(0, 1) ** 2 == -1


def test_surd_arithmetic():
    s = Surd.sqrt(F(2))
    assert s * s == 2
    assert Surd.sqrt(F(9, 4)) == F(3, 2)
    assert abs(float(Surd.sqrt(F(3), F(1, 2))) - 3 ** 0.5 / 2) < 1e-15


@settings(max_examples=60, deadline=None)
@given(st.lists(rats, min_size=1, max_size=5), st.lists(rats, min_size=1, max_size=5))
def test_polynomial_division(a, b):
    pa, pb = Polynomial(a), Polynomial(b)
    if pb.is_zero():
        return
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert r.is_zero() or r.degree < pb.degree


def test_derivative_and_call():
    p = Polynomial([1, 2, 3])        # 1 + 2r + 3r^2
    assert p.derivative() == Polynomial([2, 6])
    assert p.derivative(3).is_zero()
    assert p(F(1, 2)) == F(11, 4)


def test_gcd_and_squarefree():
    x = Polynomial([0, 1])
    p = (x - 1) ** 2 * (x + 2)
    assert poly_gcd(p, p.derivative()).monic() == (x - 1).monic()
    parts = {m: f.monic() for f, m in squarefree_decomposition(p)}
    assert parts[2] == (x - 1) and parts[1] == (x + 2)


def test_polynomial_roots_exact_and_multiplicity():
    x = Polynomial([0, 1])
    roots = dict(polynomial_roots((x - F(1, 2)) ** 2 * (x + 3)))
    assert roots == {F(1, 2): 2, F(-3): 1}


def test_cardano_against_sympy():
    b2, b1, b0 = F(1), F(-4), F(2)
    z = sympy.Symbol("z")
    ref = sorted((complex(r) for r in sympy.Poly(z ** 3 + b2 * z ** 2 + b1 * z + b0, z).nroots()), key=lambda c: (c.real, c.imag))
    got = sorted((complex(r) for r in cardano_roots(b2, b1, b0)), key=lambda c: (c.real, c.imag))
    assert all(abs(a - b) < 1e-12 for a, b in zip(ref, got))


def test_solve_cubic_lemniscatic():
    assert sorted(solve_cubic(4, 0, -1, 0).values, key=lambda v: complex(v).real) == [F(-1, 2), 0, F(1, 2)]


def test_charpoly_and_det_against_sympy():
    m = [[F(1), F(2), F(0)], [F(-1, 3), F(0), F(5)], [F(2), F(1, 2), F(-4)]]
    M = sympy.Matrix(m)
    lam = sympy.Symbol("l")
    ref = sympy.Poly(M.charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    assert [F(str(c)) for c in ref] == list(charpoly_exact(m).coeffs)
    assert det_exact(m) == F(str(M.det()))


def test_nullspace():
    m = [[F(1), F(2)], [F(2), F(4)]]
    (v,) = nullspace_exact(m)
    assert m[0][0] * v[0] + m[0][1] * v[1] == 0
