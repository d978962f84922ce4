from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import elliprf

from halphen.errors import DomainError
from halphen.weierstrass import (EllipticInvariants, integrate_gk, invariants_from_roots,
                                 r_to_w, roots_from_invariants, weierstrass_cubic)

LEM = EllipticInvariants(1, 0)


def test_lemniscatic_roots():
    rt = roots_from_invariants(LEM)
    assert rt.as_tuple() == (F(1, 2), 0, F(-1, 2))
    assert rt.relabel((1, 0, 2)) == (0, F(1, 2), F(-1, 2))


def test_triple_root():
    assert roots_from_invariants(EllipticInvariants(0, 0)).as_tuple() == (0, 0, 0)


def test_complex_pair_sorted():
    rt = roots_from_invariants(EllipticInvariants(1, 1))
    assert not rt.all_real
    assert complex(rt.e2).imag > 0 > complex(rt.e3).imag


def test_cubic_polynomial():
    assert weierstrass_cubic(1, 0)(F(1, 2)) == 0


@settings(max_examples=100, deadline=None)
@given(st.fractions(-5, 5, max_denominator=7), st.fractions(-5, 5, max_denominator=7))
def test_round_trip_exact(e1, e2):
    es = sorted((e1, e2, -e1 - e2), reverse=True)
    inv = invariants_from_roots(*es)
    assert inv.discriminant >= 0
    assert roots_from_invariants(inv).as_tuple() == tuple(es)


def test_root_sum_guard():
    with pytest.raises(DomainError):
        invariants_from_roots(F(1), F(0), F(0))


def test_gk_polynomial_exact():
    val, _ = integrate_gk(lambda x: x ** 6, 0.0, 1.0)
    assert abs(val - 1 / 7) < 1e-15


@pytest.mark.parametrize("g2,g3", [(1, 0), (4, 1), (5, 1), (7, -2)])
@pytest.mark.parametrize("dr", [0.05, 0.7, 3.0, 40.0])
def test_r_to_w_matches_carlson(g2, g3, dr):
    inv = EllipticInvariants(g2, g3)
    rt = roots_from_invariants(inv)
    if not rt.all_real:
        pytest.skip("complex roots")
    r = rt.max_real() + dr
    es = [float(e) for e in rt.as_tuple()]
    ref = elliprf(r - es[0], r - es[1], r - es[2])
    assert abs(r_to_w(r, inv) - ref) <= 1e-10 * ref


def test_r_to_w_domain():
    with pytest.raises(DomainError):
        r_to_w(0.4, LEM)
    with pytest.raises(DomainError):
        r_to_w(2.0, EllipticInvariants(1, 1))
    assert r_to_w(float("inf"), LEM) == 0.0


def test_g2_sign_convention_reported():
    from halphen.weierstrass import discrepancies
    (d,) = discrepancies()
    assert (d.paper, d.derived) == (F(-1), F(1))
