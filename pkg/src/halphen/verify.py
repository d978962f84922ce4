"""Invariant suites behind ``halphen verify``.

Each suite returns a list of Check records. Checks are deterministic for a
given seed; nothing time-dependent goes into the report.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import algebraization as alg
from . import distributional as dist
from . import exact_j_half as ejh
from . import qes
from . import weierstrass
from .errors import DegenerateBranchError, HalphenError
from .exactmath import Polynomial, charpoly_exact, det_exact, polynomial_roots, sort_key
from .report import encode
from .weierstrass import (EllipticInvariants, invariants_from_roots, r_to_w,
                          roots_from_invariants)

SPINS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))
INVARIANTS = ((Fraction(1), Fraction(0)), (Fraction(-4), Fraction(0)), (Fraction(4), Fraction(1)))


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: object = None

    def to_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed,
                "detail": encode(self.detail)}


def _rat(rng: random.Random, lo=-9, hi=9, den=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_spec(rng: random.Random, j) -> alg.OperatorSpec:
    names = ("c_pp", "c_p0", "c_pm", "c_00", "c_0m", "c_mm", "c_p", "c_0", "c_m", "c_star")
    return alg.OperatorSpec.from_constants(j, **{k: _rat(rng) for k in names})


def _close(a, b, tol) -> bool:
    return abs(complex(a) - complex(b)) <= tol * (1 + abs(complex(b)))


def _multiset_close(xs, ys, tol) -> bool:
    xs, ys = sorted(map(complex, xs), key=sort_key), sorted(map(complex, ys), key=sort_key)
    if len(xs) != len(ys):
        return False
    left = list(ys)
    for x in xs:
        best = min(range(len(left)), key=lambda i: abs(left[i] - x))
        if abs(left[best] - x) > tol * (1 + abs(x)):
            return False
        left.pop(best)
    return True


# ---------------------------------------------------------------------------

def suite_algebraization(rng: random.Random) -> list[Check]:
    mismatches = []
    for trial in range(25):
        for j in SPINS:
            spec = random_spec(rng, j)
            op = alg.build_from_spec(spec)
            for k in range(int(2 * j) + 5):
                rk = Polynomial.monomial(k)
                if op.apply(rk) != alg.apply_spec_directly(spec, rk):
                    mismatches.append((trial, str(j), k))
    out = [Check("algebraization", "closed form equals generator composition (25 specs x 5 spins)",
                 not mismatches, {"mismatches": len(mismatches)})]
    bad = []
    for j in SPINS:
        g2, g3, B = _rat(rng), _rat(rng), _rat(rng)
        comp = alg.operator_by_composition(alg.radial_spec(j, g2, g3, B))
        want = Polynomial([-B, 7 * j * (2 * j - 1)])
        if comp.p0 != want:
            bad.append(str(j))
    out.append(Check("algebraization", "composition gives p0 = 7j(2j-1) r - B", not bad, {"failing_j": bad}))
    return out


def suite_commutation(rng: random.Random) -> list[Check]:
    fails = []
    for j in SPINS + (_rat(rng),):
        for k in range(11):
            rk = Polynomial.monomial(k)
            J0 = alg.apply_generator("0", j, rk)
            Jp = alg.apply_generator("+", j, rk)
            Jm = alg.apply_generator("-", j, rk)
            if alg.commutator("0", "+", j, rk) != Jp:
                fails.append(("[J0,J+]", str(j), k))
            if alg.commutator("0", "-", j, rk) != Jm * -1:
                fails.append(("[J0,J-]", str(j), k))
            if alg.commutator("+", "-", j, rk) != J0 * -2:
                fails.append(("[J+,J-]", str(j), k))
    return [Check("commutation", "[J0,J+-] = +-J+- and [J+,J-] = -2J0 on r^0..r^10", not fails,
                  {"failures": [list(f) for f in fails[:5]]})]


def suite_spectrum(rng: random.Random) -> list[Check]:
    worst, bad = 0.0, []
    for g2, g3 in INVARIANTS:
        for n in range(7):
            for sol in qes.solve_qes(n, g2, g3):
                res = qes.residual_polynomial(sol.coefficients, sol.j, g2, g3, sol.B)
                if sol.exact:
                    if not res.is_zero():
                        bad.append((n, str(g2), str(g3)))
                else:
                    scale = max(abs(complex(a)) for a in sol.coefficients)
                    r = res.max_abs() / scale
                    worst = max(worst, r)
                    if r >= 1e-9:
                        bad.append((n, str(g2), str(g3)))
    out = [Check("spectrum", "every (B, polynomial) is annihilated, n = 0..6", not bad,
                 {"max_relative_residual": worst, "failures": [list(b) for b in bad]})]
    s0 = qes.accessory_spectrum(0, 1, 0)
    s1 = qes.accessory_spectrum(1, 1, 0)
    out.append(Check("spectrum", "n = 0 gives B = {0}", s0 == [0], {"spectrum": s0}))
    out.append(Check("spectrum", "n = 1 lemniscatic gives B = {0, 0}", s1 == [0, 0], {"spectrum": s1}))
    # the adjoint spectrum is the negated spectrum
    ok = True
    for g2, g3 in INVARIANTS:
        for n in range(1, 5):
            j = Fraction(n, 2)
            spec = alg.adjoint(alg.radial_spec(j, g2, g3, 0))
            sm = qes.matrix_from_operator(alg.build_from_spec(spec), n)
            adj = [z for z, m in polynomial_roots(charpoly_exact(sm.m_matrix)) for _ in range(m)]
            base = qes.accessory_spectrum(n, g2, g3)
            ok &= _multiset_close(adj, [-complex(z) for z in base], 1e-9)
    out.append(Check("spectrum", "adjoint operator has the negated spectrum", ok))
    return out


def suite_determinant(rng: random.Random) -> list[Check]:
    ok_dense = True
    for g2, g3 in INVARIANTS:
        for n in range(7):
            sm = qes.spectral_matrix(n, g2, g3)
            dense = qes.dense_determinant_poly(sm)
            roots = [z for z, m in polynomial_roots(dense) for _ in range(m)]
            ok_dense &= _multiset_close(roots, qes.accessory_spectrum(n, g2, g3), 1e-9)
    ok_rec = True
    for g2 in (Fraction(1), Fraction(-4), _rat(rng)):
        for n in range(8):
            sm = qes.spectral_matrix(n, g2, 0)
            for B in (Fraction(0), Fraction(1), _rat(rng)):
                ok_rec &= qes.determinant_paper(sm, B) == det_exact(sm.T(B))
    ok_cubic = True
    for g2, g3 in INVARIANTS:
        sm = qes.spectral_matrix(2, g2, g3)
        ok_cubic &= _multiset_close(qes.cubic_accessory_roots(sm), qes.accessory_spectrum(2, g2, g3), 1e-9)
    return [
        Check("determinant", "dense det T(B) roots equal the eigenvalues, n <= 6", ok_dense),
        Check("determinant", "three-term recurrence equals dense determinant (g3 = 0, dim <= 8)", ok_rec),
        Check("determinant", "n = 2 cubic-formula roots equal the eigenvalues", ok_cubic),
    ]


def suite_structure(rng: random.Random) -> list[Check]:
    bad = []
    for _ in range(50):
        g2, g3 = _rat(rng), _rat(rng)
        det = alg.structure_metric(alg.radial_spec(1, g2, g3, 0)).determinant
        if det != 4 * g3:
            bad.append((str(g2), str(g3), str(det)))
    return [Check("structure", "structure determinant equals 4 g3 (50 samples)", not bad, {"failures": bad[:5]})]


def suite_weierstrass(rng: random.Random) -> list[Check]:
    lem = roots_from_invariants(EllipticInvariants(1, 0))
    out = [Check("weierstrass", "lemniscatic roots are 1/2, 0, -1/2",
                 lem.as_tuple() == (Fraction(1, 2), Fraction(0), Fraction(-1, 2)), {"roots": list(lem.as_tuple())})]
    bad = 0
    for _ in range(100):
        e1, e2 = _rat(rng), _rat(rng)
        es = sorted((e1, e2, -e1 - e2), reverse=True)
        inv = invariants_from_roots(*es)
        back = roots_from_invariants(inv).as_tuple()
        if tuple(back) != tuple(es) or inv.discriminant < 0:
            bad += 1
    out.append(Check("weierstrass", "roots -> invariants -> roots is exact (100 samples)", bad == 0, {"failures": bad}))
    inv = EllipticInvariants(1, 0)
    rs = [0.6 + 0.5 * i for i in range(10)]
    ws = [r_to_w(r, inv) for r in rs]
    mono = all(a > b for a, b in zip(ws, ws[1:]))
    worst = 0.0
    for r in rs[:5]:
        h = 1e-4 * r
        d = (r_to_w(r + h, inv) - r_to_w(r - h, inv)) / (2 * h)
        exact_d = -1 / math.sqrt(4 * r ** 3 - r)
        worst = max(worst, abs(d - exact_d) / abs(exact_d))
    out.append(Check("weierstrass", "r_to_w strictly decreasing", mono))
    out.append(Check("weierstrass", "r_to_w derivative matches -1/sqrt(P) to 1e-6", worst < 1e-6,
                     {"max_relative_error": worst}))
    return out


def suite_exact(rng: random.Random) -> list[Check]:
    worst = 0.0
    for _ in range(100):
        B, g2, g3 = _rat(rng), _rat(rng), _rat(rng)
        if g3 == -2:
            continue
        pair = ejh.k_pm(B, g2, g3)
        for k in (pair.k_plus, pair.k_minus):
            k = complex(k)
            terms = (2 * float(g3 + 2) * k * k, float(g2) * k, -8 * float(B))
            worst = max(worst, abs(sum(terms)) / (1 + max(abs(t) for t in terms)))
    out = [Check("exact", "k_+- solve 2(g3+2)k^2 + g2 k - 8B = 0 (100 samples)", worst < 1e-12,
                 {"max_scaled_residual": worst})]
    bad = []
    for m in range(7):
        for nu in range(7):
            for gamma in range(1, 7):
                F = ejh.hypergeometric_2f1_terminating(m, nu, gamma)
                if not ejh.hypergeometric_ode_residual(F, m, nu, gamma).is_zero():
                    bad.append((m, nu, gamma))
    out.append(Check("exact", "terminating 2F1 solves its ODE exactly (m, nu, gamma <= 6)", not bad))
    worst = 0.0
    for m in range(7):
        for a, b in ((0, 0), (1, 0), (2, 1), (0.5, 1.5), (3, 2)):
            for x in (-0.9, -0.3, 0.2, 0.7, 1.0):
                p, q = ejh.jacobi_p(m, a, b, x), ejh.jacobi_p_recurrence(m, a, b, x)
                worst = max(worst, abs(p - q) / (1 + abs(q)))
    out.append(Check("exact", "Jacobi sum and recurrence agree to 1e-10", worst < 1e-10, {"max_error": worst}))
    pair = ejh.k_pm(0, 1, 0)
    out.append(Check("exact", "lemniscatic B = 0 gives k = {0, -1/4}",
                     (pair.k_plus, pair.k_minus) == (0, Fraction(-1, 4)), {"k": [pair.k_plus, pair.k_minus]}))
    try:
        ejh.exact_wavefunction(ejh.PCTParams(branch="plus"), 2.0)
        raised = False
    except DegenerateBranchError:
        raised = True
    out.append(Check("exact", "zero branch raises the degenerate-branch error", raised))
    return out


def suite_distributional(rng: random.Random) -> list[Check]:
    half = Fraction(1, 2)
    bad, orders = [], 0
    for s in (1, 2):
        for q in (0, 1, -2):
            for K2 in (half, Fraction(1, 4)):
                rep = dist.verify_fourier_condition(dist.assemble_distribution(s, q, K2, 12))
                orders += sum(len(v["interior"]) for v in rep["per_m"].values())
                if not rep["interior_exact_zero"]:
                    bad.append((s, q, str(K2)))
    out = [Check("distributional", "interior sigma-coefficients vanish exactly (s, q, K2 grid, K = 12)",
                 not bad, {"failures": bad, "interior_orders_checked": orders})]
    init_bad = []
    for s in (1, 2):
        for q in (0, 1, -2):
            exp = dist.assemble_distribution(s, q, half, 12)
            for m, seq in exp.per_m.items():
                k0 = exp.leading[m]
                sg, _ = dist.sigma_epsilon(k0 + 1, m, exp.n, q)
                if seq[k0] != 1 or seq[k0 + 1] != sg / 2 or any(seq[:k0]):
                    init_bad.append((s, q, m))
    out.append(Check("distributional", "each series starts with 1, sigma/2 at K2 = 1/2", not init_bad,
                     {"failures": init_bad}))
    exp = dist.assemble_distribution(1, 0, half, 12)
    rep = dist.verify_fourier_condition(dist.inject_fault(exp, 3))
    out.append(Check("distributional", "perturbed a_3 is detected at sigma^3",
                     rep["first_nonzero_interior"] == 3, {"first_nonzero": rep["first_nonzero_interior"]}))
    fl_bad = [s for s in range(1, 11) if dist.weight_exponents(-2 * s).floor_N1 != s - 1]
    out.append(Check("distributional", "floor(N1) = s - 1 for s <= 10", not fl_bad))
    out.append(Check("distributional", "fourier_term(a, b) = 0 for a > b",
                     all(not dist.fourier_term(a, b).terms for b in range(6) for a in range(b + 1, 8))))
    return out


SUITES = {
    "algebraization": suite_algebraization,
    "commutation": suite_commutation,
    "spectrum": suite_spectrum,
    "determinant": suite_determinant,
    "structure": suite_structure,
    "weierstrass": suite_weierstrass,
    "exact": suite_exact,
    "distributional": suite_distributional,
}


def all_discrepancies() -> list:
    out = []
    for mod in (weierstrass, alg, qes, ejh, dist):
        out.extend(mod.discrepancies())
    return out


def run(suite: str = "all", seed: int = 0) -> dict:
    names = list(SUITES) if suite == "all" else [suite]
    checks = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        rng = random.Random(f"{seed}:{name}")
        try:
            checks.extend(SUITES[name](rng))
        except HalphenError as exc:
            checks.append(Check(name, "suite raised", False, f"{type(exc).__name__}: {exc}"))
    passed = sum(c.passed for c in checks)
    return {
        "seed": seed,
        "suites": names,
        "checks": [c.to_dict() for c in checks],
        "summary": {"passed": passed, "failed": len(checks) - passed},
        "discrepancies": [d.to_dict() for d in all_discrepancies()] if suite == "all" else [],
    }
