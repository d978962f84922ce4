"""Acceptance criteria, one pass/fail line each in the terminal summary."""
import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction as F

from halphen import algebraization as alg
from halphen import distributional as dist
from halphen import exact_j_half as ejh
from halphen import qes
from halphen.errors import DegenerateBranchError, DomainError
from halphen.exactmath import Polynomial, det_exact, polynomial_roots
from halphen.verify import random_spec
from halphen.weierstrass import EllipticInvariants, invariants_from_roots, r_to_w, roots_from_invariants

SPINS = [F(0), F(1, 2), F(1), F(3, 2), F(2)]
INVS = [(F(1), F(0)), (F(-4), F(0)), (F(4), F(1))]


def _key(z):
    z = complex(z)
    return (round(z.real, 7), round(z.imag, 7))


def _same_multiset(a, b, tol):
    a, b = sorted(a, key=_key), sorted(b, key=_key)
    return len(a) == len(b) and all(abs(complex(x) - complex(y)) <= tol * (1 + abs(complex(y)))
                                    for x, y in zip(a, b))


def test_1_algebraization_equivalence(record):
    t0 = time.perf_counter()
    rng = random.Random(1)
    mismatches = []
    for _ in range(25):
        for j in SPINS:
            spec = random_spec(rng, j)
            op = alg.build_from_spec(spec)
            for k in range(int(2 * j) + 5):
                rk = Polynomial.monomial(k)
                if op.apply(rk) != alg.apply_spec_directly(spec, rk):
                    mismatches.append((spec, k))
    p0_ok = all(alg.operator_by_composition(alg.radial_spec(j, 3, -1, F(5, 2))).p0
                == Polynomial([F(-5, 2), 7 * j * (2 * j - 1)]) for j in SPINS)
    dt = time.perf_counter() - t0
    ok = not mismatches and p0_ok and dt < 2
    record("1 algebraization closed form == composition", ok,
           f"mismatches={len(mismatches)} p0={p0_ok} t={dt:.2f}s")
    assert ok


def test_2_commutation(record):
    t0 = time.perf_counter()
    fails = 0
    for j in SPINS + [F(7, 3)]:
        for k in range(11):
            p = Polynomial.monomial(k)
            fails += alg.commutator("0", "+", j, p) != alg.apply_generator("+", j, p)
            fails += alg.commutator("0", "-", j, p) != -alg.apply_generator("-", j, p)
            fails += alg.commutator("+", "-", j, p) != alg.apply_generator("0", j, p) * -2
    reported = any("[J+, J-]" in d.location for d in alg.discrepancies())
    dt = time.perf_counter() - t0
    ok = fails == 0 and reported and dt < 1
    record("2 commutation relations", ok, f"failures={fails} sign_reported={reported} t={dt:.2f}s")
    assert ok


def test_3_spectrum_residual(record):
    t0 = time.perf_counter()
    worst, exact_bad = 0.0, 0
    for g2, g3 in INVS:
        for n in range(7):
            for sol in qes.solve_qes(n, g2, g3):
                # independent path: canonical operator coefficients applied by differentiation
                res = qes.residual_polynomial(sol.coefficients, sol.j, g2, g3, sol.B, path="coefficient")
                if sol.exact:
                    exact_bad += not res.is_zero()
                else:
                    worst = max(worst, res.max_abs() / max(abs(complex(a)) for a in sol.coefficients))
    s0 = qes.accessory_spectrum(0, 1, 0)
    s1 = qes.accessory_spectrum(1, 1, 0)
    dt = time.perf_counter() - t0
    ok = exact_bad == 0 and worst < 1e-9 and s0 == [0] and s1 == [0, 0] and dt < 5
    record("3 spectrum residual", ok,
           f"exact_nonzero={exact_bad} max_rel={worst:.1e} n0={list(map(str, s0))} n1={list(map(str, s1))} t={dt:.2f}s")
    assert ok


def test_4_determinants(record):
    t0 = time.perf_counter()
    dense_ok = True
    for g2, g3 in INVS:
        for n in range(7):
            sm = qes.spectral_matrix(n, g2, g3)
            roots = [z for z, m in polynomial_roots(qes.dense_determinant_poly(sm)) for _ in range(m)]
            dense_ok &= _same_multiset(roots, qes.accessory_spectrum(n, g2, g3), 1e-9)
    rec_ok = True
    for g2 in (F(1), F(-4), F(7, 3)):
        for n in range(8):
            sm = qes.spectral_matrix(n, g2, 0)
            for B in (F(0), F(1), F(-5, 2), F(11, 7)):
                rec_ok &= qes.determinant_paper(sm, B) == det_exact(sm.T(B))
    cubic_ok = all(_same_multiset(qes.cubic_accessory_roots(qes.spectral_matrix(2, g2, g3)),
                                  qes.accessory_spectrum(2, g2, g3), 1e-9) for g2, g3 in INVS)
    dt = time.perf_counter() - t0
    ok = dense_ok and rec_ok and cubic_ok and dt < 2
    record("4 determinant cross-checks", ok, f"dense={dense_ok} recurrence={rec_ok} cubic={cubic_ok} t={dt:.2f}s")
    assert ok


def test_5_structure_metric(record):
    t0 = time.perf_counter()
    rng = random.Random(5)
    bad = 0
    for _ in range(50):
        g2, g3 = F(rng.randint(-50, 50), rng.randint(1, 9)), F(rng.randint(-50, 50), rng.randint(1, 9))
        bad += alg.structure_metric(alg.radial_spec(1, g2, g3, 0)).determinant != 4 * g3
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 1
    record("5 structure determinant = 4 g3", ok, f"failures={bad} t={dt:.2f}s")
    assert ok


def test_6_weierstrass(record):
    t0 = time.perf_counter()
    lem = roots_from_invariants(EllipticInvariants(1, 0)).as_tuple() == (F(1, 2), 0, F(-1, 2))
    rng = random.Random(6)
    rt_bad = 0
    for _ in range(100):
        e1, e2 = F(rng.randint(-30, 30), rng.randint(1, 8)), F(rng.randint(-30, 30), rng.randint(1, 8))
        es = tuple(sorted((e1, e2, -e1 - e2), reverse=True))
        inv = invariants_from_roots(*es)
        rt_bad += inv.discriminant < 0 or roots_from_invariants(inv).as_tuple() != es
    inv = EllipticInvariants(1, 0)
    rs = [0.55, 0.7, 1.0, 2.0, 5.0, 20.0]
    ws = [r_to_w(r, inv) for r in rs]
    mono = all(a > b for a, b in zip(ws, ws[1:]))
    worst = 0.0
    for r in rs[1:]:
        h = 1e-4 * r
        d = (r_to_w(r + h, inv) - r_to_w(r - h, inv)) / (2 * h)
        worst = max(worst, abs(d * math.sqrt(4 * r ** 3 - r) + 1))
    dt = time.perf_counter() - t0
    ok = lem and rt_bad == 0 and mono and worst < 1e-6 and dt < 3
    record("6 weierstrass roots, round trip, r_to_w", ok,
           f"lemniscatic={lem} roundtrip_fail={rt_bad} monotone={mono} dw_err={worst:.1e} t={dt:.2f}s")
    assert ok


def test_7_exact_branch(record):
    t0 = time.perf_counter()
    rng = random.Random(7)
    worst = 0.0
    for _ in range(100):
        B, g2, g3 = (F(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(3))
        if g3 == -2:
            continue
        pair = ejh.k_pm(B, g2, g3)
        for k in (complex(pair.k_plus), complex(pair.k_minus)):
            terms = (2 * float(g3 + 2) * k * k, float(g2) * k, -8 * float(B))
            worst = max(worst, abs(sum(terms)) / (1 + max(map(abs, terms))))
    ode_ok = all(ejh.hypergeometric_ode_residual(ejh.hypergeometric_2f1_terminating(m, nu, g), m, nu, g).is_zero()
                 for m in range(7) for nu in range(7) for g in range(1, 7))
    jac = max(abs(ejh.jacobi_p(m, a, b, x) - ejh.jacobi_p_recurrence(m, a, b, x))
              for m in range(7) for a, b in ((0, 0), (1, 0), (2.5, 0.5), (4, 3)) for x in (-0.7, 0.1, 0.9))
    pair = ejh.k_pm(0, 1, 0)
    lem = (pair.k_plus, pair.k_minus) == (0, F(-1, 4))
    try:
        ejh.exact_wavefunction(ejh.PCTParams(branch="plus"), 2.0)
        zero_raises = False
    except DegenerateBranchError:
        zero_raises = True
    dt = time.perf_counter() - t0
    ok = worst < 1e-12 and ode_ok and jac < 1e-10 and lem and zero_raises and dt < 3
    record("7 exact branch", ok, f"k_res={worst:.1e} ode={ode_ok} jacobi={jac:.1e} "
                                 f"k={{0,-1/4}}={lem} zero_branch_raises={zero_raises} t={dt:.2f}s")
    assert ok


def test_8a_distributional_closure(record):
    t0 = time.perf_counter()
    bad = []
    for s in (1, 2):
        for q in (0, 1, -2):
            for K2 in (F(1, 2), F(1, 4)):
                rep = dist.verify_fourier_condition(dist.assemble_distribution(s, q, K2, 12))
                if not rep["interior_exact_zero"]:
                    bad.append((s, q, K2))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 3
    record("8a distributional closure (exact-zero interior)", ok, f"failures={bad} t={dt:.2f}s")
    assert ok


def test_8b_distributional_initial_values(record):
    """a_0 = 1 and a_1 = sigma_{1,m}/2 at K2 = 1/2 for every m of the expansion, as stated."""
    fails = []
    for s in (1, 2):
        for q in (0, 1, -2):
            exp = dist.assemble_distribution(s, q, F(1, 2), 12)
            for m, seq in sorted(exp.per_m.items()):
                try:
                    sg1, _ = dist.sigma_epsilon(1, m, exp.n, q)
                    good = seq[0] == 1 and seq[1] == sg1 / 2
                    why = "" if good else f"a_0={seq[0]}, a_1={seq[1]}, sigma_1/2={sg1 / 2}"
                except DomainError as exc:
                    good, why = False, str(exc)
                if not good:
                    fails.append(f"s={s} q={q} m={m}: {why}")
    ok = not fails
    record("8b distributional a_0 = 1, a_1 = sigma_1/2", ok,
           f"failures={len(fails)}" + (f" first: {fails[0]}" if fails else ""))
    assert ok, "\n".join(fails)


def test_8c_fault_injection(record):
    exp = dist.assemble_distribution(1, 0, F(1, 2), 12)
    rep = dist.verify_fourier_condition(dist.inject_fault(exp, 3))
    exp2 = dist.assemble_distribution(2, 1, F(1, 4), 12)
    rep2 = dist.verify_fourier_condition(dist.inject_fault(exp2, 5))
    ok = rep["first_nonzero_interior"] == 3 and rep2["first_nonzero_interior"] == 5
    record("8c fault injection localized", ok,
           f"a_3 -> sigma^{rep['first_nonzero_interior']}, a_5 -> sigma^{rep2['first_nonzero_interior']}")
    assert ok


def test_9_determinism(record, tmp_path):
    t0 = time.perf_counter()
    outs = []
    for i in range(2):
        path = tmp_path / f"v{i}.json"
        proc = subprocess.run([sys.executable, "-m", "halphen", "verify", "--suite", "all", "--seed", "7",
                               "--out", str(path)], capture_output=True)
        outs.append((proc.returncode, path.read_bytes()))
    dt = time.perf_counter() - t0
    same = outs[0][1] == outs[1][1]
    summary = json.loads(outs[0][1])["summary"]
    ok = same and outs[0][0] == 0 and dt / 2 < 10
    record("9 verify determinism (seed 7)", ok,
           f"identical={same} exit={outs[0][0]} summary={summary} t_per_run={dt / 2:.2f}s")
    assert ok
