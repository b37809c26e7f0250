"""Acceptance gate: thirteen numbered criteria, one printed verdict line each.

Every tolerance is pinned here as a module constant.  A criterion that the
implementation cannot meet fails honestly; nothing is loosened to pass.
"""

import json
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from gsdyn.conjugate import young_conjugate
from gsdyn.jets import (
    Gaussian,
    Jet,
    PrescribedJet,
    Scaled,
    Translated,
    compose_jet,
    faa_di_bruno_identity_sum,
    jet_of_polynomial,
)
from gsdyn.polynomials import Polynomial, iterate
from gsdyn.seminorms import SearchSpec, SeminormSpec, attainment_matrix, eval_seminorm
from gsdyn.weights import Gevrey, LogPower, check_all_conditions
from gsdyn.witnesses import (
    falling_factorial_2m,
    fourier_scaling_check,
    rho_construction,
    witness_dilation_blowup,
    witness_dilation_delta,
    witness_repelling,
    witness_square,
    witness_translation,
)

G2 = Gevrey(2.0)
X2 = Polynomial.of([0, 0, 1])

TOL_CONJ_REL = 1e-8
TOL_IDENTITY = 1e-10
TOL_DUAL_PATH = 1e-9
TOL_INVARIANCE = 1e-12
TOL_ORACLE_REL = 1e-6
TOL_TRUNC_STAB = 1e-9
TOL_DELTA_ENUM = 1e-6
TOL_FOURIER = 1e-6
RUNTIME_PARTITIONS = 10.0
RUNTIME_TRANSLATION = 60.0


def verdict(num, name, ok):
    print("CRITERION %02d [%s] %s" % (num, "PASS" if ok else "FAIL", name))
    assert ok, "criterion %d: %s" % (num, name)


def test_criterion_01_partition_identity():
    t0 = time.monotonic()
    ok = all(faa_di_bruno_identity_sum(j) == 1 << (j - 1) for j in range(1, 26))
    ok = ok and (time.monotonic() - t0) < RUNTIME_PARTITIONS
    verdict(1, "partition identity sums 2^(j-1), j <= 25, under 10 s", ok)


def test_criterion_02_young_conjugate():
    ok = True
    for d in (1.5, 2.0, 3.0, 4.0):
        w = Gevrey(d)
        for x in np.logspace(math.log10(0.05), math.log10(50.0), 200):
            c = young_conjugate(w, float(x), method="closed")
            n = young_conjugate(w, float(x), method="numeric")
            if abs(c - n) > TOL_CONJ_REL * max(1.0, abs(c)):
                ok = False
    for s in (1.5, 2.0):
        sigma = Gevrey(2.0 * s)
        for lam in (0.5, 1.0, 2.0):
            for m in range(1, 101):
                lhs = -lam * young_conjugate(sigma, m / lam)
                rhs = 2.0 * s * m * math.log(lam * math.e / (2.0 * s * m))
                if abs(lhs - rhs) > TOL_IDENTITY * max(1.0, abs(rhs)):
                    ok = False
    verdict(2, "closed vs numeric conjugate and the weight-factor identity", ok)


def test_criterion_03_falling_factorials():
    ok = True
    probe = PrescribedJet.of(1.0, {1: 1})
    for m in range(2, 11):
        psi_m = iterate(X2, m)
        comp = compose_jet(probe.jet(1.0, m), jet_of_polynomial(psi_m, Fraction(1), m), m)
        for j in range(1, m + 1):
            if comp.exact[j] != falling_factorial_2m(m, j):
                ok = False
    for m in range(2, 201):
        ff = falling_factorial_2m(m, m)
        mid = ((1 << m) - m + 1) ** m
        if not (ff >= mid and mid * mid >= 1 << (m * m)):
            ok = False
    verdict(3, "exact falling-factorial jets and the big-integer chain", ok)


def test_criterion_04_square_divergence():
    def div(m):
        return 0.5 * m * math.log(2.0) - 4.0 * math.log(m)

    increasing = all(div(m + 1) > div(m) for m in range(30, 200))
    crossing = next(m for m in range(2, 200) if div(m) > 0.0)
    series = witness_square(2.0, 1.0, 60)
    ok = increasing and crossing == 44 and series.classification == "supergeometric"
    verdict(4, "divergence increasing from 30, crossing at 44, super-geometric", ok)


def test_criterion_05_repelling_dual_path():
    s = witness_repelling(X2, 1, 2.0, 1.0, 12)
    ok = s.details["jet_rel_err"] <= TOL_DUAL_PATH
    verdict(5, "repelling closed form vs jet path to 1e-9, m <= 12", ok)


def test_criterion_06_translation():
    t0 = time.monotonic()
    ok = True
    for w in (G2, LogPower(2.0)):
        s = witness_translation(w, 1.0, 1.0, Gaussian(1.0), 15)
        if s.classification != "atmostgeometric" or not s.details["slope_ok"]:
            ok = False
    ok = ok and (time.monotonic() - t0) < RUNTIME_TRANSLATION
    verdict(6, "translation at-most-geometric with certified slope, under 60 s", ok)


def test_criterion_07_dilation_dichotomy():
    ok_unit = True
    for a in (1.0, -1.0):
        s = witness_dilation_blowup(G2, a, 1.0, 2.0, 1, 8)
        if s.classification != "constant":
            ok_unit = False
        if abs(s.details["invariance_gap"]) > TOL_INVARIANCE:
            ok_unit = False
    blow = witness_dilation_blowup(G2, 2.0, 1.0, 2.0, 1, 8)
    ok_blow = blow.classification == "supergeometric"
    if not ok_blow:
        print(
            "  note: a = 2 series classified %r (lower bounds hold: %s, gaps %s)"
            % (
                blow.classification,
                blow.details["lower_bound_ok"],
                blow.details["attainment_gaps"],
            )
        )
    verdict(7, "dilation dichotomy: super-geometric at a = 2, constant at a = +-1",
            ok_unit and ok_blow)


def test_criterion_08_rho_soundness():
    ok = True
    grid = SearchSpec(refine=False)
    for direction in ("derivative", "polynomial"):
        for m in (1, 2, 3):
            rc = rho_construction(Gaussian(1.0), G2, 1.0, m, direction)
            spec = SeminormSpec("plainp", G2, lam=1.0)
            mat = attainment_matrix(rc.model, spec, rc.truncation_m, grid)
            if direction == "polynomial":
                mat = mat.T
            best = np.nanmax(np.where(np.isfinite(mat), mat, -np.inf))
            n = rc.truncation_m
            for j in range(n + 1):
                for q in range(n + 1):
                    v = mat[j, q]
                    if not math.isfinite(v):
                        continue
                    if j - q < m and v >= best - 1e-12:
                        ok = False
    verdict(8, "rho-construction dominance, exhaustive over the index set", ok)


def test_criterion_09_seminorm_oracle():
    pairs = [
        (Gaussian(1.0), SeminormSpec("plainp", G2, lam=1.0)),
        (Gaussian(2.0), SeminormSpec("plainp", G2, lam=2.0)),
        (Gaussian(1.0), SeminormSpec("expq", G2, lam=1.0, mu=1.0)),
        (Gaussian(1.0), SeminormSpec("gevreyseq", mu=1.0, s=2.0)),
        (Scaled(Gaussian(1.0), 2.0), SeminormSpec("plainp", G2, lam=1.0)),
    ]
    ok = True
    for f, spec in pairs:
        dense = eval_seminorm(f, spec, SearchSpec(points=20480, refine=False, m=40))
        base = eval_seminorm(f, spec, SearchSpec())
        if abs(dense.log_value - base.log_value) > TOL_ORACLE_REL * max(
            1.0, abs(base.log_value)
        ):
            ok = False
        m = base.truncation_m
        stable = eval_seminorm(f, spec, SearchSpec(m=m + 10))
        if abs(stable.log_value - base.log_value) > TOL_TRUNC_STAB:
            ok = False
    verdict(9, "10x-denser brute force to 1e-6 and truncation stability", ok)


def test_criterion_10_condition_matrix():
    gev = {r.condition: r.holds for r in check_all_conditions(G2)}
    logp = {r.condition: r.holds for r in check_all_conditions(LogPower(2.0))}
    ok = all(gev[c] for c in ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "subadditive"))
    ok = ok and not gev["logcond"]
    ok = ok and all(logp[c] for c in ("alpha", "beta", "gamma", "delta", "epsilon", "logcond"))
    ok = ok and not logp["zeta"]
    verdict(10, "weight-condition matrix for Gevrey(2) and LogPower(2)", ok)


def test_criterion_11_dilation_delta():
    ok = True
    for m in range(1, 6):
        rep = witness_dilation_delta(G2, 2.0, 1.0, 1.0, m)
        if not (math.isfinite(rep.log_d) and 0 < rep.j_star < rep.scanned):
            ok = False
    rep1 = witness_dilation_delta(G2, 2.0, 1.0, 1.0, 1)
    enum = max(
        j * math.log(2.0) - young_conjugate(G2, float(j)) for j in range(0, 200)
    )
    ok = ok and abs(rep1.log_d - enum) <= TOL_DELTA_ENUM
    ok = ok and abs(rep1.d - 3.695) <= 1e-3 and rep1.j_star == 1
    verdict(11, "dilation-delta bound finite, interior maximizer, value 3.695", ok)


def test_criterion_12_fourier_scaling():
    ok = all(
        fourier_scaling_check(Gaussian(1.0), b).max_error < TOL_FOURIER
        for b in (1.0, 2.0, -1.0)
    )
    verdict(12, "Fourier scaling identity to 1e-6 for b in {1, 2, -1}", ok)


def test_criterion_13_suite_determinism(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / ("run%d.json" % i)
        r = subprocess.run(
            [sys.executable, "-m", "gsdyn.cli", "suite", "--format", "json",
             "--output", str(path)],
            capture_output=True, text=True, timeout=500,
        )
        assert r.returncode == 0, r.stderr
        outs.append(path.read_bytes())
    verdict(13, "two consecutive suite runs byte-identical", outs[0] == outs[1])
