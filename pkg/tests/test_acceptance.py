"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are
written straight to the terminal even when output capture is on.
"""

import math
import time

import numpy as np
import pytest
from click.testing import CliRunner

from qaskey import (AWParams, Family, FamilySpec, ParameterChain, QuadratureGrid, asc_poly,
                    aw_poly, dual_qhahn_poly, gram, mv_poly, mv_weight, permute_29, specialize,
                    verify_partial_integral)
from qaskey.askey_wilson import q_hahn_poly
from qaskey.cli import cli

import cheb
from conftest import A, B, C, D, Q


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def chain(*coupling, **params):
    return ParameterChain(Q, chain=tuple(coupling), **params)


AW_PARAMS = dict(a=A, b=B, c=C, d=D)


def gram_detail(r):
    return (f"D={r.max_total_degree} M={r.nodes_per_dim} diag={r.max_diag_rel_err:.2e} "
            f"offdiag={r.offdiag_max:.2e} t={r.runtime:.2f}s")


def test_criterion_01_single_variable_orthogonality(verdict):
    spec = FamilySpec(Family.AW, chain(**AW_PARAMS))
    r = gram(spec, 5, QuadratureGrid(256, 1))
    verdict(1, r.passed(1e-8, 1e-8) and r.runtime < 5, gram_detail(r))


def test_criterion_02_two_variable_orthogonality(verdict):
    spec = FamilySpec(Family.AW, chain(0.5, **AW_PARAMS))
    r = gram(spec, 3, QuadratureGrid(128, 2))
    verdict(2, r.passed(1e-6, 1e-7) and r.runtime < 120, gram_detail(r))


def test_criterion_03_three_variable_orthogonality(verdict):
    spec = FamilySpec(Family.AW, chain(0.5, 0.3, **AW_PARAMS))
    r = gram(spec, 2, QuadratureGrid(96, 3))
    ok = r.max_diag_rel_err < 1e-5 and r.runtime < 600
    verdict(3, ok, gram_detail(r))


def test_criterion_04_tilde_system(verdict):
    spec = FamilySpec(Family.AW_TILDE, chain(0.5, **AW_PARAMS))
    r = gram(spec, 3, QuadratureGrid(128, 2))
    verdict(4, r.max_diag_rel_err < 1e-6, gram_detail(r))


def test_criterion_05_weight_reflection_invariance(verdict):
    rng = np.random.default_rng(5)
    worst = {}
    for coupling in [(0.5,), (0.5, 0.3)]:
        spec = FamilySpec(Family.AW, chain(*coupling, **AW_PARAMS))
        s = spec.s
        theta = [rng.uniform(0, math.pi, 1000) for _ in range(s)]
        sp, _, tp = permute_29(spec, (0,) * s, theta)
        w, wp = mv_weight(spec, theta), mv_weight(sp, tp)
        worst[s] = float(np.max(np.abs(w - wp) / np.abs(w)))
    verdict(5, max(worst.values()) < 1e-12,
            "max rel diff " + ", ".join(f"s={s}: {v:.1e}" for s, v in worst.items()))


def test_criterion_06_partial_integral(verdict):
    rng = np.random.default_rng(6)
    spec = FamilySpec(Family.AW, chain(0.5, **AW_PARAMS))
    errs = []
    for _ in range(5):
        n1 = int(rng.integers(0, 5))
        n = (n1, int(rng.integers(0, 4)))
        m = (n1, int(rng.integers(0, 4)))
        t2 = float(rng.uniform(0, math.pi))
        lhs, rhs = verify_partial_integral(spec, n, m, 1, [t2], QuadratureGrid(256))
        errs.append(abs(lhs - rhs) / abs(rhs))
    verdict(6, max(errs) < 1e-7, f"max rel err {max(errs):.1e} over 5 draws")


def test_criterion_07_specialization_chain(verdict):
    t = np.linspace(0.05, math.pi - 0.05, 41)
    # d = 0 turns the Askey-Wilson polynomials into continuous dual q-Hahn
    d0 = max(float(np.max(np.abs(dual_qhahn_poly(n, t, A, B, C, Q) - aw_poly(n, t, AWParams(A, B, C, 0.0, Q)))
                       / np.max(np.abs(aw_poly(n, t, AWParams(A, B, C, 0.0, Q))))))
             for n in range(6))
    dq = FamilySpec(Family.DUAL_QHAHN, chain(0.5, a=A, b=C, c=D))
    r_dq = gram(dq, 3, QuadratureGrid(128, 2))
    # a -> 0 limit, one and two variables; the small parameter goes last (the
    # polynomial is symmetric), since a**-n times the series cannot resolve a = 1e-8
    lim1 = max(float(np.max(np.abs(asc_poly(n, t, C, D, Q) - dual_qhahn_poly(n, t, C, D, 1e-8, Q))))
               for n in range(6))
    asc = FamilySpec(Family.ASC, chain(0.5, b=C, c=D))
    dq0 = FamilySpec(Family.DUAL_QHAHN, chain(0.5, a=1e-8, b=C, c=D))
    grid = [t[:, None], t[None, :]]
    lim2 = max(float(np.max(np.abs(mv_poly(asc, n, grid) - mv_poly(dq0, n, grid))))
               for n in [(1, 0), (0, 1), (2, 1), (1, 2), (0, 3)])
    r_asc = gram(asc, 3, QuadratureGrid(128, 2))
    ok = (d0 < 1e-10 and r_dq.passed(1e-6, 1e-6) and max(lim1, lim2) < 1e-5
          and r_asc.passed(1e-6, 1e-6))
    verdict(7, ok, f"d=0 {d0:.1e}; b=0 gram diag={r_dq.max_diag_rel_err:.1e} "
                   f"off={r_dq.offdiag_max:.1e}; a->0 {max(lim1, lim2):.1e}; "
                   f"ASC gram diag={r_asc.max_diag_rel_err:.1e} off={r_asc.offdiag_max:.1e}")


def test_criterion_08_substitutions(verdict):
    al, be, lam, phi = 0.7, 0.4, 1.3, 0.6
    checks = {}
    a, b, c, d = specialize("qjacobi", Q, alpha=al, beta=be).params.abcd
    checks["qjacobi"] = max(abs(a * b - Q ** (al + 1)), abs(c * d - Q ** (be + 1)),
                            abs(b / a - Q**0.5), abs(d / c - Q**0.5))
    a, b, c, d = specialize("qjacobi-alt", Q, alpha=al, beta=be).params.abcd
    checks["qjacobi-alt"] = max(abs(a - Q**0.5), abs(a * b - Q ** (al + 1)),
                                abs(c * d - Q ** (be + 1)), abs(d + Q**0.5))
    a, b, c, d = specialize("qultraspherical", Q, lam=lam).params.abcd
    checks["qultraspherical"] = max(abs(a * b - Q ** (lam + 0.5)), abs(c * d - Q ** (lam + 0.5)),
                                    abs(b + c))
    a, b, c, d = specialize("qhermite", Q).params.abcd
    checks["qhermite"] = max(abs(a + d), abs(b), abs(c), abs(a - Q**0.5))
    sp = specialize("qhahn", Q, a1=0.4, a_last=0.3, phi=phi)
    a, b, c, d = sp.params.abcd
    t = np.linspace(0.1, 3.0, 9)
    checks["qhahn"] = max(abs(a * b - 0.16), abs(c * d - 0.09), abs(a / b - np.exp(2j * phi)))
    direct = q_hahn_poly(4, t, 0.4, 0.3, phi, Q)
    hahn = float(np.max(np.abs(sp.poly(4, t) - direct)) / np.max(np.abs(direct)))
    pa = specialize("qhermite", Q).params
    spec = FamilySpec(Family.AW, chain(a=pa.a, b=pa.b, c=pa.c, d=pa.d))
    r = gram(spec, 5, QuadratureGrid(256, 1))
    worst = max(checks.values())
    verdict(8, worst < 1e-14 and hahn < 1e-10 and r.passed(1e-8, 1e-8),
            f"max identity residue {worst:.1e}; q-Hahn series vs substitution {hahn:.1e}; "
            f"q-Hermite {gram_detail(r)}")


def test_criterion_09_total_degree(verdict):
    spec = FamilySpec(Family.AW, chain(0.5, **AW_PARAMS))
    excess = {}
    for n in [(1, 1), (2, 1), (0, 3)]:
        coef = cheb.coefficients_2d(lambda t1, t2: mv_poly(spec, n, (t1, t2)))
        excess[n] = cheb.excess_degree(coef, sum(n))
    verdict(9, max(excess.values()) < 1e-8,
            "max excess coefficient " + ", ".join(f"{n}: {v:.1e}" for n, v in excess.items()))


def test_criterion_10_negative_control(verdict):
    r = CliRunner().invoke(cli, ["verify", "--max-degree", "3", "--corrupt-norm"])
    verdict(10, r.exit_code == 1, f"exit code {r.exit_code}")
