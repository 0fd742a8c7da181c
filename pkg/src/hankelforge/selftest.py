"""Reduced oracle-equivalence suites, one per module.

Each suite draws seeded random inputs, compares a closed form against an
independent computation and returns a :class:`SuiteResult`.  The ``scale``
argument multiplies the sample counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .caratheodory import SchurParams, boundary_function, coeffs_from_schur, fourier_coefficients
from .certify import (
    BOUNDS,
    T0,
    TAU1_PP,
    GridSpec,
    case3_bound,
    envelope_phi,
    envelope_psi,
    search_max,
)
from .classes import FunctionClass, coeff_map, reconstruct_f
from .hankel import h21_all_forms, h21_from_gammas, hankel_generic, max_pairwise_spread
from .series import (
    compose,
    gamma_closed_form,
    identity,
    inverse_closed_form,
    inverse_log_coefficients,
    invert_series,
    normalized,
)
from .ymax import y_eval, y_oracle_batch


@dataclass(frozen=True)
class SuiteResult:
    name: str
    ok: bool
    samples: int
    max_error: float
    tolerance: float


def _random_params(rng, n):
    t1 = rng.uniform(0, 1, n)
    t2 = np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    t3 = np.sqrt(rng.uniform(0, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    return [SchurParams(float(a), complex(b), complex(c)) for a, b, c in zip(t1, t2, t3)]


def series_suite(rng, scale=1.0) -> SuiteResult:
    n = max(1, int(200 * scale))
    tol = 1e-10
    err = 0.0
    for _ in range(n):
        a = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
        f = normalized(a, 8)
        F = invert_series(f)
        err = max(err, float(np.max(np.abs(np.array(inverse_closed_form(*a)) - F.coeffs[2:6]))))
        err = max(err, float(np.max(np.abs(compose(f, F).coeffs - identity(8).coeffs))))
        G = inverse_log_coefficients(f)[:4]
        err = max(err, float(np.max(np.abs(np.array(gamma_closed_form(*a)) - G))))
    return SuiteResult("series", err <= tol, n, err, tol)


def caratheodory_suite(rng, scale=1.0) -> SuiteResult:
    n = max(1, int(40 * scale))
    tol = 1e-9
    err = 0.0
    for prm in _random_params(rng, n):
        # push tau2 or tau3 to the circle so the boundary function is finite
        prm = SchurParams(prm.tau1, prm.tau2, prm.tau3 / abs(prm.tau3) if prm.tau3 else 1.0)
        c = np.array(coeffs_from_schur(prm).as_tuple())
        p = boundary_function(prm)
        err = max(err, float(np.max(np.abs(p.taylor(4)[1:4] - c))))
        err = max(err, float(np.max(np.abs(fourier_coefficients(p, 4)[1:4] - c))))
    return SuiteResult("caratheodory", err <= tol, n, err, tol)


def classes_suite(rng, scale=1.0) -> SuiteResult:
    n = max(1, int(40 * scale))
    tol = 1e-12
    err = 0.0
    for prm in _random_params(rng, n):
        c = coeffs_from_schur(prm).as_tuple()
        p = np.array([1.0, *c, 0.0], dtype=complex)
        for cls in FunctionClass:
            f = reconstruct_f(cls, p, 5)
            err = max(err, float(np.max(np.abs(np.array(coeff_map(cls, c)) - f.coeffs[2:5]))))
    return SuiteResult("classes", err <= tol, n, err, tol)


def hankel_suite(rng, scale=1.0) -> SuiteResult:
    n = max(1, int(300 * scale))
    tol = 1e-12
    err = 0.0
    for prm in _random_params(rng, n):
        for cls in FunctionClass:
            err = max(err, max_pairwise_spread(h21_all_forms(cls, prm)))
    for _ in range(n):
        g = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
        err = max(err, abs(hankel_generic(g, 2, 1) - h21_from_gammas(*g).value))
    return SuiteResult("hankel", err <= tol, n, err, tol)


def ymax_suite(rng, scale=1.0) -> SuiteResult:
    n = max(1, int(2000 * scale))
    tol = 1e-5
    A, B, C = rng.uniform(-3, 3, (3, n))
    closed = np.array([y_eval(a, b, c).value for a, b, c in zip(A, B, C)])
    oracle, _ = y_oracle_batch(A, B, C)
    err = float(np.max(np.abs(closed - oracle)))
    return SuiteResult("ymax", err <= tol, n, err, tol)


def certify_suite(rng, scale=1.0) -> SuiteResult:
    n = max(1, int(200 * scale))
    tol = 1e-9
    err = abs(envelope_phi(T0) - 19 / 288)
    for t in rng.uniform(0, 1, n):
        t = float(t)
        if t == 0.0:
            continue
        ref = envelope_phi(t) if t <= TAU1_PP else envelope_psi(t)
        err = max(err, abs(case3_bound(FunctionClass.STARLIKE_HALF, t) - ref))
        cv = (16 - 4 * t**2 - 11 * t**4) / 2304
        bt = (64 - 24 * t**2 - 39 * t**4) / 2304
        err = max(err, abs(case3_bound(FunctionClass.CONVEX_HALF, t) - cv))
        err = max(err, abs(case3_bound(FunctionClass.BOUNDED_TURNING_HALF, t) - bt))
    grid = GridSpec(32, 32, 32, 8)
    for cls in FunctionClass:
        r = search_max(cls, grid, refinement_rounds=1)
        err = max(err, r.search_max - float(BOUNDS[cls]) if r.search_max > float(BOUNDS[cls]) else 0.0)
        bad = [d for d in r.case_diagnostics if not d["below_envelope"]]
        if bad:
            err = max(err, max(d["slice_max"] - d["envelope"] for d in bad))
    return SuiteResult("certify", err <= tol, n, err, tol)


SUITES = (series_suite, caratheodory_suite, classes_suite, hankel_suite, ymax_suite, certify_suite)


def run_all(seed: int = 0, scale: float = 1.0) -> list[SuiteResult]:
    results = []
    for i, suite in enumerate(SUITES):
        rng = np.random.default_rng([seed, i])
        results.append(suite(rng, scale))
    return results
