"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records one ``Criterion N: PASS|FAIL ...`` line; the lines are
printed in the pytest terminal summary and, when this file is run as a
script, on standard output.
"""

import io
import json
import math
import time
from contextlib import redirect_stdout

import numpy as np
import pytest

from hankelforge.caratheodory import SchurParams
from hankelforge.certify import (
    BOUNDS,
    T0,
    TAU1_PP,
    case3_bound,
    envelope_phi,
    envelope_psi,
    extremal_check,
    search_max,
)
from hankelforge.classes import FunctionClass
from hankelforge.cli import main
from hankelforge.hankel import h21_all_forms, max_pairwise_spread
from hankelforge.series import inverse_log_coefficients, invert_series, koebe
from hankelforge.ymax import y_eval, y_oracle_batch

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

SEED = 20261017
STAR, CONVEX, RT = FunctionClass.STARLIKE_HALF, FunctionClass.CONVEX_HALF, FunctionClass.BOUNDED_TURNING_HALF


def record(n, ok, detail):
    line = f"Criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def in_window(value, bound):
    b = float(bound)
    return b - 1e-6 <= value <= b + 1e-7


@pytest.fixture(scope="module")
def reports():
    """Default-grid search per class, single-threaded."""
    return {cls: search_max(cls, workers=1) for cls in FunctionClass}


def test_criterion_1_starlike(monkeypatch):
    monkeypatch.setenv("HANKELFORGE_THREADS", "1")
    buf = io.BytesIO()
    out = io.TextIOWrapper(buf, encoding="utf-8")
    t = time.perf_counter()
    with redirect_stdout(out):
        code = main(["certify", "--class", "starlike-half", "--format", "json"])
    elapsed = time.perf_counter() - t
    out.flush()
    rec = json.loads(buf.getvalue())
    w = rec["witness"]
    d1 = abs(w["tau1"] - 1 / math.sqrt(6))
    d2 = abs(complex(w["tau2_re"], w["tau2_im"]) - 1)
    ok = (
        code == 0
        and rec["theoretical_bound"] == "19/288"
        and in_window(rec["search_max"], BOUNDS[STAR])
        and d1 < 1e-3
        and d2 < 1e-3
        and elapsed <= 60
    )
    record(1, ok, f"search_max={rec['search_max']:.12f} (19/288={19/288:.12f}) "
                  f"|tau1-1/sqrt6|={d1:.2e} |tau2-1|={d2:.2e} runtime={elapsed:.2f}s exit={code}")


def test_criterion_2_convex(reports):
    r = reports[CONVEX]
    (c,) = extremal_check(CONVEX).candidates
    err = max(abs(c.a2), abs(c.a3 - 1 / 6), abs(c.a4))
    ok = in_window(r.search_max, BOUNDS[CONVEX]) and err <= 1e-12 and abs(c.abs_h21 - 1 / 144) <= 1e-12
    record(2, ok, f"search_max={r.search_max:.15f} (1/144) coeff_err={err:.1e} |H|={c.abs_h21:.15f}")


def test_criterion_3_bounded_turning(reports):
    r = reports[RT]
    (c,) = extremal_check(RT).candidates
    err = max(abs(c.a2), abs(c.a3 - 1 / 3), abs(c.a4))
    ok = in_window(r.search_max, BOUNDS[RT]) and err <= 1e-12 and abs(c.abs_h21 - 1 / 36) <= 1e-12
    record(3, ok, f"search_max={r.search_max:.15f} (1/36) a3={c.a3.real:.15f} |H|={c.abs_h21:.15f}")


def test_criterion_4_closed_form_vs_oracle():
    rng = np.random.default_rng(SEED)
    A, B, C = rng.uniform(-3, 3, (3, 100_000))
    t = time.perf_counter()
    closed = np.array([y_eval(a, b, c).value for a, b, c in zip(A, B, C)])
    oracle, _ = y_oracle_batch(A, B, C)
    elapsed = time.perf_counter() - t
    err = float(np.max(np.abs(closed - oracle)))
    record(4, err <= 1e-5 and elapsed <= 120, f"1e5 triples max|y_eval-y_oracle|={err:.2e} runtime={elapsed:.1f}s")


def test_criterion_5_coordinate_identity():
    rng = np.random.default_rng(SEED)
    worst = {}
    for cls in FunctionClass:
        t1 = rng.uniform(0, 1, 10_000)
        t2 = np.sqrt(rng.uniform(0, 1, 10_000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 10_000))
        t3 = np.sqrt(rng.uniform(0, 1, 10_000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 10_000))
        worst[cls] = max(
            max_pairwise_spread(h21_all_forms(cls, SchurParams(float(a), complex(b), complex(c))))
            for a, b, c in zip(t1, t2, t3)
        )
    ok = all(v <= 1e-12 for v in worst.values())
    record(5, ok, "max pairwise spread " + " ".join(f"{c.value}={v:.1e}" for c, v in worst.items()))


def test_criterion_6_envelopes():
    rng = np.random.default_rng(SEED)
    ts = rng.uniform(0, 1, 1000)
    ts = ts[ts > 0]
    star = max(abs(case3_bound(STAR, t) - (envelope_phi(t) if t <= TAU1_PP else envelope_psi(t))) for t in ts)
    cv = max(abs(case3_bound(CONVEX, t) - (16 - 4 * t**2 - 11 * t**4) / 2304) for t in ts)
    rt = max(abs(case3_bound(RT, t) - (64 - 24 * t**2 - 39 * t**4) / 2304) for t in ts)
    phi0 = abs(envelope_phi(T0) - 19 / 288)
    psi = envelope_psi(TAU1_PP)
    ok = star <= 1e-9 and cv <= 1e-12 and rt <= 1e-12 and phi0 <= 1e-15 and abs(psi - 0.0545938) <= 1e-6
    record(6, ok, f"starlike={star:.1e} convex={cv:.1e} r-half={rt:.1e} "
                  f"|phi(1/sqrt6)-19/288|={phi0:.1e} psi(tau1'')={psi:.7f}")


def test_criterion_7_koebe():
    f = koebe(8)
    A = invert_series(f).coeffs[2:6]
    G = inverse_log_coefficients(f)[:4]
    catalan = np.array([math.comb(2 * n, n) / (n + 1) for n in range(2, 6)])
    central = np.array([math.comb(2 * n, n) / (2 * n) for n in range(1, 5)])
    e1 = float(np.max(np.abs(A - np.array([-2, 5, -14, 42]))))
    e2 = float(np.max(np.abs(G - np.array([-1, 3 / 2, -10 / 3, 35 / 4]))))
    e3 = float(np.max(np.abs(np.abs(A) - catalan)))
    e4 = float(np.max(np.abs(np.abs(G) - central)))
    err = max(e1, e2, e3, e4)
    record(7, err <= 1e-12, f"max coefficient error {err:.1e}")


def test_criterion_8_starlike_discrepancy():
    rep = extremal_check(STAR)
    by = {c.label: c for c in rep.candidates}
    a, b = by.get("stated"), by.get("witness")
    ok = (
        a is not None and b is not None
        and abs(a.abs_h21 - 19 / 288) <= 1e-10 and not a.membership_ok and len(a.driver_poles_inside) > 0
        and abs(b.abs_h21 - 19 / 288) <= 1e-10 and b.membership_ok
    )
    poles = ", ".join(f"{abs(z):.5f}" for z in a.driver_poles_inside) if a else "-"
    record(8, ok, f"stated |H|={a.abs_h21:.12f} membership_ok={a.membership_ok} (pole moduli {poles}); "
                  f"witness |H|={b.abs_h21:.12f} membership_ok={b.membership_ok}")


def test_criterion_9_soundness(reports):
    excess = {cls: r.search_max - float(BOUNDS[cls]) for cls, r in reports.items()}
    slices = {cls: max(d["slice_max"] for d in r.case_diagnostics) - float(BOUNDS[cls]) for cls, r in reports.items()}
    ok = all(v <= 1e-9 for v in excess.values()) and all(v <= 1e-9 for v in slices.values())
    record(9, ok, "max(search - bound) " + " ".join(f"{c.value}={v:.1e}" for c, v in excess.items()))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
