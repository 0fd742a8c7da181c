"""Numerical certification of the sharp bounds on ``|H_{2,1}|``.

Three pieces per class:

* the envelope used by the analytic argument for ``0 < tau1 < 1``:
  ``prefactor(t) * Y(A(t), B(t), C(t))``, with the closed forms ``phi`` and
  ``psi`` for the starlike class and quartic polynomials for the others;
* an exhaustive grid search of ``|H|`` over the Schur parameters followed by
  zoom refinement, reporting the maximum, a witness and the gap to the
  exact bound;
* extremal functions, rebuilt from their drivers and checked for class
  membership.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _backend
from .caratheodory import (
    RationalFunction,
    SchurParams,
    boundary_function,
    verify_positive_real_part,
)
from .classes import FunctionClass, membership_check, reconstruct_f
from .errors import DomainError, PoleError
from .hankel import TAU_FORMS, h21_all_forms, h21_from_a, h21_from_series, h21_in_tau, max_pairwise_spread
from .series import TaylorSeries, normalized
from .ymax import YResult, y_eval

BOUNDS = {
    FunctionClass.STARLIKE_HALF: Fraction(19, 288),
    FunctionClass.CONVEX_HALF: Fraction(1, 144),
    FunctionClass.BOUNDED_TURNING_HALF: Fraction(1, 36),
}
# |H| at tau1 = 0 (sup over tau2) and at tau1 = 1
ENDPOINT_VALUES = {
    FunctionClass.STARLIKE_HALF: (1 / 16, 1 / 48),
    FunctionClass.CONVEX_HALF: (1 / 144, 1 / 2304),
    FunctionClass.BOUNDED_TURNING_HALF: (1 / 36, 1 / 2304),
}

T0 = 1 / math.sqrt(6)
TAU1_PP = math.sqrt((-5 + math.sqrt(61)) / 6)
BETA = math.sqrt(19) / (3 * math.sqrt(2))

BOUND_TOL = 1e-7
ATTAIN_TOL = 1e-6
SOUND_TOL = 1e-9
TIE_TOL = 1e-9
DOMAIN_TOL = 1e-12

TAU3_NOTE = (
    "tau3 searched on |tau3| = 1 only: H is affine in tau3, so its modulus "
    "over the closed disk is maximized on the circle"
)


def envelope_phi(t: float) -> float:
    if not (-DOMAIN_TOL <= t <= TAU1_PP + DOMAIN_TOL):
        raise DomainError(f"phi is used on [0, {TAU1_PP:.6f}], got {t}")
    return (3 + 2 * t * t - 6 * t**4) / 48


def envelope_psi(t: float) -> float:
    if not (TAU1_PP - DOMAIN_TOL <= t <= 1 + DOMAIN_TOL):
        raise DomainError(f"psi is used on [{TAU1_PP:.6f}, 1], got {t}")
    return (3 - 2 * t * t) / 48 * math.sqrt((7 - 3 * t * t) / (3 + t * t))


@dataclass(frozen=True)
class CaseBoundCoefficients:
    A: float
    B: float
    C: float
    prefactor: float


def case3_coefficients(cls: FunctionClass, t: float) -> CaseBoundCoefficients:
    """``|H| <= prefactor * (|A + B tau2 + C tau2^2| + 1 - |tau2|^2)`` for ``0 < t < 1``."""
    if not (0 < t < 1):
        raise DomainError(f"case-3 coefficients need 0 < tau1 < 1, got {t}")
    w = 1 - t * t
    if cls is FunctionClass.STARLIKE_HALF:
        return CaseBoundCoefficients(t**3 / (4 * w), -t, -(3 + t * t) / (4 * t), t * w / 12)
    if cls is FunctionClass.CONVEX_HALF:
        return CaseBoundCoefficients(-(t**3) / (24 * w), -t / 6, -(2 + t * t) / (3 * t), t * w / 96)
    if cls is FunctionClass.BOUNDED_TURNING_HALF:
        return CaseBoundCoefficients(-(t**3) / (72 * w), -4 * t / 9, -(8 + t * t) / (9 * t), t * w / 32)
    raise TypeError(f"not a FunctionClass: {cls!r}")


def case3_detail(cls: FunctionClass, t: float) -> tuple[float, YResult]:
    k = case3_coefficients(cls, t)
    y = y_eval(k.A, k.B, k.C)
    return k.prefactor * y.value, y


def case3_bound(cls: FunctionClass, t: float) -> float:
    return case3_detail(cls, t)[0]


def envelope(cls: FunctionClass, t: float) -> float:
    """Upper bound on ``max |H|`` over the slice ``tau1 = t``, all ``t`` in [0, 1]."""
    if t <= 0:
        return ENDPOINT_VALUES[cls][0]
    if t >= 1:
        return ENDPOINT_VALUES[cls][1]
    return case3_bound(cls, t)


@dataclass(frozen=True)
class GridSpec:
    n_tau1: int = 128
    n_tau2_modulus: int = 64
    n_tau2_phase: int = 64
    n_tau3_phase: int = 16

    def __post_init__(self):
        for name in ("n_tau1", "n_tau2_modulus", "n_tau2_phase", "n_tau3_phase"):
            if getattr(self, name) < 2:
                raise DomainError(f"{name} must be at least 2")

    @property
    def size(self) -> int:
        return self.n_tau1 * self.n_tau2_modulus * self.n_tau2_phase * self.n_tau3_phase

    def axes(self):
        return (
            np.linspace(0.0, 1.0, self.n_tau1),
            np.linspace(0.0, 1.0, self.n_tau2_modulus),
            2 * np.pi * np.arange(self.n_tau2_phase) / self.n_tau2_phase,
            2 * np.pi * np.arange(self.n_tau3_phase) / self.n_tau3_phase,
        )


MIN_RESOLUTION = 32


@dataclass
class CertificationReport:
    class_tag: FunctionClass
    theoretical_bound: Fraction
    search_max: float
    witness: SchurParams
    witness_value: float
    gap: float
    grid_meta: dict
    case_diagnostics: list = field(default_factory=list)
    cross_form_spread: float = 0.0

    @property
    def sound(self) -> bool:
        return self.search_max <= float(self.theoretical_bound) + BOUND_TOL

    @property
    def attained(self) -> bool:
        return self.gap <= ATTAIN_TOL

    @property
    def ok(self) -> bool:
        return self.sound and self.attained


def worker_count(default: int = 1) -> int:
    """Worker cap from ``HANKELFORGE_THREADS`` (integer >= 1)."""
    raw = os.environ.get("HANKELFORGE_THREADS")
    if raw is None or raw.strip() == "":
        return default
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"HANKELFORGE_THREADS must be an integer >= 1, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"HANKELFORGE_THREADS must be an integer >= 1, got {raw!r}")
    return n


class _Scanner:
    """Runs ``scan_box`` over tau1 slices, optionally on a thread pool.

    Results do not depend on the number of workers: maxima are reduced
    exactly and the first-hit index is taken from the lowest slice.
    """

    def __init__(self, cls: FunctionClass, workers: int, backend: Optional[str] = None):
        self.form = tuple(TAU_FORMS[cls])
        self.kernels = _backend.get(backend)
        self.workers = workers
        self.evaluated = 0

    def _map(self, fn, items):
        if self.workers > 1 and len(items) > 1:
            with ThreadPoolExecutor(self.workers) as ex:
                return list(ex.map(fn, items))
        return [fn(x) for x in items]

    def slice_maxima(self, t1s, rs, ths, phs) -> np.ndarray:
        def one(t):
            return self.kernels.scan_box(self.form, [t], rs, ths, phs, math.inf)[0]

        self.evaluated += len(t1s) * len(rs) * len(ths) * len(phs)
        return np.array(self._map(one, list(t1s)))

    def box(self, t1s, rs, ths, phs):
        """``(max, first point within TIE_TOL of max)`` over a box, as axis indices."""
        m = self.slice_maxima(t1s, rs, ths, phs)
        best = float(m.max())
        i = int(np.argmax(m >= best - TIE_TOL))
        _, flat = self.kernels.scan_box(self.form, [t1s[i]], rs, ths, phs, best - TIE_TOL)
        j, k, l = np.unravel_index(flat, (len(rs), len(ths), len(phs)))
        return best, m, (i, int(j), int(k), int(l))


def _local_axis(center, h, n_local, periodic=False):
    ax = center + h * np.linspace(-1.0, 1.0, n_local)
    if periodic:
        return np.unique(np.mod(ax, 2 * np.pi))
    return np.unique(np.clip(ax, 0.0, 1.0))


def _on_window_edge(old, new, h, periodic):
    d = abs(new - old)
    if periodic:
        d = min(d, 2 * np.pi - d)
        return d >= 0.999 * h
    return d >= 0.999 * h and 0.0 < new < 1.0


def search_max(
    cls: FunctionClass,
    grid: GridSpec = GridSpec(),
    refinement_rounds: int = 3,
    workers: Optional[int] = None,
    local_steps: int = 21,
    diagnostics: bool = True,
    backend: Optional[str] = None,
) -> CertificationReport:
    """Maximize ``|H|`` over ``tau1 in [0,1]``, ``|tau2| <= 1``, ``|tau3| = 1``.

    Grid pass, then ``refinement_rounds`` rounds of a ``local_steps``^4
    window around the incumbent, shrinking by 10 per round (a window whose
    winner lies on a free edge is recentred first).  Among points within
    ``TIE_TOL`` of the best the lexicographically smallest
    ``(tau1, |tau2|, arg tau2, arg tau3)`` is the witness.
    """
    if min(grid.n_tau1, grid.n_tau2_modulus, grid.n_tau2_phase) < MIN_RESOLUTION or grid.n_tau3_phase < 8:
        raise DomainError(
            f"grid needs >= {MIN_RESOLUTION} points for tau1, |tau2|, arg tau2 and >= 8 for arg tau3"
        )
    workers = worker_count() if workers is None else workers
    sc = _Scanner(cls, workers, backend)
    t1s, rs, ths, phs = grid.axes()
    best, slice_max, (i, j, k, l) = sc.box(t1s, rs, ths, phs)
    overall = inc_value = best
    inc = np.array([t1s[i], rs[j], ths[k], phs[l]])
    h = np.array([t1s[1] - t1s[0], rs[1] - rs[0], ths[1] - ths[0], phs[1] - phs[0]])
    recentres = 0
    for _ in range(refinement_rounds):
        for _ in range(16):
            axes = tuple(_local_axis(inc[d], h[d], local_steps, periodic=d >= 2) for d in range(4))
            b, _, idx = sc.box(*axes)
            overall = max(overall, b)
            new = np.array([ax[q] for ax, q in zip(axes, idx)])
            edge = any(_on_window_edge(inc[d], new[d], h[d], d >= 2) for d in range(4))
            improved = b > inc_value + TIE_TOL
            inc, inc_value = new, b
            if not (edge and improved):
                break
            recentres += 1
        h = h / 10.0

    witness = SchurParams(
        float(inc[0]),
        complex(inc[1] * np.exp(1j * inc[2])),
        complex(np.exp(1j * inc[3])),
    )
    forms = h21_all_forms(cls, witness)
    bound = BOUNDS[cls]
    diag = []
    if diagnostics:
        for t, m in zip(t1s, slice_max):
            env = envelope(cls, float(t))
            diag.append({"tau1": float(t), "slice_max": float(m), "envelope": env,
                         "below_envelope": bool(m <= env + SOUND_TOL)})
    meta = {
        "n_tau1": grid.n_tau1,
        "n_tau2_modulus": grid.n_tau2_modulus,
        "n_tau2_phase": grid.n_tau2_phase,
        "n_tau3_phase": grid.n_tau3_phase,
        "refinement_rounds": refinement_rounds,
        "local_steps": local_steps,
        "recentres": recentres,
        "grid_max": float(best),
        "points_evaluated": sc.evaluated,
        "backend": backend or _backend.NAME,
        "tau3": TAU3_NOTE,
    }
    return CertificationReport(
        class_tag=cls,
        theoretical_bound=bound,
        search_max=float(overall),
        witness=witness,
        witness_value=abs(forms["tau"]),
        gap=float(bound) - float(overall),
        grid_meta=meta,
        case_diagnostics=diag,
        cross_form_spread=max_pairwise_spread(forms),
    )


# ---------------------------------------------------------------- extremals

EXTREMAL_ORDER = 400


@dataclass
class ExtremalCandidate:
    label: str
    driver: RationalFunction
    a2: complex
    a3: complex
    a4: complex
    h21: complex
    h21_gamma_path: complex
    matches_bound: bool
    driver_min_re: float
    driver_poles_inside: list
    driver_ok: bool
    f_margin: float
    f_membership_ok: bool
    note: str = ""

    @property
    def abs_h21(self) -> float:
        return abs(self.h21)

    @property
    def membership_ok(self) -> bool:
        return self.driver_ok and self.f_membership_ok


@dataclass
class ExtremalReport:
    class_tag: FunctionClass
    theoretical_bound: Fraction
    candidates: list


def _examine(cls, label, driver: RationalFunction, order, note="") -> ExtremalCandidate:
    p = TaylorSeries(driver.taylor(order))
    f = reconstruct_f(cls, p, order)
    a2, a3, a4 = (complex(x) for x in f.coeffs[2:5])
    h = h21_from_a(a2, a3, a4).value
    hg = h21_from_series(normalized(f.coeffs[2:8], 8)).value
    try:
        pos = verify_positive_real_part(driver)
        min_re, drv_ok = pos.min_re, pos.ok
    except PoleError as exc:
        min_re, drv_ok = -math.inf, False
        note = (note + "; " if note else "") + str(exc)
    inside = driver.poles_inside()
    drv_ok = drv_ok and inside.size == 0
    mem = membership_check(f, cls)
    bound = float(BOUNDS[cls])
    return ExtremalCandidate(
        label=label,
        driver=driver,
        a2=a2,
        a3=a3,
        a4=a4,
        h21=h,
        h21_gamma_path=hg,
        matches_bound=abs(abs(h) - bound) <= 1e-10,
        driver_min_re=min_re,
        driver_poles_inside=[complex(z) for z in inside],
        driver_ok=bool(drv_ok),
        f_margin=mem.min_margin,
        f_membership_ok=mem.ok,
        note=note,
    )


def extremal_check(cls: FunctionClass, order: int = EXTREMAL_ORDER) -> ExtremalReport:
    """Rebuild the extremal functions and check value and class membership.

    Convex and bounded turning: the driver ``(1 + z^2)/(1 - z^2)``.
    Starlike: the stated function ``z f'/f = 1/(1 - beta z^2)`` with
    ``beta = sqrt(19)/(3 sqrt 2) > 1``, and the grid witness driver at
    ``tau1 = 1/sqrt 6, tau2 = 1``, reported side by side.
    """
    cands = []
    if cls is FunctionClass.STARLIKE_HALF:
        stated = RationalFunction([1, 0, BETA], [1, 0, -BETA])
        cands.append(_examine(
            cls, "stated", stated, order,
            note=f"beta = {BETA:.12g} > 1 puts poles of p at |z| = {BETA ** -0.5:.12g} inside the disk",
        ))
        cands.append(_examine(cls, "witness", boundary_function(SchurParams(T0, 1.0, 0.0)), order,
                              note="driver from Schur parameters tau1 = 1/sqrt(6), tau2 = 1"))
    else:
        cands.append(_examine(cls, "stated", RationalFunction([1, 0, 1], [1, 0, -1]), order))
    return ExtremalReport(cls, BOUNDS[cls], cands)
