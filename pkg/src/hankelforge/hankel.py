"""Second Hankel determinant of inverse logarithmic coefficients.

``H = Gamma_1 Gamma_3 - Gamma_2^2`` is available in four coordinate
systems: directly from the Gammas, from ``(a_2, a_3, a_4)``, from the
Caratheodory coefficients of the class driver, and from the Schur
parameters.  All four must agree; the tests and ``selftest`` check this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .caratheodory import CaratheodoryCoeffs, SchurParams, coeffs_from_schur
from .classes import FunctionClass, coeff_map
from .errors import HankelRangeError
from .series import TaylorSeries, inverse_log_coefficients, normalized

COORDINATE_SYSTEMS = ("gamma", "a", "c", "tau")


@dataclass(frozen=True)
class HankelValue:
    value: complex
    coordinate_system: str
    class_tag: Optional[FunctionClass] = None

    def __post_init__(self):
        if self.coordinate_system not in COORDINATE_SYSTEMS:
            raise ValueError(f"unknown coordinate system {self.coordinate_system!r}")
        if self.coordinate_system in ("c", "tau") and self.class_tag is None:
            raise ValueError(f"{self.coordinate_system}-form values need a class tag")

    def __abs__(self):
        return abs(self.value)


class TauForm(NamedTuple):
    """``scale * (sign t^4 - lin (1-t^2) t^2 t2 - quad (1-t^2)(shift+t^2) t2^2
    + mix t (1-t^2)(1-|t2|^2) t3)``."""

    scale: float
    sign: float
    lin: float
    quad: float
    shift: float
    mix: float


TAU_FORMS = {
    FunctionClass.STARLIKE_HALF: TauForm(1 / 48, 1.0, 4.0, 1.0, 3.0, 4.0),
    FunctionClass.CONVEX_HALF: TauForm(1 / 2304, -1.0, 4.0, 8.0, 2.0, 24.0),
    FunctionClass.BOUNDED_TURNING_HALF: TauForm(1 / 2304, -1.0, 32.0, 8.0, 8.0, 72.0),
}

# (denominator, c1^4, c1^2 c2, c2^2, c1 c3)
C_FORMS = {
    FunctionClass.STARLIKE_HALF: (384, 3, -6, -6, 8),
    FunctionClass.CONVEX_HALF: (36864, 11, -40, -64, 96),
    FunctionClass.BOUNDED_TURNING_HALF: (36864, 39, -96, -256, 288),
}


def h21_from_gammas(g1, g2, g3) -> HankelValue:
    return HankelValue(complex(g1 * g3 - g2 * g2), "gamma")


def h21_from_a(a2, a3, a4) -> HankelValue:
    v = (13 * a2**4 - 12 * a2**2 * a3 - 12 * a3**2 + 12 * a2 * a4) / 48
    return HankelValue(complex(v), "a")


def h21_in_c(cls: FunctionClass, c: CaratheodoryCoeffs) -> HankelValue:
    c1, c2, c3 = c.as_tuple() if isinstance(c, CaratheodoryCoeffs) else c
    d, k4, k2, kk, k3 = C_FORMS[cls]
    v = (k4 * c1**4 + k2 * c1**2 * c2 + kk * c2**2 + k3 * c1 * c3) / d
    return HankelValue(complex(v), "c", cls)


def tau_parts(cls: FunctionClass, tau1: float, tau2: complex):
    """``(P, Q)`` with ``H = P + Q tau3``; ``H`` is affine in ``tau3``."""
    s, sg, lin, quad, shift, mix = TAU_FORMS[cls]
    t2sq = tau1 * tau1
    w = 1 - t2sq
    P = s * (sg * t2sq * t2sq - lin * w * t2sq * tau2 - quad * w * (shift + t2sq) * tau2 * tau2)
    Q = s * mix * tau1 * w * (1 - abs(tau2) ** 2)
    return P, Q


def h21_in_tau(cls: FunctionClass, params: SchurParams) -> HankelValue:
    if not isinstance(params, SchurParams):
        params = SchurParams(*params)
    P, Q = tau_parts(cls, params.tau1, params.tau2)
    return HankelValue(complex(P + Q * params.tau3), "tau", cls)


def h21_from_series(f: TaylorSeries) -> HankelValue:
    """Gamma path: invert ``f``, take ``log(F(w)/w)/2``, form the determinant."""
    g = inverse_log_coefficients(f)
    return h21_from_gammas(g[0], g[1], g[2])


def h21_all_forms(cls: FunctionClass, params: SchurParams, order: int = 8) -> dict:
    """The determinant at ``params`` computed along all four routes."""
    c = coeffs_from_schur(params)
    a2, a3, a4 = coeff_map(cls, c)
    return {
        "gamma": h21_from_series(normalized([a2, a3, a4], order)).value,
        "a": h21_from_a(a2, a3, a4).value,
        "c": h21_in_c(cls, c).value,
        "tau": h21_in_tau(cls, params).value,
    }


def max_pairwise_spread(values: dict) -> float:
    v = list(values.values())
    return max(abs(x - y) for i, x in enumerate(v) for y in v[i + 1 :])


def hankel_generic(sequence: Sequence[complex], q: int, n: int) -> complex:
    """``H_{q,n} = det [x_{n+i+j}]_{0 <= i,j < q}``.

    ``sequence`` holds ``x_1, x_2, ...`` (so ``sequence[0]`` is ``x_1``),
    matching the coefficient numbering.  Direct cofactor expansion,
    intended for ``q <= 3``.
    """
    if q < 1 or n < 1:
        raise HankelRangeError(f"invalid window q={q}, n={n}")
    last = n + 2 * (q - 1)
    if last > len(sequence):
        raise HankelRangeError(f"window needs x_{last}, sequence has {len(sequence)} terms")
    M = [[sequence[n + i + j - 1] for j in range(q)] for i in range(q)]
    return _det(M)


def _det(M):
    if len(M) == 1:
        return M[0][0]
    if len(M) == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = 0
    for j, x in enumerate(M[0]):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * x * _det(minor)
    return total
