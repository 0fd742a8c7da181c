"""Starlike, convex and bounded-turning functions of order 1/2.

Each class is described by a driver ``p`` in the Caratheodory class:

    starlike:         z f'/f          = (p + 1)/2
    convex:           1 + z f''/f'    = (p + 1)/2
    bounded turning:  f'              = (p + 1)/2
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .caratheodory import CaratheodoryCoeffs
from .errors import DomainError, NearZeroDenominatorError
from .series import TaylorSeries

ORDER = 0.5
MARGIN_TOL = -1e-6


class FunctionClass(enum.Enum):
    STARLIKE_HALF = "starlike-half"
    CONVEX_HALF = "convex-half"
    BOUNDED_TURNING_HALF = "r-half"

    @classmethod
    def parse(cls, name) -> "FunctionClass":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(
                f"unknown function class {name!r}; expected one of "
                + ", ".join(sorted(_ALIASES))
            ) from None

    @property
    def label(self) -> str:
        return _LABELS[self]


_ALIASES = {
    "starlike-half": FunctionClass.STARLIKE_HALF,
    "starlike": FunctionClass.STARLIKE_HALF,
    "convex-half": FunctionClass.CONVEX_HALF,
    "convex": FunctionClass.CONVEX_HALF,
    "r-half": FunctionClass.BOUNDED_TURNING_HALF,
    "bounded-turning-half": FunctionClass.BOUNDED_TURNING_HALF,
    "bounded-turning": FunctionClass.BOUNDED_TURNING_HALF,
}
_LABELS = {
    FunctionClass.STARLIKE_HALF: "S*(1/2)",
    FunctionClass.CONVEX_HALF: "S^c(1/2)",
    FunctionClass.BOUNDED_TURNING_HALF: "R(1/2)",
}


def coeff_map(cls: FunctionClass, c: CaratheodoryCoeffs):
    """``(a_2, a_3, a_4)`` of the class member driven by ``p`` with coefficients ``c``."""
    c1, c2, c3 = c.as_tuple() if isinstance(c, CaratheodoryCoeffs) else c
    if cls is FunctionClass.STARLIKE_HALF:
        return c1 / 2, (2 * c2 + c1**2) / 8, (8 * c3 + 6 * c1 * c2 + c1**3) / 48
    if cls is FunctionClass.CONVEX_HALF:
        return c1 / 4, (2 * c2 + c1**2) / 24, (8 * c3 + 6 * c1 * c2 + c1**3) / 192
    if cls is FunctionClass.BOUNDED_TURNING_HALF:
        return c1 / 4, c2 / 6, c3 / 8
    raise TypeError(f"not a FunctionClass: {cls!r}")


def _starlike_recursion(q: np.ndarray, order: int) -> np.ndarray:
    # z g' = q g with g_1 = 1  =>  (n - 1) g_n = sum_{k=1}^{n-1} g_k q_{n-k}
    g = np.zeros(order + 1, dtype=complex)
    g[1] = 1.0
    for n in range(2, order + 1):
        g[n] = np.dot(g[1:n], q[n - 1 : 0 : -1]) / (n - 1)
    return g


def reconstruct_f(cls: FunctionClass, p, order: int) -> TaylorSeries:
    """Normalized ``f`` (mod ``z**(order+1)``) solving the class relation for driver ``p``.

    ``p`` may be a :class:`TaylorSeries` or a coefficient array; it must
    carry at least ``order`` coefficients and have ``p(0) = 1``.
    """
    pc = np.asarray(p.coeffs if isinstance(p, TaylorSeries) else p, dtype=complex)
    if abs(pc[0] - 1) > 1e-12:
        raise DomainError(f"driver must satisfy p(0) = 1, got {pc[0]}")
    if pc.size < order:
        raise DomainError(f"driver has {pc.size} coefficients, order {order} needs {order}")
    q = pc[:order] / 2
    q[0] = 1.0
    if cls is FunctionClass.STARLIKE_HALF:
        a = _starlike_recursion(q, order)
    elif cls is FunctionClass.CONVEX_HALF:
        # z f' is starlike-driven by the same q
        a = _starlike_recursion(q, order)
        a[1:] /= np.arange(1, order + 1)
    elif cls is FunctionClass.BOUNDED_TURNING_HALF:
        a = np.zeros(order + 1, dtype=complex)
        a[1:] = q[:order] / np.arange(1, order + 1)
    else:
        raise TypeError(f"not a FunctionClass: {cls!r}")
    return TaylorSeries(a)


@dataclass(frozen=True)
class MembershipReport:
    min_margin: float
    argmin: complex
    ok: bool


def class_functional(cls: FunctionClass, f: TaylorSeries, z: np.ndarray) -> np.ndarray:
    """The quantity whose real part must exceed the order, sampled at ``z``."""
    c = f.coeffs
    d1 = c[1:] * np.arange(1, c.size)
    P = np.polynomial.polynomial.polyval
    if cls is FunctionClass.BOUNDED_TURNING_HALF:
        return P(z, d1)
    if cls is FunctionClass.STARLIKE_HALF:
        num, den = z * P(z, d1), P(z, c)
    elif cls is FunctionClass.CONVEX_HALF:
        d2 = d1[1:] * np.arange(1, d1.size)
        den = P(z, d1)
        num = den + z * P(z, d2)
    else:
        raise TypeError(f"not a FunctionClass: {cls!r}")
    small = np.abs(den) < 1e-14
    if np.any(small):
        loc = complex(np.asarray(z)[small].ravel()[0])
        raise NearZeroDenominatorError(f"denominator vanishes near z = {loc:.12g}", location=loc)
    return num / den


def membership_check(
    f: TaylorSeries,
    cls: FunctionClass,
    radii=(0.3, 0.6, 0.9),
    samples: int = 720,
    alpha: float = ORDER,
) -> MembershipReport:
    """Necessary-condition check of class membership on circle grids.

    Evaluates the truncated polynomial only, so a pass is evidence rather
    than proof, and radii close to 1 are dominated by truncation error.
    """
    radii = np.asarray(radii, dtype=float)
    if np.any((radii <= 0) | (radii >= 1)):
        raise DomainError("radii must lie in (0, 1)")
    theta = 2 * np.pi * np.arange(samples) / samples
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    margin = np.real(class_functional(cls, f, z)) - alpha
    i = np.unravel_index(np.argmin(margin), margin.shape)
    m = float(margin[i])
    return MembershipReport(m, complex(z[i]), m > MARGIN_TOL)
