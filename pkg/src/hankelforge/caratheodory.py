"""Schur-type parametrization of Caratheodory coefficients.

Every ``p = 1 + c_1 z + c_2 z^2 + ...`` with positive real part on the unit
disk and ``c_1 >= 0`` has

    c_1 = 2 t1
    c_2 = 2 t1^2 + 2 (1 - t1^2) t2
    c_3 = 2 t1^3 + 4 (1 - t1^2) t1 t2 - 2 (1 - t1^2) t1 t2^2
          + 2 (1 - t1^2)(1 - |t2|^2) t3

for some ``t1`` in [0, 1] and ``t2, t3`` in the closed disk.  When one of the
parameters sits on the unit circle the function ``p`` is a unique rational
function, built by :func:`boundary_function`.  In the interior case ``p`` is
not unique and nothing is constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AmbiguousRegimeError, DomainError, PoleError

DISK_TOL = 1e-12
CIRCLE_TOL = 1e-9
POLE_TOL = 1e-14


@dataclass(frozen=True)
class SchurParams:
    tau1: float
    tau2: complex = 0j
    tau3: complex = 0j

    def __post_init__(self):
        t1 = complex(self.tau1)
        if abs(t1.imag) > DISK_TOL:
            raise DomainError(f"tau1 must be real, got {self.tau1!r}")
        t1 = t1.real
        if not (-DISK_TOL <= t1 <= 1 + DISK_TOL):
            raise DomainError(f"tau1 must lie in [0, 1], got {t1}")
        object.__setattr__(self, "tau1", min(max(t1, 0.0), 1.0))
        for name in ("tau2", "tau3"):
            v = complex(getattr(self, name))
            if not np.isfinite(v) or abs(v) > 1 + DISK_TOL:
                raise DomainError(f"|{name}| must be <= 1, got {v}")
            object.__setattr__(self, name, v)

    @classmethod
    def polar(cls, tau1, r2, arg2=0.0, r3=1.0, arg3=0.0):
        return cls(tau1, r2 * np.exp(1j * arg2), r3 * np.exp(1j * arg3))


@dataclass(frozen=True)
class CaratheodoryCoeffs:
    c1: complex
    c2: complex
    c3: complex

    def as_tuple(self):
        return (self.c1, self.c2, self.c3)

    def within_bound(self, tol: float = DISK_TOL) -> bool:
        return all(abs(c) <= 2 + tol for c in self.as_tuple())


def coeffs_from_schur(params: SchurParams) -> CaratheodoryCoeffs:
    if not isinstance(params, SchurParams):
        params = SchurParams(*params)
    t1, t2, t3 = params.tau1, params.tau2, params.tau3
    w = 1 - t1 * t1
    c1 = complex(2 * t1)
    c2 = 2 * t1**2 + 2 * w * t2
    c3 = 2 * t1**3 + 4 * w * t1 * t2 - 2 * w * t1 * t2**2 + 2 * w * (1 - abs(t2) ** 2) * t3
    return CaratheodoryCoeffs(c1, complex(c2), complex(c3))


class RationalFunction:
    """``num(z) / den(z)`` with coefficient arrays in increasing degree.

    Callable on scalars or arrays; raises :class:`PoleError` when the
    denominator is numerically zero at an evaluation point.
    """

    def __init__(self, num: Sequence[complex], den: Sequence[complex]):
        self.num = np.array(num, dtype=complex)
        self.den = np.array(den, dtype=complex)
        self.num.setflags(write=False)
        self.den.setflags(write=False)
        if abs(self.den[0]) == 0:
            raise DomainError("denominator must not vanish at the origin")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        d = np.polynomial.polynomial.polyval(z, self.den)
        bad = np.abs(d) < POLE_TOL
        if np.any(bad):
            loc = complex(z[bad].ravel()[0]) if z.ndim else complex(z)
            raise PoleError(f"pole detected at z = {loc:.12g}", location=loc)
        return np.polynomial.polynomial.polyval(z, self.num) / d

    def poles(self) -> np.ndarray:
        d = np.trim_zeros(self.den, "b")
        if d.size <= 1:
            return np.empty(0, dtype=complex)
        return np.polynomial.polynomial.polyroots(d)

    def poles_inside(self, radius: float = 1.0, tol: float = CIRCLE_TOL) -> np.ndarray:
        p = self.poles()
        return p[np.abs(p) < radius - tol]

    def taylor(self, order: int) -> np.ndarray:
        """Exact Taylor coefficients ``0..order`` by long division."""
        num = np.zeros(order + 1, dtype=complex)
        k = min(order + 1, self.num.size)
        num[:k] = self.num[:k]
        den = self.den
        out = np.zeros(order + 1, dtype=complex)
        for n in range(order + 1):
            m = min(n, den.size - 1)
            s = np.dot(den[1 : m + 1], out[n - m : n][::-1]) if m else 0.0
            out[n] = (num[n] - s) / den[0]
        return out

    def __repr__(self):
        return f"RationalFunction(num={self.num.tolist()}, den={self.den.tolist()})"


def _on_circle(x: complex) -> bool:
    return abs(abs(x) - 1) <= CIRCLE_TOL


def boundary_regime(params: SchurParams) -> int:
    """1, 2 or 3: which parameter is the first to sit on the unit circle."""
    if _on_circle(params.tau1):
        return 1
    if _on_circle(params.tau2):
        return 2
    if _on_circle(params.tau3):
        return 3
    raise AmbiguousRegimeError(
        "all Schur parameters lie strictly inside the disk; p is not unique"
    )


def boundary_function(params: SchurParams) -> RationalFunction:
    """The unique Caratheodory function for boundary Schur parameters."""
    regime = boundary_regime(params)
    t1, t2, t3 = complex(params.tau1), params.tau2, params.tau3
    c1b, c2b = t1.conjugate(), t2.conjugate()
    if regime == 1:
        return RationalFunction([1, t1], [1, -t1])
    if regime == 2:
        return RationalFunction(
            [1, c1b * t2 + t1, t2],
            [1, c1b * t2 - t1, -t2],
        )
    return RationalFunction(
        [1, c2b * t3 + c1b * t2 + t1, c1b * t3 + t1 * c2b * t3 + t2, t3],
        [1, c2b * t3 + c1b * t2 - t1, c1b * t3 - t1 * c2b * t3 - t2, -t3],
    )


def fourier_coefficients(p, count: int, radius: float = 0.3, points: int = 4096) -> np.ndarray:
    """Taylor coefficients ``0..count-1`` of an evaluator by trapezoidal
    quadrature on the circle ``|z| = radius``."""
    theta = 2 * np.pi * np.arange(points) / points
    vals = p(radius * np.exp(1j * theta))
    c = np.fft.fft(vals)[:count] / points
    return c / radius ** np.arange(count)


@dataclass(frozen=True)
class PositivityReport:
    min_re: float
    argmin: complex
    ok: bool


def verify_positive_real_part(p, radii=(0.3, 0.6, 0.9, 0.99), samples_per_circle: int = 720) -> PositivityReport:
    """Sample ``Re p`` on concentric circles; ``ok`` iff the minimum exceeds -1e-9."""
    radii = np.asarray(radii, dtype=float)
    if np.any((radii <= 0) | (radii >= 1)):
        raise DomainError("radii must lie in (0, 1)")
    theta = 2 * np.pi * np.arange(samples_per_circle) / samples_per_circle
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    re = np.real(p(z))
    i = np.unravel_index(np.argmin(re), re.shape)
    m = float(re[i])
    return PositivityReport(m, complex(z[i]), m > -1e-9)
