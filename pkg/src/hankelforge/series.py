"""Truncated power series and the coefficient functionals built on them.

A :class:`TaylorSeries` stores the coefficients ``coeffs[0..N]`` of an
analytic function at the origin; every operation is exact modulo
``z**(N+1)`` (up to floating point).  Coefficients are complex throughout.

The functionals exposed here are

* the inverse-series coefficients ``A_n`` of ``F = f^{-1}``,
* the logarithmic coefficients ``gamma_n`` with ``log(f(z)/z) = 2 sum gamma_n z^n``,
* the inverse logarithmic coefficients ``Gamma_n`` (the same functional
  applied to ``F``),

each with a closed-form counterpart in terms of ``a_2..a_5`` used as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InsufficientOrderError, OrderMismatchError

DEFAULT_ORDER = 8
NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Coefficients ``coeffs[n]`` of ``z**n`` for ``n = 0..order``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a TaylorSeries needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"TaylorSeries(order={self.order}, coeffs={self.coeffs!r})"

    @property
    def is_normalized(self) -> bool:
        return (
            self.order >= 1
            and abs(self.coeffs[0]) <= NORMALIZATION_TOL
            and abs(self.coeffs[1] - 1) <= NORMALIZATION_TOL
        )

    def __call__(self, z):
        """Evaluate the truncation as a polynomial."""
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def derivative(self) -> "TaylorSeries":
        n = np.arange(1, self.order + 1)
        if self.order == 0:
            return TaylorSeries([0.0])
        return TaylorSeries(self.coeffs[1:] * n)

    def allclose(self, other: "TaylorSeries", atol: float = 1e-10) -> bool:
        return self.order == other.order and max_coeff_error(self, other) <= atol


def max_coeff_error(f: TaylorSeries, g: TaylorSeries) -> float:
    if f.order != g.order:
        raise OrderMismatchError(f"orders differ: {f.order} vs {g.order}")
    return float(np.max(np.abs(f.coeffs - g.coeffs)))


def identity(order: int = DEFAULT_ORDER) -> TaylorSeries:
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1.0
    return TaylorSeries(c)


def one(order: int = DEFAULT_ORDER) -> TaylorSeries:
    c = np.zeros(order + 1, dtype=complex)
    c[0] = 1.0
    return TaylorSeries(c)


def normalized(tail: Sequence[complex], order: int | None = None) -> TaylorSeries:
    """Build ``z + tail[0] z^2 + tail[1] z^3 + ...`` truncated at ``order``.

    ``order`` defaults to ``max(DEFAULT_ORDER, len(tail) + 1)``; missing
    coefficients are zero.
    """
    tail = list(tail)
    if order is None:
        order = max(DEFAULT_ORDER, len(tail) + 1)
    if len(tail) > order - 1:
        raise OrderMismatchError(f"{len(tail)} tail coefficients do not fit order {order}")
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1.0
    c[2 : 2 + len(tail)] = tail
    return TaylorSeries(c)


def koebe(order: int = DEFAULT_ORDER) -> TaylorSeries:
    """``z/(1-z)^2``, i.e. ``a_n = n``."""
    return TaylorSeries(np.arange(order + 1, dtype=complex))


def rotate(f: TaylorSeries, theta: float) -> TaylorSeries:
    """Coefficients of ``exp(-i theta) f(exp(i theta) z)``."""
    n = np.arange(f.order + 1)
    return TaylorSeries(f.coeffs * np.exp(1j * theta * (n - 1)))


def _require_normalized(f: TaylorSeries, what: str):
    if not f.is_normalized:
        raise DomainError(f"{what} needs a normalized series (f(0)=0, f'(0)=1)")


def multiply(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    """Cauchy product truncated at the common order."""
    if f.order != g.order:
        raise OrderMismatchError(f"orders differ: {f.order} vs {g.order}")
    return TaylorSeries(np.convolve(f.coeffs, g.coeffs)[: f.order + 1])


def compose(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    """``f(g(w))`` for ``g(0) = 0``, by Horner's scheme on truncated products."""
    if f.order != g.order:
        raise OrderMismatchError(f"orders differ: {f.order} vs {g.order}")
    if abs(g.coeffs[0]) > NORMALIZATION_TOL:
        raise DomainError("inner series of a composition must vanish at 0")
    n = f.order + 1
    acc = np.zeros(n, dtype=complex)
    for k in range(f.order, -1, -1):
        acc = np.convolve(acc, g.coeffs)[:n]
        acc[0] += f.coeffs[k]
    return TaylorSeries(acc)


def log_ratio(f: TaylorSeries) -> TaylorSeries:
    """Series of ``log(f(z)/z)`` (with ``log 1 = 0``).

    ``f/z`` is only known through ``z**(N-1)``, so the result has order
    ``N - 1``.  The logarithmic coefficients are ``coeffs[n] / 2``.
    """
    _require_normalized(f, "log_ratio")
    g = f.coeffs[1:]
    m = g.size
    L = np.zeros(m, dtype=complex)
    k = np.arange(m)
    for n in range(1, m):
        # n L_n = n g_n - sum_{k=1}^{n-1} k L_k g_{n-k}
        s = np.dot(k[1:n] * L[1:n], g[n - 1 : 0 : -1]) if n > 1 else 0.0
        L[n] = (n * g[n] - s) / n
    return TaylorSeries(L)


def log_coefficients(f: TaylorSeries) -> np.ndarray:
    """``gamma_1 .. gamma_{N-1}`` of ``f``."""
    return log_ratio(f).coeffs[1:] / 2


def invert_series(f: TaylorSeries) -> TaylorSeries:
    """Compositional inverse ``F`` with ``f(F(w)) = w`` mod ``w**(N+1)``.

    For ``n >= 2`` the ``w**n`` coefficient of ``f(F)`` reads
    ``A_n + sum_{k=2}^{n} a_k [w^n] F^k = 0``, and ``[w^n] F^k`` (``k >= 2``)
    only involves ``A_1 .. A_{n-1}``, so the coefficients follow one at a
    time.
    """
    _require_normalized(f, "invert_series")
    N = f.order
    a = f.coeffs
    F = np.zeros(N + 1, dtype=complex)
    F[1] = 1.0
    for n in range(2, N + 1):
        power = F[: n + 1].copy()  # F^1 truncated at w^n, A_n still zero
        s = 0.0
        for k in range(2, n + 1):
            power = np.convolve(power, F[: n + 1])[: n + 1]
            s += a[k] * power[n]
        F[n] = -s
    return TaylorSeries(F)


def inverse_closed_form(a2, a3, a4, a5):
    """``(A_2, A_3, A_4, A_5)`` in terms of ``a_2 .. a_5``."""
    A2 = -a2
    A3 = -a3 + 2 * a2**2
    A4 = -a4 + 5 * a2 * a3 - 5 * a2**3
    A5 = -a5 + 6 * a4 * a2 - 21 * a3 * a2**2 + 3 * a3**2 + 14 * a2**4
    return A2, A3, A4, A5


def inverse_log_coefficients(f: TaylorSeries) -> np.ndarray:
    """``Gamma_1 .. Gamma_{N-1}``: half the coefficients of ``log(F(w)/w)``."""
    if f.order < 4:
        raise InsufficientOrderError(f"order {f.order} < 4; Gamma_1..Gamma_3 need a_2..a_4")
    return log_coefficients(invert_series(f))


def gamma_closed_form(a2, a3, a4, a5):
    """``(Gamma_1, .., Gamma_4)`` in terms of ``a_2 .. a_5``."""
    G1 = -a2 / 2
    G2 = -(a3 - 1.5 * a2**2) / 2
    G3 = -(a4 - 4 * a2 * a3 + (10 / 3) * a2**3) / 2
    G4 = -(a5 - 5 * a4 * a2 + 15 * a3 * a2**2 - 2.5 * a3**2 - 8.75 * a2**4) / 2
    return G1, G2, G3, G4
