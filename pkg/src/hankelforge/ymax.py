"""Closed form for ``Y(A, B, C) = max_{|z| <= 1} |A + Bz + Cz^2| + 1 - |z|^2``.

For real ``A, B, C`` the maximum is piecewise explicit.  :func:`y_eval`
walks the decision tree and reports which branch fired; :func:`y_oracle`
maximizes the objective directly and is kept independent of it.

When a branch condition holds with equality (to within ``BOUNDARY_TOL``),
both sides are evaluated and the larger value is returned.  The value is
continuous across these boundaries, so only the label is in doubt there.
Among the ``R`` sub-branches conditions are tested in the listed order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend

BOUNDARY_TOL = 1e-12
RADICAND_TOL = 1e-9


class Branch(enum.Enum):
    I_SUM = "i_sum"
    I_PARABOLA = "i_parabola"
    II_NEG_PARABOLA = "ii_neg_parabola"
    II_POS_PARABOLA = "ii_pos_parabola"
    R_FIRST = "R_first"
    R_SECOND = "R_second"
    R_SQRT = "R_sqrt"


@dataclass(frozen=True)
class YResult:
    value: float
    branch: Branch
    argmax_hint: Optional[complex] = None
    consistent: bool = True


class _Decider:
    """Evaluates branch conditions, recording the ones that sit on a boundary."""

    def __init__(self, forced):
        self.forced = forced
        self.ambiguous = []

    def _decide(self, key, gap, scale, strict):
        if abs(gap) <= BOUNDARY_TOL * max(1.0, scale):
            self.ambiguous.append(key)
            if key in self.forced:
                return self.forced[key]
        return gap > 0 if strict else gap >= 0

    def le(self, key, lhs, rhs):
        return self._decide(key, rhs - lhs, max(abs(lhs), abs(rhs)), strict=False)

    def lt(self, key, lhs, rhs):
        return self._decide(key, rhs - lhs, max(abs(lhs), abs(rhs)), strict=True)


def _tree(A, B, C, d: _Decider):
    aA, aB, aC = abs(A), abs(B), abs(C)
    B2 = B * B
    ok = True
    if A * C == 0 or d.le("ac", 0.0, A * C):
        if d.le("i", 2 * (1 - aC), aB):
            return aA + aB + aC, Branch.I_SUM, ok
        return 1 + aA + B2 / (4 * (1 - aC)), Branch.I_PARABOLA, ok
    k = -4 * A * C * (1 / (C * C) - 1)
    if d.le("ii1a", k, B2) and d.lt("ii1b", aB, 2 * (1 - aC)):
        return 1 - aA + B2 / (4 * (1 - aC)), Branch.II_NEG_PARABOLA, ok
    if d.lt("ii2", B2, min(4 * (1 + aC) ** 2, k)):
        return 1 + aA + B2 / (4 * (1 + aC)), Branch.II_POS_PARABOLA, ok
    if d.le("R1", aC * (aB + 4 * aA), abs(A * B)):
        return aA + aB - aC, Branch.R_FIRST, ok
    if d.le("R2", abs(A * B), aC * (aB - 4 * aA)):
        return -aA + aB + aC, Branch.R_SECOND, ok
    rad = 1 - B2 / (4 * A * C)
    if rad < -RADICAND_TOL:
        ok = False
    return (aC + aA) * math.sqrt(max(rad, 0.0)), Branch.R_SQRT, ok


def _hint(A, B, C, branch: Branch) -> Optional[complex]:
    if branch in (Branch.I_SUM, Branch.R_FIRST, Branch.R_SECOND):
        return complex(max((1.0, -1.0), key=lambda z: abs(A + B * z + C * z * z)))
    if branch is Branch.I_PARABOLA:
        s = math.copysign(1.0, A if A != 0 else (C if C != 0 else 1.0))
        return complex(s * B / (2 * (1 - abs(C))))
    return None


def y_eval(A: float, B: float, C: float) -> YResult:
    """Piecewise closed form of ``Y(A, B, C)`` with the branch that fired."""
    A, B, C = float(A), float(B), float(C)
    best = None
    seen = set()
    stack = [{}]
    # walk the tree under every resolution of the boundary conditions met
    while stack:
        forced = stack.pop()
        d = _Decider(forced)
        try:
            v, b, o = _tree(A, B, C, d)
        except ZeroDivisionError:
            # this resolution reached a branch undefined at this exact point;
            # the boundary conditions met on the way are still explored
            pass
        else:
            if best is None or v > best[0] + 1e-15:
                best = (v, b, o)
        for key in d.ambiguous:
            if key in forced:
                continue
            for bit in (True, False):
                nxt = {**forced, key: bit}
                sig = frozenset(nxt.items())
                if sig not in seen:
                    seen.add(sig)
                    stack.append(nxt)
    if best is None:
        raise ArithmeticError(f"no branch evaluable at A={A!r}, B={B!r}, C={C!r}")
    value, branch, ok = best
    return YResult(value, branch, _hint(A, B, C, branch), ok)


def y_oracle_batch(A, B, C, radial_steps: int = 64, angular_steps: int = 64,
                   rounds: int = 3, local_steps: int = 21, candidates: int = 4,
                   backend: Optional[str] = None):
    """Direct maximization of the objective for arrays of triples.

    Returns ``(values, argmax)`` arrays.
    """
    if radial_steps < 64 or angular_steps < 64:
        raise ValueError("oracle grid needs at least 64 radial and 64 angular steps")
    if local_steps % 2 == 0 or rounds < 1:
        raise ValueError("local_steps must be odd and rounds >= 1")
    k = _backend.get(backend)
    A, B, C = (np.atleast_1d(np.asarray(x, dtype=float)) for x in (A, B, C))
    return k.y_oracle_batch(A, B, C, radial_steps, angular_steps, rounds, local_steps, candidates)


def y_oracle(A: float, B: float, C: float, radial_steps: int = 64, angular_steps: int = 64) -> float:
    values, _ = y_oracle_batch([A], [B], [C], radial_steps, angular_steps)
    return float(values[0])
