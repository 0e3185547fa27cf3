"""Compensated (Neumaier) accumulation for long complex sums.

Million-term series at 1e-12 absolute targets leave no headroom for plain
left-to-right float addition, so the series summers accumulate through this
helper.  Real and imaginary parts are compensated independently.
"""

from __future__ import annotations


def _neumaier_step(s: float, c: float, x: float) -> tuple[float, float]:
    t = s + x
    if abs(s) >= abs(x):
        c += (s - t) + x
    else:
        c += (x - t) + s
    return t, c


class CompensatedSum:
    """Running compensated sum of complex terms."""

    __slots__ = ("_sr", "_si", "_cr", "_ci", "_abs")

    def __init__(self) -> None:
        self._sr = 0.0
        self._si = 0.0
        self._cr = 0.0
        self._ci = 0.0
        self._abs = 0.0  # plain sum of |term|, for rounding-error estimates

    def add(self, term: complex) -> None:
        self._sr, self._cr = _neumaier_step(self._sr, self._cr, term.real)
        self._si, self._ci = _neumaier_step(self._si, self._ci, term.imag)
        self._abs += abs(term)

    @property
    def value(self) -> complex:
        return complex(self._sr + self._cr, self._si + self._ci)

    @property
    def abs_total(self) -> float:
        """Sum of term magnitudes; scales the residual rounding error."""
        return self._abs
