"""Complex gamma plus the two unit-circle Lerch evaluations.

``hurwitz_zeta`` handles the z = 1 boundary (sum(1/(u+n)^s)) by truncated
summation with an Euler-Maclaurin tail, and ``alt_lerch`` handles z = -1
(sum((-1)^n/(u+n)^s)) by Chebyshev-polynomial acceleration of the
alternating series.  Both are independent of the direct power series used
inside the unit disk and of the 1-D quadrature route, which is what lets
the identity checks compare genuinely different computations.

All complex powers are principal branch; every base that occurs has
positive real part, so no branch ambiguity arises.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .compsum import CompensatedSum
from .errors import ConvergenceError, DomainError, EvaluationError, PoleError

METHOD_DIRECT_SERIES = "direct-series"
METHOD_EULER_MACLAURIN = "euler-maclaurin"
METHOD_ALTERNATING = "alternating-accel"
METHOD_QUADRATURE_FALLBACK = "quadrature-fallback"

METHODS = frozenset(
    {
        METHOD_DIRECT_SERIES,
        METHOD_EULER_MACLAURIN,
        METHOD_ALTERNATING,
        METHOD_QUADRATURE_FALLBACK,
    }
)

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class EvalResult:
    """A numeric value with an honest absolute-error estimate.

    ``method`` records which algorithm produced the value and ``work`` how
    many series terms (or quadrature nodes) it consumed.
    """

    value: complex
    abs_err: float
    method: str
    work: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise EvaluationError("non-finite value in EvalResult")
        if not (self.abs_err >= 0.0):
            raise ValueError(f"abs_err must be nonnegative, got {self.abs_err}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if self.work < 1:
            raise ValueError("work must be >= 1")


# Lanczos rational approximation, g = 607/128, 15 terms.  Relative error
# around 1e-15 near the real axis, comfortably under the 1e-13 target for
# |x| <= 50.
_LANCZOS_G = 4.7421875
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

_SQRT_TWO_PI = 2.5066282746310002


def gamma(x: complex) -> complex:
    """Gamma function for complex argument, principal values.

    Lanczos sum for Re x >= 0.5, reflection through pi/(sin(pi x) * G(1-x))
    otherwise.  Poles at the nonpositive integers are rejected rather than
    returning infinities.
    """
    x = complex(x)
    n_nearest = round(x.real)
    if n_nearest <= 0 and abs(x - n_nearest) <= 1e-12:
        raise PoleError(f"gamma pole at nonpositive integer, x={x}")

    if x.real < 0.5:
        s = cmath.sin(cmath.pi * x)
        val = cmath.pi / (s * gamma(1.0 - x))
    else:
        zz = x - 1.0
        acc = _LANCZOS_C[0]
        for k in range(1, len(_LANCZOS_C)):
            acc += _LANCZOS_C[k] / (zz + k)
        t = zz + _LANCZOS_G + 0.5
        val = _SQRT_TWO_PI * t ** (zz + 0.5) * cmath.exp(-t) * acc

    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise EvaluationError(f"gamma overflow at x={x}")
    return val


# B_{2k} for k = 1..15 as exact rationals, rendered once to float as
# B_{2k}/(2k)! which is the combination Euler-Maclaurin needs.
_BERNOULLI_2K = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
    Fraction(-23749461029, 870),
    Fraction(8615841276005, 14322),
)

_B2K_OVER_FACT = tuple(
    float(b / math.factorial(2 * (k + 1))) for k, b in enumerate(_BERNOULLI_2K)
)

_MAX_HURWITZ_N = 1 << 20


def hurwitz_zeta(s: complex, u: complex, tol: float = 1e-12) -> EvalResult:
    """sum_{n>=0} (u+n)^(-s) for Re s > 1, Re u > 0.

    Truncated sum plus Euler-Maclaurin tail: integral term, half-term, then
    Bernoulli corrections B_2..B_30.  The truncation point N doubles until
    the first omitted correction term drops below tol/4; the reported
    abs_err covers that omission and the accumulated rounding.
    """
    s = complex(s)
    u = complex(u)
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if s.real <= 1.0:
        raise DomainError(f"hurwitz_zeta needs Re s > 1, got s={s}")
    if u.real <= 0.0:
        raise DomainError(f"hurwitz_zeta needs Re u > 0, got u={u}")

    n_terms = max(16, int(1.2 * abs(s)) + 4)
    while n_terms <= _MAX_HURWITZ_N:
        acc = CompensatedSum()
        for n in range(n_terms):
            acc.add((u + n) ** (-s))
        base = u + n_terms
        base_pow = base ** (-s)
        tail = base * base_pow / (s - 1.0) + 0.5 * base_pow

        poch = s  # s(s+1)...(s+2k-2), grown two factors per correction
        bpow = base_pow / base
        base_sq = base * base
        corrections = 0j
        omitted = math.inf
        used = 0
        for k, coeff in enumerate(_B2K_OVER_FACT, start=1):
            term = coeff * poch * bpow
            if abs(term) < 0.25 * tol:
                omitted = abs(term)
                break
            corrections += term
            used = k
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            bpow /= base_sq
        else:
            n_terms *= 2
            continue

        value = acc.value + tail + corrections
        # each term power costs a few ulp of its own magnitude; compensated
        # addition contributes only eps of the total
        abs_err = 2.0 * omitted + 4.0 * _EPS * (acc.abs_total + abs(tail))
        if abs_err <= tol:
            return EvalResult(value, abs_err, METHOD_EULER_MACLAURIN, n_terms + used + 1)
        n_terms *= 2  # past the rounding floor this cannot succeed; the cap ends it

    raise ConvergenceError(
        f"hurwitz_zeta did not reach tol={tol} within {_MAX_HURWITZ_N} terms "
        f"(s={s}, u={u})"
    )


_CVZ_RATE = math.log(3.0 + math.sqrt(8.0))
_MAX_CVZ_N = 350


def _cvz_sum(s: complex, u: complex, n: int) -> complex:
    """Chebyshev-accelerated alternating sum of (-1)^k (u+k)^(-s), n terms."""
    d = math.exp(n * _CVZ_RATE)
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    acc = CompensatedSum()
    for k in range(n):
        c = b - c
        acc.add(c * (u + k) ** (-s))
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    return acc.value / d


def alt_lerch(s: complex, u: complex, tol: float = 1e-12) -> EvalResult:
    """sum_{n>=0} (-1)^n (u+n)^(-s) for Re s > 0, Re u > 0.

    Chebyshev-coefficient acceleration: n terms give roughly (3+sqrt(8))^-n
    of the leading magnitude, so ~25 terms suffice at 1e-14.  Each answer is
    recomputed with a longer tableau and the difference is the error
    estimate, which keeps the bound honest for complex s where the clean
    totally-monotone theory does not literally apply.
    """
    s = complex(s)
    u = complex(u)
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if s.real <= 0.0:
        raise DomainError(f"alt_lerch needs Re s > 0, got s={s}")
    if u.real <= 0.0:
        raise DomainError(f"alt_lerch needs Re u > 0, got u={u}")

    scale = max(abs(u ** (-s)), 1e-300)
    if not math.isfinite(scale):
        raise EvaluationError(f"leading term u^(-s) overflows for (s={s}, u={u})")
    n = max(8, int(math.log(8.0 * scale / tol) / _CVZ_RATE) + 2)
    n += int(abs(s.imag) + abs(u.imag))  # slower decay off the real axis

    work = 0
    while n <= _MAX_CVZ_N:
        v1 = _cvz_sum(s, u, n)
        v2 = _cvz_sum(s, u, n + 6)
        work += 2 * n + 6
        diff = abs(v1 - v2)
        abs_err = max(diff, 8.0 * _EPS * scale)
        if not (math.isfinite(v2.real) and math.isfinite(v2.imag)):
            raise EvaluationError(f"alt_lerch produced non-finite value (s={s}, u={u})")
        if abs_err <= tol:
            return EvalResult(v2, abs_err, METHOD_ALTERNATING, work)
        n *= 2

    raise ConvergenceError(
        f"alt_lerch did not reach tol={tol} within {_MAX_CVZ_N} terms (s={s}, u={u})"
    )
