"""Special functions and adaptive quadrature.

Everything here works on plain Python floats; no external numerics library
is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

LN2 = math.log(2.0)

# Below this argument the power series of I0 is used, above it the
# large-argument asymptotic expansion.
_BESSEL_SPLIT = 15.0


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class IntegrationError(ArithmeticError):
    """Adaptive quadrature ran out of subdivisions before converging.

    The best available estimate is kept in ``estimate``.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 1_000_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def _i0e_series(x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while term > 1e-17 * total:
        k += 1
        term *= q / (k * k)
        total += term
    return total * math.exp(-x)


def _i0e_asymptotic(x: float) -> float:
    # I0(x) e^-x ~ (2 pi x)^-1/2 * sum_k ((2k-1)!!)^2 / (k! (8x)^k)
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * (2 * k - 1) ** 2 / (8.0 * k * x)
        if nxt >= term or nxt < 1e-17 * total:
            break
        term = nxt
        total += term
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0e(x: float) -> float:
    """Exponentially scaled modified Bessel function ``I0(x) * exp(-|x|)``.

    Even in ``x`` and bounded in ``(0, 1]``, so it never overflows.
    """
    if not math.isfinite(x):
        raise DomainError(f"bessel_i0e needs a finite argument, got {x!r}")
    x = abs(x)
    if x < _BESSEL_SPLIT:
        return _i0e_series(x)
    return _i0e_asymptotic(x)


def log_bessel_i0(x: float) -> float:
    """``ln I0(x)`` for any finite ``x``."""
    return abs(x) + math.log(bessel_i0e(x))


def log_sinh(x: float) -> float:
    """``ln(sinh x)`` for ``x > 0``, stable up to very large ``x``."""
    if not x > 0:
        raise DomainError(f"log_sinh needs x > 0, got {x!r}")
    if x > 0.5:
        return x + math.log1p(-math.exp(-2.0 * x)) - LN2
    return math.log(math.sinh(x))


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    The interval is first cut into 16 equal panels so that narrow peaks
    are not stepped over by the very first Simpson estimate. Each panel is
    then bisected until the local Richardson error estimate meets its
    share of the global tolerance ``max(abs_tol, rel_tol * |I|)``.

    Raises
    ------
    DomainError
        If ``a > b``.
    IntegrationError
        If ``spec.max_subdivisions`` bisections are used up; the partial
        result is attached as ``estimate``.
    """
    if a > b:
        raise DomainError(f"integration bounds out of order: {a} > {b}")
    if a == b:
        return 0.0

    n0 = 16
    width = b - a
    nodes = [a + width * i / (2 * n0) for i in range(2 * n0 + 1)]
    nodes[-1] = b
    values = [f(x) for x in nodes]

    panels = []
    rough = 0.0
    for i in range(n0):
        lo, mid, hi = nodes[2 * i], nodes[2 * i + 1], nodes[2 * i + 2]
        flo, fmid, fhi = values[2 * i], values[2 * i + 1], values[2 * i + 2]
        s = (hi - lo) * (flo + 4.0 * fmid + fhi) / 6.0
        rough += s
        panels.append((lo, mid, hi, flo, fmid, fhi, s))

    tol = max(spec.abs_tol, spec.rel_tol * abs(rough))
    stack = [p + (tol * (p[2] - p[0]) / width,) for p in reversed(panels)]
    total = 0.0
    used = 0
    while stack:
        lo, mid, hi, flo, fmid, fhi, whole, eps = stack.pop()
        lm = 0.5 * (lo + mid)
        mh = 0.5 * (mid + hi)
        flm = f(lm)
        fmh = f(mh)
        left = (mid - lo) * (flo + 4.0 * flm + fmid) / 6.0
        right = (hi - mid) * (fmid + 4.0 * fmh + fhi) / 6.0
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps or lm <= lo or mh >= hi or mid <= lm:
            total += left + right + delta / 15.0
            continue
        used += 1
        if used > spec.max_subdivisions:
            remaining = sum(item[6] for item in stack)
            raise IntegrationError(
                f"no convergence after {spec.max_subdivisions} subdivisions",
                total + left + right + remaining,
            )
        stack.append((mid, mh, hi, fmid, fmh, fhi, right, 0.5 * eps))
        stack.append((lo, lm, mid, flo, flm, fmid, left, 0.5 * eps))
    return total
