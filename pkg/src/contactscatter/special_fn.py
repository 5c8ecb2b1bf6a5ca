"""Special-function kernels: spherical and cylindrical Bessel functions and
Legendre polynomials, accurate deep into the small-argument regime.

Evaluation strategy is split at x = 0.5.  Below the split, cancellation-free
ascending series (or growth-dominated recurrences) are used, because the
contact-limit analysis probes arguments down to 1e-8 where the naive sin/cos
closed forms lose all precision.  At moderate arguments scipy's routines are
used; they are accurate to ~1e-14 relative over the range needed here.

All functions are pure and hold no global state.
"""

from __future__ import annotations

import math

from scipy import special as _sp

#: Hard cap on the partial-wave order; only low partial waves survive the
#: contact limit, and the cap prevents silent recurrence blowup.
ORDER_CAP = 200

_SMALL_X = 0.5


def _check_order(n: int) -> None:
    if not 0 <= n <= ORDER_CAP:
        raise ValueError(f"order {n} outside supported range [0, {ORDER_CAP}]")


def _check_positive(x: float) -> None:
    if not x > 0.0:
        raise ValueError(f"argument must be positive, got {x}")


def _double_factorial(n: int) -> float:
    # (2l+1)!! style products; n is odd here
    out = 1.0
    while n > 1:
        out *= n
        n -= 2
    return out


def spherical_j(l: int, x: float) -> float:
    """Spherical Bessel function j_l(x)."""
    _check_order(l)
    _check_positive(x)
    if x >= _SMALL_X:
        return float(_sp.spherical_jn(l, x))
    # ascending series: j_l(x) = sum_s (-1)^s x^(2s+l) / (2^s s! (2l+2s+1)!!)
    try:
        term = x**l / _double_factorial(2 * l + 1)
    except OverflowError:
        return 0.0
    if term == 0.0:
        return 0.0
    total = term
    s = 1
    x2 = x * x
    while True:
        term *= -x2 / (2.0 * s * (2 * l + 2 * s + 1))
        total += term
        if abs(term) < 1e-18 * abs(total):
            return total
        s += 1


def spherical_n(l: int, x: float) -> float:
    """Spherical Neumann function n_l(x)."""
    _check_order(l)
    _check_positive(x)
    if x >= _SMALL_X:
        return float(_sp.spherical_yn(l, x))
    # upward recurrence from the closed forms; stable for the growing
    # solution and cancellation-free at small x
    n0 = -math.cos(x) / x
    if l == 0:
        return n0
    n1 = -(math.cos(x) / x + math.sin(x)) / x
    for j in range(1, l):
        n0, n1 = n1, (2 * j + 1) / x * n1 - n0
    return n1


def spherical_j_deriv(l: int, x: float) -> float:
    """Derivative j_l'(x) via the standard identity."""
    if l == 0:
        return -spherical_j(1, x)
    return spherical_j(l - 1, x) - (l + 1) / x * spherical_j(l, x)


def spherical_n_deriv(l: int, x: float) -> float:
    """Derivative n_l'(x) via the standard identity."""
    if l == 0:
        return -spherical_n(1, x)
    return spherical_n(l - 1, x) - (l + 1) / x * spherical_n(l, x)


def bessel_J(m: int, x: float) -> float:
    """Cylindrical Bessel function J_m(x) (integer order)."""
    _check_order(m)
    _check_positive(x)
    if x >= _SMALL_X:
        return float(_sp.jv(m, x))
    # ascending series: J_m(x) = (x/2)^m/m! sum_s (-x^2/4)^s / (s! (m+1)..(m+s))
    try:
        term = (0.5 * x) ** m / math.factorial(m)
    except OverflowError:
        return 0.0
    if term == 0.0:
        return 0.0
    total = term
    s = 1
    q = 0.25 * x * x
    while True:
        term *= -q / (s * (m + s))
        total += term
        if abs(term) < 1e-18 * abs(total):
            return total
        s += 1


def bessel_N(m: int, x: float) -> float:
    """Cylindrical Neumann function N_m(x) (integer order).

    Delegated to scipy at all arguments: its small-x path evaluates the
    logarithmic ascending series directly, with no cancellation (checked
    against extended precision to <1e-13 relative down to x = 1e-8).
    """
    _check_order(m)
    _check_positive(x)
    return float(_sp.yv(m, x))


def bessel_J_deriv(m: int, x: float) -> float:
    """Derivative J_m'(x) via the standard identity."""
    if m == 0:
        return -bessel_J(1, x)
    return bessel_J(m - 1, x) - m / x * bessel_J(m, x)


def bessel_N_deriv(m: int, x: float) -> float:
    """Derivative N_m'(x) via the standard identity."""
    if m == 0:
        return -bessel_N(1, x)
    return bessel_N(m - 1, x) - m / x * bessel_N(m, x)


def legendre_P(l: int, u: float) -> float:
    """Legendre polynomial P_l(u) by the Bonnet recurrence."""
    _check_order(l)
    if not -1.0 <= u <= 1.0:
        raise ValueError(f"Legendre argument must lie in [-1, 1], got {u}")
    if l == 0:
        return 1.0
    p0, p1 = 1.0, u
    for j in range(1, l):
        p0, p1 = p1, ((2 * j + 1) * u * p1 - j * p0) / (j + 1)
    return p1
