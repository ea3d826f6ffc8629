"""Adaptive Simpson quadrature with an explicit depth cap."""

from __future__ import annotations

from typing import Callable

from .errors import IntegrationError


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_depth: int = 60,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Returns ``(integral, error_estimate)``.  Raises :class:`IntegrationError`
    when some subinterval still misses its share of the tolerance after
    ``max_depth`` bisections.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        val, err = adaptive_simpson(f, b, a, tol, max_depth)
        return -val, err

    failed = []

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(lo, hi, flo, fmid, fhi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0, abs(delta) / 15.0
        if depth >= max_depth:
            failed.append(abs(delta) / 15.0)
            return left + right + delta / 15.0, abs(delta) / 15.0
        lv, le = recurse(lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1)
        rv, re = recurse(mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1)
        return lv + rv, le + re

    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    value, err = recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0)
    if failed:
        raise IntegrationError(
            f"adaptive Simpson did not converge on [{a}, {b}] within depth {max_depth}", err
        )
    return value, err
